"""Delimited and JSON report files for the CLI.

All data files are deterministic: fixed column order, no timestamps, floats
written in full-precision scientific notation so they round-trip exactly.
"""

from __future__ import annotations

import csv
import json
from bisect import bisect_left
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .dynamics import SimulationResult
from .planner import CoolingPlan, TuningStep
from .species import MolecularSpecies
from .spectroscopy import delta_f
from .states import RoState, Transition, state_from_label

LEVEL_COLUMNS = ("two_j", "two_m", "energy_j", "energy_cm", "thermal_weight")
PLAN_COLUMNS = (
    "step_index",
    "two_j_upper",
    "two_m_upper",
    "q",
    "lambda_c_m",
    "e_field_v_per_m",
    "delta_f",
    "gamma_free_per_s",
    "eta",
    "gamma_cav_per_s",
    "duration_s",
)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17e}"
    return str(value)


def write_table(path: Path, columns: Sequence[str], rows: Iterable[Mapping], fmt: str) -> Path:
    """Write rows as CSV or as a JSON array of row objects."""
    rows = list(rows)
    if fmt == "json":
        path = path.with_suffix(".json")
        payload = [{col: row[col] for col in columns} for row in rows]
        path.write_text(json.dumps(payload, indent=2) + "\n")
        return path
    path = path.with_suffix(".csv")
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[col]) for col in columns])
    return path


def read_table(path: Path) -> list[dict[str, str]]:
    if path.suffix == ".json":
        return json.loads(path.read_text())
    with path.open(newline="") as handle:
        return list(csv.DictReader(handle))


def write_summary_json(path: Path, summary: Mapping) -> Path:
    path.write_text(json.dumps(summary, indent=2) + "\n")
    return path


def plan_rows(plan: CoolingPlan) -> list[dict]:
    """One row per step; merged mirror pairs are keyed by their +M member."""
    rows = []
    for index, step in enumerate(plan.steps):
        rep = step.transitions[0]
        rows.append(
            {
                "step_index": index,
                "two_j_upper": rep.upper.two_j,
                "two_m_upper": rep.upper.two_m,
                "q": rep.q,
                "lambda_c_m": step.lambda_c,
                "e_field_v_per_m": step.e_field,
                "delta_f": float(delta_f(rep)),
                "gamma_free_per_s": step.gamma_free,
                "eta": step.gamma_cavity / step.gamma_free,
                "gamma_cav_per_s": step.gamma_cavity,
                "duration_s": step.duration,
            }
        )
    return rows


def steps_from_rows(rows: Iterable[Mapping], species: MolecularSpecies) -> tuple[TuningStep, ...]:
    """Rebuild the TuningStep tuple a plan CSV/JSON was written from."""
    steps = []
    for row in rows:
        two_j = int(row["two_j_upper"])
        two_m = int(row["two_m_upper"])
        q = int(row["q"])
        members = [(two_j, two_m, q)]
        if not (two_m == 0 and q == 0):
            members.append((two_j, -two_m, -q))
        transitions = []
        for tj, tm, tq in members:
            upper = RoState(n=0, two_j=tj, two_m=tm, two_omega=species.two_omega)
            lower = RoState(
                n=0, two_j=tj - 2, two_m=tm - 2 * tq, two_omega=species.two_omega
            )
            transitions.append(Transition(upper=upper, lower=lower, q=tq))
        steps.append(
            TuningStep(
                transitions=tuple(transitions),
                e_field=float(row["e_field_v_per_m"]),
                gamma_free=float(row["gamma_free_per_s"]),
                gamma_cavity=float(row["gamma_cav_per_s"]),
                duration=float(row["duration_s"]),
                lambda_c=float(row["lambda_c_m"]),
            )
        )
    return tuple(steps)


def timeline_rows(result: SimulationResult, plan: CoolingPlan, basis: Sequence[RoState]) -> tuple[tuple[str, ...], list[dict]]:
    """Column names and rows for the timeline table (one column per state)."""
    ends = []
    acc = 0.0
    for step in plan.steps:
        acc += step.duration
        ends.append(acc)
    columns = ("stage_index", "time_s") + tuple(state.label for state in basis)
    rows = []
    for time, pop in result.timeline:
        stage = bisect_left(ends, time * (1.0 - 1e-15)) if time > 0.0 else 0
        row = {"stage_index": min(stage, len(ends) - 1) if ends else 0, "time_s": time}
        for state in basis:
            row[state.label] = pop.weight(state)
        rows.append(row)
    return columns, rows


def population_from_row(row: Mapping, two_omega: int) -> dict[RoState, float]:
    """Parse one timeline row's state columns back into weights."""
    weights = {}
    for key, value in row.items():
        if key in ("stage_index", "time_s"):
            continue
        weights[state_from_label(key, two_omega)] = float(value)
    return weights
