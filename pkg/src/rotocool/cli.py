"""Config-driven command line front end.

Commands: levels, plan, simulate, sweep.  Exit codes: 0 success, 1 config
error, 2 physical infeasibility (no real tuning field / field limit), 3
validation failure under the configured limits.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .cavity import CavityConfig, confocal_geometry
from .config import ConfigError, RunConfig, SWEEP_AXES, config_for_sweep_value, parse_config
from .constants import CONST
from .dynamics import SimOptions, SimulationResult, simulate
from .planner import (
    CoolingPlan,
    ExceedsFieldLimit,
    InfeasibleTransition,
    Scheme,
    build_plan,
    choose_cavity,
    step_count,
    validate_plan,
)
from .reports import (
    LEVEL_COLUMNS,
    PLAN_COLUMNS,
    plan_rows,
    timeline_rows,
    write_summary_json,
    write_table,
)
from .species import SpeciesError, UnknownSpeciesError
from .spectroscopy import rovib_energy, thermal_state
from .states import enumerate_states
from . import plots

TIMELINE_INTERIOR_POINTS = 16


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotocool",
        description="Plan and simulate cavity-enhanced rotational cooling of polar molecules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("levels", "write the rotational/Zeeman level table"),
        ("plan", "generate and validate a tuning schedule"),
        ("simulate", "run the rate-equation simulation of a schedule"),
        ("sweep", "repeat the simulation along one config axis"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", required=True, help="TOML configuration file")
        cmd.add_argument("--out", default=".", help="output directory (default: .)")
        cmd.add_argument("--format", choices=("csv", "json"), default="csv")
        cmd.add_argument(
            "--plot",
            action=argparse.BooleanOptionalAction,
            default=True,
            help="render figures next to the data files",
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = parse_config(Path(args.config).read_text())
    except (ConfigError, SpeciesError, UnknownSpeciesError, OSError) as exc:
        print(f"rotocool: config error: {exc}", file=sys.stderr)
        return 1

    out_dir = Path(os.environ.get("ROTOCOOL_OUT") or args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    try:
        if args.command == "levels":
            return _run_levels(config, out_dir, args.format, args.plot)
        if args.command == "plan":
            return _run_plan(config, out_dir, args.format, args.plot)
        if args.command == "simulate":
            return _run_simulate(config, out_dir, args.format, args.plot)
        return _run_sweep(config, out_dir, args.format, args.plot)
    except (InfeasibleTransition, ExceedsFieldLimit) as exc:
        print(f"rotocool: infeasible plan: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"rotocool: config error: {exc}", file=sys.stderr)
        return 1


def _level_rows(config: RunConfig) -> list[dict]:
    thermal = thermal_state(config.species, config.temperature_k, config.two_jmax)
    rows = []
    for state in enumerate_states(config.species, config.two_jmax):
        energy = rovib_energy(config.species, 0, state.two_j)
        rows.append(
            {
                "two_j": state.two_j,
                "two_m": state.two_m,
                "energy_j": energy,
                "energy_cm": energy / CONST.hc / 100.0,
                "thermal_weight": thermal.weight(state),
            }
        )
    return rows


def _run_levels(config: RunConfig, out_dir: Path, fmt: str, plot: bool) -> int:
    rows = _level_rows(config)
    path = write_table(out_dir / "levels", LEVEL_COLUMNS, rows, fmt)
    print(f"wrote {path}")
    if plot:
        floor = min(float(r["energy_cm"]) for r in rows)
        shifted = [dict(r, energy_cm=float(r["energy_cm"]) - floor) for r in rows]
        fig = plots.plot_levels(
            shifted,
            f"{config.species.name}: rotational/Zeeman levels at {config.temperature_k:g} K",
            out_dir / "levels.png",
        )
        print(f"wrote {fig}")
    return 0


def _resolve_cavities(config: RunConfig) -> tuple[CavityConfig, ...]:
    if config.cavity_mode == "manual":
        return (CavityConfig(s=config.s, q_factor=config.q_factor, lambda_c=config.lambda_m),)
    chosen = choose_cavity(
        config.species, config.scheme, config.two_jmax, s=config.s, q_factor=config.q_factor
    )
    return chosen if isinstance(chosen, tuple) else (chosen,)


def _build(config: RunConfig) -> CoolingPlan:
    cavities = _resolve_cavities(config)
    return build_plan(
        config.species,
        config.scheme,
        config.two_jmax,
        cavity=cavities if config.scheme is Scheme.COMBINED else cavities[0],
        stage_cycles=config.stage_cycles,
    )


def _plan_summary(config: RunConfig, plan: CoolingPlan, flags: list[str]) -> dict:
    cavities = []
    for cfg in plan.cavities:
        geometry = confocal_geometry(cfg)
        cavities.append(
            {
                "s": cfg.s,
                "q_factor": cfg.q_factor,
                "lambda_c_m": cfg.lambda_c,
                "length_m": geometry.length,
                "diameter_m": geometry.diameter,
                "mode_volume_m3": geometry.mode_volume,
                "eta": geometry.eta,
            }
        )
    return {
        "scheme": plan.scheme.value,
        "species": plan.species.name,
        "jmax_x2": plan.two_jmax,
        "step_count": len(plan.steps),
        "cavities": cavities,
        "total_duration_s": plan.total_duration,
        "max_field_v_per_m": plan.max_field,
        "validation_flags": flags,
    }


def _run_plan(config: RunConfig, out_dir: Path, fmt: str, plot: bool) -> int:
    plan = _build(config)
    report = validate_plan(plan, efield_max=config.efield_max, temperature=config.temperature_k)
    rows = plan_rows(plan)
    path = write_table(out_dir / "plan", PLAN_COLUMNS, rows, fmt)
    print(f"wrote {path}")
    summary = write_summary_json(
        out_dir / "plan_summary.json", _plan_summary(config, plan, report.flags())
    )
    print(f"wrote {summary}")
    if plot:
        fig = plots.plot_plan_fields(
            rows,
            f"{plan.species.name}: tuning fields, scheme {plan.scheme.value}",
            out_dir / "plan_fields.png",
        )
        print(f"wrote {fig}")
    for check in report.checks:
        if check.status != "pass":
            where = f" (step {check.step_index})" if check.step_index is not None else ""
            print(f"validation {check.status}: {check.name}{where}: {check.detail}")
    return 3 if not report.passed else 0


def _format_level(two_j: int) -> str:
    return f"J={two_j // 2}" if two_j % 2 == 0 else f"J={two_j}/2"


def _run_simulate(config: RunConfig, out_dir: Path, fmt: str, plot: bool) -> int:
    plan = _build(config)
    report = validate_plan(plan, efield_max=config.efield_max, temperature=config.temperature_k)
    basis = enumerate_states(config.species, config.two_jmax)
    initial = thermal_state(config.species, config.temperature_k, config.two_jmax)
    opts = SimOptions(
        nbar_mode=config.nbar_mode,
        temperature=config.temperature_k,
        include_offresonant=config.include_offresonant,
        record_interior_points=TIMELINE_INTERIOR_POINTS,
    )
    result = simulate(plan, initial, opts)

    columns, rows = timeline_rows(result, plan, basis)
    path = write_table(out_dir / "timeline", columns, rows, fmt)
    print(f"wrote {path}")
    summary = write_summary_json(
        out_dir / "summary.json",
        {
            "scheme": plan.scheme.value,
            "total_time_s": result.total_time,
            "ground_fraction": result.ground_fraction,
            "per_stage_residuals": [s.residual_fraction for s in result.per_stage],
            "validation_flags": report.flags(),
        },
    )
    print(f"wrote {summary}")
    if plot:
        fig = plots.plot_timeline(*_timeline_series(result, config), out_dir / "timeline.png")
        print(f"wrote {fig}")
    return 3 if not report.passed else 0


def _timeline_series(result: SimulationResult, config: RunConfig):
    times = [t for t, _ in result.timeline]
    two_js = sorted({s.two_j for s in result.timeline[0][1].states})
    level_series = {
        _format_level(two_j): [
            sum(w for s, w in pop.weights.items() if s.two_j == two_j)
            for _, pop in result.timeline
        ]
        for two_j in two_js
    }
    two_omega = config.species.two_omega
    ground = [
        sum(w for s, w in pop.weights.items() if s.two_j == two_omega)
        for _, pop in result.timeline
    ]
    title = f"{config.species.name}: populations, scheme {config.scheme.value}"
    return times, level_series, ground, title


def _run_sweep(config: RunConfig, out_dir: Path, fmt: str, plot: bool) -> int:
    if config.sweep_axis is None or config.sweep_values is None:
        raise ConfigError("sweep command needs a [sweep] section with axis and values")
    rows = []
    for value in config.sweep_values:
        point = config_for_sweep_value(config, config.sweep_axis, value)
        plan = _build(point)
        report = validate_plan(plan, efield_max=point.efield_max, temperature=point.temperature_k)
        initial = thermal_state(point.species, point.temperature_k, point.two_jmax)
        opts = SimOptions(
            nbar_mode=point.nbar_mode,
            temperature=point.temperature_k,
            include_offresonant=point.include_offresonant,
        )
        result = simulate(plan, initial, opts)
        rows.append(
            {
                "axis": config.sweep_axis,
                "value": value,
                "step_count": step_count(point.scheme, point.two_jmax, point.species.two_omega),
                "total_time_s": result.total_time,
                "ground_fraction": result.ground_fraction,
                "max_field_v_per_m": plan.max_field,
                "validation_flags": ";".join(report.flags()),
            }
        )
    columns = (
        "axis",
        "value",
        "step_count",
        "total_time_s",
        "ground_fraction",
        "max_field_v_per_m",
        "validation_flags",
    )
    path = write_table(out_dir / "sweep", columns, rows, fmt)
    print(f"wrote {path}")
    if plot:
        fig = plots.plot_sweep(
            config.sweep_axis,
            [row["value"] for row in rows],
            [row["total_time_s"] for row in rows],
            [row["ground_fraction"] for row in rows],
            out_dir / "sweep.png",
        )
        print(f"wrote {fig}")
    return 0


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
