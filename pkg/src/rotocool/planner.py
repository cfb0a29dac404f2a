"""Tuning schedules: cavity selection, field solving, and plan validation.

A plan assigns every state above the ground level exactly one downward
transition, merged into steps over mirror pairs (M <-> -M share one field
because the Stark shift is quadratic in M).  Scheme "pi" drains only the
|M| <= Omega ladder with pi transitions; scheme "A" covers every non-corner
state; scheme "B" is the corner chain |J,+-J> -> |J-1,+-(J-1)>; "combined"
runs B first (its own cavity), then A.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cavity import (
    CavityConfig,
    confocal_geometry,
    doppler_q_bound,
    free_space_rate,
    max_thermal_speed,
    purcell_rate,
)
from .constants import CONST
from .species import MolecularSpecies
from .spectroscopy import delta_f, stark_spacing
from .states import RoState, Transition, make_transition

RESONANCE_TOL = 1e-9
# soft feasibility limit for static lab fields; beyond it validation warns
LAB_FIELD_WARN = 1e8


class Scheme(enum.Enum):
    PI_ONLY = "pi"
    SEQ_A = "A"
    SEQ_B = "B"
    COMBINED = "combined"


class TransitionSign(enum.Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"
    ZERO = "zero"


class InfeasibleTransition(ValueError):
    """No real tuning field brings this transition to cavity resonance."""


class ExceedsFieldLimit(ValueError):
    """A solved tuning field exceeds the configured hard limit."""


def classify_transition(transition: Transition) -> TransitionSign:
    """Sign of delta_f, which decides the cavity family able to tune it."""
    d = delta_f(transition)
    if d < 0:
        return TransitionSign.NEGATIVE
    if d > 0:
        return TransitionSign.POSITIVE
    return TransitionSign.ZERO


def pi_sign_threshold(two_m: int) -> float:
    """J above which a pi transition at fixed M has negative delta_f.

    threshold = sqrt((1 + 6M^2 + sqrt(1 + 3M^2 + 36M^4)) / 2).
    """
    m_sq = (two_m / 2.0) ** 2
    inner = math.sqrt(1.0 + 3.0 * m_sq + 36.0 * m_sq**2)
    return math.sqrt(0.5 * (1.0 + 6.0 * m_sq + inner))


def choose_cavity(
    species: MolecularSpecies,
    scheme: Scheme,
    two_jmax: int,
    s: int = 1,
    q_factor: float = 1e6,
):
    """Resonant wavelength(s) for a scheme, as CavityConfig.

    Schemes "pi" and "A" set 1/lambda to the bare spacing of the lowest rung
    (J = Omega+1 -> Omega), i.e. 1/lambda = (Omega+1)*(2Be - alpha_e); the
    bottom step then needs no field at all.  Scheme "B" sets
    1/lambda = Jmax*(2Be - alpha_e).  "combined" returns (B config, A config).
    """
    if two_jmax <= species.two_omega:
        raise ValueError(f"2Jmax={two_jmax} must exceed 2*Omega={species.two_omega}")
    unit = species.ladder_spacing_unit
    inv_lambda_a = (species.two_omega + 2) / 2.0 * unit
    inv_lambda_b = two_jmax / 2.0 * unit
    if scheme in (Scheme.PI_ONLY, Scheme.SEQ_A):
        return CavityConfig(s=s, q_factor=q_factor, lambda_c=1.0 / inv_lambda_a)
    if scheme is Scheme.SEQ_B:
        return CavityConfig(s=s, q_factor=q_factor, lambda_c=1.0 / inv_lambda_b)
    return (
        CavityConfig(s=s, q_factor=q_factor, lambda_c=1.0 / inv_lambda_b),
        CavityConfig(s=s, q_factor=q_factor, lambda_c=1.0 / inv_lambda_a),
    )


def tuning_field(
    species: MolecularSpecies, lambda_c: float, transition: Transition
) -> float:
    """Static field in V/m that Stark-tunes the n=0 transition to resonance.

    E = (hc/mu) * sqrt((2Be/delta_f) * (1/lambda - J*(2Be - alpha_e))).
    Raises InfeasibleTransition when the radicand is negative, i.e. the
    cavity sits on the wrong side of the bare spacing for this delta_f sign.
    """
    if transition.upper.n != 0:
        raise ValueError("tuning fields are defined for the n=0 manifold")
    inv_lambda = 1.0 / lambda_c
    j = transition.upper.two_j / 2.0
    detune = inv_lambda - j * species.ladder_spacing_unit
    if abs(detune) <= 1e-12 * inv_lambda:
        return 0.0  # cavity already resonant with the bare spacing
    d_f = delta_f(transition)
    if d_f == 0:
        raise InfeasibleTransition(
            f"{_describe(transition)}: delta_f = 0, spacing cannot be tuned"
        )
    radicand = 2.0 * species.b_e / float(d_f) * detune
    if radicand < 0.0:
        raise InfeasibleTransition(
            f"{_describe(transition)}: needs 1/lambda on the other side of "
            f"J*(2Be-alpha_e) for delta_f of sign {'+' if d_f > 0 else '-'}"
        )
    return CONST.hc / species.dipole * math.sqrt(radicand)


def _describe(transition: Transition) -> str:
    up, lo = transition.upper, transition.lower
    return f"|2J={up.two_j},2M={up.two_m}> -> |2J={lo.two_j},2M={lo.two_m}>"


@dataclass(frozen=True)
class TuningStep:
    """One stage: 1 or 2 mirror transitions held at resonance for a duration."""

    transitions: tuple[Transition, ...]
    e_field: float
    gamma_free: float
    gamma_cavity: float
    duration: float
    lambda_c: float


@dataclass(frozen=True)
class CoolingPlan:
    scheme: Scheme
    species: MolecularSpecies
    cavities: tuple[CavityConfig, ...]
    steps: tuple[TuningStep, ...]
    two_jmax: int

    @property
    def total_duration(self) -> float:
        return sum(step.duration for step in self.steps)

    @property
    def max_field(self) -> float:
        return max(step.e_field for step in self.steps)


@dataclass(frozen=True)
class PlanEntry:
    """Schedule skeleton: which transitions one step holds, on which cavity."""

    cavity_index: int
    group: tuple[tuple[int, int, int], ...]  # (two_j_upper, two_m_upper, q)


def _mirror_group(two_j: int, two_m: int, q: int) -> tuple[tuple[int, int, int], ...]:
    if two_m == 0 and q == 0:
        return ((two_j, two_m, q),)
    return ((two_j, two_m, q), (two_j, -two_m, -q))


def plan_entries(scheme: Scheme, two_jmax: int, two_omega: int) -> list[PlanEntry]:
    """Ordered schedule skeleton for a scheme (no fields solved yet).

    J shells run from Jmax down to Omega+1; within a shell, |M| descends.
    In scheme A the innermost class (M = 0 or +-1/2) steps down with a pi
    transition and every other class steps inward with a sigma transition,
    so population funnels toward M = 0 before descending and never lands on
    a corner state that scheme B has already drained.
    """
    if two_jmax < two_omega + 2:
        raise ValueError(f"2Jmax={two_jmax} must be at least 2*Omega+2={two_omega + 2}")
    if (two_jmax - two_omega) % 2 != 0:
        raise ValueError(f"2Jmax={two_jmax} has wrong parity for 2*Omega={two_omega}")

    innermost = two_omega % 2  # 0 for integer Omega, 1 (=|2M|) for half-integer
    shells = range(two_jmax, two_omega, -2)
    entries: list[PlanEntry] = []

    if scheme is Scheme.PI_ONLY:
        for two_j in shells:
            for two_m in range(two_omega, innermost - 1, -2):
                entries.append(PlanEntry(0, _mirror_group(two_j, two_m, 0)))
        return entries

    if scheme is Scheme.SEQ_B:
        for two_j in shells:
            entries.append(PlanEntry(0, _mirror_group(two_j, two_j, 1)))
        return entries

    if scheme is Scheme.SEQ_A:
        for two_j in shells:
            for two_m in range(two_j - 2, innermost - 1, -2):
                q = 0 if two_m == innermost else 1
                entries.append(PlanEntry(0, _mirror_group(two_j, two_m, q)))
        return entries

    if scheme is Scheme.COMBINED:
        first = plan_entries(Scheme.SEQ_B, two_jmax, two_omega)
        second = plan_entries(Scheme.SEQ_A, two_jmax, two_omega)
        return first + [PlanEntry(1, entry.group) for entry in second]

    raise ValueError(f"unknown scheme {scheme!r}")


def step_count(scheme: Scheme, two_jmax: int, two_omega: int) -> int:
    """Closed-form number of steps for a scheme.

    pi: (Omega+1)(Jmax-Omega) for integer Omega, (Omega+1/2)(Jmax-Omega) for
    half-integer.  A: (Jmax-Omega)(Jmax+Omega+1)/2 resp. (Jmax^2-Omega^2)/2.
    B: Jmax-Omega.  combined = A + B.
    """
    if two_jmax < two_omega + 2:
        raise ValueError(f"2Jmax={two_jmax} must be at least 2*Omega+2={two_omega + 2}")
    j = Fraction(two_jmax, 2)
    om = Fraction(two_omega, 2)
    half_integer = two_omega % 2 == 1
    if scheme is Scheme.PI_ONLY:
        per_shell = om + Fraction(1, 2) if half_integer else om + 1
        count = per_shell * (j - om)
    elif scheme is Scheme.SEQ_A:
        count = (j * j - om * om) / 2 if half_integer else (j - om) * (j + om + 1) / 2
    elif scheme is Scheme.SEQ_B:
        count = j - om
    elif scheme is Scheme.COMBINED:
        return step_count(Scheme.SEQ_A, two_jmax, two_omega) + step_count(
            Scheme.SEQ_B, two_jmax, two_omega
        )
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    assert count.denominator == 1
    return int(count)


def total_transition_count(two_jmax: int, two_omega: int) -> int:
    """Number of states above the ground level: Jmax(Jmax+2) - Omega(Omega+2)."""
    j = Fraction(two_jmax, 2)
    om = Fraction(two_omega, 2)
    count = j * (j + 2) - om * (om + 2)
    assert count.denominator == 1
    return int(count)


def build_plan(
    species: MolecularSpecies,
    scheme: Scheme,
    two_jmax: int,
    *,
    cavity: CavityConfig | Sequence[CavityConfig] | None = None,
    s: int = 1,
    q_factor: float = 1e6,
    stage_cycles: float = 4.0,
    efield_max: float | None = None,
) -> CoolingPlan:
    """Solve fields, rates, and durations for a full tuning schedule.

    Raises InfeasibleTransition/ExceedsFieldLimit identifying the offending
    step.  ``cavity`` overrides the scheme's automatic choice; the combined
    scheme takes a (B, A) pair.
    """
    if stage_cycles <= 0.0:
        raise ValueError(f"stage_cycles must be positive, got {stage_cycles!r}")
    if cavity is None:
        chosen = choose_cavity(species, scheme, two_jmax, s=s, q_factor=q_factor)
        cavities = chosen if isinstance(chosen, tuple) else (chosen,)
    elif isinstance(cavity, CavityConfig):
        cavities = (cavity,)
    else:
        cavities = tuple(cavity)
    expected = 2 if scheme is Scheme.COMBINED else 1
    if len(cavities) != expected:
        raise ValueError(f"scheme {scheme.value} needs {expected} cavity config(s)")

    etas = [confocal_geometry(cfg).eta for cfg in cavities]
    steps: list[TuningStep] = []
    for entry in plan_entries(scheme, two_jmax, species.two_omega):
        cfg = cavities[entry.cavity_index]
        transitions = tuple(
            make_transition(
                RoState(n=0, two_j=two_j, two_m=two_m, two_omega=species.two_omega), q
            )
            for two_j, two_m, q in entry.group
        )
        field = tuning_field(species, cfg.lambda_c, transitions[0])
        if efield_max is not None and field > efield_max:
            raise ExceedsFieldLimit(
                f"step {_describe(transitions[0])}: field {field:.3e} V/m "
                f"exceeds limit {efield_max:.3e} V/m"
            )
        gamma_free = free_space_rate(species, cfg.lambda_c, transitions[0])
        gamma_cavity = purcell_rate(gamma_free, etas[entry.cavity_index])
        steps.append(
            TuningStep(
                transitions=transitions,
                e_field=field,
                gamma_free=gamma_free,
                gamma_cavity=gamma_cavity,
                duration=stage_cycles / gamma_cavity,
                lambda_c=cfg.lambda_c,
            )
        )
    return CoolingPlan(
        scheme=scheme,
        species=species,
        cavities=cavities,
        steps=tuple(steps),
        two_jmax=two_jmax,
    )


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    status: str  # "pass" | "warn" | "fail"
    detail: str
    step_index: int | None = None


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ValidationCheck, ...]

    @property
    def failures(self) -> tuple[ValidationCheck, ...]:
        return tuple(c for c in self.checks if c.status == "fail")

    @property
    def warnings(self) -> tuple[ValidationCheck, ...]:
        return tuple(c for c in self.checks if c.status == "warn")

    @property
    def passed(self) -> bool:
        return not self.failures

    def flags(self) -> list[str]:
        return [
            f"{c.status}:{c.name}" + (f":step{c.step_index}" if c.step_index is not None else "")
            for c in self.checks
            if c.status != "pass"
        ]


def validate_plan(
    plan: CoolingPlan,
    efield_max: float | None = None,
    temperature: float = 10.0,
) -> ValidationReport:
    """Diagnostic checks on a built plan; reports, never raises.

    Per step: the solved field reproduces the cavity resonance, is finite and
    non-negative, respects the configured hard limit, and stays below the
    soft lab-feasibility bound.  Globally: every cavity's Q must not exceed
    the Doppler bound c/v at the 3-sigma thermal speed.
    """
    checks: list[ValidationCheck] = []
    for index, step in enumerate(plan.steps):
        target = CONST.hc / step.lambda_c
        worst = max(
            abs(stark_spacing(plan.species, 0, t, step.e_field) / target - 1.0)
            for t in step.transitions
        )
        checks.append(
            ValidationCheck(
                name="resonance",
                status="pass" if worst <= RESONANCE_TOL else "fail",
                detail=f"max relative detuning {worst:.3e}",
                step_index=index,
            )
        )
        field_ok = math.isfinite(step.e_field) and step.e_field >= 0.0
        checks.append(
            ValidationCheck(
                name="field_real",
                status="pass" if field_ok else "fail",
                detail=f"E = {step.e_field:.6e} V/m",
                step_index=index,
            )
        )
        if efield_max is not None:
            checks.append(
                ValidationCheck(
                    name="field_limit",
                    status="pass" if step.e_field <= efield_max else "fail",
                    detail=f"E = {step.e_field:.6e} V/m vs limit {efield_max:.6e} V/m",
                    step_index=index,
                )
            )
        if step.e_field > LAB_FIELD_WARN:
            checks.append(
                ValidationCheck(
                    name="field_feasibility",
                    status="warn",
                    detail=(
                        f"E = {step.e_field:.6e} V/m exceeds the typical "
                        f"lab-feasible {LAB_FIELD_WARN:.0e} V/m"
                    ),
                    step_index=index,
                )
            )
    v_max = max_thermal_speed(plan.species, temperature)
    q_bound = doppler_q_bound(v_max)
    worst_q = max(cfg.q_factor for cfg in plan.cavities)
    checks.append(
        ValidationCheck(
            name="doppler_q",
            status="pass" if worst_q <= q_bound else "fail",
            detail=(
                f"Q = {worst_q:.3e} vs bound c/v = {q_bound:.3e} "
                f"at v = {v_max:.1f} m/s ({temperature:g} K)"
            ),
        )
    )
    return ValidationReport(checks=tuple(checks))
