"""Rate-equation execution of a cooling plan on a population distribution.

Each stage holds one (or one mirror pair of) transition(s) at cavity
resonance.  The resonant pair relaxes in closed form at rate
Gamma_c*(2*n_bar+1) toward its two-level steady state, so population is
conserved to machine precision; no generic ODE integration is involved.
Off-resonant states are frozen by default, or optionally leak at their
free-space rates via sub-stepped explicit integration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cavity import free_space_rate, thermal_occupation
from .species import MolecularSpecies
from .spectroscopy import rovib_energy
from .planner import CoolingPlan, TuningStep
from .states import PopulationState, RoState, Transition, make_transition


class StateSpaceMismatch(ValueError):
    """The plan touches states missing from the initial population basis."""


@dataclass(frozen=True)
class SimOptions:
    """Knobs for one simulation run."""

    nbar_mode: str = "zero"  # "zero" | "planck"
    temperature: float = 1.0
    include_offresonant: bool = False
    record_interior_points: int = 0

    def __post_init__(self) -> None:
        if self.nbar_mode not in ("zero", "planck"):
            raise ValueError(f"nbar_mode must be 'zero' or 'planck', got {self.nbar_mode!r}")
        if self.nbar_mode == "planck" and self.temperature <= 0.0:
            raise ValueError("planck occupation needs a positive temperature")
        if self.record_interior_points < 0:
            raise ValueError("record_interior_points must be >= 0")

    def n_bar(self, lambda_c: float) -> float:
        if self.nbar_mode == "zero":
            return 0.0
        return thermal_occupation(lambda_c, self.temperature)


@dataclass(frozen=True)
class StageResidual:
    step_index: int
    residual_fraction: float


@dataclass(frozen=True)
class SimulationResult:
    timeline: tuple[tuple[float, PopulationState], ...]
    total_time: float
    ground_fraction: float
    per_stage: tuple[StageResidual, ...]


@dataclass(frozen=True)
class PopulationMetrics:
    ground_fraction: float
    mean_rot_energy: float  # J, relative to the J = Omega level
    entropy: float          # nats


def metrics(pop: PopulationState, species: MolecularSpecies) -> PopulationMetrics:
    """Ground fraction, mean rotational energy above J=Omega, Shannon entropy."""
    ground = sum(w for s, w in pop.weights.items() if s.two_j == s.two_omega)
    e0 = rovib_energy(species, 0, species.two_omega)
    energy = sum(
        w * (rovib_energy(species, s.n, s.two_j) - e0) for s, w in pop.weights.items()
    )
    entropy = -sum(w * math.log(w) for w in pop.weights.values() if w > 0.0)
    return PopulationMetrics(ground_fraction=ground, mean_rot_energy=energy, entropy=entropy)


def _relax_pair(u0: float, l0: float, gamma: float, n_bar: float, t: float) -> tuple[float, float]:
    """Two-level relaxation: upper decays to n_bar/(2n_bar+1) of the pair total."""
    total = u0 + l0
    u_ss = total * n_bar / (2.0 * n_bar + 1.0)
    u = u_ss + (u0 - u_ss) * math.exp(-gamma * (2.0 * n_bar + 1.0) * t)
    return u, total - u


def _relax_shared_lower(
    up: float, um: float, l0: float, gamma: float, n_bar: float, t: float
) -> tuple[float, float, float]:
    """Mirror pair feeding one lower state (e.g. |J,+-1> -> |J-1,0>).

    The symmetric combination S = u+ + u- relaxes at gamma*(3*n_bar+1) toward
    S = 2*n_bar/(3*n_bar+1) of the triple total; the antisymmetric part just
    decays.  Reduces to independent exponentials at n_bar = 0.
    """
    total = up + um + l0
    s0, d0 = up + um, up - um
    s_ss = total * 2.0 * n_bar / (3.0 * n_bar + 1.0)
    s = s_ss + (s0 - s_ss) * math.exp(-gamma * (3.0 * n_bar + 1.0) * t)
    d = d0 * math.exp(-gamma * (n_bar + 1.0) * t)
    return (s + d) / 2.0, (s - d) / 2.0, total - s


def _free_decay_channels(
    species: MolecularSpecies, state: RoState, opts: SimOptions
) -> list[tuple[Transition, float]]:
    """Spontaneous channels out of an off-resonant state, at the bare spacings."""
    channels = []
    inv_lambda = state.two_j * (species.b_e - species.alpha_e / 2.0)  # 2J*(Be-alpha/2)
    for q in (0, 1, -1):
        try:
            transition = make_transition(state, q)
        except ValueError:
            continue
        n_bar = opts.n_bar(1.0 / inv_lambda)
        rate = free_space_rate(species, 1.0 / inv_lambda, transition, n_bar=n_bar)
        channels.append((transition, rate))
    return channels


def _evolve_for(
    pop: PopulationState,
    step: TuningStep,
    opts: SimOptions,
    species: MolecularSpecies,
    duration: float,
) -> PopulationState:
    if duration == 0.0:
        return pop
    weights = dict(pop.weights)
    n_bar = opts.n_bar(step.lambda_c)
    gamma = step.gamma_cavity

    resonant: set[RoState] = set()
    for t in step.transitions:
        resonant.update((t.upper, t.lower))

    pair = step.transitions
    if len(pair) == 2 and pair[0].lower == pair[1].lower:
        up, um, low = (
            weights[pair[0].upper],
            weights[pair[1].upper],
            weights[pair[0].lower],
        )
        new_up, new_um, new_low = _relax_shared_lower(up, um, low, gamma, n_bar, duration)
        weights[pair[0].upper] = new_up
        weights[pair[1].upper] = new_um
        weights[pair[0].lower] = new_low
    else:
        for t in pair:
            u, low = _relax_pair(weights[t.upper], weights[t.lower], gamma, n_bar, duration)
            weights[t.upper] = u
            weights[t.lower] = low

    if opts.include_offresonant:
        _apply_free_leakage(weights, resonant, opts, species, duration)
    return PopulationState(weights)


def _apply_free_leakage(
    weights: dict[RoState, float],
    resonant: set[RoState],
    opts: SimOptions,
    species: MolecularSpecies,
    duration: float,
) -> None:
    channels: dict[RoState, list[tuple[Transition, float]]] = {}
    for state in weights:
        if state in resonant or state.two_j <= state.two_omega:
            continue
        channels[state] = _free_decay_channels(species, state, opts)
    rates = [sum(r for _, r in chans) for chans in channels.values()]
    max_rate = max(rates, default=0.0)
    if max_rate == 0.0:
        return
    # explicit sub-stepping; dt*rate <= 0.01 keeps the update conservative
    n_sub = max(1, math.ceil(duration * max_rate / 0.01))
    dt = duration / n_sub
    for _ in range(n_sub):
        moves: list[tuple[RoState, RoState, float]] = []
        for state, chans in channels.items():
            occ = weights[state]
            if occ == 0.0:
                continue
            for transition, rate in chans:
                moves.append((state, transition.lower, occ * rate * dt))
        for source, target, amount in moves:
            weights[source] -= amount
            weights[target] = weights.get(target, 0.0) + amount


def stage_evolve(
    pop: PopulationState,
    step: TuningStep,
    opts: SimOptions,
    species: MolecularSpecies,
) -> PopulationState:
    """Evolve a population through one full stage of a plan."""
    return _evolve_for(pop, step, opts, species, step.duration)


def simulate(plan: CoolingPlan, initial: PopulationState, opts: SimOptions) -> SimulationResult:
    """Fold the plan's stages over an initial population.

    Snapshots are taken at every stage boundary, plus
    ``opts.record_interior_points`` evenly spaced points inside each stage.
    """
    basis = set(initial.weights)
    for step in plan.steps:
        for t in step.transitions:
            if t.upper not in basis or t.lower not in basis:
                raise StateSpaceMismatch(
                    f"plan touches state outside the initial basis: {t.upper.label}/{t.lower.label}"
                )

    timeline: list[tuple[float, PopulationState]] = [(0.0, initial)]
    per_stage: list[StageResidual] = []
    pop = initial
    now = 0.0
    for index, step in enumerate(plan.steps):
        before = sum(pop.weight(t.upper) for t in step.transitions)
        for k in range(1, opts.record_interior_points + 1):
            partial = step.duration * k / (opts.record_interior_points + 1)
            timeline.append((now + partial, _evolve_for(pop, step, opts, plan.species, partial)))
        pop = stage_evolve(pop, step, opts, plan.species)
        now += step.duration
        timeline.append((now, pop))
        after = sum(pop.weight(t.upper) for t in step.transitions)
        residual = after / before if before > 0.0 else 0.0
        per_stage.append(StageResidual(step_index=index, residual_fraction=residual))

    ground = metrics(pop, plan.species).ground_fraction
    return SimulationResult(
        timeline=tuple(timeline),
        total_time=now,
        ground_fraction=ground,
        per_stage=tuple(per_stage),
    )
