"""Rotational/Zeeman state labels and probability distributions over them.

Angular momenta are stored as doubled integers (two_j = 2J, two_m = 2M,
two_omega = 2*Omega) so half-integer quantum numbers stay exact and all
selection-rule arithmetic is integer arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .species import MolecularSpecies

POPULATION_SUM_TOL = 1e-12


@dataclass(frozen=True, order=True)
class RoState:
    """One rotational/Zeeman state |n; J, M> of an Omega manifold."""

    n: int
    two_j: int
    two_m: int
    two_omega: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"negative vibrational quantum number n={self.n}")
        if not (self.two_j >= self.two_omega >= 0):
            raise ValueError(f"need 2J >= 2*Omega >= 0, got 2J={self.two_j}, 2Omega={self.two_omega}")
        if abs(self.two_m) > self.two_j:
            raise ValueError(f"|2M|={abs(self.two_m)} exceeds 2J={self.two_j}")
        if (self.two_m - self.two_j) % 2 != 0:
            raise ValueError(f"2M={self.two_m} and 2J={self.two_j} have mixed parity")
        if (self.two_j - self.two_omega) % 2 != 0:
            raise ValueError(f"2J={self.two_j} and 2Omega={self.two_omega} have mixed parity")

    @property
    def label(self) -> str:
        """Column label 'J{2J}M{2M}' used in timeline tables."""
        return f"J{self.two_j}M{self.two_m}"


_LABEL_RE = re.compile(r"^J(-?\d+)M(-?\d+)$")


def state_from_label(label: str, two_omega: int, n: int = 0) -> RoState:
    match = _LABEL_RE.match(label)
    if match is None:
        raise ValueError(f"malformed state label '{label}'")
    return RoState(n=n, two_j=int(match.group(1)), two_m=int(match.group(2)), two_omega=two_omega)


@dataclass(frozen=True)
class Transition:
    """A downward dipole transition |J,M> -> |J-1,M-q> with polarization q."""

    upper: RoState
    lower: RoState
    q: int

    def __post_init__(self) -> None:
        if self.q not in (-1, 0, 1):
            raise ValueError(f"polarization q must be -1, 0 or +1, got {self.q}")
        if self.lower.two_j != self.upper.two_j - 2:
            raise ValueError("transition must lower J by exactly one")
        if self.lower.two_m != self.upper.two_m - 2 * self.q:
            raise ValueError("lower state M inconsistent with polarization q")
        if self.lower.n != self.upper.n:
            raise ValueError("vibrational quantum number must be conserved")
        if self.lower.two_omega != self.upper.two_omega:
            raise ValueError("Omega manifold must be conserved")


def make_transition(upper: RoState, q: int) -> Transition:
    """Build the |J,M> -> |J-1,M-q> transition below ``upper``."""
    lower = RoState(
        n=upper.n,
        two_j=upper.two_j - 2,
        two_m=upper.two_m - 2 * q,
        two_omega=upper.two_omega,
    )
    return Transition(upper=upper, lower=lower, q=q)


@dataclass(frozen=True)
class PopulationState:
    """Probability distribution over a set of RoStates (sums to one)."""

    weights: Mapping[RoState, float]

    def __post_init__(self) -> None:
        copied = dict(self.weights)
        for state, weight in copied.items():
            if weight < 0.0:
                raise ValueError(f"negative weight {weight!r} for {state.label}")
        total = sum(copied.values())
        if abs(total - 1.0) > POPULATION_SUM_TOL:
            raise ValueError(f"weights sum to {total!r}, not 1 within {POPULATION_SUM_TOL}")
        object.__setattr__(self, "weights", MappingProxyType(copied))

    def weight(self, state: RoState) -> float:
        return self.weights.get(state, 0.0)

    @property
    def states(self) -> tuple[RoState, ...]:
        return tuple(self.weights)

    @classmethod
    def delta(cls, basis: Iterable[RoState], occupied: RoState) -> "PopulationState":
        """All population in one state of the basis."""
        weights = {state: 0.0 for state in basis}
        if occupied not in weights:
            raise ValueError(f"state {occupied.label} is not in the basis")
        weights[occupied] = 1.0
        return cls(weights)

    @classmethod
    def uniform(cls, basis: Iterable[RoState]) -> "PopulationState":
        states = list(basis)
        return cls({state: 1.0 / len(states) for state in states})


def enumerate_states(species: MolecularSpecies, two_jmax: int) -> list[RoState]:
    """All n=0 states with Omega <= J <= Jmax, ordered by (J, M) ascending."""
    two_omega = species.two_omega
    if two_jmax < two_omega:
        raise ValueError(f"2Jmax={two_jmax} is below 2*Omega={two_omega}")
    if (two_jmax - two_omega) % 2 != 0:
        raise ValueError(f"2Jmax={two_jmax} has wrong parity for 2*Omega={two_omega}")
    states = []
    for two_j in range(two_omega, two_jmax + 1, 2):
        for two_m in range(-two_j, two_j + 1, 2):
            states.append(RoState(n=0, two_j=two_j, two_m=two_m, two_omega=two_omega))
    return states
