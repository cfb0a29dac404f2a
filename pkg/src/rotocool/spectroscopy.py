"""Rovibrational energies, thermal populations, and Stark / line-strength factors.

The quadratic-Stark coefficient f(J, M) and the line-strength factor g(J, M)
are evaluated in exact rational arithmetic on the doubled quantum numbers
before any conversion to float, so there is no precision loss at high J.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .constants import CONST
from .species import MolecularSpecies
from .states import PopulationState, RoState, Transition, enumerate_states


def rovib_energy(species: MolecularSpecies, n: int, two_j: int) -> float:
    """Term energy in J of vibrational level n and rotational level J = two_j/2.

    E = hc * { Te + we*(n+1/2) - wexe*(n+1/2)^2
               + (Be - alpha_e*(n+1/2)) * (J(J+1) - Omega^2) }
    """
    if two_j < species.two_omega:
        raise ValueError(f"2J={two_j} is below 2*Omega={species.two_omega}")
    if (two_j - species.two_omega) % 2 != 0:
        raise ValueError(f"2J={two_j} has wrong parity for 2*Omega={species.two_omega}")
    v = n + 0.5
    jj = two_j * (two_j + 2) / 4.0          # J(J+1)
    omega_sq = species.two_omega ** 2 / 4.0  # Omega^2
    term = (
        species.te
        + species.omega_e * v
        - species.omega_e_x_e * v * v
        + (species.b_e - species.alpha_e * v) * (jj - omega_sq)
    )
    return CONST.hc * term


def thermal_state(species: MolecularSpecies, temperature: float, two_jmax: int) -> PopulationState:
    """Boltzmann distribution over the n=0 states up to Jmax.

    Each level J carries weight (2J+1)*exp(-E_J/kT); the degeneracy is spread
    uniformly over the M sublevels, so each |J,M> state gets exp(-E_J/kT)
    before normalization.
    """
    if temperature <= 0.0:
        raise ValueError(f"temperature must be positive, got {temperature!r}")
    basis = enumerate_states(species, two_jmax)
    ground = rovib_energy(species, 0, species.two_omega)
    beta = 1.0 / (CONST.k_B * temperature)
    raw = {
        state: math.exp(-(rovib_energy(species, 0, state.two_j) - ground) * beta)
        for state in basis
    }
    total = sum(raw.values())
    return PopulationState({state: value / total for state, value in raw.items()})


def stark_f(two_j: int, two_m: int) -> Fraction:
    """Quadratic-Stark coefficient f(J, M) of a rotor level, as an exact rational.

    f = [J(J+1) - 3M^2] / [J(J+1)(2J-1)(2J+3)].  The expression degenerates to
    0/0 for the two lowest levels; there the second-order shift has only the
    upward J+1 coupling, giving f = -1/3 at J=0 and f = -1/6 at J=1/2.  Both
    values are the unique ones consistent with the corner-difference closed
    form (4J+3)/((2J+1)(2J+3)J(J+1)) at J=1 and J=3/2.
    """
    if abs(two_m) > two_j:
        raise ValueError(f"|2M|={abs(two_m)} exceeds 2J={two_j}")
    if (two_m - two_j) % 2 != 0:
        raise ValueError(f"2M={two_m} and 2J={two_j} have mixed parity")
    if two_j == 0:
        return Fraction(-1, 3)
    if two_j == 1:
        return Fraction(-1, 6)
    j = Fraction(two_j, 2)
    m = Fraction(two_m, 2)
    return (j * (j + 1) - 3 * m * m) / (j * (j + 1) * (2 * j - 1) * (2 * j + 3))


def delta_f(transition: Transition) -> Fraction:
    """f(upper) - f(lower): the Stark-shift difference driving field tuning."""
    return stark_f(transition.upper.two_j, transition.upper.two_m) - stark_f(
        transition.lower.two_j, transition.lower.two_m
    )


def stark_spacing(
    species: MolecularSpecies, n: int, transition: Transition, e_field: float
) -> float:
    """Energy gap in J between the transition's levels in a static field E.

    spacing = hc*2J*(Be - alpha_e*(n+1/2)) + (mu*E)^2/(2*hc*Be) * delta_f
    """
    if e_field < 0.0:
        raise ValueError(f"electric field must be non-negative, got {e_field!r}")
    two_j = transition.upper.two_j
    bare = CONST.hc * two_j * (species.b_e - species.alpha_e * (n + 0.5))
    shift = (species.dipole * e_field) ** 2 / (2.0 * CONST.hc * species.b_e)
    return bare + shift * float(delta_f(transition))


def line_strength(transition: Transition, mode: str = "paper") -> Fraction:
    """Dimensionless line-strength factor g(J, M) of a downward transition.

    J and M are the upper state's quantum numbers.  pi (q=0):
    (J+M)(J-M)/((2J-1)(2J+1)) in both modes.  sigma (q=+-1), mode "paper":
    (J+-M+1)(J+-M+2)/((2J-1)(2J+1)) with the upper sign tied to q=+1; mode
    "sum-rule" substitutes the standard emission factors
    (J+-M)(J+-M-1)/(2(2J-1)(2J+1)), which satisfy the total-rate sum rule.
    """
    if mode not in ("paper", "sum-rule"):
        raise ValueError(f"unknown line-strength mode {mode!r}")
    j = Fraction(transition.upper.two_j, 2)
    m = Fraction(transition.upper.two_m, 2)
    denom = (2 * j - 1) * (2 * j + 1)
    if transition.q == 0:
        return (j + m) * (j - m) / denom
    signed = m if transition.q == 1 else -m
    if mode == "paper":
        return (j + signed + 1) * (j + signed + 2) / denom
    return (j + signed) * (j + signed - 1) / (2 * denom)
