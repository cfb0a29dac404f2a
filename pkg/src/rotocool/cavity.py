"""Confocal-resonator geometry, Purcell enhancement, and radiative rates."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CONST
from .species import MolecularSpecies
from .states import Transition
from .spectroscopy import line_strength


@dataclass(frozen=True)
class CavityConfig:
    """Longitudinal mode order, quality factor, and resonant wavelength."""

    s: int
    q_factor: float
    lambda_c: float

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError(f"mode order s must be >= 1, got {self.s}")
        if self.q_factor <= 0.0:
            raise ValueError(f"quality factor must be positive, got {self.q_factor!r}")
        if self.lambda_c <= 0.0:
            raise ValueError(f"wavelength must be positive, got {self.lambda_c!r}")


@dataclass(frozen=True)
class CavityGeometry:
    """Derived symmetric-confocal quantities for one CavityConfig."""

    lambda_c: float
    length: float       # mirror spacing L
    waist: float        # field waist w0
    mode_volume: float  # V of the (0,0) Gaussian mode
    diameter: float     # maximum mirror diameter D
    eta: float          # Purcell enhancement factor


def confocal_geometry(config: CavityConfig) -> CavityGeometry:
    """Geometry of the symmetric confocal resonator.

    L = (s+1/2)*lambda/2, w0 = sqrt(lambda*L/2pi), V = L*w0^2*pi/2,
    D = sqrt(3)*L, eta = 12*Q/(pi^2*(s+1/2)^2).
    """
    half_orders = config.s + 0.5
    length = half_orders * config.lambda_c / 2.0
    waist = math.sqrt(config.lambda_c * length / (2.0 * math.pi))
    volume = length * waist**2 * math.pi / 2.0
    eta = 12.0 * config.q_factor / (math.pi**2 * half_orders**2)
    return CavityGeometry(
        lambda_c=config.lambda_c,
        length=length,
        waist=waist,
        mode_volume=volume,
        diameter=math.sqrt(3.0) * length,
        eta=eta,
    )


def mode_intensity(geometry: CavityGeometry, x, y, z):
    """Normalized intensity |u00|^2 of the Gaussian (0,0) mode at (x, y, z).

    |u00|^2 = (w0^2/w^2(z)) * exp(-2(x^2+y^2)/w^2(z)) with
    w^2(z) = w0^2 * (1 + (2*lambda*z/(pi*w0))^2).
    """
    w0_sq = geometry.waist**2
    w_sq = w0_sq * (1.0 + (2.0 * geometry.lambda_c * np.asarray(z) / (math.pi * geometry.waist)) ** 2)
    value = (w0_sq / w_sq) * np.exp(-2.0 * (np.asarray(x) ** 2 + np.asarray(y) ** 2) / w_sq)
    return float(value) if np.ndim(value) == 0 else value


def thermal_occupation(lambda_c: float, temperature: float) -> float:
    """Planck occupation of the cavity mode: 1/(exp(hc/(lambda*kB*T)) - 1)."""
    if temperature < 0.0:
        raise ValueError(f"temperature must be non-negative, got {temperature!r}")
    if lambda_c <= 0.0:
        raise ValueError(f"wavelength must be positive, got {lambda_c!r}")
    if temperature == 0.0:
        return 0.0
    return 1.0 / math.expm1(CONST.hc / (lambda_c * CONST.k_B * temperature))


def free_space_rate(
    species: MolecularSpecies,
    lambda_c: float,
    transition: Transition,
    n_bar: float = 0.0,
    mode: str = "paper",
) -> float:
    """Free-space emission rate in 1/s at wavelength lambda_c.

    Gamma_o = (16*pi^3/(3*eps0*h)) * |mu|^2/lambda^3 * g(J,M) * (2*n_bar+1).
    The prefactor is evaluated from the constants, never hardcoded.
    """
    if lambda_c <= 0.0:
        raise ValueError(f"wavelength must be positive, got {lambda_c!r}")
    if n_bar < 0.0:
        raise ValueError(f"thermal occupation must be non-negative, got {n_bar!r}")
    prefactor = 16.0 * math.pi**3 / (3.0 * CONST.epsilon0 * CONST.h)
    g = float(line_strength(transition, mode=mode))
    return prefactor * species.reduced_dipole**2 / lambda_c**3 * g * (2.0 * n_bar + 1.0)


def purcell_rate(free_rate: float, eta: float) -> float:
    """Cavity-enhanced rate Gamma_c = eta * Gamma_o."""
    if free_rate < 0.0 or eta < 0.0:
        raise ValueError("free rate and enhancement factor must be non-negative")
    return eta * free_rate


def doppler_q_bound(v_max: float) -> float:
    """Largest usable quality factor before Doppler shifts exceed the linewidth.

    The cavity linewidth omega_c/Q must exceed the maximum Doppler shift
    omega_c*v/c, so Q_max = c/v_max.
    """
    if v_max <= 0.0:
        raise ValueError(f"speed must be positive, got {v_max!r}")
    return CONST.c / v_max


def max_thermal_speed(species: MolecularSpecies, temperature: float) -> float:
    """3-sigma thermal speed 3*sqrt(kB*T/m) used for the Doppler check."""
    if temperature <= 0.0:
        raise ValueError(f"temperature must be positive, got {temperature!r}")
    return 3.0 * math.sqrt(CONST.k_B * temperature / species.mass)
