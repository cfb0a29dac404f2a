"""Independent oracles the tests check the implementation against.

Everything here is computed from raw constants or by brute force, never by
calling the code path under test: Boltzmann sums from the cm^-1 constants,
resonant fields by bracketed root finding, mode volumes by quadrature.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.constants import atomic_mass, c, h, k
from scipy.optimize import brentq

HC = h * c
DEBYE = 3.33564e-30

# reference molecules, raw cm^-1 / Debye / amu values
CSF_RAW = dict(be=0.1844, alpha=1.18e-3, we=352.56, wexe=1.61, mu_d=7.87, mass_amu=151.9, omega=0.0)
OH_RAW = dict(be=18.91, alpha=0.724, we=3737.76, wexe=84.881, mu_d=1.6676, mass_amu=17.01, omega=0.5)


def rot_energy_j(raw: dict, j: float) -> float:
    """n=0 rotational energy in J from the raw cm^-1 constants."""
    b_eff = (raw["be"] - raw["alpha"] / 2.0) * 100.0
    return HC * b_eff * (j * (j + 1.0) - raw["omega"] ** 2)


def boltzmann_level_populations(raw: dict, temperature: float, j_values) -> dict:
    """Level populations (2J+1)*exp(-E/kT), normalized, by brute-force sum."""
    weights = {
        j: (2.0 * j + 1.0) * math.exp(-rot_energy_j(raw, j) / (k * temperature))
        for j in j_values
    }
    total = sum(weights.values())
    return {j: w / total for j, w in weights.items()}


def resonant_field_by_bisection(species, lambda_c: float, transition, spacing_fn) -> float:
    """Solve spacing(E) = hc/lambda for E by bracketed root finding.

    Independent of the closed-form solver: only evaluates the spacing.
    """
    target = HC / lambda_c

    def detune(e_field: float) -> float:
        return spacing_fn(species, 0, transition, e_field) - target

    if abs(detune(0.0)) <= 1e-12 * target:  # bare spacing already resonant
        return 0.0
    hi = 1.0
    while detune(0.0) * detune(hi) > 0.0:
        hi *= 10.0
        if hi > 1e15:
            raise ValueError("no bracket: transition cannot be tuned to resonance")
    return brentq(detune, 0.0, hi, xtol=1e-30, rtol=1e-14)


def mode_volume_by_quadrature(intensity_fn, geometry, n_xy: int = 161, n_z: int = 81) -> float:
    """Integrate |u00|^2 over a box wide enough to hold the Gaussian.

    Midpoint rule on all three axes; the box spans the mirror gap in z and
    six waists transversally.
    """
    half_span = 6.0 * geometry.waist
    dx = 2.0 * half_span / n_xy
    dz = geometry.length / n_z
    xs = -half_span + dx * (np.arange(n_xy) + 0.5)
    zs = -geometry.length / 2.0 + dz * (np.arange(n_z) + 0.5)
    xx, yy = np.meshgrid(xs, xs, indexing="ij")
    total = 0.0
    for z in zs:
        total += np.sum(intensity_fn(geometry, xx, yy, z)) * dx * dx * dz
    return float(total)
