"""CODATA constants and the conversion factors used at the ingestion boundary.

Everything downstream of ingestion runs in strict SI: term values in 1/m,
energies in J, dipole moments in C*m, electric fields in V/m.  Conversion
from the spectroscopist's cm^-1 / Debye / amu happens exactly once, in
:func:`rotocool.species.ingest_species`.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy import constants as _codata


@dataclass(frozen=True)
class PhysicalConstants:
    """Fixed CODATA values plus the two ingestion conversion factors."""

    h: float = _codata.h                      # J*s
    hbar: float = _codata.hbar                # J*s
    c: float = _codata.c                      # m/s
    epsilon0: float = _codata.epsilon_0       # F/m
    k_B: float = _codata.k                    # J/K
    debye_to_SI: float = 3.33564e-30          # C*m per Debye
    amu_to_kg: float = _codata.atomic_mass    # kg per amu

    @property
    def hc(self) -> float:
        """h*c in J*m; multiply by a term value in 1/m to get joules."""
        return self.h * self.c


CONST = PhysicalConstants()

# wavenumbers: 1 cm^-1 = 100 m^-1
CM_TO_M = 100.0
