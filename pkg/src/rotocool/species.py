"""Molecular species records and the cm^-1 / Debye / amu ingestion boundary."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .constants import CM_TO_M, CONST


class SpeciesError(ValueError):
    """A species record violates a physical constraint."""


class UnknownSpeciesError(KeyError):
    """A species name is not in the built-in registry."""


@dataclass(frozen=True)
class MolecularSpecies:
    """Spectroscopic constants of one diatomic species, in SI.

    Term values (te, omega_e, omega_e_x_e, b_e, alpha_e) are in 1/m, dipole
    moments in C*m, the mass in kg.  two_omega stores 2*Omega so half-integer
    electronic angular momenta stay exact; Omega is the lowest rotational
    level of the manifold.
    """

    name: str
    mass: float
    two_omega: int
    te: float
    omega_e: float
    omega_e_x_e: float
    b_e: float
    alpha_e: float
    dipole: float
    reduced_dipole: float

    @property
    def ladder_spacing_unit(self) -> float:
        """2*B_e - alpha_e in 1/m, the n=0 rotational ladder unit."""
        return 2.0 * self.b_e - self.alpha_e


# raw-record field names, shared with the [species] config section
RAW_FIELDS = (
    "be_cm",
    "alpha_e_cm",
    "we_cm",
    "wexe_cm",
    "te_cm",
    "dipole_debye",
    "mass_amu",
    "omega_x2",
)


def ingest_species(raw: Mapping[str, object], name: str = "custom") -> MolecularSpecies:
    """Convert a cm^-1 / Debye / amu record into an SI MolecularSpecies.

    Rejects unphysical records with a message naming the offending field.
    """
    values: dict[str, float] = {}
    for key in RAW_FIELDS:
        if key not in raw:
            raise SpeciesError(f"missing species field '{key}'")
        val = raw[key]
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise SpeciesError(
                f"species field '{key}': expected a number, got {type(val).__name__}"
            )
        val = float(val)
        if not math.isfinite(val):
            raise SpeciesError(f"species field '{key}': value is not finite")
        values[key] = val

    if values["be_cm"] <= 0.0:
        raise SpeciesError("non-positive B_e (field 'be_cm')")
    if values["dipole_debye"] <= 0.0:
        raise SpeciesError("non-positive dipole (field 'dipole_debye')")
    if values["alpha_e_cm"] < 0.0:
        raise SpeciesError("negative alpha_e (field 'alpha_e_cm')")
    if 2.0 * values["be_cm"] <= values["alpha_e_cm"]:
        raise SpeciesError("2*B_e <= alpha_e (fields 'be_cm'/'alpha_e_cm')")
    if values["mass_amu"] <= 0.0:
        raise SpeciesError("non-positive mass (field 'mass_amu')")
    two_omega = values["omega_x2"]
    if two_omega < 0 or two_omega != int(two_omega):
        raise SpeciesError("species field 'omega_x2': expected a non-negative integer")

    dipole = values["dipole_debye"] * CONST.debye_to_SI
    return MolecularSpecies(
        name=name,
        mass=values["mass_amu"] * CONST.amu_to_kg,
        two_omega=int(two_omega),
        te=values["te_cm"] * CM_TO_M,
        omega_e=values["we_cm"] * CM_TO_M,
        omega_e_x_e=values["wexe_cm"] * CM_TO_M,
        b_e=values["be_cm"] * CM_TO_M,
        alpha_e=values["alpha_e_cm"] * CM_TO_M,
        dipole=dipole,
        reduced_dipole=dipole,
    )


def species_to_raw(species: MolecularSpecies) -> dict[str, float]:
    """Express a species back in cm^-1 / Debye / amu (inverse of ingestion)."""
    return {
        "be_cm": species.b_e / CM_TO_M,
        "alpha_e_cm": species.alpha_e / CM_TO_M,
        "we_cm": species.omega_e / CM_TO_M,
        "wexe_cm": species.omega_e_x_e / CM_TO_M,
        "te_cm": species.te / CM_TO_M,
        "dipole_debye": species.dipole / CONST.debye_to_SI,
        "mass_amu": species.mass / CONST.amu_to_kg,
        "omega_x2": float(species.two_omega),
    }


# Built-in species.  B_e/alpha_e/omega_e/dipole are the working constants of
# the two reference molecules; masses are standard atomic weights.
_BUILTIN_RAW = {
    "CsF": {
        "be_cm": 0.1844,
        "alpha_e_cm": 1.18e-3,
        "we_cm": 352.56,
        "wexe_cm": 1.61,
        "te_cm": 0.0,
        "dipole_debye": 7.87,
        "mass_amu": 151.9,
        "omega_x2": 0,
    },
    "OH": {
        "be_cm": 18.91,
        "alpha_e_cm": 0.724,
        "we_cm": 3737.76,
        "wexe_cm": 84.881,
        "te_cm": 0.0,
        "dipole_debye": 1.6676,
        "mass_amu": 17.01,
        "omega_x2": 1,
    },
}

_REGISTRY = {name: ingest_species(rec, name=name) for name, rec in _BUILTIN_RAW.items()}


def builtin_registry() -> tuple[MolecularSpecies, ...]:
    """All built-in species."""
    return tuple(_REGISTRY.values())


def get_species(name: str) -> MolecularSpecies:
    """Look up a built-in species by name."""
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise UnknownSpeciesError(f"unknown species '{name}' (built-in: {known})") from None
