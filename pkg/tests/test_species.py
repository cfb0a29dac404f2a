import math

import pytest
from hypothesis import given, strategies as st

from rotocool import (
    CONST,
    SpeciesError,
    UnknownSpeciesError,
    builtin_registry,
    get_species,
    ingest_species,
    species_to_raw,
)

CSF_RAW = {
    "be_cm": 0.1844,
    "alpha_e_cm": 1.18e-3,
    "we_cm": 352.56,
    "wexe_cm": 1.61,
    "te_cm": 0.0,
    "dipole_debye": 7.87,
    "mass_amu": 151.9,
    "omega_x2": 0,
}


def test_ingest_csf_converts_to_si():
    sp = ingest_species(CSF_RAW, name="CsF")
    assert sp.b_e == pytest.approx(18.44, rel=1e-12)
    assert sp.alpha_e == pytest.approx(0.118, rel=1e-12)
    assert sp.dipole == pytest.approx(2.625e-29, rel=1e-3)
    assert sp.mass == pytest.approx(151.9 * CONST.amu_to_kg, rel=1e-12)
    assert sp.reduced_dipole == sp.dipole


def test_ingest_oh_converts_to_si(oh):
    assert oh.b_e == pytest.approx(1891.0, rel=1e-12)
    assert oh.alpha_e == pytest.approx(72.4, rel=1e-12)
    assert oh.dipole == pytest.approx(5.562e-30, rel=1e-3)
    assert oh.two_omega == 1


@pytest.mark.parametrize(
    "patch, message",
    [
        ({"dipole_debye": 0.0}, "non-positive dipole"),
        ({"dipole_debye": -1.0}, "non-positive dipole"),
        ({"be_cm": 0.0}, "non-positive B_e"),
        ({"be_cm": -0.1}, "non-positive B_e"),
        ({"alpha_e_cm": 0.4}, "2\\*B_e <= alpha_e"),
        ({"alpha_e_cm": -1e-3}, "negative alpha_e"),
        ({"mass_amu": 0.0}, "non-positive mass"),
        ({"omega_x2": -1}, "omega_x2"),
        ({"omega_x2": 0.5}, "omega_x2"),
        ({"be_cm": float("nan")}, "not finite"),
        ({"be_cm": "fast"}, "expected a number"),
    ],
)
def test_ingest_rejects_bad_records(patch, message):
    raw = dict(CSF_RAW)
    raw.update(patch)
    with pytest.raises(SpeciesError, match=message):
        ingest_species(raw)


def test_ingest_rejects_missing_field():
    raw = dict(CSF_RAW)
    del raw["wexe_cm"]
    with pytest.raises(SpeciesError, match="wexe_cm"):
        ingest_species(raw)


def test_round_trip_csf_exact():
    back = species_to_raw(ingest_species(CSF_RAW))
    for key, value in CSF_RAW.items():
        assert back[key] == pytest.approx(value, rel=1e-12, abs=1e-300)


@given(
    be=st.floats(1e-3, 1e3),
    alpha_frac=st.floats(0.0, 0.5),
    we=st.floats(1.0, 1e4),
    wexe=st.floats(0.0, 100.0),
    te=st.floats(0.0, 1e4),
    mu=st.floats(0.01, 15.0),
    mass=st.floats(1.0, 300.0),
    omega_x2=st.integers(0, 4),
)
def test_round_trip_random_species(be, alpha_frac, we, wexe, te, mu, mass, omega_x2):
    raw = {
        "be_cm": be,
        "alpha_e_cm": alpha_frac * be,  # keeps 2*Be > alpha_e
        "we_cm": we,
        "wexe_cm": wexe,
        "te_cm": te,
        "dipole_debye": mu,
        "mass_amu": mass,
        "omega_x2": omega_x2,
    }
    back = species_to_raw(ingest_species(raw))
    for key, value in raw.items():
        assert math.isclose(back[key], value, rel_tol=1e-12, abs_tol=1e-300)


def test_registry_contains_reference_molecules(csf, oh):
    names = {sp.name for sp in builtin_registry()}
    assert {"CsF", "OH"} <= names
    assert csf.two_omega == 0
    assert oh.two_omega == 1


def test_registry_lookup_unknown():
    with pytest.raises(UnknownSpeciesError, match="XYZ"):
        get_species("XYZ")
