import dataclasses

import pytest

from rotocool import CONST


def test_kelvin_per_wavenumber_cross_check():
    # hc * (1 cm^-1) / k_B must come out at the familiar 1.4388 K
    kelvin_per_cm = CONST.hc * 100.0 / CONST.k_B
    assert kelvin_per_cm == pytest.approx(1.4388, rel=1e-3)


def test_hbar_consistent_with_h():
    import math

    assert CONST.hbar == pytest.approx(CONST.h / (2.0 * math.pi), rel=1e-12)


def test_debye_and_amu_factors():
    assert CONST.debye_to_SI == pytest.approx(3.33564e-30, rel=1e-9)
    assert CONST.amu_to_kg == pytest.approx(1.6605390666e-27, rel=1e-6)


def test_constants_immutable():
    with pytest.raises(dataclasses.FrozenInstanceError):
        CONST.h = 1.0
