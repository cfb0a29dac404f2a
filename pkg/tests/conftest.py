import pytest

from rotocool import get_species


@pytest.fixture(scope="session")
def csf():
    return get_species("CsF")


@pytest.fixture(scope="session")
def oh():
    return get_species("OH")
