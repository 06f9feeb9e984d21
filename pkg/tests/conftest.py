import pytest
from hypothesis import settings

from bosewitness.constants import lookup_species, reduced_units
from bosewitness.gas import GasSpec

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def reduced():
    """hbar = k_B = 1 (with m = L = 1 chosen per test)."""
    return reduced_units()


@pytest.fixture
def ketterle():
    """Sodium-23, N = 7e5 in a 10 um box."""
    return GasSpec(3, 1e-5, lookup_species("sodium-23").mass, 7e5)
