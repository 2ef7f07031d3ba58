import pytest

from quantum_prime_functions.number_theory import sieve


@pytest.fixture(scope="session")
def small_table():
    """Primes below 2^12."""
    return sieve(1 << 12, parallel_segments=1)


@pytest.fixture(scope="session")
def table_2_20():
    """Covers 2^20 with room for twin counts at x = 2^20."""
    return sieve((1 << 20) + 64, parallel_segments=2)


@pytest.fixture(scope="session")
def table_2_26():
    return sieve((1 << 26) + 64)
