import numpy as np
import pytest

from quantum_prime_functions.number_theory import (
    PrimeTable,
    sieve,
    small_primes,
    is_prime,
    WitnessSet
)
from quantum_prime_functions.tools import CapacityError, RangeError, load_simulation_config


class TestSmallPrimes:

    def test_first_primes(self):
        assert small_primes(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_below_two_is_empty(self):
        assert small_primes(1).size == 0


class TestPrimeTable:

    @pytest.mark.parametrize("x,expected", [(2, 1), (3, 2), (10, 4), (100, 25), (101, 26), (1000, 168)])
    def test_pi_values(self, small_table, x, expected):
        assert small_table.pi(x) == expected

    def test_sieve_returns_table(self, small_table):
        assert isinstance(small_table, PrimeTable)
        assert small_table.limit == 1 << 12

    def test_pi_at_zero_and_one(self, small_table):
        assert small_table.pi(0) == 0
        assert small_table.pi(1) == 0

    @pytest.mark.parametrize("n,expected", [(2, 2), (3, 4), (10, 172), (12, 564)])
    def test_pi_power_of_two(self, small_table, n, expected):
        assert small_table.pi_power_of_two(n) == expected

    def test_pi_2_20(self, table_2_20):
        assert table_2_20.pi_power_of_two(20) == 82025

    def test_pi_2_26(self, table_2_26):
        assert table_2_26.pi_power_of_two(26) == 3957809

    def test_is_prime_matches_primes(self, small_table):
        primes = set(small_table.primes(4095).tolist())
        assert all(small_table.is_prime(x) == (x in primes) for x in range(4096))

    def test_primes_upto_is_inclusive(self, small_table):
        assert small_table.primes(13).tolist() == [2, 3, 5, 7, 11, 13]

    def test_mask_length_and_count(self, small_table):
        mask = small_table.mask(10)
        assert mask.shape == (1024,)
        assert int(mask.sum()) == 172
        assert mask[2] and mask[3] and not mask[9]

    def test_mask_beyond_limit(self, small_table):
        with pytest.raises(CapacityError, match="does not cover"):
            small_table.mask(13)

    def test_lookup_vectorized(self, small_table):
        assert small_table.lookup(np.array([1, 2, 4, 97])).tolist() == [False, True, False, True]

    def test_x_at_limit_is_range_error(self, small_table):
        with pytest.raises(RangeError):
            small_table.pi(small_table.limit)
        with pytest.raises(ValueError):
            small_table.is_prime(-1)

    def test_bitmap_is_read_only(self, small_table):
        with pytest.raises(ValueError):
            small_table.bits[0] = 0


class TestSieve:

    def test_limit_below_four(self):
        with pytest.raises(CapacityError, match="sieve limit"):
            sieve(3)

    def test_limit_above_capacity(self):
        config = load_simulation_config()
        with pytest.raises(CapacityError):
            sieve(int(config["sieve"]["max_limit"]) + 1, config=config)

    def test_parallel_segments_give_identical_bitmap(self):
        config = load_simulation_config()
        config["sieve"]["segment_bits"] = 16
        single = sieve(300_001, config=config, parallel_segments=1)
        threaded = sieve(300_001, config=config, parallel_segments=4)
        assert np.array_equal(single.bits, threaded.bits)
        assert np.array_equal(single.cum, threaded.cum)
        assert threaded.pi(300_000) == 25997

    def test_segment_boundaries(self):
        config = load_simulation_config()
        config["sieve"]["segment_bits"] = 10
        config["sieve"]["cum_block_bits"] = 8
        table = sieve(5000, config=config, parallel_segments=3)
        reference = set(small_primes(4999).tolist())
        assert table.prime_count == len(reference)
        assert all(table.pi(x) == sum(1 for p in reference if p <= x) for x in range(1000, 1040))

    def test_agrees_with_deterministic_miller_rabin(self, table_2_20):
        witnesses = WitnessSet.deterministic()
        mask = table_2_20.mask(20)
        assert all(is_prime(x, witnesses) == bool(mask[x]) for x in range(1 << 20))
