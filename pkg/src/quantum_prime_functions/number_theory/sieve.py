"""
Segmented sieve of Eratosthenes producing an immutable, packed primality bitmap
with cumulative prime counts at fixed block boundaries.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple
import numpy as np
from ..tools import (
    info,
    debug,
    error,
    CapacityError,
    load_simulation_config,
    validate_below_limit,
    scan_progress
)

MIN_LIMIT = 4


def small_primes(upto: int) -> np.ndarray:
    """All primes <= upto with a plain (unsegmented) numpy sieve."""
    if upto < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(upto + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(upto) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _sieve_segment(lo: int, hi: int, base_primes: np.ndarray, block_bits: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Sieve [lo, hi) and return the packed bits plus prime counts per block.

    lo is a multiple of the block size.
    """
    mask = np.ones(hi - lo, dtype=bool)
    if lo < 2:
        mask[:min(2 - lo, hi - lo)] = False
    for p in base_primes:
        p = int(p)
        square = p * p
        if square >= hi:
            break
        start = max(square, ((lo + p - 1) // p) * p)
        mask[start - lo::p] = False

    padded = -(-mask.size // block_bits) * block_bits
    counts = np.zeros(padded, dtype=bool)
    counts[:mask.size] = mask
    block_counts = counts.reshape(-1, block_bits).sum(axis=1, dtype=np.int64)
    return np.packbits(mask, bitorder='little'), block_counts


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """
    Primality bitmap over [0, limit).

    Bit x (little-endian within each byte) is set iff x is prime. cum[k] holds
    the number of primes below k * 2^block_bits. Arrays are read-only, so a
    table can be shared across threads.
    """
    limit: int
    bits: np.ndarray
    cum: np.ndarray
    block_bits: int
    segment_bits: int

    @property
    def block_size(self) -> int:
        return 1 << self.block_bits

    @property
    def prime_count(self) -> int:
        """popcount of the whole bitmap, i.e. pi(limit - 1)."""
        return int(self.cum[-1])

    def is_prime(self, x: int) -> bool:
        validate_below_limit(x, self.limit, component="sieve")
        return bool((int(self.bits[x >> 3]) >> (x & 7)) & 1)

    def lookup(self, values: np.ndarray) -> np.ndarray:
        """Vectorized primality lookup; every value must lie in [0, limit)."""
        values = np.asarray(values, dtype=np.int64)
        return ((self.bits[values >> 3] >> (values & 7).astype(np.uint8)) & 1).astype(bool)

    def pi(self, x: int) -> int:
        """Number of primes <= x."""
        validate_below_limit(x, self.limit, component="sieve")
        end = x + 1
        block = end >> self.block_bits
        start = block << self.block_bits
        if start == end:
            return int(self.cum[block])
        first_byte = start >> 3
        last_byte = (end + 7) >> 3
        partial = np.unpackbits(self.bits[first_byte:last_byte], bitorder='little', count=end - start)
        return int(self.cum[block]) + int(partial.sum(dtype=np.int64))

    def iter_primes(self, upto: int) -> Iterator[np.ndarray]:
        """Ascending int64 arrays of the primes <= upto, one per 2^segment_bits segment."""
        validate_below_limit(upto, self.limit, component="sieve", what="upto")
        end = upto + 1
        chunk = 1 << self.segment_bits
        for lo in range(0, end, chunk):
            hi = min(lo + chunk, end)
            flags = np.unpackbits(self.bits[lo >> 3:(hi + 7) >> 3], bitorder='little', count=hi - lo)
            yield np.flatnonzero(flags).astype(np.int64) + lo

    def primes(self, upto: int) -> np.ndarray:
        """
        Ascending int64 array of primes <= upto.

        The whole list is materialized; counters walk iter_primes instead.
        """
        try:
            pieces = list(self.iter_primes(upto))
            return np.concatenate(pieces) if pieces else np.array([], dtype=np.int64)
        except MemoryError as e:
            error("Prime list does not fit in memory",
                  component="sieve",
                  upto=upto,
                  error=str(e))
            raise CapacityError(f"not enough memory to list the primes up to {upto}") from e

    def mask(self, n: int) -> np.ndarray:
        """Boolean primality vector of length 2^n."""
        size = 1 << n
        if size > self.limit:
            error("Table too small for requested mask",
                  component="sieve",
                  n=n,
                  limit=self.limit)
            raise CapacityError(f"table limit {self.limit} does not cover 2^{n}")
        return np.unpackbits(self.bits[:(size + 7) >> 3], bitorder='little', count=size).astype(bool)

    def pi_power_of_two(self, n: int) -> int:
        """pi(2^n), which equals pi(2^n - 1) because 2^n is composite for n > 1."""
        size = 1 << n
        if size > self.limit:
            error("Table too small for pi(2^n)",
                  component="sieve",
                  n=n,
                  limit=self.limit)
            raise CapacityError(f"table limit {self.limit} does not cover 2^{n}")
        return self.pi(size - 1)


def sieve(limit: int, config: Optional[Dict] = None, parallel_segments: Optional[int] = None,
          progress: bool = False) -> PrimeTable:
    """
    Build a PrimeTable over [0, limit).

    Segments of 2^segment_bits integers are sieved independently (optionally on
    a thread pool) and assembled in order, so the bitmap does not depend on the
    number of workers.

    Args:
        limit: Exclusive upper bound, 4 <= limit <= sieve.max_limit
        config: Simulation configuration; loaded when omitted
        parallel_segments: Worker count override (else MAX_PARALLEL_SEGMENTS / config)
        progress: Show a progress bar on stderr

    Returns:
        PrimeTable
    """
    config = config or load_simulation_config()
    sieve_config = config["sieve"]
    max_limit = int(sieve_config["max_limit"])
    segment_bits = int(sieve_config["segment_bits"])
    block_bits = int(sieve_config["cum_block_bits"])

    if limit < MIN_LIMIT or limit > max_limit:
        error("Sieve limit out of range",
              component="sieve",
              limit=limit,
              max_limit=max_limit)
        raise CapacityError(f"sieve limit must lie in [{MIN_LIMIT}, {max_limit}] (got {limit})")

    workers = max(1, int(parallel_segments or sieve_config.get("parallel_segments", 1)))
    segment = 1 << segment_bits
    bounds = [(lo, min(lo + segment, limit)) for lo in range(0, limit, segment)]
    base_primes = small_primes(math.isqrt(limit - 1))

    info("Starting sieve",
         component="sieve",
         limit=limit,
         segments=len(bounds),
         workers=workers)

    def run_segment(bound):
        return _sieve_segment(bound[0], bound[1], base_primes, 1 << block_bits)

    def collect(mapped):
        if progress:
            mapped = scan_progress(mapped, desc="sieve", total=len(bounds))
        return list(mapped)

    try:
        if workers == 1 or len(bounds) == 1:
            results = collect(map(run_segment, bounds))
        else:
            # executor.map yields in submission order
            with ThreadPoolExecutor(max_workers=workers) as executor:
                results = collect(executor.map(run_segment, bounds))
    except MemoryError as e:
        error("Sieve ran out of memory",
              component="sieve",
              limit=limit,
              error=str(e))
        raise CapacityError(f"not enough memory to sieve up to {limit}") from e

    bits = np.concatenate([packed for packed, _ in results])
    block_counts = np.concatenate([counts for _, counts in results])
    cum = np.zeros(block_counts.size + 1, dtype=np.int64)
    np.cumsum(block_counts, out=cum[1:])

    bits.setflags(write=False)
    cum.setflags(write=False)

    table = PrimeTable(limit=limit, bits=bits, cum=cum, block_bits=block_bits, segment_bits=segment_bits)
    debug("Segments assembled", component="sieve", bytes=int(bits.nbytes))
    info("Sieve completed",
         component="sieve",
         limit=limit,
         prime_count=table.prime_count)
    return table
