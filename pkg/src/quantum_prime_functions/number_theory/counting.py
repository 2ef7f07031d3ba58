"""
Prime counting functions on top of a PrimeTable: pi, progressions, prime pairs
and the mod-4 Chebyshev and twin-prime biases.

Counters walk the table one sieve segment at a time, so memory stays bounded by
the segment size rather than by pi(x).
"""
import math
from dataclasses import dataclass, asdict
from typing import Dict, Iterator, List, Tuple, Union
import numpy as np
import pandas as pd
from ..tools import info, error, DomainError, RangeError, validate_below_limit
from .sieve import PrimeTable

TwinClass = Union[int, str]

BIAS_COLUMNS = ["x", "pi41", "pi43", "delta", "pi2_1", "pi2_3", "delta2"]


@dataclass(frozen=True)
class BiasReport:
    x: int
    pi41: int
    pi43: int
    delta: int
    pi2_1: int
    pi2_3: int
    delta2: int

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


def pi(table: PrimeTable, x: int) -> int:
    """Number of primes <= x."""
    return table.pi(x)


def pi_ab(table: PrimeTable, a: int, b: int, x: int) -> int:
    """Number of primes p <= x with p = b (mod a); requires gcd(a, b) = 1."""
    if a < 1 or math.gcd(a, b) != 1:
        error("Progression is not coprime",
              component="counting",
              a=a,
              b=b)
        raise DomainError(f"gcd(a, b) = 1 required (got a={a}, b={b})")
    return sum(int(np.count_nonzero(primes % a == b % a)) for primes in table.iter_primes(x))


def _pair_segments(table: PrimeTable, x: int, gap: int) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """
    Per segment: the primes <= x and the lower members p of pairs (p, p + gap)
    whose upper member falls in that segment.
    """
    validate_below_limit(x, table.limit, component="counting")
    for primes in table.iter_primes(x):
        upper = primes[primes >= gap + 2]
        lower = upper - gap
        yield primes, lower[table.lookup(lower)]


def _pair_residue_counts(table: PrimeTable, x: int, gap: int, modulus: int) -> np.ndarray:
    """Pairs with both members <= x, bucketed by p mod modulus."""
    counts = np.zeros(modulus, dtype=np.int64)
    for _, lower in _pair_segments(table, x, gap):
        counts += np.bincount(lower % modulus, minlength=modulus)
    return counts


def pi_gap(table: PrimeTable, x: int, k: int) -> int:
    """pi_k(x): prime pairs (p, p + k) with both members <= x, k even >= 2."""
    if k < 2 or k % 2:
        error("Pair gap must be even and positive",
              component="counting",
              k=k)
        raise DomainError(f"even gap k >= 2 required (got {k})")
    return int(_pair_residue_counts(table, x, k, 1)[0])


def _twin_count(table: PrimeTable, x: int, residue_class: TwinClass) -> int:
    if residue_class == "all":
        return int(_pair_residue_counts(table, x, 2, 1)[0])
    if residue_class not in (1, 3):
        raise DomainError(f"residue class must be 1, 3 or 'all' (got {residue_class!r})")
    return int(_pair_residue_counts(table, x, 2, 4)[residue_class])


def pi_twin(table: PrimeTable, x: int, residue_class: TwinClass = "all") -> int:
    """
    Twin-prime pairs (p, p + 2) with both members <= x.

    Args:
        table: Prime table with x + 2 < table.limit
        x: Bound
        residue_class: 1 or 3 for p mod 4, or 'all'
    """
    if x + 2 >= table.limit:
        error("Twin count needs x + 2 inside the table",
              component="counting",
              x=x,
              limit=table.limit)
        raise RangeError(f"x + 2 = {x + 2} outside the table range [0, {table.limit})")
    return _twin_count(table, x, residue_class)


def pi_twin_mod8(table: PrimeTable, x: int, residue: int) -> int:
    """Twin pairs with both members <= x and p = residue (mod 8)."""
    if residue not in (1, 3, 5, 7):
        raise DomainError(f"odd residue mod 8 required (got {residue})")
    return int(_pair_residue_counts(table, x, 2, 8)[residue])


def twin_bias(table: PrimeTable, x: int) -> int:
    """Delta_2(x) = pi_2^(3)(x) - pi_2^(1)(x)."""
    counts = _pair_residue_counts(table, x, 2, 4)
    return int(counts[3] - counts[1])


def chebyshev_bias(table: PrimeTable, x: int) -> BiasReport:
    """Full mod-4 bias report at x."""
    prime_counts = np.zeros(4, dtype=np.int64)
    pair_counts = np.zeros(4, dtype=np.int64)
    for primes, lower in _pair_segments(table, x, 2):
        prime_counts += np.bincount(primes % 4, minlength=4)
        pair_counts += np.bincount(lower % 4, minlength=4)
    pi41, pi43 = int(prime_counts[1]), int(prime_counts[3])
    pi2_1, pi2_3 = int(pair_counts[1]), int(pair_counts[3])
    return BiasReport(x=x, pi41=pi41, pi43=pi43, delta=pi43 - pi41,
                      pi2_1=pi2_1, pi2_3=pi2_3, delta2=pi2_3 - pi2_1)


def bias_scan(table: PrimeTable, x_max: int, step: int) -> pd.DataFrame:
    """
    BiasReport rows at x = step, 2 step, ... <= x_max.

    Returns:
        DataFrame with columns x, pi41, pi43, delta, pi2_1, pi2_3, delta2
    """
    if step < 1:
        raise DomainError(f"step >= 1 required (got {step})")
    validate_below_limit(x_max, table.limit, component="counting", what="x_max")

    xs = np.arange(step, x_max + 1, step, dtype=np.int64)
    # columns: pi41, pi43, pi2_1, pi2_3
    counts = np.zeros((xs.size, 4), dtype=np.int64)
    running = np.zeros(4, dtype=np.int64)
    chunk = 1 << table.segment_bits
    for index, (primes, lower) in enumerate(_pair_segments(table, x_max, 2)):
        first = np.searchsorted(xs, index * chunk, side="left")
        last = np.searchsorted(xs, (index + 1) * chunk, side="left")
        # a pair counts once its upper member p + 2 is <= x
        upper = lower + 2
        series = (primes[primes % 4 == 1], primes[primes % 4 == 3],
                  upper[lower % 4 == 1], upper[lower % 4 == 3])
        for column, values in enumerate(series):
            counts[first:last, column] = running[column] + np.searchsorted(values, xs[first:last], side="right")
            running[column] += values.size

    pi41, pi43, pi2_1, pi2_3 = counts.T
    frame = pd.DataFrame({
        "x": xs,
        "pi41": pi41,
        "pi43": pi43,
        "delta": pi43 - pi41,
        "pi2_1": pi2_1,
        "pi2_3": pi2_3,
        "delta2": pi2_3 - pi2_1,
    }, columns=BIAS_COLUMNS)

    info("Bias scan completed",
         component="counting",
         x_max=x_max,
         step=step,
         rows=len(frame))
    return frame


def bias_sign_changes(table: PrimeTable, x_max: int) -> List[int]:
    """
    Points where Delta(x) crosses between non-negative and negative.

    Delta only moves at odd primes, so each returned x is a prime: p = 1 mod 4
    where Delta drops below zero, p = 3 mod 4 where it returns to zero.
    """
    validate_below_limit(x_max, table.limit, component="counting", what="x_max")
    changes: List[int] = []
    delta = 0
    was_negative = False
    for primes in table.iter_primes(x_max):
        odd_primes = primes[primes > 2]
        if odd_primes.size == 0:
            continue
        steps = np.where(odd_primes % 4 == 3, 1, -1)
        running = delta + np.cumsum(steps)
        negative = running < 0
        before = np.concatenate(([was_negative], negative[:-1]))
        changes.extend(int(p) for p in odd_primes[negative != before])
        delta = int(running[-1])
        was_negative = bool(negative[-1])
    return changes


def euler_phi(a: int) -> int:
    """Euler totient by trial factorization."""
    if a < 1:
        raise DomainError(f"a >= 1 required (got {a})")
    result = a
    remaining = a
    p = 2
    while p * p <= remaining:
        if remaining % p == 0:
            while remaining % p == 0:
                remaining //= p
            result -= result // p
        p += 1
    if remaining > 1:
        result -= result // remaining
    return result
