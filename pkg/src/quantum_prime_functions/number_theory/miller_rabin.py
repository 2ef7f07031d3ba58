"""
Miller-Rabin primality: decomposition x - 1 = d * 2^s, single-witness strong
probable-prime test, witness sets and the composite test driver.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple
import numpy as np
from ..tools import (
    info,
    error,
    DomainError,
    WitnessGuardError,
    load_simulation_config,
    validate_odd_at_least_three
)


class Verdict(str, Enum):
    COMPOSITE_PROVEN = "composite-proven"
    PROBABLE_PRIME = "probable-prime"


class WitnessMode(str, Enum):
    DETERMINISTIC = "deterministic"
    PROBABILISTIC = "probabilistic"


@dataclass(frozen=True)
class MrDecomposition:
    x: int
    d: int
    s: int


@dataclass(frozen=True)
class WitnessSet:
    """
    Witnesses used by is_prime and the oracle pipeline.

    Deterministic sets hold a fixed ordered list. Probabilistic sets draw k
    witnesses uniformly from [2, x - 2] for each tested x, from a generator
    seeded with (seed, x) so any x can be replayed on its own.
    """
    mode: WitnessMode
    witnesses: Tuple[int, ...] = ()
    k: int = 0
    seed: Optional[int] = None

    @classmethod
    def deterministic(cls, witnesses: Optional[Tuple[int, ...]] = None, config: Optional[Dict] = None) -> "WitnessSet":
        if witnesses is None:
            config = config or load_simulation_config()
            witnesses = config["miller_rabin"]["deterministic_witnesses"]
        witnesses = tuple(int(a) for a in witnesses)
        if not witnesses or any(a < 2 for a in witnesses):
            error("Invalid witness list",
                  component="miller_rabin",
                  witnesses=list(witnesses))
            raise DomainError(f"witnesses must be integers >= 2 (got {list(witnesses)})")
        return cls(mode=WitnessMode.DETERMINISTIC, witnesses=witnesses, k=len(witnesses))

    @classmethod
    def probabilistic(cls, k: int, seed: Optional[int] = None, config: Optional[Dict] = None) -> "WitnessSet":
        if k < 1:
            raise DomainError(f"k >= 1 witnesses required (got {k})")
        if seed is None:
            config = config or load_simulation_config()
            seed = int(config["miller_rabin"]["default_seed"])
        return cls(mode=WitnessMode.PROBABILISTIC, k=k, seed=seed)

    def witnesses_for(self, x: int) -> Tuple[int, ...]:
        """
        The witnesses tested for x, guard a < x applied.

        Probabilistic draws are capped at bit_length(x)^2 witnesses.
        """
        if self.mode == WitnessMode.DETERMINISTIC:
            return tuple(a for a in self.witnesses if a < x)
        if x == 3:
            return (2,)
        count = min(self.k, x.bit_length() ** 2)
        rng = np.random.default_rng([self.seed, x])
        return tuple(int(a) for a in rng.integers(2, x - 1, size=count))


def mr_decompose(x: int) -> MrDecomposition:
    """Split x - 1 = d * 2^s with d odd; s is the trailing-zero count of x - 1."""
    validate_odd_at_least_three(x, component="miller_rabin")
    m = x - 1
    s = (m & -m).bit_length() - 1
    return MrDecomposition(x=x, d=m >> s, s=s)


def mr_witness_test(x: int, a: int, decomposition: Optional[MrDecomposition] = None) -> Verdict:
    """
    Strong probable-prime test of x to base a.

    Composite is proven iff a^d != 1 and a^(2^r d) != -1 (mod x) for every 0 <= r < s.

    Raises:
        WitnessGuardError: a >= x
        DomainError: x even or < 3, a < 1
    """
    validate_odd_at_least_three(x, component="miller_rabin")
    if a >= x:
        error("Witness not below tested number",
              component="miller_rabin",
              x=x,
              a=a)
        raise WitnessGuardError(f"witness a = {a} must be smaller than x = {x}")
    if a < 1:
        raise DomainError(f"witness a >= 1 required (got {a})")

    decomposition = decomposition or mr_decompose(x)
    residue = pow(a, decomposition.d, x)
    if residue == 1 or residue == x - 1:
        return Verdict.PROBABLE_PRIME
    for _ in range(decomposition.s - 1):
        residue = residue * residue % x
        if residue == x - 1:
            return Verdict.PROBABLE_PRIME
    return Verdict.COMPOSITE_PROVEN


def is_prime(x: int, ws: Optional[WitnessSet] = None) -> bool:
    """
    Miller-Rabin primality with the given witness set (deterministic default).

    Witnesses a >= x are skipped. An odd x >= 3 with no remaining witness is
    reported prime vacuously; the deterministic default always keeps a = 2.
    """
    if x < 2:
        return False
    if x == 2:
        return True
    if x % 2 == 0:
        return False
    ws = ws or WitnessSet.deterministic()
    decomposition = mr_decompose(x)
    return all(
        mr_witness_test(x, a, decomposition) == Verdict.PROBABLE_PRIME
        for a in ws.witnesses_for(x)
    )


def false_prime_rate(ws: WitnessSet, samples: int, bound: int, seed: int) -> float:
    """
    Empirical rate at which `ws` accepts random odd composites below `bound`.

    Compositeness is decided with the deterministic witness set, exact far
    beyond any bound used here.

    Args:
        ws: Witness set under test (usually probabilistic)
        samples: Number of composites to draw
        bound: Exclusive upper bound for the sampled composites
        seed: Generator seed

    Returns:
        Accepted composites divided by samples
    """
    if bound < 16:
        raise DomainError(f"bound >= 16 required (got {bound})")
    reference = WitnessSet.deterministic()
    rng = np.random.default_rng(seed)
    accepted = 0
    drawn = 0
    while drawn < samples:
        candidate = int(rng.integers(4, bound // 2)) * 2 + 1
        if candidate >= bound or is_prime(candidate, reference):
            continue
        drawn += 1
        accepted += is_prime(candidate, ws)

    rate = accepted / samples
    info("False-prime rate measured",
         component="miller_rabin",
         mode=ws.mode.value,
         k=ws.k,
         samples=samples,
         accepted=accepted,
         rate=rate)
    return rate
