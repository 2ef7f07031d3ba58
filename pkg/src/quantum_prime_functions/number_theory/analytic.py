"""
Analytic counterparts of the counting functions: logarithmic integral,
Hardy-Littlewood pair estimates and the RH-scale residual.
"""
import math
from functools import lru_cache
import numpy as np
from scipy import integrate
from ..tools import info, error, DomainError
from .sieve import PrimeTable, small_primes

# Euler product cutoff; the omitted tail sum over primes p > P of 1/(p-1)^2
# stays below 1/(P ln P), about 8e-9 here.
TWIN_CONSTANT_CUTOFF = 1 << 23

QUAD_OPTIONS = {"epsabs": 0.0, "epsrel": 1e-12, "limit": 500}


def _log_quad(integrand, x: float) -> float:
    """Integrate f(t) dt over [2, x] after substituting t = e^u."""
    value, _ = integrate.quad(integrand, math.log(2.0), math.log(x), **QUAD_OPTIONS)
    return value


def li(x: float) -> float:
    """
    Offset logarithmic integral, the integral of dt / ln t from 2 to x.

    Raises:
        DomainError: x < 2
    """
    if x < 2:
        error("Logarithmic integral needs x >= 2",
              component="analytic",
              x=x)
        raise DomainError(f"x >= 2 required (got {x})")
    if x == 2:
        return 0.0
    return _log_quad(lambda u: math.exp(u) / u, x)


@lru_cache(maxsize=1)
def twin_prime_constant() -> float:
    """C_2 from the truncated Euler product over odd primes p <= TWIN_CONSTANT_CUTOFF."""
    odd_primes = small_primes(TWIN_CONSTANT_CUTOFF)[1:].astype(np.float64)
    value = float(np.exp(np.sum(np.log1p(-1.0 / (odd_primes - 1.0) ** 2))))
    info("Twin prime constant computed",
         component="analytic",
         cutoff=TWIN_CONSTANT_CUTOFF,
         value=value)
    return value


def hl_constant(k: int) -> float:
    """Hardy-Littlewood constant C_k for prime pairs at even gap k."""
    if k < 2 or k % 2:
        raise DomainError(f"even gap k >= 2 required (got {k})")
    value = twin_prime_constant()
    remaining = k
    while remaining % 2 == 0:
        remaining //= 2
    p = 3
    while p * p <= remaining:
        if remaining % p == 0:
            value *= (p - 1) / (p - 2)
            while remaining % p == 0:
                remaining //= p
        p += 2
    if remaining > 1:
        value *= (remaining - 1) / (remaining - 2)
    return value


def hl_gap_estimate(x: float, k: int = 2) -> float:
    """2 C_k x / (ln x)^2."""
    if x < 10:
        raise DomainError(f"x >= 10 required (got {x})")
    return 2.0 * hl_constant(k) * x / math.log(x) ** 2


def hl_twin_estimate(x: float) -> float:
    """Twin-pair estimate 2 C_2 x / (ln x)^2."""
    return hl_gap_estimate(x, 2)


def hl_twin_integral(x: float) -> float:
    """Integral form 2 C_2 times the integral of dt / (ln t)^2 from 2 to x."""
    if x < 10:
        raise DomainError(f"x >= 10 required (got {x})")
    return 2.0 * twin_prime_constant() * _log_quad(lambda u: math.exp(u) / (u * u), x)


def rh_scale(x: float) -> float:
    """sqrt(x) ln x, the error scale of pi(x) - Li(x) under RH."""
    return math.sqrt(x) * math.log(x)


def rh_residual(table: PrimeTable, x: int) -> float:
    """|pi(x) - Li(x)| / (sqrt(x) ln x)."""
    count = table.pi(x)
    if x < 2:
        raise DomainError(f"x >= 2 required (got {x})")
    return abs(count - li(x)) / rh_scale(x)
