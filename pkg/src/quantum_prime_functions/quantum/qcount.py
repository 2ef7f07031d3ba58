"""
Quantum counting: phase-estimation statistics of the Grover operator, the
count estimator and its error bound against the RH fluctuation scale.

The uniform state splits evenly over the Grover eigenvectors with eigenvalues
e^(+i theta) and e^(-i theta). A t-bit phase register then reads y with
probability 1/2 |K(theta - 2 pi y / T)|^2 + 1/2 |K(-theta - 2 pi y / T)|^2,
where K is the Fejer-type kernel (1/T) sum_k e^(i k phi) and T = 2^t.
"""
import math
from dataclasses import dataclass
from typing import Dict, Optional
import numpy as np
import pandas as pd
from ..tools import (
    info,
    warning,
    error,
    DomainError,
    CapacityError,
    load_simulation_config
)
from ..number_theory import PrimeTable, li, rh_scale
from .grover import grover_angle, grover_iterate, power_of_two_count, uniform_state

RH_SCAN_COLUMNS = ["n", "x", "pi", "li", "abs_err", "qc_bound", "rh_scale"]

# column chunk for the brute-force Fourier transform
_BRUTE_FORCE_CHUNK = 256


@dataclass(frozen=True, eq=False)
class CountingDistribution:
    N: int
    M: int
    t: int
    theta: float
    probs: np.ndarray

    @property
    def outcomes(self) -> int:
        return self.probs.size


@dataclass(frozen=True)
class CountEstimate:
    N: int
    M: int
    t: int
    y_observed: int
    M_tilde: float
    c: float
    bound: float
    grover_calls: int

    @property
    def within_bound(self) -> bool:
        return abs(self.M_tilde - self.M) < self.bound


def _check_phase_bits(t: int, limit: int) -> None:
    if t < 1 or t > limit:
        error("Phase register size out of range",
              component="qcount",
              t=t,
              max_phase_bits=limit)
        raise CapacityError(f"1 <= t <= {limit} phase bits supported (got {t})")


def _kernel_probabilities(phase: float, size: int) -> np.ndarray:
    k = np.arange(size)
    return np.abs(np.fft.fft(np.exp(1j * k * phase)) / size) ** 2


def counting_distribution(N: int, M: int, t: int, config: Optional[Dict] = None) -> CountingDistribution:
    """
    Exact outcome distribution of t-bit phase estimation on the Grover operator.

    Args:
        N: Search-space size
        M: Number of marked items, 0 <= M <= N
        t: Phase-register bits

    Returns:
        CountingDistribution over the 2^t outcomes
    """
    config = config or load_simulation_config()
    _check_phase_bits(t, int(config["qcount"]["max_phase_bits"]))
    theta = grover_angle(N, M)
    size = 1 << t
    probs = 0.5 * _kernel_probabilities(theta, size) + 0.5 * _kernel_probabilities(-theta, size)
    probs.setflags(write=False)
    return CountingDistribution(N=N, M=M, t=t, theta=theta, probs=probs)


def brute_force_counting_distribution(mask: np.ndarray, t: int, config: Optional[Dict] = None) -> CountingDistribution:
    """
    Phase estimation over the full 2^n-dimensional register.

    The joint state after the controlled powers is (1/sqrt(T)) sum_k |k> G^k |psi>;
    the inverse Fourier transform on the phase register maps it to
    (1/T) sum_k e^(-2 pi i k y / T) G^k |psi>, summed over the data register.
    """
    config = config or load_simulation_config()
    settings = config["qcount"]
    size = mask.size
    n = size.bit_length() - 1
    if size & (size - 1) or n > int(settings["brute_force_max_qubits"]):
        error("Brute-force counting register too large",
              component="qcount",
              n=n)
        raise CapacityError(f"brute-force counting supports n <= {settings['brute_force_max_qubits']} (got {size} states)")
    _check_phase_bits(t, int(settings["brute_force_max_phase_bits"]))

    steps = 1 << t
    # G and |psi> are real, so every power G^k |psi> is real
    powers = np.empty((steps, size), dtype=np.float64)
    state = uniform_state(n, config)
    for k in range(steps):
        powers[k] = state.amp.real
        state = grover_iterate(state, mask, config)

    probs = np.zeros(steps, dtype=np.float64)
    for start in range(0, size, _BRUTE_FORCE_CHUNK):
        block = np.fft.fft(powers[:, start:start + _BRUTE_FORCE_CHUNK], axis=0) / steps
        probs += np.sum(np.abs(block) ** 2, axis=1)

    M = int(np.count_nonzero(mask))
    probs.setflags(write=False)
    return CountingDistribution(N=size, M=M, t=t, theta=grover_angle(size, M), probs=probs)


def _estimates_from_outcomes(outcomes: np.ndarray, steps: int, N: int) -> np.ndarray:
    phases = 2.0 * np.pi * outcomes / steps
    # fold onto [0, pi]; sin^2 is symmetric so both branches give the same count
    phases = np.where(phases > np.pi, 2.0 * np.pi - phases, phases)
    return N * np.sin(phases / 2.0) ** 2


def calls_constant(t: int, N: int) -> float:
    """c = P / sqrt(N) with P = 2^t - 1 controlled Grover applications."""
    return ((1 << t) - 1) / math.sqrt(N)


def count_error_bound(M: int, c: float) -> float:
    """(2 pi / c) sqrt(M) + pi^2 / c^2."""
    return 2.0 * math.pi / c * math.sqrt(M) + math.pi ** 2 / c ** 2


def estimate_M(dist: CountingDistribution, N: int, seed: int) -> CountEstimate:
    """
    Sample one phase-register outcome and turn it into a count estimate.
    """
    rng = np.random.default_rng(seed)
    steps = dist.outcomes
    y = int(rng.choice(steps, p=dist.probs / dist.probs.sum()))
    M_tilde = float(_estimates_from_outcomes(np.array([y]), steps, N)[0])
    c = calls_constant(dist.t, N)
    return CountEstimate(N=N, M=dist.M, t=dist.t, y_observed=y, M_tilde=M_tilde, c=c,
                         bound=count_error_bound(dist.M, c), grover_calls=steps - 1)


def sample_estimates(dist: CountingDistribution, N: int, samples: int, seed: int) -> np.ndarray:
    """Vector of `samples` independent estimates drawn with one seeded generator."""
    if samples < 1:
        raise DomainError(f"samples >= 1 required (got {samples})")
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(dist.outcomes, size=samples, p=dist.probs / dist.probs.sum())
    return _estimates_from_outcomes(outcomes, dist.outcomes, N)


def bound_success_frequency(dist: CountingDistribution, N: int, M: int, samples: int, seed: int) -> float:
    """Fraction of sampled estimates with |M_tilde - M| below the error bound."""
    estimates = sample_estimates(dist, N, samples, seed)
    bound = count_error_bound(M, calls_constant(dist.t, N))
    frequency = float(np.mean(np.abs(estimates - M) < bound))
    info("Counting bound frequency measured",
         component="qcount",
         N=N,
         M=M,
         t=dist.t,
         samples=samples,
         frequency=frequency)
    return frequency


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    """1/2 sum |p - q|."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise DomainError(f"distributions differ in shape ({p.shape} vs {q.shape})")
    return float(0.5 * np.sum(np.abs(p - q)))


def pi_accuracy_bound(x: float, c: float) -> float:
    """(2 pi / c) sqrt(x / ln x): the count error bound with pi(x) ~ x / ln x."""
    if x < 4:
        raise DomainError(f"x >= 4 required (got {x})")
    if c <= 0:
        raise DomainError(f"c > 0 required (got {c})")
    return 2.0 * math.pi / c * math.sqrt(x) / math.sqrt(math.log(x))


def rh_comparison_scan(table: Optional[PrimeTable], n_min: int, n_max: int, c: float,
                       connector=None) -> pd.DataFrame:
    """
    Compare |pi(x) - Li(x)| and the counting accuracy bound with sqrt(x) ln x at x = 2^n.

    Returns:
        DataFrame with columns n, x, pi, li, abs_err, qc_bound, rh_scale
    """
    if n_min < 2 or n_max < n_min:
        raise DomainError(f"2 <= n_min <= n_max required (got {n_min}, {n_max})")

    rows = []
    for n in range(n_min, n_max + 1):
        x = 1 << n
        count = power_of_two_count(n, table, connector)
        if count is None:
            warning("No pi(2^n) available; row skipped",
                    component="qcount",
                    n=n)
            continue
        logarithmic = li(x)
        rows.append({
            "n": n,
            "x": x,
            "pi": count,
            "li": logarithmic,
            "abs_err": abs(count - logarithmic),
            "qc_bound": pi_accuracy_bound(x, c),
            "rh_scale": rh_scale(x),
        })

    info("RH comparison scan completed",
         component="qcount",
         n_min=n_min,
         n_max=n_max,
         rows=len(rows))
    return pd.DataFrame(rows, columns=RH_SCAN_COLUMNS)
