"""
Prime state construction, the measurement-based preparation model and the
diagonal primality Hamiltonian.
"""
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple
import numpy as np
from ..tools import (
    info,
    error,
    DomainError,
    CapacityError,
    load_simulation_config,
    validate_qubit_count
)
from ..number_theory import PrimeTable, chebyshev_bias
from .qstate import QuantumState

LambdaRule = Callable[[int], float]


def _check_table(n: int, table: PrimeTable, config: Optional[Dict]) -> Dict:
    config = config or load_simulation_config()
    validate_qubit_count(n, int(config["qstate"]["max_qubits"]), component="prime_state")
    if table.limit < (1 << n):
        error("Prime table too small for requested state",
              component="prime_state",
              n=n,
              limit=table.limit)
        raise CapacityError(f"table limit {table.limit} does not cover 2^{n}")
    return config


def _equal_superposition(indices: np.ndarray, n: int, config: Dict) -> QuantumState:
    amp = np.zeros(1 << n, dtype=np.complex128)
    amp[indices] = 1.0 / math.sqrt(indices.size)
    return QuantumState.from_amplitudes(amp, config=config)


def build_prime_state(n: int, table: PrimeTable, config: Optional[Dict] = None) -> QuantumState:
    """
    |P_n>: equal superposition of the primes below 2^n.

    Args:
        n: Qubit count, 2 <= n <= qstate.max_qubits
        table: Prime table covering [0, 2^n)

    Returns:
        QuantumState with amplitude 1/sqrt(pi(2^n)) on every prime
    """
    config = _check_table(n, table, config)
    primes = np.flatnonzero(table.mask(n))
    state = _equal_superposition(primes, n, config)
    info("Prime state built",
         component="prime_state",
         n=n,
         prime_count=int(primes.size))
    return state


def build_odd_prime_state(n: int, table: PrimeTable, config: Optional[Dict] = None) -> QuantumState:
    """Equal superposition of the odd primes below 2^n (the prime 2 left out)."""
    config = _check_table(n, table, config)
    primes = np.flatnonzero(table.mask(n))
    return _equal_superposition(primes[primes != 2], n, config)


@dataclass(frozen=True)
class PreparationModel:
    """
    Success/failure split of preparing |P_n> by measuring a primality ancilla
    on the uniform superposition.
    """
    n: int
    prime_count: int
    success_prob: float
    normalization_A: float

    @property
    def composite_mass(self) -> float:
        """A^2 (2^n - pi(2^n)) = 1 - success_prob."""
        return self.normalization_A ** 2 * ((1 << self.n) - self.prime_count)

    @property
    def asymptotic_prob(self) -> float:
        """1 / (n ln 2)."""
        return 1.0 / (self.n * math.log(2.0))


@dataclass(frozen=True)
class PreparationStatistics:
    shots: int
    success_prob: float
    expected_successes: float
    std_successes: float
    successes: float
    pi_estimate: float
    pi_standard_error: float


def preparation_probability(n: int, table: Optional[PrimeTable] = None,
                            prime_count: Optional[int] = None) -> PreparationModel:
    """
    Probability pi(2^n) / 2^n of reading the ancilla as prime.

    Args:
        n: Qubit count >= 2
        table: Prime table covering 2^n
        prime_count: pi(2^n) supplied directly (e.g. from the pi-table file)
    """
    if n < 2:
        raise DomainError(f"n >= 2 required (got {n}); 2^n must be composite")
    if prime_count is None:
        if table is None:
            raise DomainError("either a prime table or prime_count is required")
        prime_count = table.pi_power_of_two(n)
    size = 1 << n
    return PreparationModel(n=n, prime_count=int(prime_count), success_prob=prime_count / size,
                            normalization_A=1.0 / math.sqrt(size))


def preparation_statistics(model: PreparationModel, shots: int,
                           successes: Optional[int] = None) -> PreparationStatistics:
    """
    Binomial statistics of repeated prepare-and-measure runs.

    The estimator of pi(2^n) is 2^n successes / shots; with `successes`
    omitted the expected count is used.
    """
    if shots < 1:
        raise DomainError(f"shots >= 1 required (got {shots})")
    p = model.success_prob
    size = 1 << model.n
    observed = shots * p if successes is None else successes
    return PreparationStatistics(
        shots=shots,
        success_prob=p,
        expected_successes=shots * p,
        std_successes=math.sqrt(shots * p * (1.0 - p)),
        successes=observed,
        pi_estimate=size * observed / shots,
        pi_standard_error=size * math.sqrt(p * (1.0 - p) / shots),
    )


@dataclass(frozen=True, eq=False)
class HamiltonianReport:
    n: int
    diagonal: np.ndarray
    kernel_dimension: int
    ground_energy: float
    kernel_is_prime_span: bool


def _default_lambda(_: int) -> float:
    return 1.0


def primality_hamiltonian(n: int, table: PrimeTable, lambda_rule: Optional[LambdaRule] = None,
                          config: Optional[Dict] = None) -> HamiltonianReport:
    """
    Diagonal H with 0 on primes and lambda_rule(c) > 0 on every other index.

    Returns:
        HamiltonianReport with the diagonal, its kernel dimension and <P_n|H|P_n>
    """
    config = _check_table(n, table, config)
    lambda_rule = lambda_rule or _default_lambda
    mask = table.mask(n)
    others = np.flatnonzero(~mask)
    penalties = np.array([float(lambda_rule(int(c))) for c in others], dtype=np.float64)
    if penalties.size and np.min(penalties) <= 0.0:
        offender = int(others[np.argmin(penalties)])
        error("Non-positive Hamiltonian penalty",
              component="prime_state",
              index=offender)
        raise DomainError(f"lambda_rule must be positive on non-primes (got {penalties.min()} at {offender})")

    diagonal = np.zeros(1 << n, dtype=np.float64)
    diagonal[others] = penalties
    diagonal.setflags(write=False)

    state = build_prime_state(n, table, config)
    ground_energy = float(np.sum(state.probabilities() * diagonal))
    kernel = diagonal == 0.0
    return HamiltonianReport(n=n, diagonal=diagonal, kernel_dimension=int(np.count_nonzero(kernel)),
                             ground_energy=ground_energy,
                             kernel_is_prime_span=bool(np.array_equal(kernel, mask)))


def primality_hamiltonian_check(n: int, table: PrimeTable, lambda_rule: Optional[LambdaRule] = None) -> bool:
    """True iff the kernel of H is exactly the span of prime basis states and |P_n> lies in it."""
    report = primality_hamiltonian(n, table, lambda_rule)
    return report.kernel_is_prime_span and report.ground_energy == 0.0


def closed_form_qubit_density(table: PrimeTable, n: int, i: int) -> Tuple[np.ndarray, Dict[str, int]]:
    """
    rho^(i) of |P_n> for i in {0, 1} from prime counters at x = 2^n - 1.

    i = 0: [[1, 1], [1, pi - 1]] / pi (2 is the only even prime, paired with 3).
    i = 1: [[pi_41, pi_2^(1)], [pi_2^(1), pi_43 + 1]] / pi.

    Returns:
        (2x2 float matrix, integer numerators including 'pi')
    """
    if i not in (0, 1):
        raise DomainError(f"closed forms exist for qubits 0 and 1 only (got {i})")
    if n < 2:
        raise DomainError(f"n >= 2 required (got {n})")
    top = (1 << n) - 1
    count = table.pi(top)
    if i == 0:
        numerators = {"pi": count, "00": 1, "01": 1, "11": count - 1}
    else:
        report = chebyshev_bias(table, top)
        numerators = {"pi": count, "00": report.pi41, "01": report.pi2_1, "11": report.pi43 + 1}
    matrix = np.array([[numerators["00"], numerators["01"]],
                       [numerators["01"], numerators["11"]]], dtype=np.float64) / count
    return matrix, numerators
