"""
Grover search toward the Prime state: sign-flip oracle, diffusion, iteration
schedule, full statevector runs and the analytic overlap used for large n.
"""
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple, Union
import numpy as np
import pandas as pd
from ..tools import (
    info,
    warning,
    error,
    DomainError,
    load_simulation_config,
    validate_qubit_count,
    scan_progress
)
from ..number_theory import PrimeTable
from .qstate import QuantumState
from .prime_state import build_prime_state

Predicate = Union[np.ndarray, Callable[[int], bool]]

FIGURE_COLUMNS = ["n", "R", "Rmax", "PG"]


@dataclass(frozen=True, eq=False)
class GroverRun:
    n: int
    N: int
    M: int
    R: int
    theta: float
    overlap: float
    state: Optional[QuantumState] = None


def grover_angle(N: int, M: int) -> float:
    """theta = 2 arcsin(sqrt(M / N)), the rotation per Grover step."""
    if N < 1 or M < 0 or M > N:
        error("Solution count outside [0, N]",
              component="grover",
              N=N,
              M=M)
        raise DomainError(f"0 <= M <= N required (got N={N}, M={M})")
    return 2.0 * math.asin(math.sqrt(M / N))


def _predicate_mask(predicate: Predicate, dim: int) -> np.ndarray:
    if isinstance(predicate, np.ndarray):
        if predicate.shape != (dim,):
            raise DomainError(f"predicate mask must have length {dim} (got {predicate.shape})")
        return predicate.astype(bool)
    return np.fromiter((bool(predicate(x)) for x in range(dim)), dtype=bool, count=dim)


def uniform_state(n: int, config: Optional[Dict] = None) -> QuantumState:
    """|psi> = H^n |0>."""
    size = 1 << n
    return QuantumState.from_amplitudes(np.full(size, 1.0 / math.sqrt(size), dtype=np.complex128),
                                        config=config)


def oracle_sign_flip(state: QuantumState, predicate: Predicate, config: Optional[Dict] = None) -> QuantumState:
    """
    amp[x] -> (-1)^f(x) amp[x].

    Args:
        state: Input state
        predicate: Boolean mask over basis indices, or a callable x -> bool
        config: Simulation configuration, loaded when omitted
    """
    mask = _predicate_mask(predicate, state.dim)
    return QuantumState.from_amplitudes(np.where(mask, -state.amp, state.amp), config=config)


def diffusion(state: QuantumState, config: Optional[Dict] = None) -> QuantumState:
    """2|psi><psi| - 1: amp[x] -> 2 mean(amp) - amp[x]."""
    return QuantumState.from_amplitudes(2.0 * state.amp.mean() - state.amp, config=config)


def grover_iterate(state: QuantumState, predicate: Predicate, config: Optional[Dict] = None) -> QuantumState:
    return diffusion(oracle_sign_flip(state, predicate, config), config)


def optimal_iterations(N: int, M: int) -> int:
    """R = floor(arccos(sqrt(M/N)) / (2 arcsin(sqrt(M/N)))), defined for 1 <= M <= N/2."""
    if M < 1 or 2 * M > N:
        error("Iteration count needs 1 <= M <= N/2",
              component="grover",
              N=N,
              M=M)
        raise DomainError(f"1 <= M <= N/2 required (got N={N}, M={M})")
    ratio = math.sqrt(M / N)
    return int(math.floor(math.acos(ratio) / (2.0 * math.asin(ratio))))


def r_max(n: int) -> int:
    """Upper bound floor((pi/4) sqrt(n ln 2)) on the iteration count for the Prime state."""
    if n < 2:
        raise DomainError(f"n >= 2 required (got {n})")
    return int(math.floor(math.pi / 4.0 * math.sqrt(n * math.log(2.0))))


def pg_analytic(N: int, M: int, R: int) -> float:
    """Overlap sin^2((2R + 1) theta / 2) after R iterations."""
    if M < 1 or M > N:
        raise DomainError(f"1 <= M <= N required (got N={N}, M={M})")
    if R < 0:
        raise DomainError(f"R >= 0 required (got {R})")
    theta = grover_angle(N, M)
    return math.sin((2 * R + 1) * theta / 2.0) ** 2


def run_grover(n: int, table: PrimeTable, R: int, config: Optional[Dict] = None) -> GroverRun:
    """
    Apply R Grover iterations with the primality oracle to the uniform state.

    Returns:
        GroverRun whose overlap is |<P_n|G^R|psi>|^2
    """
    config = config or load_simulation_config()
    validate_qubit_count(n, int(config["grover"]["max_simulation_qubits"]), component="grover")
    if R < 0:
        raise DomainError(f"R >= 0 required (got {R})")

    mask = table.mask(n)
    target = build_prime_state(n, table, config)
    state = uniform_state(n, config)
    for _ in range(R):
        state = grover_iterate(state, mask, config)

    N = 1 << n
    M = int(np.count_nonzero(mask))
    run = GroverRun(n=n, N=N, M=M, R=R, theta=grover_angle(N, M),
                    overlap=state.overlap(target), state=state)
    info("Grover simulation completed",
         component="grover",
         n=n,
         R=R,
         overlap=run.overlap)
    return run


def subspace_amplitudes(state: QuantumState, mask: np.ndarray) -> Tuple[float, float]:
    """
    Largest deviation from the mean amplitude inside the marked and the
    unmarked set; both vanish while the dynamics stays in the Grover plane.
    """
    def spread(values: np.ndarray) -> float:
        if values.size == 0:
            return 0.0
        return float(np.max(np.abs(values - values.mean())))

    return spread(state.amp[mask]), spread(state.amp[~mask])


def power_of_two_count(n: int, table: Optional[PrimeTable], connector=None) -> Optional[int]:
    """pi(2^n) through the connector (sieve first, then file), or from the table alone."""
    if connector is not None:
        return connector.resolve(n, table)
    if table is not None and (1 << n) <= table.limit:
        return table.pi_power_of_two(n)
    return None


def figure_scan(n_min: int, n_max: int, table: Optional[PrimeTable] = None,
                connector=None, progress: bool = False) -> pd.DataFrame:
    """
    Iteration schedule and overlap for n in [n_min, n_max].

    pi(2^n) comes from the sieve table when it covers 2^n, otherwise from the
    pi-table connector. A missing value leaves R and PG empty on that row.

    Returns:
        DataFrame with columns n, R, Rmax, PG
    """
    if n_min < 2 or n_max < n_min:
        raise DomainError(f"2 <= n_min <= n_max required (got {n_min}, {n_max})")

    ns = range(n_min, n_max + 1)
    if progress:
        ns = scan_progress(ns, desc="grover-fig")

    rows = []
    for n in ns:
        M = power_of_two_count(n, table, connector)

        if M is None:
            warning("No pi(2^n) available; leaving a gap",
                    component="grover",
                    n=n)
            rows.append({"n": n, "R": None, "Rmax": r_max(n), "PG": None})
            continue

        N = 1 << n
        R = optimal_iterations(N, M)
        rows.append({"n": n, "R": R, "Rmax": r_max(n), "PG": pg_analytic(N, M, R)})

    frame = pd.DataFrame({column: pd.Series([row[column] for row in rows], dtype=object)
                          for column in FIGURE_COLUMNS})
    info("Grover figure scan completed",
         component="grover",
         n_min=n_min,
         n_max=n_max,
         rows=len(frame))
    return frame
