"""
Dense statevector engine: states, partial traces, von Neumann entropies and
local observable expectations.

Basis index x encodes |x> with qubit i carried by the bit of weight 2^i, so
qubit 0 is the least significant bit. "The first l qubits" of a bipartition are
the l most significant ones.
"""
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple
import numpy as np
import pandas as pd
from scipy import linalg
from ..tools import (
    info,
    error,
    DomainError,
    CapacityError,
    ValidationError,
    load_simulation_config,
    validate_index,
    validate_qubit_count
)
from ..number_theory import PrimeTable, chebyshev_bias, pi_twin_mod8

AXES = ("x", "y", "z")
ENTROPY_COLUMNS = ["n", "l", "entropy_nats", "entropy_bits", "max_entropy_nats"]


def _qstate_config(config: Optional[Dict] = None) -> Dict:
    return (config or load_simulation_config())["qstate"]


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Normalized amplitude vector of n qubits; the array is read-only."""
    n: int
    amp: np.ndarray

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False, config: Optional[Dict] = None) -> "QuantumState":
        """
        Build a state from 2^n amplitudes.

        Args:
            amplitudes: Sequence of complex amplitudes, length a power of two
            normalize: Rescale to unit norm instead of rejecting
            config: Simulation configuration

        Raises:
            ValidationError: bad length, zero vector or norm off by more than the tolerance
            CapacityError: more qubits than qstate.max_qubits
        """
        settings = _qstate_config(config)
        amp = np.array(amplitudes, dtype=np.complex128).ravel()
        size = amp.size
        if size < 2 or size & (size - 1):
            error("Amplitude vector length is not a power of two",
                  component="qstate",
                  size=size)
            raise ValidationError(f"amplitude vector length must be a power of two (got {size})")
        n = size.bit_length() - 1
        validate_qubit_count(n, int(settings["max_qubits"]), component="qstate")

        norm = float(np.vdot(amp, amp).real)
        if normalize:
            if norm == 0.0:
                raise ValidationError("cannot normalize the zero vector")
            amp = amp / math.sqrt(norm)
        elif abs(norm - 1.0) > float(settings["norm_tolerance"]):
            error("State is not normalized",
                  component="qstate",
                  norm=norm)
            raise ValidationError(f"squared norm must be 1 within tolerance (got {norm!r})")

        amp.setflags(write=False)
        return cls(n=n, amp=amp)

    @classmethod
    def basis(cls, n: int, x: int, config: Optional[Dict] = None) -> "QuantumState":
        """Computational basis state |x> of n qubits."""
        validate_index(x, 1 << n, component="qstate", what="basis index")
        amp = np.zeros(1 << n, dtype=np.complex128)
        amp[x] = 1.0
        return cls.from_amplitudes(amp, config=config)

    @property
    def dim(self) -> int:
        return self.amp.size

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amp) ** 2

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amp, self.amp).real))

    def overlap(self, other: "QuantumState") -> float:
        """|<other|self>|^2."""
        if other.n != self.n:
            raise DomainError(f"qubit counts differ ({self.n} vs {other.n})")
        return float(abs(np.vdot(other.amp, self.amp)) ** 2)

    def support(self, atol: float = 0.0) -> np.ndarray:
        """Basis indices with non-zero amplitude."""
        return np.flatnonzero(np.abs(self.amp) > atol)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semi-definite, unit-trace matrix describing a subsystem."""
    dim: int
    entries: np.ndarray
    n_total: Optional[int] = None
    subsystem: Tuple[int, ...] = ()

    @classmethod
    def from_matrix(cls, entries, n_total: Optional[int] = None, subsystem: Tuple[int, ...] = (),
                    config: Optional[Dict] = None) -> "DensityMatrix":
        """Validate and wrap a square matrix."""
        settings = _qstate_config(config)
        matrix = np.array(entries, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValidationError(f"density matrix must be square (got shape {matrix.shape})")

        skew = float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0
        if skew > float(settings["hermitian_tolerance"]):
            error("Density matrix is not Hermitian",
                  component="qstate",
                  deviation=skew)
            raise ValidationError(f"density matrix is not Hermitian (deviation {skew:.3g})")

        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > float(settings["trace_tolerance"]):
            error("Density matrix trace is not one",
                  component="qstate",
                  trace=str(trace))
            raise ValidationError(f"density matrix trace must be 1 (got {trace:.6g})")

        smallest = float(linalg.eigvalsh(matrix)[0])
        if smallest < -1e-10:
            error("Density matrix is not positive semi-definite",
                  component="qstate",
                  smallest_eigenvalue=smallest)
            raise ValidationError(f"density matrix has negative eigenvalue {smallest:.3g}")

        matrix.setflags(write=False)
        return cls(dim=matrix.shape[0], entries=matrix, n_total=n_total, subsystem=tuple(subsystem))

    def eigenvalues(self) -> np.ndarray:
        return linalg.eigvalsh(self.entries)


@dataclass(frozen=True)
class EntropyRecord:
    n: Optional[int]
    l: int
    entropy_nats: float
    entropy_bits: float

    @property
    def max_entropy_nats(self) -> float:
        """min(l, n - l) ln 2."""
        smaller = self.l if self.n is None else min(self.l, self.n - self.l)
        return smaller * math.log(2.0)

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "l": self.l,
            "entropy_nats": self.entropy_nats,
            "entropy_bits": self.entropy_bits,
            "max_entropy_nats": self.max_entropy_nats,
        }


def _bipartition(state: QuantumState, l: int) -> np.ndarray:
    if l < 1 or l > state.n - 1:
        error("Bipartition size out of range",
              component="qstate",
              l=l,
              n=state.n)
        raise DomainError(f"1 <= l <= n - 1 required (got l={l}, n={state.n})")
    # C-order reshape: the row index is carried by the l most significant bits
    return state.amp.reshape(1 << l, 1 << (state.n - l))


def reduced_density(state: QuantumState, l: int, config: Optional[Dict] = None) -> DensityMatrix:
    """
    Reduced density matrix of the first (most significant) l qubits.

    rho(l) = A A^dagger with A the amplitudes reshaped to 2^l x 2^(n-l).
    """
    settings = _qstate_config(config)
    block = _bipartition(state, l)
    max_dim = int(settings["max_density_dim"])
    if block.shape[0] > max_dim:
        error("Reduced density matrix too large",
              component="qstate",
              dim=block.shape[0],
              max_dim=max_dim)
        raise CapacityError(f"2^{l} exceeds the density-matrix limit {max_dim}; use entanglement_entropy")
    rho = block @ block.conj().T
    return DensityMatrix.from_matrix(rho, n_total=state.n,
                                     subsystem=tuple(range(state.n - l, state.n)), config=config)


def complement_density(state: QuantumState, l: int, config: Optional[Dict] = None) -> DensityMatrix:
    """
    Reduced density matrix of the last n - l qubits, the first l traced out.

    rho_B = A^T conj(A); its non-zero spectrum equals that of reduced_density(state, l).
    """
    settings = _qstate_config(config)
    block = _bipartition(state, l)
    max_dim = int(settings["max_density_dim"])
    if block.shape[1] > max_dim:
        error("Complement density matrix too large",
              component="qstate",
              dim=block.shape[1],
              max_dim=max_dim)
        raise CapacityError(f"2^{state.n - l} exceeds the density-matrix limit {max_dim}; use entanglement_entropy")
    rho = block.T @ block.conj()
    return DensityMatrix.from_matrix(rho, n_total=state.n,
                                     subsystem=tuple(range(state.n - l)), config=config)


def single_qubit_density(state: QuantumState, i: int, config: Optional[Dict] = None) -> DensityMatrix:
    """rho^(i), every qubit but i traced out."""
    validate_index(i, state.n, component="qstate")
    split = state.amp.reshape(1 << (state.n - 1 - i), 2, 1 << i)
    rho = np.einsum("abc,adc->bd", split, split.conj())
    return DensityMatrix.from_matrix(rho, n_total=state.n, subsystem=(i,), config=config)


def _entropy_from_eigenvalues(eigenvalues: np.ndarray, clamp: float) -> float:
    kept = eigenvalues[eigenvalues > clamp]
    return float(-np.sum(kept * np.log(kept)))


def von_neumann_entropy(rho, config: Optional[Dict] = None) -> EntropyRecord:
    """
    S = -sum lambda ln lambda over eigenvalues above the clamp.

    Args:
        rho: DensityMatrix, or a raw square matrix to validate first

    Returns:
        EntropyRecord in nats and bits
    """
    settings = _qstate_config(config)
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix.from_matrix(rho, config=config)
    nats = _entropy_from_eigenvalues(rho.eigenvalues(), float(settings["eigen_clamp"]))
    l = len(rho.subsystem) if rho.subsystem else int(round(math.log2(rho.dim)))
    return EntropyRecord(n=rho.n_total, l=l, entropy_nats=nats, entropy_bits=nats / math.log(2.0))


def entanglement_entropy(state: QuantumState, l: int, config: Optional[Dict] = None) -> EntropyRecord:
    """Entropy of the first l qubits from the smaller-side Gram matrix."""
    settings = _qstate_config(config)
    block = _bipartition(state, l)
    if block.shape[0] <= block.shape[1]:
        gram = block @ block.conj().T
    else:
        gram = block.conj().T @ block
    eigenvalues = linalg.eigvalsh(gram)
    nats = _entropy_from_eigenvalues(eigenvalues, float(settings["eigen_clamp"]))
    return EntropyRecord(n=state.n, l=l, entropy_nats=nats, entropy_bits=nats / math.log(2.0))


def entropy_scan(states: Iterable[QuantumState], ls: Optional[Iterable[int]] = None,
                 config: Optional[Dict] = None) -> pd.DataFrame:
    """
    Entanglement entropies for a family of states.

    Args:
        states: States to scan
        ls: Cut sizes applied to every state; each state's n // 2 when omitted

    Returns:
        DataFrame with columns n, l, entropy_nats, entropy_bits, max_entropy_nats
    """
    config = config or load_simulation_config()
    ls = list(ls) if ls is not None else None
    rows = []
    for state in states:
        for l in (ls if ls is not None else [state.n // 2]):
            if 1 <= l <= state.n - 1:
                rows.append(entanglement_entropy(state, l, config).to_dict())
    info("Entropy scan completed", component="qstate", rows=len(rows))
    return pd.DataFrame(rows, columns=ENTROPY_COLUMNS)


def pauli_expectation(state: QuantumState, i: int, axis: str) -> float:
    """<sigma^axis_i> with sigma^z |0> = +|0>."""
    if axis not in AXES:
        raise DomainError(f"axis must be one of {AXES} (got {axis!r})")
    rho = single_qubit_density(state, i).entries
    if axis == "z":
        return float((rho[0, 0] - rho[1, 1]).real)
    if axis == "x":
        return float(2.0 * rho[0, 1].real)
    return float(2.0 * rho[1, 0].imag)


def two_site_flip_expectation(state: QuantumState, i: int, j: int) -> float:
    """
    <sigma^x_i sigma^x_j + sigma^y_i sigma^y_j>.

    The operator maps |..1_i..0_j..> to |..0_i..1_j..> with weight 2 and back,
    so each coupled basis pair contributes 4 Re(conj(a_x) a_y).
    """
    validate_index(i, state.n, component="qstate")
    validate_index(j, state.n, component="qstate")
    if i == j:
        raise DomainError(f"distinct sites required (got i = j = {i})")
    index = np.arange(state.dim, dtype=np.int64)
    selected = index[(((index >> i) & 1) == 1) & (((index >> j) & 1) == 0)]
    partners = selected ^ ((1 << i) | (1 << j))
    return float(4.0 * np.sum(np.conj(state.amp[selected]) * state.amp[partners]).real)


def flip_identity_report(state: QuantumState, table: PrimeTable) -> Dict:
    """
    Compare the (1, 2) two-site flip expectation of a Prime state with its
    twin-prime closed forms.

    Coupled basis pairs are x = 3 (mod 8) and x + 2, so the exact value is
    4 pi_2(p = 3 mod 8) / pi(N). The mod-4 form 4 pi_2^(3) / pi(N) also counts
    pairs with p = 7 (mod 8), whose carry flips more than two bits.
    """
    top = (1 << state.n) - 1
    count = table.pi(top)
    measured = two_site_flip_expectation(state, 1, 2)
    mod4_form = 4.0 * chebyshev_bias(table, top).pi2_3 / count
    mod8_form = 4.0 * pi_twin_mod8(table, top, 3) / count
    return {
        "n": state.n,
        "flip_measured": measured,
        "flip_mod4_form": mod4_form,
        "flip_mod8_form": mod8_form,
        "flip_mod4_deviation": measured - mod4_form,
        "flip_mod8_deviation": measured - mod8_form,
    }
