"""
Reversible emulation of the Miller-Rabin phase oracle.

Each basis state |x> is pushed through the circuit's register pipeline:
decomposition registers d and s, one modular-exponentiation register and one
test ancilla per (witness, slot), one ancilla per witness and the global
ancilla. Every stage is an XOR update, so running the stages in reverse
returns all registers to their initial values.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, TextIO, Tuple
import numpy as np
from ..tools import (
    info,
    warning,
    error,
    debug,
    DomainError,
    CapacityError,
    RangeError,
    scan_progress,
    write_table
)
from ..number_theory import PrimeTable, WitnessMode, WitnessSet
from .qstate import QuantumState

MAX_SCAN_QUBITS = 20
MISMATCH_COLUMNS = ["x", "expected", "got", "witnesses"]

Slot = Tuple[int, int]


class RegisterFile:
    """Named integer registers updated only through XOR."""

    def __init__(self, initial: Dict):
        self._initial = dict(initial)
        self._values = dict(initial)

    def xor(self, name, value: int) -> None:
        self._values[name] = self._values.get(name, 0) ^ int(value)

    def __getitem__(self, name) -> int:
        return self._values.get(name, 0)

    def snapshot(self) -> Dict:
        return dict(self._values)

    def restored(self) -> bool:
        current = {name: value for name, value in self._values.items() if value or name in self._initial}
        expected = {name: value for name, value in self._initial.items()}
        return current == expected


@dataclass(frozen=True)
class OracleTranscript:
    """
    Register contents after the marking stage, plus the outcome of uncompute.

    tests[(a, r)] is 0 when slot r of witness a found probable-prime evidence;
    witness_flags[a] is 0 when any slot of a did; global_bit is 0 when every
    executed witness did.
    """
    x: int
    n: int
    d: int
    s: int
    witnesses: Tuple[int, ...]
    skipped: Tuple[int, ...]
    residues: Dict[Slot, int]
    tests: Dict[Slot, int]
    witness_flags: Dict[int, int]
    global_bit: int
    phase_flip: bool
    restored: bool

    @property
    def all_skipped(self) -> bool:
        return not self.witnesses


@dataclass
class EquivalenceReport:
    n: int
    checked: int = 0
    mismatches: List[Dict] = field(default_factory=list)
    all_restored: bool = True
    all_skipped: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.all_restored


@dataclass(frozen=True)
class GateBudget:
    n: int
    witnesses: int
    tests_per_witness: int
    modexp_ops_per_test: int
    total: float
    deterministic_total: float


def _trailing_zeros(value: int) -> int:
    count = 0
    while value & 1 == 0:
        value >>= 1
        count += 1
    return count


def _probable_prime_evidence(residue: int, x: int, r: int) -> int:
    # slot 0 also carries the a^d = 1 condition
    if r == 0:
        return int(residue == 1 or residue == x - 1)
    return int(residue == x - 1)


def _compute(registers: RegisterFile, x: int, witnesses: Tuple[int, ...]) -> None:
    s = _trailing_zeros(x - 1)
    d = (x - 1) >> s
    registers.xor("d", d)
    registers.xor("s", s)

    for a in witnesses:
        residue = pow(a, d, x)
        for r in range(s):
            if r:
                residue = residue * residue % x
            registers.xor(("res", a, r), residue)
            registers.xor(("test", a, r), _probable_prime_evidence(residue, x, r))


def _all_witnesses_agree(registers: RegisterFile, witnesses: Tuple[int, ...]) -> bool:
    # multi-controlled on every witness ancilla being 0; never fires without an executed witness
    return bool(witnesses) and all(registers[("witness", a)] == 0 for a in witnesses)


def _mark(registers: RegisterFile, x: int, witnesses: Tuple[int, ...]) -> None:
    s = registers["s"]
    for a in witnesses:
        registers.xor(("witness", a), any(registers[("test", a, r)] == 0 for r in range(s)))
    registers.xor("global", _all_witnesses_agree(registers, witnesses))


def _uncompute(registers: RegisterFile, x: int, witnesses: Tuple[int, ...]) -> None:
    s = registers["s"]
    d = registers["d"]
    registers.xor("global", _all_witnesses_agree(registers, witnesses))
    for a in reversed(witnesses):
        registers.xor(("witness", a), any(registers[("test", a, r)] == 0 for r in range(s)))
    for a in reversed(witnesses):
        residues = [pow(a, d << r, x) for r in range(s)]
        for r in reversed(range(s)):
            registers.xor(("test", a, r), _probable_prime_evidence(residues[r], x, r))
            registers.xor(("res", a, r), residues[r])
    registers.xor("s", s)
    registers.xor("d", d)


def pipeline(x: int, ws: WitnessSet, n: int) -> OracleTranscript:
    """
    Run compute, mark, phase and uncompute for one basis state |x>.

    Args:
        x: Odd input, 3 <= x < 2^n
        ws: Witness set; witnesses a >= x are skipped by the guard
        n: Register width in bits

    Returns:
        OracleTranscript
    """
    if x % 2 == 0 or x < 3:
        error("Oracle input must be odd and >= 3",
              component="mr_oracle",
              x=x)
        raise DomainError(f"odd x >= 3 required (got {x})")
    if x >= (1 << n):
        raise RangeError(f"x = {x} does not fit in {n} bits")

    candidates = ws.witnesses_for(x) if ws.mode == WitnessMode.PROBABILISTIC else ws.witnesses
    # a repeated witness would cancel its own XOR updates
    witnesses = tuple(dict.fromkeys(a for a in candidates if a < x))
    skipped = tuple(a for a in candidates if a >= x)

    initial = {("test", a, r): 1 for a in witnesses for r in range(_trailing_zeros(x - 1))}
    initial.update({("witness", a): 1 for a in witnesses})
    initial["global"] = 1
    registers = RegisterFile(initial)

    _compute(registers, x, witnesses)
    _mark(registers, x, witnesses)
    marked = registers.snapshot()
    phase_flip = marked["global"] == 0
    _uncompute(registers, x, witnesses)

    s = marked["s"]
    transcript = OracleTranscript(
        x=x,
        n=n,
        d=marked["d"],
        s=s,
        witnesses=witnesses,
        skipped=skipped,
        residues={(a, r): marked[("res", a, r)] for a in witnesses for r in range(s)},
        tests={(a, r): marked[("test", a, r)] for a in witnesses for r in range(s)},
        witness_flags={a: marked[("witness", a)] for a in witnesses},
        global_bit=marked["global"],
        phase_flip=phase_flip,
        restored=registers.restored(),
    )
    if transcript.all_skipped:
        warning("Every witness skipped by the guard; input left unmarked",
                component="mr_oracle",
                x=x)
    debug("Oracle pipeline run", component="mr_oracle", x=x, phase_flip=phase_flip)
    return transcript


def oracle_equivalence_scan(n: int, ws: WitnessSet, table: PrimeTable, progress: bool = False) -> EquivalenceReport:
    """
    Compare the pipeline phase flip with sieve primality for every odd 3 <= x < 2^n.
    """
    if n < 2 or n > MAX_SCAN_QUBITS:
        error("Oracle scan width out of range",
              component="mr_oracle",
              n=n)
        raise CapacityError(f"2 <= n <= {MAX_SCAN_QUBITS} required for the oracle scan (got {n})")
    mask = table.mask(n)
    report = EquivalenceReport(n=n)

    candidates = range(3, 1 << n, 2)
    if progress:
        candidates = scan_progress(candidates, desc="oracle-verify")
    for x in candidates:
        transcript = pipeline(x, ws, n)
        report.checked += 1
        report.all_restored &= transcript.restored
        if transcript.all_skipped:
            report.all_skipped.append(x)
        expected = bool(mask[x])
        if transcript.phase_flip != expected:
            report.mismatches.append({
                "x": x,
                "expected": expected,
                "got": transcript.phase_flip,
                "witnesses": " ".join(str(a) for a in transcript.witnesses),
            })

    info("Oracle equivalence scan completed",
         component="mr_oracle",
         n=n,
         checked=report.checked,
         mismatches=len(report.mismatches),
         all_restored=report.all_restored)
    return report


def pipeline_mask(n: int, ws: WitnessSet, indices: Optional[np.ndarray] = None) -> np.ndarray:
    """Phase-flip predicate of the pipeline over [0, 2^n); even x and x = 1 never flip."""
    mask = np.zeros(1 << n, dtype=bool)
    candidates = range(3, 1 << n, 2) if indices is None else (int(x) for x in indices if x >= 3 and x % 2)
    for x in candidates:
        mask[x] = pipeline(x, ws, n).phase_flip
    return mask


def apply_pipeline_oracle(state: QuantumState, ws: WitnessSet, config: Optional[Dict] = None) -> QuantumState:
    """Sign flip on every basis state the pipeline marks."""
    mask = pipeline_mask(state.n, ws, indices=state.support())
    return QuantumState.from_amplitudes(np.where(mask, -state.amp, state.amp), config=config)


def mismatch_report_csv(report: EquivalenceReport, stream: TextIO) -> int:
    """Write mismatches as CSV with header x,expected,got,witnesses."""
    return write_table(report.mismatches, stream, fmt="csv", columns=MISMATCH_COLUMNS)


def gate_budget(n: int, witness_count: Optional[int] = None) -> GateBudget:
    """
    Operation count of the oracle: witnesses x slots per witness x n^3 per modular exponentiation.

    The worst case takes n^2 witnesses; deterministic_total uses the 7-witness set.
    """
    if n < 2:
        raise DomainError(f"n >= 2 required (got {n})")
    witnesses = n * n if witness_count is None else witness_count
    modexp = n ** 3
    return GateBudget(n=n, witnesses=witnesses, tests_per_witness=n, modexp_ops_per_test=modexp,
                      total=float(witnesses * n * modexp), deterministic_total=float(7 * n * modexp))
