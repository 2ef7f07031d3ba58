"""
Error types and precondition validators shared by the library and the CLI.
"""
from .logging_manager import error


class PrimeStateError(Exception):
    """Base error for all library failures"""
    pass


class CapacityError(PrimeStateError):
    """Requested size exceeds what the simulator or sieve supports"""
    pass


class DomainError(PrimeStateError, ValueError):
    """A mathematical precondition does not hold"""
    pass


class RangeError(PrimeStateError, ValueError):
    """An index or argument lies outside the covered range"""
    pass


class WitnessGuardError(PrimeStateError, ValueError):
    """A Miller-Rabin witness is not smaller than the tested number"""
    pass


class ValidationError(PrimeStateError):
    """Malformed input: bad matrix, bad configuration, bad file"""
    pass


def _fail(exc_type, message: str, component: str, **kwargs):
    error(message, component=component, **kwargs)
    raise exc_type(message)


def validate_qubit_count(n: int, max_qubits: int, component: str, min_qubits: int = 2) -> None:
    """Ensure min_qubits <= n <= max_qubits; the upper bound is a capacity limit."""
    if n < min_qubits:
        _fail(DomainError, f"n >= {min_qubits} required (got {n}); 2^n must be composite",
              component, n=n)
    if n > max_qubits:
        _fail(CapacityError, f"n = {n} exceeds the supported maximum of {max_qubits} qubits",
              component, n=n, max_qubits=max_qubits)


def validate_below_limit(x: int, limit: int, component: str, what: str = "x") -> None:
    """Ensure 0 <= x < limit for table lookups."""
    if x < 0 or x >= limit:
        _fail(RangeError, f"{what} = {x} outside the table range [0, {limit})",
              component, value=x, limit=limit)


def validate_index(i: int, n: int, component: str, what: str = "qubit index") -> None:
    """Ensure 0 <= i < n."""
    if i < 0 or i >= n:
        _fail(RangeError, f"{what} {i} outside [0, {n - 1}]", component, index=i, n=n)


def validate_odd_at_least_three(x: int, component: str) -> None:
    if x < 3 or x % 2 == 0:
        _fail(DomainError, f"odd x >= 3 required (got {x})", component, value=x)
