import sys
from numbers import Integral
from typing import Iterable, Optional
import numpy as np
from tqdm import tqdm


class ScanProgressBar(tqdm):
    """Progress bar for long scans; writes to stderr and stays silent when stderr is not a TTY."""

    def __init__(self, *args, **kwargs):
        kwargs.setdefault('file', sys.stderr)
        kwargs.setdefault('disable', not _stderr_is_tty())
        kwargs.setdefault('leave', False)
        super().__init__(*args, **kwargs)


def _stderr_is_tty() -> bool:
    try:
        return sys.stderr.isatty()
    except (AttributeError, ValueError):
        return False


def scan_progress(iterable: Iterable, desc: str, total: Optional[int] = None) -> Iterable:
    """Wrap an iterable in a ScanProgressBar."""
    return ScanProgressBar(iterable, desc=desc, total=total)


def format_number(value, digits: int = 12) -> str:
    """
    Render a value for CSV/JSON/text output.

    Integers print exactly; reals with `digits` significant digits (%.12g by default).
    None marks a gap in a table and prints as an empty field.
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if np.isnan(value):
            return ""
        return f"{float(value):.{digits}g}"
    return str(value)


def round_significant(value: float, digits: int = 12) -> float:
    """Round a float to `digits` significant digits (JSON output)."""
    return float(f"{float(value):.{digits}g}")
