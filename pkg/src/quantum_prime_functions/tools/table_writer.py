"""
Emission of scan tables and records as CSV or JSON on a text stream.
"""
import json
from numbers import Integral
from typing import Any, Dict, Iterable, List, Optional, TextIO, Union
import numpy as np
import pandas as pd
from .logging_manager import error, info
from .tools import format_number, round_significant
from .validation_utils import ValidationError

SUPPORTED_FORMATS = ("csv", "json")

Rows = Union[pd.DataFrame, Iterable[Dict[str, Any]]]


def _to_frame(rows: Rows, columns: Optional[List[str]] = None) -> pd.DataFrame:
    """Build a DataFrame from rows, keeping the requested column order."""
    if isinstance(rows, pd.DataFrame):
        frame = rows
    else:
        records = list(rows)
        # an empty table still carries its header
        frame = pd.DataFrame(records) if records else pd.DataFrame(columns=columns)
    if columns is not None:
        missing = [c for c in columns if c not in frame.columns]
        if missing:
            error("Table is missing requested columns", component="output", missing=missing)
            raise ValidationError(f"Table is missing columns: {', '.join(missing)}")
        frame = frame[columns]
    return frame


def _jsonable(value: Any, digits: int) -> Any:
    if value is None:
        return None
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return None if np.isnan(value) else round_significant(value, digits)
    if isinstance(value, dict):
        return {str(k): _jsonable(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v, digits) for v in value]
    return value


def write_table(rows: Rows, stream: TextIO, fmt: str = "csv",
                columns: Optional[List[str]] = None, digits: int = 12) -> int:
    """
    Write a table with a header row (CSV) or as a list of records (JSON).

    Args:
        rows: DataFrame or iterable of dict rows
        stream: Text stream to write to
        fmt: 'csv' or 'json'
        columns: Column order; defaults to the frame's own order
        digits: Significant digits for reals

    Returns:
        Number of data rows written
    """
    if fmt not in SUPPORTED_FORMATS:
        error("Unsupported output format", component="output", format=fmt)
        raise ValidationError(f"Unsupported output format '{fmt}'")

    frame = _to_frame(rows, columns)

    if fmt == "csv":
        # Gap markers (None/NaN) stay empty fields
        text = frame.astype(object).apply(
            lambda col: col.map(lambda v: format_number(v, digits)))
        text.to_csv(stream, index=False, lineterminator="\n")
    else:
        records = [
            {str(k): _jsonable(v, digits) for k, v in record.items()}
            for record in frame.astype(object).to_dict(orient="records")
        ]
        json.dump(records, stream, indent=2)
        stream.write("\n")

    info("Table written", component="output", format=fmt, rows=len(frame))
    return len(frame)


def write_record(record: Dict[str, Any], stream: TextIO, digits: int = 12) -> None:
    """Write one structured record as a JSON object."""
    json.dump(_jsonable(record, digits), stream, indent=2)
    stream.write("\n")
