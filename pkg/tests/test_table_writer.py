import io
import json

import numpy as np
import pandas as pd
import pytest

from quantum_prime_functions.tools import (
    ValidationError,
    format_number,
    write_table,
    write_record
)


class TestFormatNumber:

    @pytest.mark.parametrize("value,expected", [
        (None, ""),
        (float("nan"), ""),
        (True, "true"),
        (np.bool_(False), "false"),
        (np.int64(564), "564"),
        (1166746786182, "1166746786182"),
        (0.5, "0.5"),
        (1.0 / 3.0, "0.333333333333"),
        (29.080977804, "29.080977804"),
    ])
    def test_rendering(self, value, expected):
        assert format_number(value) == expected

    def test_digits(self):
        assert format_number(np.pi, digits=4) == "3.142"


class TestWriteTable:

    def test_csv_with_gaps(self):
        stream = io.StringIO()
        rows = [{"n": 2, "R": 0, "PG": 0.5}, {"n": 3, "R": None, "PG": None}]
        assert write_table(rows, stream, columns=["n", "R", "PG"]) == 2
        assert stream.getvalue() == "n,R,PG\n2,0,0.5\n3,,\n"

    def test_column_order_from_argument(self):
        stream = io.StringIO()
        frame = pd.DataFrame({"b": [1], "a": [2]})
        write_table(frame, stream, columns=["a", "b"])
        assert stream.getvalue().splitlines()[0] == "a,b"

    def test_empty_table_keeps_header(self):
        stream = io.StringIO()
        assert write_table([], stream, columns=["x", "expected", "got", "witnesses"]) == 0
        assert stream.getvalue() == "x,expected,got,witnesses\n"

    def test_json_records(self):
        stream = io.StringIO()
        frame = pd.DataFrame({"n": [10, 11], "pi": [172, 309], "ratio": [1.0 / 3.0, np.nan]})
        write_table(frame, stream, fmt="json")
        records = json.loads(stream.getvalue())
        assert records[0] == {"n": 10, "pi": 172, "ratio": 0.333333333333}
        assert records[1]["ratio"] is None

    def test_missing_columns(self):
        with pytest.raises(ValidationError, match="missing columns"):
            write_table([{"n": 1}], io.StringIO(), columns=["n", "R"])

    def test_missing_columns_in_frame_as_json(self):
        stream = io.StringIO()
        with pytest.raises(ValidationError, match="missing columns: R, PG"):
            write_table(pd.DataFrame({"n": [2, 3]}), stream, fmt="json", columns=["n", "R", "PG"])
        assert stream.getvalue() == ""

    def test_unsupported_format(self):
        with pytest.raises(ValidationError, match="Unsupported"):
            write_table([{"n": 1}], io.StringIO(), fmt="xml")


class TestWriteRecord:

    def test_nested_values(self):
        stream = io.StringIO()
        write_record({"indices": np.array([2, 3, 5, 7]), "norm": np.float64(1.0),
                      "within_bound": np.bool_(True), "counts": {"pi": np.int64(4)}}, stream)
        record = json.loads(stream.getvalue())
        assert record == {"indices": [2, 3, 5, 7], "norm": 1.0,
                          "within_bound": True, "counts": {"pi": 4}}
