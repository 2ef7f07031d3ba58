from pathlib import Path
from typing import Dict, Optional, Union
import pandas as pd
from ..tools import error, warning, info, ValidationError, resolve_pi_table_path


class PiTableConnector:
    """
    Connector for the pi(2^n) table file.
    Supplies prime counts for powers of two beyond the reach of the sieve.

    File format: UTF-8 text, one `n,pi_value` record per line, `#` comments,
    optional `n,pi_value` header line.
    """

    COLUMNS = ["n", "pi_value"]

    def __init__(self, table_path: Optional[Union[str, Path]] = None):
        """
        Initialize the connector.

        Args:
            table_path: Path to the table file. Falls back to PRIME_PI_TABLE_PATH,
                then to the table bundled with the package.
        """
        self.table_path = resolve_pi_table_path(table_path)
        self._values: Optional[Dict[int, int]] = None

        info("Pi-table connector initialized",
             component="pi_table",
             table_path=str(self.table_path))

    def load(self) -> Dict[int, int]:
        """
        Read and validate the table.

        Returns:
            Mapping n -> pi(2^n)

        Raises:
            ValidationError: missing file, malformed record or non-increasing values
        """
        if self._values is not None:
            return self._values

        if not self.table_path.exists():
            error("Pi-table file not found",
                  component="pi_table",
                  path=str(self.table_path))
            raise ValidationError(f"Pi-table file not found: {self.table_path}")

        try:
            frame = pd.read_csv(self.table_path, comment="#", header=None,
                                names=self.COLUMNS, dtype=str, skip_blank_lines=True,
                                skipinitialspace=True, encoding="utf-8")
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            error("Failed to parse pi-table file",
                  component="pi_table",
                  path=str(self.table_path),
                  error=str(e))
            raise ValidationError(f"Malformed pi-table file {self.table_path}: {str(e)}")

        frame = frame[frame["n"].str.strip() != "n"]
        values: Dict[int, int] = {}
        for record in frame.itertuples(index=False):
            try:
                n = int(str(record.n).strip())
                pi_value = int(str(record.pi_value).strip())
            except ValueError:
                error("Malformed pi-table record",
                      component="pi_table",
                      record=f"{record.n},{record.pi_value}")
                raise ValidationError(f"Malformed pi-table record '{record.n},{record.pi_value}'")
            if n < 1 or pi_value < 1:
                raise ValidationError(f"Pi-table record out of range: n={n}, pi={pi_value}")
            if n in values and values[n] != pi_value:
                raise ValidationError(f"Conflicting pi-table records for n={n}")
            values[n] = pi_value

        ordered = sorted(values)
        for previous, current in zip(ordered, ordered[1:]):
            if values[current] <= values[previous]:
                error("Pi-table values are not increasing",
                      component="pi_table",
                      n=current)
                raise ValidationError(f"Pi-table values must increase with n (at n={current})")

        self._values = values
        info("Pi-table loaded",
             component="pi_table",
             records=len(values),
             n_min=ordered[0] if ordered else None,
             n_max=ordered[-1] if ordered else None)
        return values

    def get(self, n: int) -> Optional[int]:
        """pi(2^n) from the file, or None when the table has no record for n."""
        value = self.load().get(n)
        if value is None:
            warning("No pi-table record",
                    component="pi_table",
                    n=n)
        return value

    def resolve(self, n: int, table=None) -> Optional[int]:
        """
        pi(2^n) from the sieve table when it covers 2^n, else from the file.

        Args:
            n: Exponent
            table: Optional PrimeTable

        Returns:
            The count, or None when neither source has it
        """
        if table is not None and (1 << n) <= table.limit:
            return table.pi_power_of_two(n)
        return self.get(n)
