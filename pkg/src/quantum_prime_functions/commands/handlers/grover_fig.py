import argparse
from typing import Any, Dict, List
from ..base_command import BaseCommand, check_range
from ...connectors import PiTableConnector
from ...quantum import FIGURE_COLUMNS, figure_scan

# above this exponent pi(2^n) is read from the pi-table file
SIEVE_MAX_EXPONENT = 24


class GroverFigCommand(BaseCommand):
    """Grover iteration schedule and success overlap toward |P_n>."""

    COMMAND_NAME = "grover-fig"
    HELP = "Optimal Grover iterations R(n), the bound Rmax(n) and the overlap PG(n)"
    OUTPUT_SCHEMA = f"""output:
  csv   header n,R,Rmax,PG
  json  list of records with the same keys
pi(2^n) comes from the sieve for n <= {SIEVE_MAX_EXPONENT} and from the pi-table file above;
a missing table entry leaves R and PG empty on that row.
The pi-table path defaults to $PRIME_PI_TABLE_PATH, then the bundled table."""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n-min", type=int, default=2, help="Smallest n (default: 2)")
        parser.add_argument("--n-max", type=int, default=45, help="Largest n (default: 45)")
        parser.add_argument("--pi-table", help="CSV file of n,pi(2^n) records")

    @classmethod
    def validate_args(cls, args: argparse.Namespace, config: Dict[str, Any]) -> List[str]:
        errors = check_range(args.n_min, args.n_max)
        if args.n_min < 2:
            errors.append(f"n >= 2 required (got {args.n_min}); 2^n must be composite")
        return errors

    def run(self) -> int:
        table = self.build_table(1 << min(self.args.n_max, SIEVE_MAX_EXPONENT))
        connector = PiTableConnector(self.args.pi_table)
        frame = figure_scan(self.args.n_min, self.args.n_max, table=table,
                            connector=connector, progress=self.progress)
        self.emit_table(frame, columns=FIGURE_COLUMNS)
        return 0
