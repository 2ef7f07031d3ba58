import argparse
import math
from typing import Any, Dict, List
from ..base_command import BaseCommand, check_range
from ...connectors import PiTableConnector
from ...quantum import RH_SCAN_COLUMNS, rh_comparison_scan

SIEVE_MAX_EXPONENT = 26


class RhScanCommand(BaseCommand):
    """pi(2^n) against Li, the counting accuracy bound and the RH fluctuation scale."""

    COMMAND_NAME = "rh-scan"
    HELP = "Compare |pi(x) - Li(x)| and the quantum counting bound with sqrt(x) ln x at x = 2^n"
    OUTPUT_SCHEMA = f"""output:
  csv   header n,x,pi,li,abs_err,qc_bound,rh_scale
        qc_bound = (2 pi / c) sqrt(x / ln x), rh_scale = sqrt(x) ln x
  json  list of records with the same keys
pi(2^n) comes from the sieve for n <= {SIEVE_MAX_EXPONENT} and from the pi-table file above;
rows without a value are left out."""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n-min", type=int, default=10, help="Smallest n (default: 10)")
        parser.add_argument("--n-max", type=int, default=26, help="Largest n (default: 26)")
        parser.add_argument("--c", type=float, default=2.0 * math.pi,
                            help="Counting constant c = P / sqrt(N) (default: 2 pi)")
        parser.add_argument("--pi-table", help="CSV file of n,pi(2^n) records")

    @classmethod
    def validate_args(cls, args: argparse.Namespace, config: Dict[str, Any]) -> List[str]:
        errors = check_range(args.n_min, args.n_max)
        if args.n_min < 2:
            errors.append(f"n >= 2 required (got {args.n_min}); 2^n must be composite")
        if not args.c > 0:
            errors.append(f"--c > 0 required (got {args.c})")
        return errors

    def run(self) -> int:
        table = self.build_table(1 << min(self.args.n_max, SIEVE_MAX_EXPONENT))
        connector = PiTableConnector(self.args.pi_table)
        frame = rh_comparison_scan(table, self.args.n_min, self.args.n_max, self.args.c, connector=connector)
        self.emit_table(frame, columns=RH_SCAN_COLUMNS)
        return 0
