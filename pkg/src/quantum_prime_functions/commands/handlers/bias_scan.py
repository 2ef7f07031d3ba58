import argparse
from typing import Any, Dict, List
from ..base_command import BaseCommand
from ...number_theory import BIAS_COLUMNS, bias_scan, bias_sign_changes, chebyshev_bias


class BiasScanCommand(BaseCommand):
    """Chebyshev and twin-prime residue biases on a grid of x."""

    COMMAND_NAME = "bias-scan"
    HELP = "Residue-class counts pi_{4,1}, pi_{4,3} and twin counts with their differences"
    OUTPUT_SCHEMA = """output:
  csv   header x,pi41,pi43,delta,pi2_1,pi2_3,delta2 at x = step, 2 step, ... <= limit
        delta = pi43 - pi41, delta2 = pi2_3 - pi2_1
  --sign-changes: header x,delta; primes where delta crosses between >= 0 and < 0
  json  list of records with the same keys"""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--limit", type=int, default=1 << 20, help="Largest x (default: 1048576)")
        parser.add_argument("--step", type=int, default=4096, help="Grid spacing (default: 4096)")
        parser.add_argument("--sign-changes", action="store_true", help="List the sign changes of delta instead")

    @classmethod
    def validate_args(cls, args: argparse.Namespace, config: Dict[str, Any]) -> List[str]:
        errors = []
        max_limit = int(config["sieve"]["max_limit"])
        if args.limit < 4:
            errors.append(f"--limit >= 4 required (got {args.limit})")
        elif args.limit >= max_limit:
            errors.append(f"--limit must be below the sieve capacity {max_limit} (got {args.limit})")
        if args.step < 1:
            errors.append(f"--step >= 1 required (got {args.step})")
        return errors

    def run(self) -> int:
        limit = self.args.limit
        table = self.build_table(limit + 1)
        if self.args.sign_changes:
            rows = [{"x": x, "delta": chebyshev_bias(table, x).delta}
                    for x in bias_sign_changes(table, limit)]
            self.emit_table(rows, columns=["x", "delta"])
        else:
            self.emit_table(bias_scan(table, limit, self.args.step), columns=BIAS_COLUMNS)
        return 0
