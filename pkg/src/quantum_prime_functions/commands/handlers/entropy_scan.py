import argparse
from typing import Any, Dict, List
from ..base_command import BaseCommand, check_qubits, check_range
from ...tools import scan_progress
from ...quantum import ENTROPY_COLUMNS, build_prime_state, entropy_scan


class EntropyScanCommand(BaseCommand):
    """Entanglement entropy of |P_n> across n and cut sizes."""

    COMMAND_NAME = "entropy-scan"
    HELP = "Von Neumann entropy of the first l qubits of the Prime state"
    OUTPUT_SCHEMA = """output:
  csv   header n,l,entropy_nats,entropy_bits,max_entropy_nats
  json  list of records with the same keys
cuts:
  default l = n // 2; --l fixes one cut for every n; --all-cuts takes l = 1 .. n-1"""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n-min", type=int, default=4, help="Smallest n (default: 4)")
        parser.add_argument("--n-max", type=int, default=16, help="Largest n (default: 16)")
        cuts = parser.add_mutually_exclusive_group()
        cuts.add_argument("--l", type=int, help="Cut size applied to every n")
        cuts.add_argument("--all-cuts", action="store_true", help="Every cut 1 <= l <= n - 1")

    @classmethod
    def validate_args(cls, args: argparse.Namespace, config: Dict[str, Any]) -> List[str]:
        errors = check_range(args.n_min, args.n_max)
        errors += check_qubits(args.n_min, config, what="--n-min")
        errors += check_qubits(args.n_max, config, what="--n-max")
        if args.l is not None:
            if args.l < 1:
                errors.append(f"--l >= 1 required (got {args.l})")
            elif args.l >= args.n_min:
                errors.append(f"--l ({args.l}) must be smaller than n for every n in the scan (n-min = {args.n_min})")
        return errors

    def run(self) -> int:
        table = self.build_table(1 << self.args.n_max)
        ns = range(self.args.n_min, self.args.n_max + 1)
        if self.progress:
            ns = scan_progress(ns, desc=self.COMMAND_NAME)

        if self.args.all_cuts:
            ls = range(1, self.args.n_max)
        elif self.args.l is not None:
            ls = [self.args.l]
        else:
            ls = None

        states = (build_prime_state(n, table, self.config) for n in ns)
        frame = entropy_scan(states, ls, self.config)
        self.emit_table(frame, columns=ENTROPY_COLUMNS)
        return 0
