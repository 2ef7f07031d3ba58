import argparse
from typing import Any, Dict, List
from ..base_command import BaseCommand
from ...tools import info, error
from ...number_theory import WitnessSet
from ...quantum import MISMATCH_COLUMNS, oracle_equivalence_scan
from ...quantum.mr_oracle import MAX_SCAN_QUBITS


class OracleVerifyCommand(BaseCommand):
    """Exhaustive check of the reversible Miller-Rabin oracle against the sieve."""

    COMMAND_NAME = "oracle-verify"
    HELP = "Compare the Miller-Rabin oracle phase flip with sieve primality for every odd x < 2^n"
    OUTPUT_SCHEMA = f"""output (mismatches only; a header alone means full agreement):
  csv   header x,expected,got,witnesses
  json  list of records with the same keys
witnesses: the deterministic set by default, --witnesses for an explicit list,
--probabilistic-k for k seeded random witnesses per x. 2 <= n <= {MAX_SCAN_QUBITS}.
Exit code 1 if any register is not restored by uncompute."""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, default=16, help="Register width (default: 16)")
        source = parser.add_mutually_exclusive_group()
        source.add_argument("--witnesses", type=int, nargs="+", help="Explicit witness bases")
        source.add_argument("--probabilistic-k", type=int, help="Random witnesses per tested x")
        parser.add_argument("--seed", type=int, help="Seed for probabilistic witnesses")

    @classmethod
    def validate_args(cls, args: argparse.Namespace, config: Dict[str, Any]) -> List[str]:
        errors = []
        if args.n < 2:
            errors.append(f"n >= 2 required (got {args.n}); 2^n must be composite")
        elif args.n > MAX_SCAN_QUBITS:
            errors.append(f"n = {args.n} exceeds the oracle scan maximum of {MAX_SCAN_QUBITS}")
        if args.witnesses is not None and any(a < 2 for a in args.witnesses):
            errors.append(f"witnesses must be >= 2 (got {args.witnesses})")
        if args.probabilistic_k is not None and args.probabilistic_k < 1:
            errors.append(f"--probabilistic-k >= 1 required (got {args.probabilistic_k})")
        return errors

    def witness_set(self) -> WitnessSet:
        if self.args.probabilistic_k is not None:
            return WitnessSet.probabilistic(self.args.probabilistic_k, seed=self.args.seed, config=self.config)
        return WitnessSet.deterministic(self.args.witnesses, config=self.config)

    def run(self) -> int:
        n = self.args.n
        table = self.build_table(1 << n)
        report = oracle_equivalence_scan(n, self.witness_set(), table, progress=self.progress)
        self.emit_table(report.mismatches, columns=MISMATCH_COLUMNS)

        if not report.all_restored:
            error("Uncompute left registers dirty",
                  component="cli",
                  n=n)
            return 1
        info("Oracle verification finished",
             component="cli",
             n=n,
             checked=report.checked,
             mismatches=len(report.mismatches),
             all_skipped=len(report.all_skipped))
        return 0
