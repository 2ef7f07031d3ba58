import argparse
from typing import Any, Dict, List
from ..base_command import BaseCommand, check_qubits
from ...quantum import build_prime_state, build_odd_prime_state


class StateCommand(BaseCommand):
    """Amplitudes of the Prime state |P_n>."""

    COMMAND_NAME = "state"
    HELP = "Amplitudes of the Prime state over the primes below 2^n"
    OUTPUT_SCHEMA = """output:
  csv   header index,amplitude; one row per prime below 2^n
  json  {"n", "prime_count", "norm", "amplitude", "indices": [...], "amplitudes": [...]}"""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, required=True, help="Number of qubits (n >= 2)")
        parser.add_argument("--odd", action="store_true", help="Leave the even prime 2 out")

    @classmethod
    def validate_args(cls, args: argparse.Namespace, config: Dict[str, Any]) -> List[str]:
        return check_qubits(args.n, config)

    def run(self) -> int:
        n = self.args.n
        table = self.build_table(1 << n)
        builder = build_odd_prime_state if self.args.odd else build_prime_state
        state = builder(n, table, self.config)

        indices = state.support()
        amplitudes = state.amp[indices].real
        if self.format == "json":
            self.emit_record({
                "n": n,
                "prime_count": int(indices.size),
                "norm": state.norm(),
                "amplitude": float(amplitudes[0]),
                "indices": [int(x) for x in indices],
                "amplitudes": amplitudes.tolist(),
            })
        else:
            rows = [{"index": int(x), "amplitude": float(a)} for x, a in zip(indices, amplitudes)]
            self.emit_table(rows, columns=["index", "amplitude"])
        return 0
