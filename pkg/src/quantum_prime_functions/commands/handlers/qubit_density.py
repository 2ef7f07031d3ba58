import argparse
from typing import Any, Dict, List
import numpy as np
from ..base_command import BaseCommand, check_qubits
from ...quantum import (
    build_prime_state,
    single_qubit_density,
    pauli_expectation,
    closed_form_qubit_density,
    flip_identity_report
)

FLIP_FIELDS = ["flip_measured", "flip_mod4_form", "flip_mod8_form",
               "flip_mod4_deviation", "flip_mod8_deviation"]


class QubitDensityCommand(BaseCommand):
    """Single-qubit reduced density matrix of |P_n> and its prime-counting closed forms."""

    COMMAND_NAME = "qubit-density"
    HELP = "Reduced density matrix of qubit i of the Prime state, Pauli expectations and counting identities"
    DEFAULT_FORMAT = "json"
    OUTPUT_SCHEMA = """output (one record):
  n, i, rho_00_re, rho_00_im, rho_01_re, rho_01_im, rho_10_re, rho_10_im, rho_11_re, rho_11_im,
  sigma_x, sigma_y, sigma_z,
  closed_form_max_deviation (i in {0, 1}, else empty),
  flip_measured, flip_mod4_form, flip_mod8_form, flip_mod4_deviation, flip_mod8_deviation
  (two-site flip on qubits 1 and 2, n >= 3, else empty)
  json additionally carries "numerators" with the integer counters of the closed form
  csv and json both available; json is the default"""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, required=True, help="Number of qubits (n >= 2)")
        parser.add_argument("--i", type=int, default=0, help="Qubit index, 0 = least significant (default: 0)")

    @classmethod
    def validate_args(cls, args: argparse.Namespace, config: Dict[str, Any]) -> List[str]:
        errors = check_qubits(args.n, config)
        if not 0 <= args.i < args.n:
            errors.append(f"--i must satisfy 0 <= i < n (got i={args.i}, n={args.n})")
        return errors

    def run(self) -> int:
        n, i = self.args.n, self.args.i
        table = self.build_table(1 << n)
        state = build_prime_state(n, table, self.config)
        rho = single_qubit_density(state, i, self.config).entries

        record: Dict[str, Any] = {"n": n, "i": i}
        for r in range(2):
            for c in range(2):
                record[f"rho_{r}{c}_re"] = float(rho[r, c].real)
                record[f"rho_{r}{c}_im"] = float(rho[r, c].imag)
        for axis in ("x", "y", "z"):
            record[f"sigma_{axis}"] = pauli_expectation(state, i, axis)

        numerators = None
        record["closed_form_max_deviation"] = None
        if i in (0, 1):
            closed, numerators = closed_form_qubit_density(table, n, i)
            record["closed_form_max_deviation"] = float(np.max(np.abs(rho - closed)))

        flip = flip_identity_report(state, table) if n >= 3 else {}
        for field in FLIP_FIELDS:
            record[field] = flip.get(field)

        columns = list(record)
        if self.format == "json" and numerators is not None:
            record["numerators"] = numerators
        self.emit_record(record, columns=columns)
        return 0
