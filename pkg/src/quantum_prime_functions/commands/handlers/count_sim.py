import argparse
import math
from typing import Any, Dict, List
import numpy as np
import pandas as pd
from ..base_command import BaseCommand, check_qubits
from ...tools import get_setting
from ...quantum import (
    counting_distribution,
    brute_force_counting_distribution,
    estimate_M,
    bound_success_frequency,
    calls_constant,
    count_error_bound
)


class CountSimCommand(BaseCommand):
    """Quantum counting of the primes below 2^n."""

    COMMAND_NAME = "count-sim"
    HELP = "Phase-estimation count of the primes below 2^n and the frequency of its error bound"
    OUTPUT_SCHEMA = """output (default, one record):
  n, N, M, t, c, bound, samples, seed, frequency, threshold,
  y_observed, M_tilde, grover_calls, within_bound
  c = (2^t - 1) / sqrt(N), bound = (2 pi / c) sqrt(M) + pi^2 / c^2, threshold = 8 / pi^2
--distribution: header y,probability,M_estimate over the 2^t phase outcomes
--brute-force: simulate the full 2^n register instead of the two-dimensional Grover plane
  (n <= 12, t <= 12)"""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, default=10, help="Search register qubits (default: 10)")
        parser.add_argument("--t", type=int, default=10, help="Phase register qubits (default: 10)")
        parser.add_argument("--samples", type=int, default=10000, help="Monte Carlo samples (default: 10000)")
        parser.add_argument("--seed", type=int, help="Sampling seed (default: from config)")
        parser.add_argument("--brute-force", action="store_true", help="Full-register simulation")
        parser.add_argument("--distribution", action="store_true", help="Emit the outcome distribution")

    @classmethod
    def validate_args(cls, args: argparse.Namespace, config: Dict[str, Any]) -> List[str]:
        settings = config["qcount"]
        if args.brute_force:
            max_n = int(settings["brute_force_max_qubits"])
            max_t = int(settings["brute_force_max_phase_bits"])
        else:
            max_n = int(config["qstate"]["max_qubits"])
            max_t = int(settings["max_phase_bits"])
        errors = check_qubits(args.n, config, maximum=max_n)
        if not 1 <= args.t <= max_t:
            errors.append(f"--t must satisfy 1 <= t <= {max_t} (got {args.t})")
        if args.samples < 1:
            errors.append(f"--samples >= 1 required (got {args.samples})")
        return errors

    def run(self) -> int:
        n, t = self.args.n, self.args.t
        seed = self.args.seed if self.args.seed is not None else int(get_setting("miller_rabin", "default_seed", self.config))
        table = self.build_table(1 << n)
        N = 1 << n
        M = table.pi_power_of_two(n)

        if self.args.brute_force:
            dist = brute_force_counting_distribution(table.mask(n), t, self.config)
        else:
            dist = counting_distribution(N, M, t, self.config)

        if self.args.distribution:
            y = np.arange(dist.outcomes)
            frame = pd.DataFrame({
                "y": y,
                "probability": np.asarray(dist.probs),
                "M_estimate": N * np.sin(np.pi * y / dist.outcomes) ** 2,
            })
            self.emit_table(frame, columns=["y", "probability", "M_estimate"])
            return 0

        c = calls_constant(t, N)
        frequency = bound_success_frequency(dist, N, M, self.args.samples, seed)
        estimate = estimate_M(dist, N, seed)
        record = {
            "n": n,
            "N": N,
            "M": M,
            "t": t,
            "c": c,
            "bound": count_error_bound(M, c),
            "samples": self.args.samples,
            "seed": seed,
            "frequency": frequency,
            "threshold": 8.0 / math.pi ** 2,
            "y_observed": estimate.y_observed,
            "M_tilde": estimate.M_tilde,
            "grover_calls": estimate.grover_calls,
            "within_bound": estimate.within_bound,
        }
        self.emit_record(record, columns=list(record))
        return 0

