import io
import json
import math

import pytest

from quantum_prime_functions.prime_run_cli import (
    EXIT_OK,
    EXIT_USAGE,
    parse_args,
    run,
    validate
)
from quantum_prime_functions.commands import BaseCommand, CommandLoader
from quantum_prime_functions.tools import load_simulation_config


def invoke(*argv):
    stream = io.StringIO()
    code = run(list(argv) + ["--no-progress"], stream=stream)
    return code, stream.getvalue()


def csv_lines(text):
    return text.strip().splitlines()


class TestCommandDiscovery:

    def test_all_commands_registered(self):
        commands = CommandLoader.get_available_commands()
        assert sorted(commands) == [
            "bias-scan", "count-sim", "entropy-scan", "grover-fig",
            "oracle-verify", "qubit-density", "rh-scan", "state",
        ]
        assert all(issubclass(cls, BaseCommand) for cls in commands.values())

    def test_unknown_command_lookup(self):
        assert CommandLoader.get_command("no-such-command") is None


class TestParsing:

    def test_run_config_fields(self):
        config = parse_args(["count-sim", "--n", "8"])
        assert config.command == "count-sim"
        assert (config.n, config.t) == (8, 10)
        assert config.format == "csv"

    def test_qubit_density_defaults_to_json(self):
        assert parse_args(["qubit-density", "--n", "4"]).format == "json"

    def test_validate_rejects_prime_power_of_two(self):
        problems = validate(parse_args(["state", "--n", "1"]), load_simulation_config())
        assert len(problems) == 1
        assert "composite" in problems[0]

    def test_unknown_flag_is_usage_error(self):
        assert invoke("state", "--n", "3", "--bogus")[0] == EXIT_USAGE

    def test_missing_subcommand_is_usage_error(self):
        assert run([], stream=io.StringIO()) == EXIT_USAGE

    def test_help_exits_cleanly(self):
        assert run(["grover-fig", "--help"], stream=io.StringIO()) == EXIT_OK


class TestState:

    def test_json_record(self):
        code, out = invoke("state", "--n", "3", "--format", "json")
        assert code == EXIT_OK
        record = json.loads(out)
        assert record["indices"] == [2, 3, 5, 7]
        assert record["amplitude"] == pytest.approx(0.5)
        assert record["prime_count"] == 4
        assert record["norm"] == pytest.approx(1.0)

    def test_csv_rows(self):
        code, out = invoke("state", "--n", "4", "--odd")
        lines = csv_lines(out)
        assert code == EXIT_OK
        assert lines[0] == "index,amplitude"
        assert [int(line.split(",")[0]) for line in lines[1:]] == [3, 5, 7, 11, 13]

    def test_n_below_two_exits_with_usage(self, capsys):
        code, out = invoke("state", "--n", "1")
        assert code == EXIT_USAGE
        assert out == ""
        assert "composite" in capsys.readouterr().err


class TestEntropyScan:

    def test_default_cut(self):
        code, out = invoke("entropy-scan", "--n-min", "4", "--n-max", "6")
        lines = csv_lines(out)
        assert code == EXIT_OK
        assert lines[0] == "n,l,entropy_nats,entropy_bits,max_entropy_nats"
        assert [line.split(",")[:2] for line in lines[1:]] == [["4", "2"], ["5", "2"], ["6", "3"]]

    def test_cut_must_be_smaller_than_every_n(self):
        assert invoke("entropy-scan", "--n-min", "4", "--n-max", "6", "--l", "4")[0] == EXIT_USAGE

    def test_cut_options_are_exclusive(self):
        assert invoke("entropy-scan", "--l", "2", "--all-cuts")[0] == EXIT_USAGE


class TestQubitDensity:

    def test_record(self):
        code, out = invoke("qubit-density", "--n", "6", "--i", "0")
        record = json.loads(out)
        assert code == EXIT_OK
        assert record["rho_00_re"] + record["rho_11_re"] == pytest.approx(1.0)
        assert record["closed_form_max_deviation"] < 1e-12
        assert "numerators" in record
        assert record["flip_mod8_deviation"] == pytest.approx(0.0, abs=1e-12)

    def test_index_out_of_range(self):
        assert invoke("qubit-density", "--n", "4", "--i", "4")[0] == EXIT_USAGE

    def test_every_problem_reported(self):
        problems = validate(parse_args(["qubit-density", "--n", "1", "--i", "5"]), load_simulation_config())
        assert len(problems) == 2
        assert "composite" in problems[0]
        assert "--i" in problems[1]


class TestBiasScan:

    def test_grid(self):
        code, out = invoke("bias-scan", "--limit", "100", "--step", "50")
        lines = csv_lines(out)
        assert code == EXIT_OK
        assert lines[0] == "x,pi41,pi43,delta,pi2_1,pi2_3,delta2"
        assert lines[-1] == "100,11,13,2,4,4,0"

    def test_sign_changes(self):
        code, out = invoke("bias-scan", "--limit", "27000", "--sign-changes")
        assert code == EXIT_OK
        assert csv_lines(out) == ["x,delta", "26861,-1", "26863,0"]


class TestGroverFig:

    def test_header_and_rows(self):
        code, out = invoke("grover-fig", "--n-min", "2", "--n-max", "12")
        lines = csv_lines(out)
        assert code == EXIT_OK
        assert lines[0] == "n,R,Rmax,PG"
        assert len(lines) == 12

    def test_n_min_below_two(self):
        assert invoke("grover-fig", "--n-min", "1", "--n-max", "4")[0] == EXIT_USAGE


class TestOracleVerify:

    def test_full_agreement_prints_header_only(self):
        code, out = invoke("oracle-verify", "--n", "10")
        assert code == EXIT_OK
        assert out == "x,expected,got,witnesses\n"

    def test_base_two_pseudoprimes(self):
        code, out = invoke("oracle-verify", "--n", "12", "--witnesses", "2")
        lines = csv_lines(out)
        assert code == EXIT_OK
        assert [line.split(",")[0] for line in lines[1:]] == ["2047", "3277", "4033"]
        assert lines[1] == "2047,false,true,2"

    def test_width_above_scan_limit(self):
        assert invoke("oracle-verify", "--n", "40")[0] == EXIT_USAGE


class TestCountSim:

    def test_record(self):
        code, out = invoke("count-sim", "--n", "8", "--t", "8", "--samples", "2000",
                           "--seed", "3", "--format", "json")
        record = json.loads(out)
        assert code == EXIT_OK
        assert (record["N"], record["M"], record["grover_calls"]) == (256, 54, 255)
        assert record["threshold"] == pytest.approx(8 / math.pi ** 2)
        assert record["frequency"] >= record["threshold"] - 0.03

    def test_same_seed_same_output(self):
        argv = ("count-sim", "--n", "8", "--t", "6", "--samples", "500", "--seed", "11")
        assert invoke(*argv) == invoke(*argv)

    def test_default_seed_from_configuration(self):
        seed = str(load_simulation_config()["miller_rabin"]["default_seed"])
        argv = ("count-sim", "--n", "8", "--t", "6", "--samples", "500")
        assert invoke(*argv) == invoke(*argv, "--seed", seed)

    def test_distribution(self):
        code, out = invoke("count-sim", "--n", "6", "--t", "4", "--distribution")
        lines = csv_lines(out)
        assert code == EXIT_OK
        assert lines[0] == "y,probability,M_estimate"
        assert len(lines) == 17
        assert sum(float(line.split(",")[1]) for line in lines[1:]) == pytest.approx(1.0, abs=1e-9)

    def test_brute_force_capacity(self):
        assert invoke("count-sim", "--n", "14", "--t", "4", "--brute-force")[0] == EXIT_USAGE


class TestRhScan:

    def test_small_range(self):
        code, out = invoke("rh-scan", "--n-min", "10", "--n-max", "12")
        lines = csv_lines(out)
        assert code == EXIT_OK
        assert lines[0] == "n,x,pi,li,abs_err,qc_bound,rh_scale"
        assert [line.split(",")[2] for line in lines[1:]] == ["172", "309", "564"]

    def test_nonpositive_c(self):
        assert invoke("rh-scan", "--c", "0")[0] == EXIT_USAGE
