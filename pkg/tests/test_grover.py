import math
from unittest.mock import patch

import numpy as np
import pytest

from quantum_prime_functions.quantum import (
    FIGURE_COLUMNS,
    grover_angle,
    uniform_state,
    oracle_sign_flip,
    diffusion,
    grover_iterate,
    optimal_iterations,
    r_max,
    pg_analytic,
    run_grover,
    subspace_amplitudes,
    power_of_two_count,
    figure_scan
)
from quantum_prime_functions.connectors import PiTableConnector
from quantum_prime_functions.tools import CapacityError, DomainError, load_simulation_config


@pytest.fixture(scope="module")
def connector():
    return PiTableConnector()


class TestOperators:

    def test_uniform_state(self):
        state = uniform_state(3)
        assert np.allclose(state.amp, 1 / math.sqrt(8))

    def test_sign_flip_with_mask_and_callable(self):
        state = uniform_state(2)
        by_mask = oracle_sign_flip(state, np.array([False, True, False, True]))
        by_callable = oracle_sign_flip(state, lambda x: x % 2 == 1)
        assert np.allclose(by_mask.amp, by_callable.amp)
        assert by_mask.amp[1].real < 0 < by_mask.amp[0].real

    def test_mask_length_checked(self):
        with pytest.raises(DomainError):
            oracle_sign_flip(uniform_state(2), np.array([True, False]))

    def test_diffusion_fixes_uniform_state(self):
        state = uniform_state(4)
        assert np.allclose(diffusion(state).amp, state.amp)

    def test_single_marked_item_in_four(self):
        # one iteration finds the marked item with certainty for N = 4, M = 1
        state = grover_iterate(uniform_state(2), np.array([False, False, True, False]))
        assert abs(state.amp[2]) ** 2 == pytest.approx(1.0)

    def test_dynamics_stay_in_the_plane(self, small_table):
        mask = small_table.mask(10)
        state = uniform_state(10)
        for _ in range(3):
            state = grover_iterate(state, mask)
        marked, unmarked = subspace_amplitudes(state, mask)
        assert marked < 1e-12 and unmarked < 1e-12


class TestSchedule:

    def test_angle(self):
        assert grover_angle(4, 1) == pytest.approx(math.pi / 3)
        with pytest.raises(DomainError):
            grover_angle(4, 5)

    @pytest.mark.parametrize("n,R", [(3, 0), (10, 1)])
    def test_optimal_iterations(self, small_table, n, R):
        assert optimal_iterations(1 << n, small_table.pi_power_of_two(n)) == R

    def test_optimal_iterations_domain(self):
        with pytest.raises(DomainError):
            optimal_iterations(8, 5)
        with pytest.raises(DomainError):
            optimal_iterations(8, 0)

    def test_r_max(self):
        assert r_max(3) == 1
        assert r_max(45) == 4

    def test_n_45(self, connector):
        M = connector.get(45)
        assert optimal_iterations(1 << 45, M) == 3

    def test_n_30(self, connector):
        N, M = 1 << 30, connector.get(30)
        R = optimal_iterations(N, M)
        assert R == 2
        assert pg_analytic(N, M, R) == pytest.approx(0.822, abs=0.002)

    def test_schedule_bounds(self, connector):
        for n in range(5, 46):
            assert optimal_iterations(1 << n, connector.get(n)) <= r_max(n)

    def test_overlap_above_cos_squared_theta(self, connector):
        for n in range(30, 46):
            N, M = 1 << n, connector.get(n)
            pg = pg_analytic(N, M, optimal_iterations(N, M))
            assert pg > 0.8
            assert pg >= math.cos(grover_angle(N, M)) ** 2 - 1e-12


class TestSimulation:

    @pytest.mark.parametrize("n", [4, 8, 12, 16])
    @pytest.mark.parametrize("R", [0, 1, 3, 5])
    def test_analytic_matches_statevector(self, table_2_20, n, R):
        run = run_grover(n, table_2_20, R)
        assert run.overlap == pytest.approx(pg_analytic(run.N, run.M, R), abs=1e-10)

    def test_qubit_cap(self, table_2_20):
        config = load_simulation_config()
        config["grover"]["max_simulation_qubits"] = 8
        with pytest.raises(CapacityError):
            run_grover(9, table_2_20, 1, config)

    def test_configuration_loaded_once(self, table_2_20):
        config = load_simulation_config()
        with patch("quantum_prime_functions.quantum.qstate.load_simulation_config") as loader:
            run = run_grover(10, table_2_20, 6, config)
        loader.assert_not_called()
        assert run.overlap == pytest.approx(pg_analytic(run.N, run.M, 6), abs=1e-10)


class TestFigureScan:

    def test_columns_and_rows(self, small_table, connector):
        frame = figure_scan(2, 45, table=small_table, connector=connector)
        assert list(frame.columns) == FIGURE_COLUMNS
        assert frame["n"].tolist() == list(range(2, 46))
        row = frame[frame["n"] == 45].iloc[0]
        assert (row["R"], row["Rmax"]) == (3, 4)

    def test_sieve_and_table_agree(self, small_table, connector):
        from_sieve = figure_scan(2, 12, table=small_table)
        from_file = figure_scan(2, 12, connector=connector)
        assert from_sieve["PG"].tolist() == from_file["PG"].tolist()

    def test_gap_without_source(self, tmp_path):
        table_file = tmp_path / "pi.csv"
        table_file.write_text("n,pi_value\n2,2\n3,4\n")
        frame = figure_scan(2, 4, connector=PiTableConnector(table_file))
        last = frame.iloc[-1]
        assert last["R"] is None and last["PG"] is None
        assert last["Rmax"] == r_max(4)

    def test_invalid_range(self):
        with pytest.raises(DomainError):
            figure_scan(1, 5)


class TestPowerOfTwoCount:

    @pytest.fixture
    def wrong_file(self, tmp_path):
        table_file = tmp_path / "pi.csv"
        table_file.write_text("n,pi_value\n4,9\n5,12\n")
        return PiTableConnector(table_file)

    def test_sieve_wins_over_file(self, small_table, wrong_file):
        assert power_of_two_count(4, small_table, wrong_file) == 6

    def test_file_used_beyond_sieve(self, wrong_file):
        assert power_of_two_count(4, None, wrong_file) == 9

    def test_table_alone(self, small_table):
        assert power_of_two_count(12, small_table) == 564
        assert power_of_two_count(13, small_table) is None

    def test_figure_scan_uses_sieve_before_file(self, small_table, wrong_file):
        frame = figure_scan(4, 4, table=small_table, connector=wrong_file)
        expected = figure_scan(4, 4, table=small_table)
        assert frame["PG"].tolist() == expected["PG"].tolist()
