import os
from unittest.mock import patch

import pytest

from quantum_prime_functions.connectors import PiTableConnector
from quantum_prime_functions.tools import ValidationError
from quantum_prime_functions.tools.config_manager import BUNDLED_PI_TABLE_PATH


def write_table(tmp_path, text, name="pi.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestBundledTable:

    @pytest.fixture(scope="class")
    def connector(self):
        return PiTableConnector(BUNDLED_PI_TABLE_PATH)

    def test_loads_every_exponent(self, connector):
        values = connector.load()
        assert sorted(values) == list(range(1, 46))
        assert values[45] == 1166746786182

    def test_agrees_with_sieve(self, connector, table_2_20):
        for n in range(2, 21):
            assert connector.get(n) == table_2_20.pi_power_of_two(n)

    def test_known_values(self, connector):
        assert connector.get(10) == 172
        assert connector.get(26) == 3957809

    def test_missing_exponent(self, connector):
        assert connector.get(50) is None


class TestTableFile:

    def test_comments_and_header(self, tmp_path):
        path = write_table(tmp_path, "# comment\nn,pi_value\n3, 4\n\n4,6\n")
        assert PiTableConnector(path).load() == {3: 4, 4: 6}

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError, match="not found"):
            PiTableConnector(tmp_path / "absent.csv").load()

    def test_malformed_record(self, tmp_path):
        path = write_table(tmp_path, "3,4\n4,six\n")
        with pytest.raises(ValidationError, match="Malformed"):
            PiTableConnector(path).load()

    def test_conflicting_records(self, tmp_path):
        path = write_table(tmp_path, "3,4\n3,5\n")
        with pytest.raises(ValidationError, match="Conflicting"):
            PiTableConnector(path).load()

    def test_duplicate_identical_records_are_accepted(self, tmp_path):
        path = write_table(tmp_path, "3,4\n3,4\n")
        assert PiTableConnector(path).load() == {3: 4}

    def test_values_must_increase(self, tmp_path):
        path = write_table(tmp_path, "3,4\n4,4\n")
        with pytest.raises(ValidationError, match="increase"):
            PiTableConnector(path).load()

    def test_load_is_cached(self, tmp_path):
        path = write_table(tmp_path, "3,4\n")
        connector = PiTableConnector(path)
        connector.load()
        path.unlink()
        assert connector.get(3) == 4


class TestResolution:

    def test_sieve_preferred_when_it_covers(self, tmp_path, small_table):
        # deliberately wrong file value for n = 10
        path = write_table(tmp_path, "10,1\n30,2\n")
        connector = PiTableConnector(path)
        assert connector.resolve(10, small_table) == 172
        assert connector.resolve(30, small_table) == 2
        assert connector.resolve(31, small_table) is None

    def test_environment_path(self, tmp_path):
        path = write_table(tmp_path, "5,11\n")
        with patch.dict(os.environ, {"PRIME_PI_TABLE_PATH": str(path)}):
            connector = PiTableConnector()
        assert connector.table_path == path
        assert connector.get(5) == 11

    def test_explicit_path_beats_environment(self, tmp_path):
        explicit = write_table(tmp_path, "5,11\n", name="explicit.csv")
        with patch.dict(os.environ, {"PRIME_PI_TABLE_PATH": str(tmp_path / "other.csv")}):
            assert PiTableConnector(explicit).table_path == explicit
