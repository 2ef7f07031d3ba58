import json
import os
from unittest.mock import patch

import pytest

from quantum_prime_functions.tools import (
    ValidationError,
    load_simulation_config,
    get_setting,
    resolve_pi_table_path
)
from quantum_prime_functions.tools.config_manager import BUNDLED_PI_TABLE_PATH, REQUIRED_SECTIONS


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("MAX_PARALLEL_SEGMENTS", "PRIME_SIM_CONFIG", "PRIME_PI_TABLE_PATH"):
        monkeypatch.delenv(name, raising=False)


class TestLoadSimulationConfig:

    def test_bundled_defaults(self, clean_env):
        config = load_simulation_config()
        assert all(section in config for section in REQUIRED_SECTIONS)
        assert config["miller_rabin"]["deterministic_witnesses"] == [2, 3, 5, 7, 11, 13, 17]
        assert config["sieve"]["max_limit"] == 1 << 34

    def test_returns_independent_copies(self, clean_env):
        first = load_simulation_config()
        first["sieve"]["segment_bits"] = 1
        assert load_simulation_config()["sieve"]["segment_bits"] == 24

    def test_parallel_segments_override(self, clean_env):
        with patch.dict(os.environ, {"MAX_PARALLEL_SEGMENTS": "2"}):
            assert load_simulation_config()["sieve"]["parallel_segments"] == 2
        with patch.dict(os.environ, {"MAX_PARALLEL_SEGMENTS": "0"}):
            assert load_simulation_config()["sieve"]["parallel_segments"] == 1

    def test_parallel_segments_must_be_integer(self, clean_env):
        with patch.dict(os.environ, {"MAX_PARALLEL_SEGMENTS": "many"}):
            with pytest.raises(ValidationError, match="integer"):
                load_simulation_config()

    def test_alternative_file_from_environment(self, clean_env, tmp_path):
        config = load_simulation_config()
        config["output"]["significant_digits"] = 6
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        with patch.dict(os.environ, {"PRIME_SIM_CONFIG": str(path)}):
            assert load_simulation_config()["output"]["significant_digits"] == 6

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError, match="not found"):
            load_simulation_config(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json", encoding="utf-8")
        with pytest.raises(ValidationError, match="Invalid JSON"):
            load_simulation_config(path)

    def test_missing_sections(self, tmp_path):
        path = tmp_path / "partial.json"
        path.write_text(json.dumps({"sieve": {}, "output": {}}), encoding="utf-8")
        with pytest.raises(ValidationError, match="miller_rabin"):
            load_simulation_config(path)


class TestSettings:

    def test_get_setting(self, clean_env):
        assert get_setting("qcount", "max_phase_bits") == 20

    def test_missing_key(self, clean_env):
        with pytest.raises(ValidationError, match="grover.nothing"):
            get_setting("grover", "nothing")

    def test_pi_table_resolution_order(self, clean_env, tmp_path):
        assert resolve_pi_table_path() == BUNDLED_PI_TABLE_PATH
        with patch.dict(os.environ, {"PRIME_PI_TABLE_PATH": str(tmp_path / "env.csv")}):
            assert resolve_pi_table_path() == tmp_path / "env.csv"
            assert resolve_pi_table_path(tmp_path / "arg.csv") == tmp_path / "arg.csv"
