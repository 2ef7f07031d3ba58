"""
Configuration management: JSON defaults shipped with the package plus environment overrides.
"""
import copy
import json
import os
from pathlib import Path
from typing import Dict, Any, Optional, Union
from dotenv import load_dotenv
from .logging_manager import error, info
from .validation_utils import ValidationError

CONFIG_DIR = Path(__file__).resolve().parents[1] / "config"
DEFAULT_CONFIG_PATH = CONFIG_DIR / "simulation_config.json"
BUNDLED_PI_TABLE_PATH = CONFIG_DIR / "pi_powers_of_two.csv"

REQUIRED_SECTIONS = ("sieve", "miller_rabin", "qstate", "grover", "qcount", "output")

_config_cache: Dict[str, Dict[str, Any]] = {}


def load_simulation_config(config_path: Optional[Union[str, Path]] = None, reload: bool = False) -> Dict[str, Any]:
    """
    Load the simulation configuration.

    Resolution order for the file: explicit argument, PRIME_SIM_CONFIG, bundled default.
    MAX_PARALLEL_SEGMENTS overrides sieve.parallel_segments.

    Args:
        config_path: Optional path to an alternative JSON configuration
        reload: Bypass the in-process cache

    Returns:
        A fresh copy of the configuration dictionary
    """
    load_dotenv()
    path = Path(config_path or os.getenv('PRIME_SIM_CONFIG') or DEFAULT_CONFIG_PATH)
    key = str(path)

    if reload or key not in _config_cache:
        try:
            with open(path, encoding="utf-8") as handle:
                config = json.load(handle)
        except FileNotFoundError:
            error("Configuration file not found", component="config", path=key)
            raise ValidationError(f"Configuration file not found: {key}")
        except json.JSONDecodeError as e:
            error("Invalid JSON in configuration", component="config", path=key, error=str(e))
            raise ValidationError(f"Invalid JSON in configuration {key}: {str(e)}")

        missing = [section for section in REQUIRED_SECTIONS if section not in config]
        if missing:
            error(f"Missing configuration sections: {', '.join(missing)}",
                  component="config",
                  missing_sections=missing)
            raise ValidationError(f"Missing configuration sections: {', '.join(missing)}")

        _config_cache[key] = config
        info("Simulation configuration loaded", component="config", path=key)

    config = copy.deepcopy(_config_cache[key])

    parallel = os.getenv('MAX_PARALLEL_SEGMENTS')
    if parallel:
        try:
            config["sieve"]["parallel_segments"] = max(1, int(parallel))
        except ValueError:
            error("MAX_PARALLEL_SEGMENTS is not an integer", component="config", value=parallel)
            raise ValidationError(f"MAX_PARALLEL_SEGMENTS must be an integer, got '{parallel}'")

    return config


def get_setting(section: str, key: str, config: Optional[Dict[str, Any]] = None) -> Any:
    """Read one setting, raising ValidationError if it is missing."""
    config = config or load_simulation_config()
    try:
        return config[section][key]
    except KeyError:
        error("Missing configuration key", component="config", section=section, key=key)
        raise ValidationError(f"Missing configuration key: {section}.{key}")


def resolve_pi_table_path(explicit_path: Optional[Union[str, Path]] = None) -> Path:
    """Pick the pi-table file: explicit path, PRIME_PI_TABLE_PATH, or the bundled table."""
    load_dotenv()
    chosen = explicit_path or os.getenv('PRIME_PI_TABLE_PATH') or BUNDLED_PI_TABLE_PATH
    info("Resolved pi-table path", component="config", path=str(chosen))
    return Path(chosen)
