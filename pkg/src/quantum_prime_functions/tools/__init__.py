from .tools import ScanProgressBar, scan_progress, format_number, round_significant
from .config_manager import load_simulation_config, get_setting, resolve_pi_table_path
from .validation_utils import (
    PrimeStateError,
    CapacityError,
    DomainError,
    RangeError,
    WitnessGuardError,
    ValidationError,
    validate_qubit_count,
    validate_below_limit,
    validate_index,
    validate_odd_at_least_three
)
from .table_writer import write_table, write_record
from .logging_manager import (
    logging_manager,
    info,
    error,
    warning,
    debug,
    exception
)
