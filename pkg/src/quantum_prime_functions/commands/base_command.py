import argparse
import sys
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, TextIO
from ..tools import (
    info,
    error,
    PrimeStateError,
    load_simulation_config,
    get_setting,
    write_table,
    write_record
)
from ..number_theory import PrimeTable, sieve


class BaseCommand(ABC):
    """
    Abstract base class for all CLI subcommands.

    Each command must define:
    - COMMAND_NAME: subcommand as typed on the command line (e.g. "grover-fig")
    - HELP: one-line description for the subcommand list
    - OUTPUT_SCHEMA: CSV/JSON layout, shown in the subcommand's --help
    - add_arguments(): flags of the subcommand
    - run(): produce the output and return an exit code
    """

    COMMAND_NAME: str = None
    HELP: str = ""
    OUTPUT_SCHEMA: str = ""
    DEFAULT_FORMAT: str = "csv"

    def __init__(self, args: argparse.Namespace, config: Optional[Dict[str, Any]] = None,
                 stream: Optional[TextIO] = None):
        """
        Initialize the command.

        Args:
            args: Parsed arguments of the subcommand
            config: Simulation configuration
            stream: Data output stream (stdout by default)
        """
        self.args = args
        self.config = config or load_simulation_config()
        self.stream = stream or sys.stdout
        self.format = getattr(args, "format", None) or self.DEFAULT_FORMAT
        self.digits = int(get_setting("output", "significant_digits", self.config))
        self.progress = not getattr(args, "no_progress", False)

        info("Command initialized",
             component="cli",
             command=self.COMMAND_NAME,
             format=self.format)

    @classmethod
    def register(cls, subparsers) -> argparse.ArgumentParser:
        """Create the subparser, with the output schema as epilog."""
        parser = subparsers.add_parser(
            cls.COMMAND_NAME,
            help=cls.HELP,
            description=cls.HELP,
            epilog=cls.OUTPUT_SCHEMA,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        parser.add_argument("--format", choices=["csv", "json"], default=cls.DEFAULT_FORMAT,
                            help=f"Output format (default: {cls.DEFAULT_FORMAT})")
        parser.add_argument("--no-progress", action="store_true",
                            help="Disable progress bars on stderr")
        cls.add_arguments(parser)
        return parser

    @classmethod
    @abstractmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Declare the subcommand's flags"""
        pass

    @classmethod
    def validate_args(cls, args: argparse.Namespace, config: Dict[str, Any]) -> List[str]:
        """Command-specific precondition messages; empty when valid."""
        return []

    def execute(self) -> int:
        """
        Run the command with start/finish logging.

        PrimeStateError propagates to the entry point, which maps it to an exit code.
        """
        info("Starting command",
             component="cli",
             command=self.COMMAND_NAME)
        try:
            code = self.run()
        except PrimeStateError as e:
            error("Command failed",
                  component="cli",
                  command=self.COMMAND_NAME,
                  error=str(e))
            raise
        info("Command completed",
             component="cli",
             command=self.COMMAND_NAME,
             exit_code=code)
        return code

    @abstractmethod
    def run(self) -> int:
        """Produce the command output"""
        pass

    # helpers shared by the handlers
    def build_table(self, limit: int) -> PrimeTable:
        return sieve(max(limit, 4), config=self.config, progress=self.progress)

    def emit_table(self, rows, columns: Optional[List[str]] = None) -> int:
        return write_table(rows, self.stream, fmt=self.format, columns=columns, digits=self.digits)

    def emit_record(self, record: Dict[str, Any], columns: Optional[List[str]] = None) -> None:
        """A single record: JSON object, or a one-row CSV table."""
        if self.format == "json":
            write_record(record, self.stream, digits=self.digits)
        else:
            write_table([record], self.stream, fmt="csv", columns=columns, digits=self.digits)


def check_qubits(n: Optional[int], config: Dict[str, Any], what: str = "n",
                 maximum: Optional[int] = None) -> List[str]:
    """Shared n >= 2 / capacity messages."""
    if n is None:
        return []
    maximum = maximum or int(config["qstate"]["max_qubits"])
    if n < 2:
        return [f"{what} >= 2 required (got {n}); 2^n must be composite"]
    if n > maximum:
        return [f"{what} = {n} exceeds the supported maximum of {maximum}"]
    return []


def check_range(n_min: int, n_max: int) -> List[str]:
    if n_min > n_max:
        return [f"--n-min ({n_min}) must not exceed --n-max ({n_max})"]
    return []
