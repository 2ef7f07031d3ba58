import argparse
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple
from .commands import CommandLoader
from .tools import (
    logging_manager,
    info,
    exception,
    PrimeStateError,
    load_simulation_config
)

PROG = "quantum_prime_functions"

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


#quantum_prime_functions state --n 3 --format json
#quantum_prime_functions grover-fig --n-min 2 --n-max 45
#quantum_prime_functions oracle-verify --n 16
@dataclass
class RunConfig:
    """Parsed command line: the shared fields plus the full subcommand namespace."""
    command: str
    format: str = "csv"
    n: Optional[int] = None
    l: Optional[int] = None
    i: Optional[int] = None
    limit: Optional[int] = None
    witnesses: Optional[List[int]] = None
    c: Optional[float] = None
    t: Optional[int] = None
    seed: Optional[int] = None
    pi_table_path: Optional[str] = None
    args: argparse.Namespace = field(default_factory=argparse.Namespace, repr=False)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            format=getattr(args, "format", "csv"),
            n=getattr(args, "n", None),
            l=getattr(args, "l", None),
            i=getattr(args, "i", None),
            limit=getattr(args, "limit", None),
            witnesses=getattr(args, "witnesses", None),
            c=getattr(args, "c", None),
            t=getattr(args, "t", None),
            seed=getattr(args, "seed", None),
            pi_table_path=getattr(args, "pi_table", None),
            args=args,
        )


def _build_parsers() -> Tuple[argparse.ArgumentParser, Dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Prime state simulations: entanglement, Grover search, Miller-Rabin oracle and quantum counting",
    )
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Logging level on stderr (default: $LOG_LEVEL or WARNING)")
    subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)

    by_name = {}
    for name, command_class in CommandLoader.get_available_commands().items():
        by_name[name] = command_class.register(subparsers)
    return parser, by_name


def build_parser() -> argparse.ArgumentParser:
    return _build_parsers()[0]


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse the command line into a RunConfig; argparse exits with code 2 on bad flags."""
    args = build_parser().parse_args(argv)
    return RunConfig.from_args(args)


def validate(config: RunConfig, settings: Optional[Dict[str, Any]] = None) -> List[str]:
    """
    Collect every violated precondition of the selected command.

    Args:
        config: Parsed command line
        settings: Simulation configuration (loaded when omitted)

    Returns:
        Human-readable messages; empty when the command can run
    """
    command_class = CommandLoader.get_command(config.command)
    if command_class is None:
        return [f"unknown command '{config.command}'"]
    settings = settings or load_simulation_config()
    return command_class.validate_args(config.args, settings)


def run(argv: Optional[Sequence[str]] = None, stream: Optional[TextIO] = None) -> int:
    """
    Parse, validate and dispatch one subcommand.

    Returns:
        0 on success, 2 on usage or precondition errors, 1 on internal errors
    """
    parser, subparsers = _build_parsers()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

    if args.log_level:
        logging_manager.set_level(args.log_level)
    config = RunConfig.from_args(args)
    info("Command line arguments parsed successfully",
         component="cli",
         args=vars(args))

    try:
        settings = load_simulation_config()
        problems = validate(config, settings)
        if problems:
            subparsers[config.command].print_usage(sys.stderr)
            for problem in problems:
                sys.stderr.write(f"{PROG} {config.command}: error: {problem}\n")
            return EXIT_USAGE

        command = CommandLoader.get_command(config.command)(args, settings, stream)
        code = command.execute()
        (stream or sys.stdout).flush()
        return code

    except PrimeStateError as e:
        sys.stderr.write(f"{PROG} {config.command}: error: {e}\n")
        return EXIT_USAGE
    except Exception as e:
        exception("Unexpected failure",
                  component="cli",
                  command=config.command,
                  error=str(e))
        return EXIT_INTERNAL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
