import importlib
import inspect
from pathlib import Path
from typing import Dict, Type, Optional
from .base_command import BaseCommand
from ..tools import info, error, warning, debug


class CommandLoader:
    """
    Discovers and registers CLI subcommands from the handlers directory.

    Every module in handlers/ is imported and each BaseCommand subclass with a
    COMMAND_NAME is registered under that name.
    """

    _commands: Dict[str, Type[BaseCommand]] = {}
    _loaded: bool = False

    @classmethod
    def load_all(cls) -> None:
        """Import every handler module and register its commands."""
        if cls._loaded:
            return

        handlers_dir = Path(__file__).parent / "handlers"
        if not handlers_dir.exists():
            warning(f"Handlers directory not found {str(handlers_dir)}",
                    component="command_loader",
                    expected_path=str(handlers_dir))
            cls._loaded = True
            return

        handler_files = sorted(handlers_dir.glob("*.py"))
        loaded_count = 0
        failed_count = 0

        for py_file in handler_files:
            if py_file.name.startswith("_"):
                continue
            try:
                cls._load_commands_from_file(py_file)
                loaded_count += 1
            except Exception as e:
                error(f"Failed to load command from {py_file.name}: {str(e)}",
                      component="command_loader",
                      file=py_file.name,
                      error=str(e))
                failed_count += 1

        info(f"Command discovery completed: {loaded_count} loaded, {failed_count} failed",
             component="command_loader",
             total_loaded=loaded_count,
             failed=failed_count,
             registered_commands=sorted(cls._commands))
        cls._loaded = True

    @classmethod
    def _load_commands_from_file(cls, py_file: Path) -> None:
        """
        Import one handler module and register the commands it defines.

        Args:
            py_file: Path to the handler module
        """
        module_name = f"{__package__}.handlers.{py_file.stem}"
        module = importlib.import_module(module_name)

        found = 0
        for name, obj in inspect.getmembers(module, inspect.isclass):
            # imported base classes show up as members too
            if obj.__module__ != module.__name__:
                continue
            if not cls._validate_command_class(obj):
                continue

            if obj.COMMAND_NAME in cls._commands:
                warning(f"Command {obj.COMMAND_NAME} already registered, skipping",
                        component="command_loader",
                        existing_class=cls._commands[obj.COMMAND_NAME].__name__,
                        new_class=obj.__name__)
                continue

            cls._commands[obj.COMMAND_NAME] = obj
            found += 1
            debug(f"Registered command {obj.COMMAND_NAME}",
                  component="command_loader",
                  class_name=obj.__name__)

        if found == 0:
            warning(f"No command classes found in {py_file.name}",
                    component="command_loader")

    @classmethod
    def _validate_command_class(cls, command_class: Type) -> bool:
        """
        Check that a class is a concrete, named BaseCommand.

        Returns:
            bool: True if valid, False otherwise
        """
        if not issubclass(command_class, BaseCommand) or inspect.isabstract(command_class):
            return False
        if not command_class.COMMAND_NAME:
            warning(f"Command {command_class.__name__} missing COMMAND_NAME",
                    component="command_loader")
            return False
        if not command_class.OUTPUT_SCHEMA:
            warning(f"Command {command_class.__name__} does not document its output",
                    component="command_loader",
                    command=command_class.COMMAND_NAME)
        return True

    @classmethod
    def get_command(cls, name: str) -> Optional[Type[BaseCommand]]:
        """
        Command class registered under a subcommand name.

        Args:
            name: Subcommand (e.g. "rh-scan")

        Returns:
            Optional[Type[BaseCommand]]: The class, or None if unknown
        """
        if not cls._loaded:
            cls.load_all()

        command_class = cls._commands.get(name)
        if command_class is None:
            warning(f"No command registered as {name}",
                    component="command_loader",
                    available_commands=sorted(cls._commands))
        return command_class

    @classmethod
    def get_available_commands(cls) -> Dict[str, Type[BaseCommand]]:
        """Registered commands, keyed by subcommand name."""
        if not cls._loaded:
            cls.load_all()
        return dict(sorted(cls._commands.items()))

    @classmethod
    def reload(cls) -> None:
        """Forget the registry and discover again."""
        info("Forcing reload of all commands",
             component="command_loader")
        cls._commands.clear()
        cls._loaded = False
        cls.load_all()
