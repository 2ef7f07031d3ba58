from .base_command import BaseCommand
from .command_loader import CommandLoader
