"""
Base command class and registry for the CLI.

Every sub-command turns a RunConfig into a report dictionary plus a verdict.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Optional

from landauer_mbqc import __version__
from landauer_mbqc.config import RunConfig, Settings
from landauer_mbqc.engine import LoadedPattern, builtin_pattern, load_pattern_file
from landauer_mbqc.errors import InvalidInputError


@dataclass
class CommandResult:
    """Report of a command and whether it passed."""
    report: Dict[str, Any]
    passed: bool = True


class BaseCommand(ABC):
    """
    Base class for all CLI commands.

    Subclasses must implement:
    - name: sub-command name (a Command value)
    - description: help text
    - execute: the command itself
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Sub-command name."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        """Help text."""
        pass

    @abstractmethod
    def execute(self, config: RunConfig, settings: Settings) -> CommandResult:
        """
        Run the command.

        Args:
            config: Parsed invocation
            settings: Environment settings

        Returns:
            CommandResult
        """
        pass

    def load_pattern(self, config: RunConfig) -> LoadedPattern:
        """
        The pattern named by --pattern or --builtin.

        Raises:
            InvalidInputError: If neither or both are given
            PatternFileError: If the file is malformed
        """
        if config.pattern_path and config.builtin:
            raise InvalidInputError("Use either --pattern or --builtin, not both")
        if config.pattern_path:
            return load_pattern_file(config.pattern_path)
        if config.builtin:
            pattern = builtin_pattern(config.builtin, config.builtin_params, n_rows=config.rows)
            return LoadedPattern(pattern=pattern)
        raise InvalidInputError(f"Command {self.name} needs --pattern or --builtin")

    def envelope(self, config: RunConfig, schema: str) -> Dict[str, Any]:
        """Common report header."""
        return {
            "schema": schema,
            "command": self.name,
            "tool_version": __version__,
            "seed": config.seed,
            "tolerances": config.tolerances.model_dump(),
        }


class CommandRegistry:
    """Registry for managing commands."""

    def __init__(self):
        self._commands: Dict[str, BaseCommand] = {}

    def register(self, command: BaseCommand):
        """
        Register a command.

        Args:
            command: Command instance
        """
        self._commands[command.name] = command

    def get(self, name: str) -> BaseCommand:
        """
        Get command by name.

        Raises:
            KeyError: If command not found
        """
        if name not in self._commands:
            raise KeyError(f"Command not found: {name}")
        return self._commands[name]

    def get_all(self) -> Dict[str, BaseCommand]:
        return self._commands.copy()

    def execute(self, name: str, config: RunConfig, settings: Settings) -> CommandResult:
        """Run a command by name."""
        return self.get(name).execute(config, settings)


def resolve_layers(config: RunConfig, loaded: LoadedPattern, default: Optional[int] = None) -> int:
    """--r if given, else `default`, else the pattern's measured layer count."""
    if config.r is not None:
        return config.r
    if default is not None:
        return default
    layers = loaded.pattern.measured_layers()
    if layers < 1:
        raise InvalidInputError("Pattern does not measure a full layer; pass --r")
    return layers
