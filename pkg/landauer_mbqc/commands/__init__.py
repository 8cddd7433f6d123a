"""CLI sub-commands."""

from landauer_mbqc.commands.base_command import BaseCommand, CommandRegistry, CommandResult
from landauer_mbqc.commands.simulation import EnumerateCommand, RunCommand
from landauer_mbqc.commands.thermo import ThermoReportCommand
from landauer_mbqc.commands.verify import (
    VerifyDecompositionCommand,
    VerifyNoSignalingCommand,
    VerifyOtpCommand,
    VerifySuiteCommand,
)


def build_registry() -> CommandRegistry:
    """Registry with every sub-command."""
    registry = CommandRegistry()
    for command in (
        RunCommand(),
        EnumerateCommand(),
        VerifyNoSignalingCommand(),
        VerifyOtpCommand(),
        VerifyDecompositionCommand(),
        ThermoReportCommand(),
        VerifySuiteCommand(),
    ):
        registry.register(command)
    return registry


__all__ = ['BaseCommand', 'CommandRegistry', 'CommandResult', 'build_registry']
