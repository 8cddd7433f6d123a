"""Verification commands (schema "verify/1")."""

import logging
from typing import List, Optional

from landauer_mbqc.commands.base_command import BaseCommand, CommandResult, resolve_layers
from landauer_mbqc.config import Command, RunConfig, Settings
from landauer_mbqc.engine import LoadedPattern
from landauer_mbqc.errors import InvalidInputError
from landauer_mbqc.verify import (
    check_decomposition,
    check_no_signaling,
    check_one_time_pad,
    otp_from_mbqc,
    prefix_of,
    run_verification_suite,
)

logger = logging.getLogger(__name__)


def _strategy(config_angles: Optional[List[float]], fallback: Optional[List[float]], label: str) -> List[float]:
    if config_angles is not None:
        return config_angles
    if fallback is None:
        raise InvalidInputError(f"--angles-{label} is required when the pattern does not measure C_r")
    return fallback


class VerifyNoSignalingCommand(BaseCommand):

    @property
    def name(self) -> str:
        return Command.VERIFY_NO_SIGNALING.value

    @property
    def description(self) -> str:
        return "Compare Bob's marginal on O_r under two angle assignments on C_r"

    def execute(self, config: RunConfig, settings: Settings) -> CommandResult:
        loaded: LoadedPattern = self.load_pattern(config)
        pattern = loaded.pattern
        r = resolve_layers(config, loaded)
        alice = list(range(r * pattern.layout.rows))
        base = pattern.base_angles()
        pattern_angles = [base[q] for q in alice] if all(q in base for q in alice) else None

        angles_a = _strategy(config.angles_a, pattern_angles, "a")
        angles_b = _strategy(config.angles_b, [0.0] * len(alice), "b")
        report = check_no_signaling(
            pattern.layout, loaded.input_state, angles_a, angles_b, r,
            max_workers=config.max_workers,
            seed=config.seed,
            tolerances=config.tolerances,
        )
        return CommandResult(report=report.to_dict(), passed=report.passed)


class VerifyDecompositionCommand(BaseCommand):

    @property
    def name(self) -> str:
        return Command.VERIFY_DECOMPOSITION.value

    @property
    def description(self) -> str:
        return "Rebuild each post-measurement state on O_r from the logical state"

    def execute(self, config: RunConfig, settings: Settings) -> CommandResult:
        loaded = self.load_pattern(config)
        r = resolve_layers(config, loaded)
        report = check_decomposition(
            loaded.pattern.layout, loaded.input_state, loaded.pattern, r,
            max_workers=config.max_workers,
            seed=config.seed,
            tolerances=config.tolerances,
        )
        return CommandResult(report=report.to_dict(), passed=report.passed)


class VerifyOtpCommand(BaseCommand):

    @property
    def name(self) -> str:
        return Command.VERIFY_OTP.value

    @property
    def description(self) -> str:
        return "Check that the byproduct keys of C_r act as a quantum one-time pad"

    def execute(self, config: RunConfig, settings: Settings) -> CommandResult:
        loaded = self.load_pattern(config)
        r = resolve_layers(config, loaded)
        prefix = prefix_of(loaded.pattern, r)
        keys = otp_from_mbqc(prefix.layout, prefix, max_workers=config.max_workers)
        report = check_one_time_pad(
            keys,
            sample_count=config.otp_samples,
            rng_seed=config.seed,
            tolerances=config.tolerances,
        )
        report = report.model_copy(update={"pattern": prefix.describe()})
        return CommandResult(report=report.to_dict(), passed=report.passed)


class VerifySuiteCommand(BaseCommand):

    @property
    def name(self) -> str:
        return Command.VERIFY_SUITE.value

    @property
    def description(self) -> str:
        return "Run the built-in battery of verification checks"

    def execute(self, config: RunConfig, settings: Settings) -> CommandResult:
        report = run_verification_suite(
            seed=config.seed,
            tolerances=config.tolerances,
            otp_samples=config.otp_samples,
            max_workers=config.max_workers,
        )
        return CommandResult(report=report.to_dict(), passed=report.passed)
