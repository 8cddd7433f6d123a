"""`thermo-report` command (schema "thermo/1")."""

from landauer_mbqc.commands.base_command import BaseCommand, CommandResult
from landauer_mbqc.commands.simulation import build_resource
from landauer_mbqc.config import Command, RunConfig, Settings
from landauer_mbqc.engine import enumerate_trajectories
from landauer_mbqc.thermo import NATURAL, SI, mbqc_heat_report
from landauer_mbqc.verify import prefix_of


class ThermoReportCommand(BaseCommand):
    """Entropy and heat accounting of a full pattern run."""

    @property
    def name(self) -> str:
        return Command.THERMO_REPORT.value

    @property
    def description(self) -> str:
        return "Landauer and Sagawa-Ueda heat report for the pattern's outcome record"

    def execute(self, config: RunConfig, settings: Settings) -> CommandResult:
        loaded = self.load_pattern(config)
        pattern = loaded.pattern if config.r is None else prefix_of(loaded.pattern, config.r)
        ensemble = enumerate_trajectories(
            build_resource(loaded), pattern,
            max_workers=config.max_workers,
            zero_threshold=config.tolerances.zero_branch,
        )
        report = mbqc_heat_report(
            ensemble,
            pattern.layout,
            config.temperature,
            constants=NATURAL if config.natural_units else SI,
            include_final_erasure=config.include_final_erasure,
            tolerances=config.tolerances,
            seed=config.seed,
        )
        return CommandResult(report=report.to_dict(), passed=report.passed)
