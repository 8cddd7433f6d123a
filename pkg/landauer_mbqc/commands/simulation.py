"""`run` and `enumerate` commands (schema "mbqc/1")."""

import logging
from typing import Any, Dict, List

from landauer_mbqc.commands.base_command import BaseCommand, CommandResult
from landauer_mbqc.config import Command, MAX_DENSITY_QUBITS, RunConfig, Settings
from landauer_mbqc.engine import LoadedPattern, PauliFrame, enumerate_trajectories, run_pattern
from landauer_mbqc.graphstate import encode_input
from landauer_mbqc.qsim import StateVector, new_plus_state

logger = logging.getLogger(__name__)

MBQC_SCHEMA = "mbqc/1"


def build_resource(loaded: LoadedPattern) -> StateVector:
    """Resource of a loaded pattern: its input on column 0, |+> elsewhere, entangled."""
    layout = loaded.pattern.layout
    input_state = loaded.input_state if loaded.input_state is not None else new_plus_state(layout.rows)
    return encode_input(input_state, layout)


def frame_dict(frame: PauliFrame) -> Dict[str, List[int]]:
    return {str(q): [a_x, a_z] for q, (a_x, a_z) in sorted(frame.bits.items())}


def amplitude_pairs(state: StateVector) -> List[List[float]]:
    return [[float(a.real), float(a.imag)] for a in state.amplitudes]


class RunCommand(BaseCommand):
    """Execute a pattern once with sampled outcomes."""

    @property
    def name(self) -> str:
        return Command.RUN.value

    @property
    def description(self) -> str:
        return "Run a pattern once with outcomes sampled from --seed"

    def execute(self, config: RunConfig, settings: Settings) -> CommandResult:
        loaded = self.load_pattern(config)
        pattern = loaded.pattern
        result = run_pattern(build_resource(loaded), pattern, rng_seed=config.seed,
                             zero_threshold=config.tolerances.zero_branch)

        report: Dict[str, Any] = self.envelope(config, MBQC_SCHEMA)
        report.update({
            "pattern": pattern.describe(),
            "outcomes": {str(q): bit for q, bit in result.record.outcomes.items()},
            "outcome_bitstring": result.record.bitstring(pattern.measured_qubits),
            "probability": result.record.probability,
            "frame": frame_dict(result.frame),
            "byproduct": result.frame.to_pauli().label,
        })
        if result.state.num_qubits <= MAX_DENSITY_QUBITS:
            report["output_amplitudes"] = amplitude_pairs(result.state)
        logger.info(f"Run finished with outcomes {report['outcome_bitstring']}")
        return CommandResult(report=report)


class EnumerateCommand(BaseCommand):
    """Enumerate every outcome branch of a pattern."""

    @property
    def name(self) -> str:
        return Command.ENUMERATE.value

    @property
    def description(self) -> str:
        return "Enumerate all trajectories with probabilities and byproducts"

    def execute(self, config: RunConfig, settings: Settings) -> CommandResult:
        loaded = self.load_pattern(config)
        pattern = loaded.pattern
        ensemble = enumerate_trajectories(build_resource(loaded), pattern, max_workers=config.max_workers,
                                          zero_threshold=config.tolerances.zero_branch)
        order = pattern.measured_qubits

        report: Dict[str, Any] = self.envelope(config, MBQC_SCHEMA)
        report.update({
            "pattern": pattern.describe(),
            "measurement_order": order,
            "num_trajectories": len(ensemble),
            "pruned_branches": ensemble.pruned,
            "total_probability": float(ensemble.probabilities().sum()),
            "entropy_bits": ensemble.entropy_bits(),
            "trajectories": [
                {
                    "outcomes": t.record.bitstring(order),
                    "probability": t.record.probability,
                    "frame": frame_dict(t.frame),
                    "byproduct": t.frame.to_pauli().label,
                }
                for t in ensemble.trajectories
            ],
        })
        return CommandResult(report=report)
