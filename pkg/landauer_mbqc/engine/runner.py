"""
Pattern execution: adaptive angles, sampled or forced runs, and exhaustive
trajectory enumeration.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from landauer_mbqc.config import MAX_ENUMERATED_MEASUREMENTS
from landauer_mbqc.engine.pattern import (
    MeasurementPattern,
    OutcomeRecord,
    PatternStep,
    PauliFrame,
    frame_from_outcomes,
)
from landauer_mbqc.errors import CapacityError, ImpossibleBranchError, InvalidInputError
from landauer_mbqc.qsim import PauliOperator, ProbabilityDistribution, StateVector, measure_xy_project, shannon_entropy
from landauer_mbqc.qsim.ops import ZERO_BRANCH_THRESHOLD

logger = logging.getLogger(__name__)

Outcomes = Union[OutcomeRecord, Mapping[int, int]]


def _outcome_map(outcomes: Outcomes) -> Mapping[int, int]:
    return outcomes.outcomes if isinstance(outcomes, OutcomeRecord) else outcomes


def adapted_angle(step: PatternStep, outcomes: Outcomes) -> float:
    """
    Measurement angle after feed-forward: (-1)^s * base + pi * t.

    Args:
        step: Pattern step
        outcomes: Outcomes measured so far (OutcomeRecord or plain mapping)

    Returns:
        Adapted angle in radians

    Raises:
        InvalidInputError: If a dependency has no recorded outcome
    """
    known = _outcome_map(outcomes)
    missing = [q for q in step.s_domain + step.t_domain if q not in known]
    if missing:
        raise InvalidInputError(f"Qubit {step.qubit} depends on unmeasured qubits {missing}")
    s = sum(known[q] for q in step.s_domain) % 2
    t = sum(known[q] for q in step.t_domain) % 2
    angle = -step.base_angle if s else step.base_angle
    return angle + math.pi if t else angle


def byproduct_of(pattern: MeasurementPattern, outcomes: Outcomes) -> PauliOperator:
    """
    Byproduct Pauli on the outputs (ascending qubit order).

    Raises:
        InvalidInputError: If the outcome record is incomplete
    """
    return frame_from_outcomes(pattern, _outcome_map(outcomes)).to_pauli()


@dataclass(frozen=True)
class PatternRun:
    """Result of one execution."""
    state: StateVector  # on the outputs, ascending
    record: OutcomeRecord
    frame: PauliFrame


@dataclass(frozen=True)
class Trajectory:
    record: OutcomeRecord
    state: StateVector
    frame: PauliFrame


@dataclass
class TrajectoryEnsemble:
    """All surviving trajectories of a pattern, in depth-first outcome order."""
    pattern: MeasurementPattern
    trajectories: List[Trajectory]
    resource_label: str = "custom"
    pruned: int = 0
    _distribution: Optional[ProbabilityDistribution] = field(default=None, init=False, repr=False)

    def __len__(self) -> int:
        return len(self.trajectories)

    def probabilities(self) -> np.ndarray:
        return np.array([t.record.probability for t in self.trajectories], dtype=float)

    def distribution(self) -> ProbabilityDistribution:
        """Outcome distribution labelled by bitstrings in pattern order."""
        if self._distribution is None:
            order = self.pattern.measured_qubits
            self._distribution = ProbabilityDistribution(
                self.probabilities(),
                tuple(t.record.bitstring(order) for t in self.trajectories),
            )
        return self._distribution

    def entropy_bits(self) -> float:
        return shannon_entropy(self.distribution(), base=2)


def _check_resource(resource: StateVector, pattern: MeasurementPattern) -> None:
    if resource.num_qubits != pattern.layout.num_qubits:
        raise InvalidInputError(
            f"Resource has {resource.num_qubits} qubits, layout expects {pattern.layout.num_qubits}"
        )


def run_pattern(
    resource: StateVector,
    pattern: MeasurementPattern,
    rng_seed: Optional[int] = None,
    forced_outcomes: Optional[Mapping[int, int]] = None,
    zero_threshold: float = ZERO_BRANCH_THRESHOLD
) -> PatternRun:
    """
    Execute a pattern once.

    Outcomes are sampled from a numpy Generator seeded with `rng_seed`,
    unless `forced_outcomes` fixes them.

    Args:
        resource: Resource state on all layout qubits
        pattern: Pattern to run
        rng_seed: Seed of the sampling stream
        forced_outcomes: Outcome per measured qubit (overrides sampling)
        zero_threshold: Forced outcomes below this probability are impossible

    Returns:
        PatternRun with the output state, outcome record and Pauli frame

    Raises:
        InvalidInputError: On size mismatch or an incomplete forced record
        ImpossibleBranchError: If a forced outcome, or both sampled outcomes, fall below the threshold
    """
    _check_resource(resource, pattern)
    if forced_outcomes is not None:
        missing = [q for q in pattern.measured_qubits if q not in forced_outcomes]
        if missing:
            raise InvalidInputError(f"Forced outcomes missing for qubits {missing}")
    rng = np.random.default_rng(rng_seed)

    state = resource
    live = list(range(resource.num_qubits))
    outcomes: Dict[int, int] = {}
    probability = 1.0

    for step in pattern.steps:
        angle = adapted_angle(step, outcomes)
        position = live.index(step.qubit)
        if forced_outcomes is not None:
            outcome = int(forced_outcomes[step.qubit])
            p, collapsed = measure_xy_project(state, position, angle, outcome, zero_threshold)
            if collapsed is None:
                raise ImpossibleBranchError(
                    f"Outcome {outcome} on qubit {step.qubit} has probability {p:.3e}"
                )
        else:
            p0, collapsed0 = measure_xy_project(state, position, angle, 0, zero_threshold)
            outcome = 0 if collapsed0 is not None and rng.random() < p0 else 1
            if outcome == 0:
                p, collapsed = p0, collapsed0
            else:
                p, collapsed = measure_xy_project(state, position, angle, 1, zero_threshold)
                if collapsed is None:
                    if collapsed0 is None:
                        raise ImpossibleBranchError(
                            f"Both outcomes on qubit {step.qubit} fall below {zero_threshold:.3e}"
                        )
                    p, collapsed, outcome = p0, collapsed0, 0
        outcomes[step.qubit] = outcome
        probability *= p
        state = collapsed
        live.pop(position)
        logger.debug(f"Qubit {step.qubit} measured at {angle:.6f} -> {outcome} (p={p:.6f})")

    record = OutcomeRecord(outcomes=outcomes, probability=min(probability, 1.0))
    return PatternRun(state=state, record=record, frame=frame_from_outcomes(pattern, outcomes))


@dataclass(frozen=True)
class _Node:
    state: StateVector
    live: Tuple[int, ...]
    outcomes: Tuple[Tuple[int, int], ...]
    probability: float


def _children(node: _Node, step: PatternStep, zero_threshold: float) -> Tuple[List[_Node], int]:
    outcomes = dict(node.outcomes)
    angle = adapted_angle(step, outcomes)
    position = node.live.index(step.qubit)
    live = node.live[:position] + node.live[position + 1:]
    children, pruned = [], 0
    for outcome in (0, 1):
        p, collapsed = measure_xy_project(node.state, position, angle, outcome, zero_threshold)
        if collapsed is None or node.probability * p < zero_threshold:
            pruned += 1
            continue
        children.append(_Node(collapsed, live, node.outcomes + ((step.qubit, outcome),), node.probability * p))
    return children, pruned


def _expand(node: _Node, pattern: MeasurementPattern, depth: int, zero_threshold: float) -> Tuple[List[_Node], int]:
    """Depth-first leaves below `node`, outcome 0 first."""
    if depth == len(pattern.steps):
        return [node], 0
    leaves, pruned = [], 0
    children, cut = _children(node, pattern.steps[depth], zero_threshold)
    pruned += cut
    for child in children:
        below, cut = _expand(child, pattern, depth + 1, zero_threshold)
        leaves.extend(below)
        pruned += cut
    return leaves, pruned


def enumerate_trajectories(
    resource: StateVector,
    pattern: MeasurementPattern,
    max_workers: int = 1,
    zero_threshold: float = ZERO_BRANCH_THRESHOLD
) -> TrajectoryEnsemble:
    """
    Every outcome branch of a pattern with its probability.

    With max_workers > 1 the tree is first expanded breadth-first to a
    frontier of at least max_workers nodes; the subtrees then run on a thread
    pool and are concatenated in frontier order, so the result does not
    depend on scheduling.

    Args:
        resource: Resource state (shared read-only)
        pattern: Pattern to enumerate
        max_workers: Thread cap
        zero_threshold: Branches below this probability are pruned

    Returns:
        TrajectoryEnsemble in depth-first order, outcome 0 first

    Raises:
        CapacityError: If the pattern has more than 16 measurements
    """
    _check_resource(resource, pattern)
    if len(pattern.steps) > MAX_ENUMERATED_MEASUREMENTS:
        raise CapacityError(
            f"Enumeration supports at most {MAX_ENUMERATED_MEASUREMENTS} measurements, "
            f"pattern has {len(pattern.steps)}"
        )

    root = _Node(resource, tuple(range(resource.num_qubits)), (), 1.0)
    pruned = 0
    if max_workers <= 1:
        leaves, pruned = _expand(root, pattern, 0, zero_threshold)
    else:
        frontier, depth = [root], 0
        while len(frontier) < max_workers and depth < len(pattern.steps):
            next_frontier = []
            for node in frontier:
                children, cut = _children(node, pattern.steps[depth], zero_threshold)
                next_frontier.extend(children)
                pruned += cut
            frontier, depth = next_frontier, depth + 1
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            results = list(executor.map(lambda node: _expand(node, pattern, depth, zero_threshold), frontier))
        leaves = [leaf for below, _ in results for leaf in below]
        pruned += sum(cut for _, cut in results)

    trajectories = []
    for leaf in leaves:
        outcomes = dict(leaf.outcomes)
        trajectories.append(Trajectory(
            record=OutcomeRecord(outcomes=outcomes, probability=min(leaf.probability, 1.0)),
            state=leaf.state,
            frame=frame_from_outcomes(pattern, outcomes),
        ))

    if pruned:
        logger.warning(f"Pruned {pruned} zero-probability branches")
    logger.info(f"Enumerated {len(trajectories)} trajectories over {len(pattern.steps)} measurements")
    return TrajectoryEnsemble(
        pattern=pattern,
        trajectories=trajectories,
        resource_label=pattern.name or "custom",
        pruned=pruned,
    )
