"""
Numerical checks of no-signaling, post-measurement decomposition and
one-time-pad encryption on MBQC resources.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from landauer_mbqc.config import DEFAULT_OTP_SAMPLES, MAX_OTP_QUBITS, Tolerances
from landauer_mbqc.engine import (
    MeasurementPattern,
    PatternStep,
    TrajectoryEnsemble,
    builtin_pattern,
    compile_layered_pattern,
    enumerate_trajectories,
    layered_unitary,
    restrict_to_prefix,
)
from landauer_mbqc.errors import CapacityError, InvalidInputError, UnsupportedResourceError
from landauer_mbqc.graphstate import ClusterLayout, Region, cluster_on_columns, encode_input, region
from landauer_mbqc.qsim import (
    DensityMatrix,
    PauliOperator,
    ProbabilityDistribution,
    StateVector,
    apply_cz_edges,
    apply_pauli,
    density_matrix,
    fidelity_pure,
    new_plus_state,
    partial_trace,
    random_pure_state,
    shannon_entropy,
    trace_distance,
)
from landauer_mbqc.verify.reports import (
    DecompositionReport,
    NoSignalingReport,
    OtpReport,
    SuiteEntry,
    SuiteReport,
)

logger = logging.getLogger(__name__)

Strategy = Union[Sequence[float], Dict[int, float], MeasurementPattern]
KeyedPaulis = List[Tuple[float, PauliOperator]]


def ensemble_mixture(ensemble: TrajectoryEnsemble, keep: Iterable[int]) -> DensityMatrix:
    """
    Sum of p_j times the reduced state of trajectory j on `keep`.

    Args:
        ensemble: Enumerated trajectories
        keep: Layout qubit labels, all of them pattern outputs

    Raises:
        InvalidInputError: If a kept qubit was measured
    """
    outputs = ensemble.pattern.sorted_outputs
    keep = sorted(set(keep))
    unknown = [q for q in keep if q not in outputs]
    if unknown:
        raise InvalidInputError(f"Qubits {unknown} are not outputs of the pattern")
    positions = [outputs.index(q) for q in keep]

    mixture = np.zeros((2 ** len(keep), 2 ** len(keep)), dtype=complex)
    for trajectory in ensemble.trajectories:
        mixture += trajectory.record.probability * partial_trace(trajectory.state, positions).matrix
    return DensityMatrix.from_matrix(mixture / np.trace(mixture).real)


def bob_marginal(
    resource: StateVector,
    pattern_prefix: MeasurementPattern,
    bob_region: Region,
    max_workers: int = 1
) -> DensityMatrix:
    """
    Bob's averaged state on `bob_region` after Alice runs `pattern_prefix`.

    Raises:
        CapacityError: If the region has more than 12 qubits
    """
    if not pattern_prefix.steps:
        return partial_trace(resource, bob_region.qubits)
    ensemble = enumerate_trajectories(resource, pattern_prefix, max_workers=max_workers)
    return ensemble_mixture(ensemble, bob_region.qubits)


def _strategy_pattern(layout: ClusterLayout, strategy: Strategy, r: int, label: str) -> MeasurementPattern:
    alice = set(region(layout, "C", r).qubits)
    if isinstance(strategy, MeasurementPattern):
        if strategy.layout != layout:
            raise InvalidInputError(f"Strategy {label} runs on a different layout")
        if set(strategy.measured_qubits) != alice:
            raise InvalidInputError(f"Strategy {label} must measure exactly C_{r}")
        return strategy
    if isinstance(strategy, dict):
        if set(strategy) != alice:
            raise InvalidInputError(f"Strategy {label} must assign angles to exactly C_{r}")
        angles = dict(strategy)
    else:
        if len(strategy) != len(alice):
            raise InvalidInputError(
                f"Strategy {label} has {len(strategy)} angles, C_{r} has {len(alice)} qubits"
            )
        angles = dict(zip(sorted(alice), (float(a) for a in strategy)))
    if layout.is_layered:
        return compile_layered_pattern(layout, angles, r, name=f"strategy_{label}")
    # any graph: plain non-adaptive measurements
    return MeasurementPattern(
        layout=layout,
        steps=tuple(PatternStep(qubit=q, base_angle=angles[q]) for q in sorted(alice)),
        outputs=tuple(q for q in range(layout.num_qubits) if q not in alice),
        name=f"strategy_{label}",
    )


def _strategy_descriptor(pattern: MeasurementPattern) -> Dict:
    return {**pattern.describe(), "angles": [step.base_angle for step in pattern.steps]}


def _resource(layout: ClusterLayout, input_state: Optional[StateVector]) -> StateVector:
    return encode_input(input_state if input_state is not None else new_plus_state(layout.rows), layout)


def _tolerances_used(
    tolerances: Optional[Tolerances],
    verification: Optional[float],
    entropy_bound: Optional[float] = None
) -> Tolerances:
    used = (tolerances or Tolerances()).with_verification(verification)
    if entropy_bound is not None:
        used = Tolerances(**{**used.model_dump(), "entropy_bound": entropy_bound})
    return used


def check_no_signaling(
    layout: ClusterLayout,
    input_state: Optional[StateVector],
    strategy_a: Strategy,
    strategy_b: Strategy,
    r: int,
    tolerance: Optional[float] = None,
    max_workers: int = 1,
    seed: int = 0,
    tolerances: Optional[Tolerances] = None
) -> NoSignalingReport:
    """
    Compare Bob's marginal on O_r under two measurement strategies on C_r.

    Args:
        layout: Resource layout
        input_state: Register input (None = |+>^n)
        strategy_a: Angles on C_r (column-major list or mapping) or a pattern measuring C_r
        strategy_b: Same for the second strategy
        r: Cut position
        tolerance: Pass threshold on the trace distance (defaults to tolerances.verification)
        tolerances: Base tolerances, recorded in the report with the override applied

    Returns:
        NoSignalingReport

    Raises:
        InvalidInputError: If a strategy does not cover exactly C_r
    """
    used = _tolerances_used(tolerances, tolerance)
    tolerance = used.verification
    pattern_a = _strategy_pattern(layout, strategy_a, r, "a")
    pattern_b = _strategy_pattern(layout, strategy_b, r, "b")
    bob = region(layout, "O", r)
    resource = _resource(layout, input_state)

    marginal_a = bob_marginal(resource, pattern_a, bob, max_workers)
    marginal_b = bob_marginal(resource, pattern_b, bob, max_workers)
    distance = trace_distance(marginal_a, marginal_b)
    passed = distance <= tolerance
    log = logger.info if passed else logger.warning
    log(f"No-signaling on {layout.rows}x{layout.cols}, r={r}: distance {distance:.3e} ({'pass' if passed else 'FAIL'})")

    return NoSignalingReport(
        seed=seed,
        tolerances=used.model_dump(),
        strategy_a=_strategy_descriptor(pattern_a),
        strategy_b=_strategy_descriptor(pattern_b),
        r=r,
        bob_region=list(bob.qubits),
        distance=distance,
        tolerance=tolerance,
        passed=passed,
    )


def prefix_of(pattern: MeasurementPattern, r: int) -> MeasurementPattern:
    """The pattern itself when it measures exactly C_r, else its recompiled C_r prefix."""
    measured = set(pattern.measured_qubits)
    if measured == set(range(r * pattern.layout.rows)):
        return pattern
    return restrict_to_prefix(pattern, r)


def check_decomposition(
    layout: ClusterLayout,
    input_state: Optional[StateVector],
    pattern_prefix: MeasurementPattern,
    r: int,
    tolerance: Optional[float] = None,
    max_workers: int = 1,
    seed: int = 0,
    tolerances: Optional[Tolerances] = None
) -> DecompositionReport:
    """
    Rebuild every post-measurement O_r state from the logical state.

    For each outcome the reconstruction is the byproduct applied to
    (U_r...U_1 |in> on column r) times the cluster on columns r+1.., followed
    by CZ on the edges between columns r and r+1.

    Args:
        layout: Layered layout
        input_state: Register input (None = |+>^n)
        pattern_prefix: Pattern measuring at least C_r (trimmed to C_r)
        r: Cut position
        tolerance: Fidelity slack (defaults to tolerances.verification)
        tolerances: Base tolerances, recorded in the report with the override applied

    Returns:
        DecompositionReport

    Raises:
        UnsupportedResourceError: If the layout is not a layered cluster
    """
    used = _tolerances_used(tolerances, tolerance)
    tolerance = used.verification
    if not layout.is_layered:
        raise UnsupportedResourceError("Decomposition is only defined for layered cluster layouts")
    if pattern_prefix.layout != layout:
        raise InvalidInputError("Pattern runs on a different layout")
    region(layout, "C", r)
    prefix = prefix_of(pattern_prefix, r)

    n = layout.rows
    logical_in = input_state if input_state is not None else new_plus_state(n)
    unitary = layered_unitary(layout, prefix.base_angles(), r)
    logical = StateVector.from_amplitudes(unitary @ logical_in.amplitudes, normalize=True)
    eta = cluster_on_columns(layout, r + 1)
    carrier = StateVector.product(logical, eta) if eta is not None else logical
    offset = r * n
    border = [(a - offset, b - offset) for a, b in layout.edges_between(r, r + 1)] if eta is not None else []

    ensemble = enumerate_trajectories(_resource(layout, logical_in), prefix, max_workers=max_workers)
    order = prefix.measured_qubits
    outcomes, fidelities = [], []
    for trajectory in ensemble.trajectories:
        rebuilt = apply_cz_edges(apply_pauli(carrier, trajectory.frame.to_pauli()), border)
        fidelities.append(fidelity_pure(trajectory.state, rebuilt))
        outcomes.append(trajectory.record.bitstring(order))

    min_fidelity = min(fidelities)
    passed = min_fidelity >= 1 - tolerance
    log = logger.info if passed else logger.warning
    log(f"Decomposition of {prefix.name or 'pattern'} at r={r}: min fidelity {min_fidelity:.15f}")

    return DecompositionReport(
        seed=seed,
        tolerances=used.model_dump(),
        pattern=prefix.describe(),
        r=r,
        outcomes=outcomes,
        fidelities=fidelities,
        min_fidelity=min_fidelity,
        tolerance=tolerance,
        passed=passed,
    )


def _group_keys(keyed_paulis: KeyedPaulis) -> Tuple[int, ProbabilityDistribution, Dict[Tuple[int, int], float]]:
    if not keyed_paulis:
        raise InvalidInputError("One-time pad needs at least one key")
    sizes = {pauli.num_qubits for _, pauli in keyed_paulis}
    if len(sizes) != 1:
        raise InvalidInputError(f"Keys act on different qubit counts: {sorted(sizes)}")
    n = sizes.pop()
    if n > MAX_OTP_QUBITS:
        raise CapacityError(f"One-time pad check supports at most {MAX_OTP_QUBITS} qubits, got {n}")
    distribution = ProbabilityDistribution(np.array([p for p, _ in keyed_paulis], dtype=float))
    weights: Dict[Tuple[int, int], float] = {}
    for p, pauli in keyed_paulis:
        key = (pauli.x_mask, pauli.z_mask)
        weights[key] = weights.get(key, 0.0) + float(p)
    return n, distribution, weights


def check_one_time_pad(
    keyed_paulis: KeyedPaulis,
    sample_count: int = DEFAULT_OTP_SAMPLES,
    rng_seed: int = 0,
    tolerance: Optional[float] = None,
    entropy_tolerance: Optional[float] = None,
    tolerances: Optional[Tolerances] = None
) -> OtpReport:
    """
    Test whether a keyed Pauli family maps every state to I/2^n.

    The first sample is |0...0>; the remaining `sample_count - 1` samples are
    random pure states from a generator seeded with `rng_seed`. The key
    entropy is taken over the list as given (one entry per key draw).

    Args:
        keyed_paulis: (probability, Pauli) pairs, all on the same n <= 6 qubits
        sample_count: Number of sampled input states
        rng_seed: Seed of the input-state generator
        tolerance: Maximum allowed trace distance to I/2^n
        entropy_tolerance: Slack on the H >= 2n bound (defaults to tolerances.entropy_bound)
        tolerances: Base tolerances, recorded in the report with the overrides applied

    Returns:
        OtpReport

    Raises:
        InvalidInputError: If the probabilities do not form a distribution
        CapacityError: If n > 6
    """
    used = _tolerances_used(tolerances, tolerance, entropy_tolerance)
    tolerance, entropy_tolerance = used.verification, used.entropy_bound
    if sample_count < 1:
        raise InvalidInputError(f"Sample count must be >= 1, got {sample_count}")
    n, distribution, weights = _group_keys(keyed_paulis)
    entropy = shannon_entropy(distribution, base=2)

    rng = np.random.default_rng(rng_seed)
    mixed = DensityMatrix.maximally_mixed(n)
    matrices = [(w, PauliOperator.from_masks(n, x, z).to_matrix()) for (x, z), w in weights.items()]
    max_deviation = 0.0
    for index in range(sample_count):
        sample = StateVector.basis(n, 0) if index == 0 else random_pure_state(n, rng)
        rho = density_matrix(sample).matrix
        twirled = sum(w * (m @ rho @ m.conj().T) for w, m in matrices)
        twirled = twirled / np.trace(twirled).real
        deviation = trace_distance(DensityMatrix.from_matrix(twirled), mixed)
        max_deviation = max(max_deviation, deviation)

    encryption_pass = max_deviation <= tolerance
    entropy_bound_pass = entropy >= 2 * n - entropy_tolerance
    logger.info(
        f"One-time pad on {n} qubit(s): H={entropy:.12f} bits, max deviation {max_deviation:.3e}, "
        f"encryption {'pass' if encryption_pass else 'fail'}"
    )
    if encryption_pass and not entropy_bound_pass:
        logger.warning("Encryption passed with key entropy below 2n bits")

    return OtpReport(
        seed=rng_seed,
        tolerances=used.model_dump(),
        n_logical=n,
        num_keys=len(keyed_paulis),
        entropy_bits=entropy,
        entropy_floor_bits=float(2 * n),
        sample_count=sample_count,
        max_deviation=max_deviation,
        tolerance=tolerance,
        entropy_tolerance=entropy_tolerance,
        encryption_pass=encryption_pass,
        entropy_bound_pass=entropy_bound_pass,
        implication_holds=(not encryption_pass) or entropy_bound_pass,
        passed=encryption_pass and entropy_bound_pass,
    )


def otp_from_mbqc(
    layout: ClusterLayout,
    pattern_prefix: MeasurementPattern,
    max_workers: int = 1
) -> KeyedPaulis:
    """
    Keys (p_j, byproduct on the logical column) of a layered prefix.

    Args:
        layout: Layered layout
        pattern_prefix: Pattern measuring exactly the first r columns

    Returns:
        One (probability, Pauli) pair per trajectory

    Raises:
        InvalidInputError: If the pattern is not a full-layer prefix of a layered layout
    """
    if not layout.is_layered or pattern_prefix.layout != layout:
        raise InvalidInputError("One-time-pad extraction needs a pattern on a layered layout")
    r = pattern_prefix.measured_layers()
    if r < 1 or set(pattern_prefix.measured_qubits) != set(range(r * layout.rows)):
        raise InvalidInputError("One-time-pad extraction needs a pattern measuring exactly the first r columns")

    ensemble = enumerate_trajectories(_resource(layout, None), pattern_prefix, max_workers=max_workers)
    logical = layout.column(r)
    keys = [(t.record.probability, t.frame.to_pauli(logical)) for t in ensemble.trajectories]
    logger.info(f"Extracted {len(keys)} keys on {len(logical)} logical qubit(s)")
    return keys


# ============================================================================
# Verification battery
# ============================================================================

SuiteJob = Tuple[str, str, bool, Callable[[], object]]


def _suite_jobs(rng: np.random.Generator, tolerances: Tolerances, otp_samples: int, seed: int) -> List[SuiteJob]:
    wire3 = ClusterLayout.square_lattice(1, 3)
    cluster23 = ClusterLayout.square_lattice(2, 3)
    alpha = float(rng.uniform(-math.pi, math.pi))
    euler = [float(a) for a in rng.uniform(-math.pi, math.pi, size=3)]
    random_c2 = [float(a) for a in rng.uniform(-math.pi, math.pi, size=4)]
    random_c1 = [float(a) for a in rng.uniform(-math.pi, math.pi, size=2)]
    rz4 = builtin_pattern("rz", [alpha], cols=4)
    euler5 = builtin_pattern("euler_rotation", euler)
    parallel = builtin_pattern("wire_identity", [3], n_rows=2)

    def no_signaling(layout: ClusterLayout, angles_a: List[float], angles_b: List[float], r: int):
        return check_no_signaling(layout, None, angles_a, angles_b, r, seed=seed, tolerances=tolerances)

    def decomposition(pattern: MeasurementPattern, r: int):
        return check_decomposition(pattern.layout, None, pattern, r, seed=seed, tolerances=tolerances)

    def otp(pattern: MeasurementPattern):
        keys = otp_from_mbqc(pattern.layout, pattern)
        return check_one_time_pad(keys, otp_samples, seed, tolerances=tolerances)

    return [
        ("no_signaling_wire_1x3", "no_signaling", True,
         lambda: no_signaling(wire3, [0.3, 0.7], [1.1, -0.2], 2)),
        ("no_signaling_cluster_2x3_c1", "no_signaling", True,
         lambda: no_signaling(cluster23, [0.0, 0.0], [math.pi / 2, math.pi / 4], 1)),
        ("no_signaling_cluster_2x3_c2_random", "no_signaling", True,
         lambda: no_signaling(cluster23, [0.0] * 4, random_c2, 2)),
        ("decomposition_wire_identity_1x3_r1", "decomposition", True,
         lambda: decomposition(builtin_pattern("wire_identity", [3]), 1)),
        ("decomposition_rz_1x4_r2", "decomposition", True,
         lambda: decomposition(rz4, 2)),
        ("decomposition_euler_1x5_r4", "decomposition", True,
         lambda: decomposition(euler5, 4)),
        ("decomposition_cluster_2x3_r1", "decomposition", True,
         lambda: decomposition(compile_layered_pattern(cluster23, random_c1, 1, name="cluster_2x3"), 1)),
        ("otp_wire_1x3_r2", "one_time_pad", True,
         lambda: otp(builtin_pattern("wire_identity", [3]))),
        ("otp_wire_1x2_r1", "one_time_pad", False,
         lambda: otp(builtin_pattern("wire_identity", [2]))),
        ("otp_parallel_2x3_r2", "one_time_pad", True,
         lambda: otp(parallel)),
    ]


def run_verification_suite(
    seed: int = 0,
    tolerances: Optional[Tolerances] = None,
    otp_samples: int = DEFAULT_OTP_SAMPLES,
    max_workers: int = 1
) -> SuiteReport:
    """
    Run the built-in battery of checks.

    Random angles are drawn from a generator seeded with `seed`; jobs may
    run on a thread pool but entries keep the battery order. An entry
    matches its expectation when its verdict equals the expected one and,
    for one-time-pad entries, encryption implies the entropy bound.

    Returns:
        SuiteReport (passes when every entry matches)
    """
    tolerances = tolerances or Tolerances()
    jobs = _suite_jobs(np.random.default_rng(seed), tolerances, otp_samples, seed)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            reports = list(executor.map(lambda job: job[3](), jobs))
    else:
        reports = [job[3]() for job in jobs]

    entries = []
    for (name, check, expected, _), report in zip(jobs, reports):
        matches = report.passed == expected
        if isinstance(report, OtpReport):
            matches = matches and report.implication_holds
        if not matches:
            logger.warning(f"Suite entry {name} did not match its expected verdict")
        entries.append(SuiteEntry(
            name=name,
            check=check,
            expected_pass=expected,
            passed=report.passed,
            matches_expectation=matches,
            report=report.to_dict(),
        ))

    passed = all(entry.matches_expectation for entry in entries)
    logger.info(f"Verification suite: {sum(e.matches_expectation for e in entries)}/{len(entries)} entries as expected")
    return SuiteReport(seed=seed, tolerances=tolerances.model_dump(), entries=entries, passed=passed)
