import math

import numpy as np
import pytest

from landauer_mbqc.config import Tolerances
from landauer_mbqc.engine import builtin_pattern, compile_layered_pattern, enumerate_trajectories, load_pattern_file
from landauer_mbqc.errors import CapacityError, InvalidInputError, UnsupportedResourceError
from landauer_mbqc.graphstate import ClusterLayout, build_cluster, encode_input, region
from landauer_mbqc.qsim import DensityMatrix, PauliOperator, partial_trace, trace_distance
from landauer_mbqc.verify import (
    VERIFY_SCHEMA,
    bob_marginal,
    check_decomposition,
    check_no_signaling,
    check_one_time_pad,
    ensemble_mixture,
    otp_from_mbqc,
    prefix_of,
    run_verification_suite,
)


def keys(*labels, weights=None):
    weights = weights or [1.0 / len(labels)] * len(labels)
    return [(w, PauliOperator.from_label(label)) for w, label in zip(weights, labels)]


# ============================================================================
# No-signaling
# ============================================================================

def test_no_signaling_on_wire(wire3):
    report = check_no_signaling(wire3, None, [0.3, 0.7], [1.1, -0.2], 2)
    assert report.passed
    assert report.distance < 1e-10
    assert report.bob_region == [2]
    assert report.to_dict()["schema"] == VERIFY_SCHEMA


@pytest.mark.parametrize("r, a, b", [
    (1, [0.0, 0.0], [math.pi / 2, math.pi / 4]),
    (2, [0.0] * 4, [0.4, -2.1, 1.7, 0.05]),
])
def test_no_signaling_on_cluster(cluster23, random_state, r, a, b):
    report = check_no_signaling(cluster23, random_state(2), a, b, r)
    assert report.passed
    assert report.to_dict()["pass"] is True


def test_no_signaling_on_non_layered_graph(cluster23):
    layout = cluster23.with_extra_edges([(0, 5)])
    report = check_no_signaling(layout, None, {0: 0.2, 1: 1.0}, {0: -0.7, 1: 0.0}, 1)
    assert report.passed


def test_no_signaling_threaded(cluster23):
    report = check_no_signaling(cluster23, None, [0.1, 0.2, 0.3, 0.4], [0.0] * 4, 2, max_workers=3)
    assert report.passed


@pytest.mark.parametrize("rows, cols, r", [(1, 4, 1), (1, 4, 2), (1, 4, 3), (2, 2, 1), (2, 3, 1), (2, 3, 2)])
def test_no_signaling_for_random_strategies(rng, random_state, rows, cols, r):
    layout = ClusterLayout.square_lattice(rows, cols)
    psi = random_state(rows)
    for _ in range(10):
        a, b = rng.uniform(-math.pi, math.pi, size=(2, r * rows))
        report = check_no_signaling(layout, psi, list(a), list(b), r)
        assert report.passed, report.distance


@pytest.mark.parametrize("rows, cols, r", [(1, 4, 2), (2, 3, 1), (2, 4, 2)])
def test_bob_marginal_is_the_unmeasured_reduced_state(rng, random_state, rows, cols, r):
    layout = ClusterLayout.square_lattice(rows, cols)
    resource = encode_input(random_state(rows), layout)
    pattern = compile_layered_pattern(layout, rng.uniform(-math.pi, math.pi, size=r * rows), r)
    bob = region(layout, "O", r)
    rho = bob_marginal(resource, pattern, bob)
    assert trace_distance(rho, partial_trace(resource, bob.qubits)) < 1e-10


def test_bob_marginal_of_plain_cluster_is_mixed(wire3):
    pattern = builtin_pattern("wire_identity")
    rho = bob_marginal(build_cluster(wire3), pattern, region(wire3, "O", 2))
    assert trace_distance(rho, DensityMatrix.maximally_mixed(1)) < 1e-12


def test_ensemble_mixture_twirls_output(wire3):
    ensemble = enumerate_trajectories(build_cluster(wire3), builtin_pattern("wire_identity"))
    rho = ensemble_mixture(ensemble, [2])
    assert trace_distance(rho, DensityMatrix.maximally_mixed(1)) < 1e-12
    with pytest.raises(InvalidInputError):
        ensemble_mixture(ensemble, [0])


def test_strategy_must_cover_alice(cluster23):
    with pytest.raises(InvalidInputError):
        check_no_signaling(cluster23, None, [0.0], [0.0, 0.0], 1)
    with pytest.raises(InvalidInputError):
        check_no_signaling(cluster23, None, {0: 0.0}, [0.0, 0.0], 1)


def test_no_signaling_rejects_bad_cut(wire3):
    with pytest.raises(InvalidInputError):
        check_no_signaling(wire3, None, [0.0] * 3, [0.0] * 3, 3)


# ============================================================================
# Decomposition
# ============================================================================

@pytest.mark.parametrize("r", [1, 2])
def test_decomposition_of_cluster_pattern(pattern_path, cluster23, random_state, r):
    loaded = load_pattern_file(pattern_path("cluster_2x3.json"))
    report = check_decomposition(cluster23, random_state(2), loaded.pattern, r)
    assert report.passed
    assert len(report.outcomes) == 2 ** (2 * r)
    assert report.min_fidelity == pytest.approx(1.0, abs=1e-10)


def test_decomposition_of_euler_pattern(pattern_path):
    loaded = load_pattern_file(pattern_path("euler_1x5.json"))
    layout = loaded.pattern.layout
    for r in range(1, 5):
        assert check_decomposition(layout, loaded.input_state, loaded.pattern, r).passed


@pytest.mark.parametrize("r", [1, 2, 3])
def test_decomposition_on_2x4_lattice(rng, random_state, r):
    layout = ClusterLayout.square_lattice(2, 4)
    pattern = compile_layered_pattern(layout, rng.uniform(-math.pi, math.pi, size=2 * r), r)
    report = check_decomposition(layout, random_state(2), pattern, r)
    assert report.passed
    assert len(report.fidelities) == 2 ** (2 * r)


def test_decomposition_requires_layered_layout(cluster23):
    layout = cluster23.with_extra_edges([(0, 5)])
    pattern = compile_layered_pattern(cluster23, [0.0, 0.0], 1)
    with pytest.raises(UnsupportedResourceError):
        check_decomposition(layout, None, pattern, 1)


def test_prefix_of_keeps_exact_prefix(cluster23):
    pattern = compile_layered_pattern(cluster23, [0.1, 0.2], 1)
    assert prefix_of(pattern, 1) is pattern
    full = compile_layered_pattern(cluster23, [0.1, 0.2, 0.3, 0.4], 2)
    assert prefix_of(full, 1).measured_qubits == [0, 1]


# ============================================================================
# One-time pad
# ============================================================================

def test_full_pauli_group_encrypts():
    report = check_one_time_pad(keys("I", "X", "Y", "Z"), sample_count=8, rng_seed=3)
    assert report.encryption_pass
    assert report.entropy_bits == pytest.approx(2.0)
    assert report.passed and report.implication_holds
    assert report.max_deviation < 1e-10


def test_bit_flip_keys_fail_to_encrypt():
    report = check_one_time_pad(keys("I", "X"), sample_count=8, rng_seed=3)
    assert not report.encryption_pass
    assert not report.entropy_bound_pass
    assert report.implication_holds
    assert not report.passed


def test_phase_keys_leave_zero_state_unchanged():
    report = check_one_time_pad(keys("I", "Z"), sample_count=1)
    assert report.max_deviation == pytest.approx(0.5)


def test_entropy_counts_repeated_keys():
    report = check_one_time_pad(keys("I", "X", "Y", "Z", "I", "X", "Y", "Z"), sample_count=4)
    assert report.num_keys == 8
    assert report.entropy_bits == pytest.approx(3.0)
    assert report.passed


def test_two_qubit_pad():
    labels = [a + b for a in "IXYZ" for b in "IXYZ"]
    report = check_one_time_pad(keys(*labels), sample_count=6, rng_seed=11)
    assert report.n_logical == 2
    assert report.entropy_floor_bits == 4.0
    assert report.passed


@pytest.mark.parametrize("bad_keys, error", [
    ([], InvalidInputError),
    (keys("I", "X", weights=[0.5, 0.6]), InvalidInputError),
    (keys("I", "XX"), InvalidInputError),
    (keys("IIIIIII"), CapacityError),
])
def test_one_time_pad_rejects_bad_keys(bad_keys, error):
    with pytest.raises(error):
        check_one_time_pad(bad_keys)


def test_one_time_pad_is_seed_deterministic():
    first = check_one_time_pad(keys("I", "X"), sample_count=5, rng_seed=9)
    second = check_one_time_pad(keys("I", "X"), sample_count=5, rng_seed=9)
    assert first.max_deviation == second.max_deviation


def _random_key_family(rng, n):
    paulis = [PauliOperator.from_masks(n, x, z) for x in range(2 ** n) for z in range(2 ** n)]
    if rng.random() < 0.25:
        return [(1.0 / len(paulis), p) for p in paulis]
    chosen = rng.choice(len(paulis), size=int(rng.integers(1, len(paulis) + 1)), replace=False)
    weights = rng.dirichlet(np.ones(len(chosen)))
    return [(float(w), paulis[i]) for w, i in zip(weights, chosen)]


def test_encryption_implies_entropy_bound_for_random_keys(rng):
    encrypted = 0
    for trial in range(200):
        n = int(rng.integers(1, 4))
        report = check_one_time_pad(_random_key_family(rng, n), sample_count=4, rng_seed=trial)
        assert report.implication_holds
        if report.encryption_pass:
            encrypted += 1
            assert report.entropy_bits >= 2 * n - 1e-9
    assert encrypted > 0


def test_keys_from_wire(wire3):
    pattern = builtin_pattern("wire_identity")
    extracted = otp_from_mbqc(wire3, pattern)
    assert len(extracted) == 4
    assert {pauli.label for _, pauli in extracted} == {"I", "X", "Y", "Z"}
    assert sum(p for p, _ in extracted) == pytest.approx(1.0)
    assert check_one_time_pad(extracted).passed


def test_keys_from_short_wire_do_not_encrypt():
    pattern = builtin_pattern("wire_identity", [2])
    report = check_one_time_pad(otp_from_mbqc(pattern.layout, pattern))
    assert report.entropy_bits == pytest.approx(1.0)
    assert not report.encryption_pass


def test_keys_need_full_layer_prefix(cluster23):
    pattern = compile_layered_pattern(cluster23, [0.0] * 4, 2)
    with pytest.raises(InvalidInputError):
        otp_from_mbqc(ClusterLayout.square_lattice(1, 3), pattern)


# ============================================================================
# Suite
# ============================================================================

def test_verification_suite_matches_expectations():
    report = run_verification_suite(seed=5, otp_samples=4)
    assert report.passed
    names = [entry.name for entry in report.entries]
    assert len(names) == 10
    short_wire = report.entries[names.index("otp_wire_1x2_r1")]
    assert not short_wire.passed and not short_wire.expected_pass and short_wire.matches_expectation
    assert report.to_dict()["entries"][0]["pass"] is True


def test_verification_suite_with_threads_is_stable():
    serial = run_verification_suite(seed=2, otp_samples=3)
    threaded = run_verification_suite(seed=2, otp_samples=3, max_workers=4)
    assert [e.passed for e in serial.entries] == [e.passed for e in threaded.entries]


def test_suite_records_tolerances():
    report = run_verification_suite(seed=0, tolerances=Tolerances(verification=1e-8), otp_samples=2)
    assert report.tolerances["verification"] == 1e-8
    assert all(entry.report["tolerances"]["verification"] == 1e-8 for entry in report.entries)


def test_checks_record_the_tolerances_they_used(wire3, cluster23):
    signaling = check_no_signaling(wire3, None, [0.3, 0.7], [1.1, -0.2], 2, tolerance=1e-6)
    assert signaling.tolerances["verification"] == 1e-6
    assert signaling.tolerance == 1e-6

    base = Tolerances(zero_branch=1e-12, verification=1e-7)
    pattern = compile_layered_pattern(cluster23, [0.1, 0.2], 1)
    decomposition = check_decomposition(cluster23, None, pattern, 1, tolerances=base)
    assert decomposition.tolerance == 1e-7
    assert decomposition.tolerances == base.model_dump()

    pad = check_one_time_pad(keys("I", "X", "Y", "Z"), 2, tolerance=1e-5, entropy_tolerance=1e-4, tolerances=base)
    assert pad.tolerances["verification"] == 1e-5
    assert pad.tolerances["entropy_bound"] == 1e-4
    assert pad.tolerances["zero_branch"] == 1e-12
    assert pad.entropy_tolerance == 1e-4
