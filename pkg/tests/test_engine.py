import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from landauer_mbqc.engine import (
    MeasurementPattern,
    OutcomeRecord,
    PatternStep,
    adapted_angle,
    builtin_pattern,
    byproduct_of,
    compile_layered_pattern,
    dump_pattern_file,
    enumerate_trajectories,
    frame_from_outcomes,
    layered_unitary,
    list_builtin_patterns,
    load_pattern_file,
    pattern_from_dict,
    restrict_to_prefix,
    run_pattern,
)
from landauer_mbqc.errors import (
    CapacityError,
    ImpossibleBranchError,
    InvalidInputError,
    PatternFileError,
    UnsupportedResourceError,
)
from landauer_mbqc.graphstate import ClusterLayout, build_cluster, encode_input
from landauer_mbqc.qsim import HADAMARD, StateVector, apply_pauli, fidelity_pure, new_plus_state, rx, rz


def corrected_outputs(ensemble):
    """Trajectory output states with their byproduct undone."""
    return [apply_pauli(t.state, t.frame.to_pauli()) for t in ensemble.trajectories]


# ============================================================================
# Adaptive angles and frames
# ============================================================================

def test_adapted_angle_applies_sign_then_pi():
    step = PatternStep(qubit=2, base_angle=0.4, s_domain=(0,), t_domain=(1,))
    assert adapted_angle(step, {0: 0, 1: 0}) == pytest.approx(0.4)
    assert adapted_angle(step, {0: 1, 1: 0}) == pytest.approx(-0.4)
    assert adapted_angle(step, {0: 1, 1: 1}) == pytest.approx(2.7415926535897933)


def test_adapted_angle_uses_parity():
    step = PatternStep(qubit=3, base_angle=0.4, s_domain=(0, 1))
    assert adapted_angle(step, {0: 1, 1: 1}) == pytest.approx(0.4)


def test_adapted_angle_missing_dependency():
    step = PatternStep(qubit=2, base_angle=0.4, s_domain=(0,))
    with pytest.raises(InvalidInputError):
        adapted_angle(step, {})


def test_frame_from_outcomes_2x3(cluster23):
    pattern = compile_layered_pattern(cluster23, [0.25, 0.5, 0.75, 1.0], 2)
    frame = frame_from_outcomes(pattern, {0: 1, 1: 0, 2: 1, 3: 1})
    assert frame.bits == {4: (1, 1), 5: (0, 1)}
    assert frame.to_pauli().label == "YZ"
    assert frame.num_bits == 4
    record = OutcomeRecord(outcomes={0: 1, 1: 0, 2: 1, 3: 1}, probability=0.0625)
    assert byproduct_of(pattern, record) == frame.to_pauli()


def test_frame_from_incomplete_outcomes(cluster23):
    pattern = compile_layered_pattern(cluster23, [0.0] * 4, 2)
    with pytest.raises(InvalidInputError):
        frame_from_outcomes(pattern, {0: 1})


# ============================================================================
# Pattern validation
# ============================================================================

@pytest.mark.parametrize("steps, outputs", [
    ((PatternStep(qubit=0, base_angle=0.0), PatternStep(qubit=0, base_angle=0.0)), (1, 2)),
    ((PatternStep(qubit=0, base_angle=0.0, s_domain=(1,)), PatternStep(qubit=1, base_angle=0.0)), (2,)),
    ((PatternStep(qubit=0, base_angle=0.0),), (1,)),
    ((PatternStep(qubit=0, base_angle=0.0), PatternStep(qubit=1, base_angle=0.0)), (1, 2)),
])
def test_pattern_structure_is_validated(wire3, steps, outputs):
    with pytest.raises(ValidationError):
        MeasurementPattern(layout=wire3, steps=steps, outputs=outputs)


def test_corrections_must_target_outputs(wire3):
    with pytest.raises(ValidationError):
        MeasurementPattern(
            layout=wire3,
            steps=(PatternStep(qubit=0, base_angle=0.0), PatternStep(qubit=1, base_angle=0.0)),
            outputs=(2,),
            x_corrections={1: (0,)},
        )


# ============================================================================
# Compiler and oracle
# ============================================================================

def test_compiled_2x3_corrections(cluster23):
    pattern = compile_layered_pattern(cluster23, [0.25, 0.5, 0.75, 1.0], 2)
    assert [s.s_domain for s in pattern.steps] == [(), (), (0,), (1,)]
    assert pattern.x_corrections == {4: (1, 2), 5: (0, 3)}
    assert pattern.z_corrections == {4: (3,), 5: (2,)}
    assert pattern.outputs == (4, 5)
    assert pattern.is_layer_ordered()
    assert pattern.measured_layers() == 2


def test_compiled_wire_corrections():
    pattern = compile_layered_pattern(ClusterLayout.square_lattice(1, 5), [0.0] * 4, 4)
    assert [s.s_domain for s in pattern.steps] == [(), (0,), (1,), (0, 2)]
    assert pattern.x_corrections == {4: (1, 3)}
    assert pattern.z_corrections == {4: (0, 2)}


def test_compiler_rejects_non_layered_layout(wire3):
    layout = wire3.model_copy(update={"edges": ((0, 1),)})
    with pytest.raises(UnsupportedResourceError):
        compile_layered_pattern(layout, [0.0], 1)


def test_compiler_rejects_wrong_angle_count(wire3):
    with pytest.raises(InvalidInputError):
        compile_layered_pattern(wire3, [0.0], 2)


@pytest.mark.parametrize("angles", [[0.3, -1.2, 0.8, 2.0], [0.0, 0.0, 0.0, 0.0]])
def test_cluster_runs_match_circuit_oracle(cluster23, random_state, angles):
    psi = random_state(2)
    pattern = compile_layered_pattern(cluster23, angles, 2)
    target = StateVector.from_amplitudes(layered_unitary(cluster23, angles, 2) @ psi.amplitudes, normalize=True)
    ensemble = enumerate_trajectories(encode_input(psi, cluster23), pattern)
    assert len(ensemble) == 16
    for state in corrected_outputs(ensemble):
        assert fidelity_pure(state, target) == pytest.approx(1.0, abs=1e-10)


def test_restrict_to_prefix(cluster23):
    pattern = compile_layered_pattern(cluster23, [0.25, 0.5, 0.75, 1.0], 2, name="c")
    prefix = restrict_to_prefix(pattern, 1)
    assert prefix.measured_qubits == [0, 1]
    assert prefix.outputs == (2, 3, 4, 5)
    assert prefix.name == "c[C_1]"
    with pytest.raises(InvalidInputError):
        restrict_to_prefix(prefix, 2)


# ============================================================================
# Built-in patterns
# ============================================================================

def test_builtin_names():
    assert list_builtin_patterns() == ["euler_rotation", "rz", "wire_identity"]


@pytest.mark.parametrize("length", [3, 4, 5, 6])
def test_wire_identity_preserves_input(random_state, length):
    psi = random_state(1)
    pattern = builtin_pattern("wire_identity", [length])
    oracle = layered_unitary(pattern.layout, pattern.base_angles(), length - 1)
    np.testing.assert_allclose(oracle / oracle[0, 0], np.eye(2), atol=1e-10)
    ensemble = enumerate_trajectories(encode_input(psi, pattern.layout), pattern)
    assert len(ensemble) == 2 ** (length - 1)
    for state in corrected_outputs(ensemble):
        assert fidelity_pure(state, psi) == pytest.approx(1.0, abs=1e-10)


def test_two_column_wire_is_hadamard(random_state):
    psi = random_state(1)
    pattern = builtin_pattern("wire_identity", [2])
    target = StateVector.from_amplitudes(HADAMARD @ psi.amplitudes)
    ensemble = enumerate_trajectories(encode_input(psi, pattern.layout), pattern)
    for state in corrected_outputs(ensemble):
        assert fidelity_pure(state, target) == pytest.approx(1.0, abs=1e-10)


def test_rz_builtin_applies_phase(random_state):
    alpha = 0.9
    psi = random_state(1)
    pattern = builtin_pattern("rz", [alpha])
    target = StateVector.from_amplitudes(np.diag([1, np.exp(1j * alpha)]) @ psi.amplitudes)
    ensemble = enumerate_trajectories(encode_input(psi, pattern.layout), pattern)
    for state in corrected_outputs(ensemble):
        assert fidelity_pure(state, target) == pytest.approx(1.0, abs=1e-10)


def test_euler_builtin_matches_rotations(rng, random_state):
    psi = random_state(1)
    for alpha, beta, gamma in rng.uniform(-np.pi, np.pi, size=(20, 3)):
        pattern = builtin_pattern("euler_rotation", [alpha, beta, gamma])
        target = StateVector.from_amplitudes(rx(gamma) @ rz(beta) @ rx(alpha) @ psi.amplitudes)
        ensemble = enumerate_trajectories(encode_input(psi, pattern.layout), pattern)
        assert len(ensemble) == 16
        for state in corrected_outputs(ensemble):
            assert fidelity_pure(state, target) == pytest.approx(1.0, abs=1e-10)


def test_parallel_builtin_uses_independent_wires():
    pattern = builtin_pattern("wire_identity", [3], n_rows=2)
    assert not pattern.layout.is_lattice
    assert pattern.x_corrections == {4: (2,), 5: (3,)}
    assert pattern.z_corrections == {4: (0,), 5: (1,)}


@pytest.mark.parametrize("name, params", [
    ("unknown", []),
    ("rz", []),
    ("euler_rotation", [1.0]),
    ("wire_identity", [1]),
    ("wire_identity", [2.5]),
])
def test_builtin_rejects_bad_arguments(name, params):
    with pytest.raises(InvalidInputError):
        builtin_pattern(name, params)


def test_builtin_capacity():
    with pytest.raises(CapacityError):
        builtin_pattern("wire_identity", [5], n_rows=5)


# ============================================================================
# Running and enumerating
# ============================================================================

def test_run_pattern_is_deterministic_per_seed(cluster23):
    pattern = compile_layered_pattern(cluster23, [0.25, 0.5, 0.75, 1.0], 2)
    resource = build_cluster(cluster23)
    first = run_pattern(resource, pattern, rng_seed=7)
    second = run_pattern(resource, pattern, rng_seed=7)
    assert first.record == second.record
    np.testing.assert_allclose(first.state.amplitudes, second.state.amplitudes)
    assert first.state.num_qubits == 2


def test_run_pattern_forced_outcomes(wire3):
    pattern = builtin_pattern("wire_identity")
    run = run_pattern(build_cluster(wire3), pattern, forced_outcomes={0: 1, 1: 0})
    assert run.record.outcomes == {0: 1, 1: 0}
    assert run.record.probability == pytest.approx(0.25)
    assert run.frame.bits == {2: (0, 1)}


def test_run_pattern_incomplete_forced_outcomes(wire3):
    with pytest.raises(InvalidInputError):
        run_pattern(build_cluster(wire3), builtin_pattern("wire_identity"), forced_outcomes={0: 1})


def _unentangled_pattern():
    layout = ClusterLayout(rows=1, cols=2, edges=[])
    return MeasurementPattern(layout=layout, steps=(PatternStep(qubit=0, base_angle=0.0),), outputs=(1,))


def test_forced_impossible_branch():
    pattern = _unentangled_pattern()
    with pytest.raises(ImpossibleBranchError):
        run_pattern(build_cluster(pattern.layout), pattern, forced_outcomes={0: 1})


def test_sampled_run_with_no_surviving_branch(wire3):
    with pytest.raises(ImpossibleBranchError):
        run_pattern(build_cluster(wire3), builtin_pattern("wire_identity"), rng_seed=0, zero_threshold=0.75)


def test_enumeration_prunes_zero_branches():
    pattern = _unentangled_pattern()
    ensemble = enumerate_trajectories(build_cluster(pattern.layout), pattern)
    assert len(ensemble) == 1
    assert ensemble.pruned == 1
    assert ensemble.entropy_bits() == pytest.approx(0.0)


def test_enumeration_order_and_entropy(cluster23):
    pattern = compile_layered_pattern(cluster23, [0.25, 0.5, 0.75, 1.0], 2)
    ensemble = enumerate_trajectories(build_cluster(cluster23), pattern)
    labels = ensemble.distribution().labels
    assert labels[0] == "0000" and labels[1] == "0001" and labels[-1] == "1111"
    assert ensemble.probabilities().sum() == pytest.approx(1.0, abs=1e-12)
    assert ensemble.entropy_bits() == pytest.approx(4.0, abs=1e-9)


@pytest.mark.parametrize("rows, cols, r", [(1, 5, 4), (2, 3, 2), (2, 4, 3), (3, 3, 1)])
def test_every_trajectory_is_equally_likely(rng, random_state, rows, cols, r):
    layout = ClusterLayout.square_lattice(rows, cols)
    pattern = compile_layered_pattern(layout, rng.uniform(-np.pi, np.pi, size=r * rows), r)
    ensemble = enumerate_trajectories(encode_input(random_state(rows), layout), pattern)
    assert len(ensemble) == 2 ** (r * rows)
    np.testing.assert_allclose(ensemble.probabilities(), 2.0 ** -(r * rows), rtol=1e-9)
    assert ensemble.entropy_bits() == pytest.approx(r * rows, abs=1e-9)


def test_threaded_enumeration_matches_serial(cluster23):
    pattern = compile_layered_pattern(cluster23, [0.3, -0.4, 1.2, 0.1], 2)
    resource = build_cluster(cluster23)
    serial = enumerate_trajectories(resource, pattern)
    threaded = enumerate_trajectories(resource, pattern, max_workers=4)
    assert [t.record for t in serial.trajectories] == [t.record for t in threaded.trajectories]


def test_enumeration_capacity():
    layout = ClusterLayout.square_lattice(1, 18)
    pattern = compile_layered_pattern(layout, [0.0] * 17, 17)
    with pytest.raises(CapacityError):
        enumerate_trajectories(build_cluster(layout), pattern)


def test_resource_size_mismatch(wire3):
    with pytest.raises(InvalidInputError):
        run_pattern(new_plus_state(2), builtin_pattern("wire_identity"))


# ============================================================================
# Pattern files
# ============================================================================

def test_load_cluster_pattern_file(pattern_path, cluster23):
    loaded = load_pattern_file(pattern_path("cluster_2x3.json"))
    assert loaded.input_state is None
    assert loaded.pattern.name == "cluster_2x3"
    compiled = compile_layered_pattern(cluster23, [0.25, 0.5, 0.75, 1.0], 2)
    assert loaded.pattern.steps == compiled.steps
    assert loaded.pattern.x_corrections == compiled.x_corrections
    assert loaded.pattern.z_corrections == compiled.z_corrections


def test_load_pattern_with_amplitude_input(pattern_path):
    loaded = load_pattern_file(pattern_path("euler_1x5.json"))
    np.testing.assert_allclose(loaded.input_state.amplitudes, [0.6, 0.8j])


def test_pattern_file_round_trip(pattern_path):
    loaded = load_pattern_file(pattern_path("euler_1x5.json"))
    again = pattern_from_dict(dump_pattern_file(loaded.pattern, loaded.input_state), name="euler_1x5")
    assert again.pattern == loaded.pattern


def test_invalid_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"layout": {"rows": 1,\n  "cols": }', encoding="utf-8")
    with pytest.raises(PatternFileError) as info:
        load_pattern_file(str(path))
    assert info.value.location.startswith("line 2")
    assert info.value.path == str(path)


def test_missing_pattern_file(tmp_path):
    with pytest.raises(PatternFileError):
        load_pattern_file(str(tmp_path / "absent.json"))


def _wire_dict(**overrides):
    data = {
        "layout": {"rows": 1, "cols": 2},
        "steps": [{"qubit": 0, "angle": 0.0}],
        "outputs": [1],
        "x_corrections": {"1": [0]},
    }
    data.update(overrides)
    return data


@pytest.mark.parametrize("overrides, location", [
    ({"bogus": 1}, "bogus"),
    ({"steps": [{"qubit": "a", "angle": 0.0}]}, "steps.0.qubit"),
    ({"input": {"amplitudes": [[1.0, 0.0]]}}, "input.amplitudes"),
    ({"input": {"amplitudes": [[1.0, 0.0], [1.0, 0.0]]}}, "input.amplitudes"),
    ({"x_corrections": {"one": [0]}}, "x_corrections"),
])
def test_pattern_dict_errors_name_the_field(overrides, location):
    with pytest.raises(PatternFileError) as info:
        pattern_from_dict(_wire_dict(**overrides))
    assert info.value.location == location


def test_pattern_dict_semantic_error():
    with pytest.raises(PatternFileError):
        pattern_from_dict(_wire_dict(outputs=[0]))


def test_pattern_dict_defaults_to_plus_input():
    loaded = pattern_from_dict(json.loads(json.dumps(_wire_dict())))
    assert loaded.input_state is None
    assert loaded.pattern.layout.edges == ((0, 1),)
    assert math.isclose(loaded.pattern.steps[0].base_angle, 0.0)
