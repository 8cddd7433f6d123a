import math

import numpy as np
import pytest

from landauer_mbqc.errors import CapacityError, InvalidInputError, QubitIndexError
from landauer_mbqc.qsim import (
    HADAMARD,
    PAULI_X,
    DensityMatrix,
    PauliOperator,
    ProbabilityDistribution,
    StateVector,
    apply_cz,
    apply_pauli,
    apply_single_qubit_gate,
    conjugate_density,
    density_matrix,
    expectation_pauli,
    fidelity_pure,
    measure_xy_branches,
    measure_xy_project,
    new_plus_state,
    partial_trace,
    shannon_entropy,
    trace_distance,
)

SQRT_HALF = 1 / math.sqrt(2)


def test_plus_state_amplitudes():
    state = new_plus_state(2)
    np.testing.assert_allclose(state.amplitudes, [0.5] * 4)


@pytest.mark.parametrize("n", [0, 25])
def test_plus_state_capacity(n):
    with pytest.raises(CapacityError):
        new_plus_state(n)


def test_state_vector_rejects_unnormalized():
    with pytest.raises(InvalidInputError):
        StateVector(num_qubits=1, amplitudes=np.array([1.0, 1.0]))


def test_state_amplitudes_are_read_only():
    state = new_plus_state(1)
    with pytest.raises(ValueError):
        state.amplitudes[0] = 0


def test_product_places_low_on_least_significant_bits():
    one = StateVector.basis(1, 1)
    zero = StateVector.basis(1, 0)
    assert np.argmax(np.abs(StateVector.product(one, zero).amplitudes)) == 1
    assert np.argmax(np.abs(StateVector.product(zero, one).amplitudes)) == 2


def test_hadamard_maps_plus_to_zero():
    state = apply_single_qubit_gate(new_plus_state(1), 0, HADAMARD)
    assert fidelity_pure(state, StateVector.basis(1, 0)) == pytest.approx(1.0, abs=1e-12)


def test_gate_on_second_qubit():
    state = apply_single_qubit_gate(StateVector.basis(2, 0), 1, PAULI_X)
    assert abs(state.amplitudes[2]) == pytest.approx(1.0)


def test_non_unitary_gate_rejected():
    with pytest.raises(InvalidInputError):
        apply_single_qubit_gate(new_plus_state(1), 0, np.array([[1, 0], [0, 2]]))


def test_gate_index_out_of_range():
    with pytest.raises(QubitIndexError):
        apply_single_qubit_gate(new_plus_state(2), 2, HADAMARD)


def test_cz_negates_both_set():
    state = apply_cz(new_plus_state(2), 0, 1)
    np.testing.assert_allclose(state.amplitudes, [0.5, 0.5, 0.5, -0.5])


def test_cz_is_symmetric_and_involutive(random_state):
    psi = random_state(3)
    np.testing.assert_allclose(apply_cz(psi, 0, 2).amplitudes, apply_cz(psi, 2, 0).amplitudes)
    np.testing.assert_allclose(apply_cz(apply_cz(psi, 0, 2), 0, 2).amplitudes, psi.amplitudes)


def test_cz_same_qubit_rejected():
    with pytest.raises(QubitIndexError):
        apply_cz(new_plus_state(2), 1, 1)


def test_pauli_label_conventions():
    p = PauliOperator.from_label("XIZ")
    assert p.x_bits == (1, 0, 0)
    assert p.z_bits == (0, 0, 1)
    assert p.label == "XIZ"
    assert (PauliOperator.from_label("X") * PauliOperator.from_label("Z")).label == "Y"
    assert PauliOperator.from_masks(3, p.x_mask, p.z_mask) == p


def test_invalid_pauli_label():
    with pytest.raises(InvalidInputError):
        PauliOperator.from_label("XQ")


def test_apply_pauli_x_flips_qubit_zero():
    state = apply_pauli(StateVector.basis(2, 0), PauliOperator.from_label("XI"))
    assert abs(state.amplitudes[1]) == pytest.approx(1.0)


def test_apply_pauli_matches_matrix(random_state):
    psi = random_state(3)
    p = PauliOperator.from_label("YXZ")
    expected = p.to_matrix() @ psi.amplitudes
    assert fidelity_pure(apply_pauli(psi, p), StateVector.from_amplitudes(expected)) == pytest.approx(1.0)


def test_apply_pauli_size_mismatch():
    with pytest.raises(InvalidInputError):
        apply_pauli(new_plus_state(2), PauliOperator.from_label("X"))


@pytest.mark.parametrize("amplitudes, label", [
    ([1, 0], "Z"),
    ([SQRT_HALF, SQRT_HALF], "X"),
    ([SQRT_HALF, 1j * SQRT_HALF], "Y"),
])
def test_expectation_of_eigenstates(amplitudes, label):
    state = StateVector.from_amplitudes(amplitudes)
    assert expectation_pauli(state, PauliOperator.from_label(label)) == pytest.approx(1.0)


def test_xy_measurement_of_plus_at_zero_is_deterministic():
    branches = measure_xy_branches(new_plus_state(1), 0, 0.0)
    assert branches[0].probability == pytest.approx(1.0)
    assert not branches[0].is_zero
    assert branches[1].is_zero
    assert branches[1].collapsed is None


def test_xy_branches_keep_measured_qubit_in_eigenstate(random_state):
    psi = random_state(2)
    for branch in measure_xy_branches(psi, 1, 0.4):
        reduced = partial_trace(branch.collapsed, [1])
        ket = np.array([1, (-1) ** branch.outcome * np.exp(0.4j)]) / math.sqrt(2)
        assert np.vdot(ket, reduced.matrix @ ket).real == pytest.approx(1.0)


def test_xy_projection_probabilities_sum_to_one(random_state):
    psi = random_state(3)
    p0, s0 = measure_xy_project(psi, 1, 1.3, 0)
    p1, s1 = measure_xy_project(psi, 1, 1.3, 1)
    assert p0 + p1 == pytest.approx(1.0, abs=1e-12)
    assert s0.num_qubits == 2 and s1.num_qubits == 2


@pytest.mark.parametrize("qubit, angle", [(0, 0.0), (1, 1.3), (2, -2.2)])
def test_branch_mixture_matches_unmeasured_marginal(random_state, qubit, angle):
    psi = random_state(3)
    rest = [q for q in range(3) if q != qubit]
    mixture = np.zeros((4, 4), dtype=complex)
    for outcome in (0, 1):
        p, collapsed = measure_xy_project(psi, qubit, angle, outcome)
        mixture += p * density_matrix(collapsed).matrix
    np.testing.assert_allclose(mixture, partial_trace(psi, rest).matrix, atol=1e-12)


def test_partial_trace_of_product_state():
    state = StateVector.product(StateVector.basis(1, 0), new_plus_state(1))
    np.testing.assert_allclose(partial_trace(state, [0]).matrix, [[1, 0], [0, 0]], atol=1e-12)
    np.testing.assert_allclose(partial_trace(state, [1]).matrix, [[0.5, 0.5], [0.5, 0.5]], atol=1e-12)


def test_partial_trace_of_two_qubit_cluster_is_mixed():
    cluster = apply_cz(new_plus_state(2), 0, 1)
    assert trace_distance(partial_trace(cluster, [1]), DensityMatrix.maximally_mixed(1)) < 1e-12


def test_partial_trace_of_density_matrix_matches_state(random_state):
    psi = random_state(3)
    via_state = partial_trace(psi, [0, 2])
    via_rho = partial_trace(density_matrix(psi), [0, 2])
    assert trace_distance(via_state, via_rho) < 1e-12


def test_partial_trace_capacity():
    with pytest.raises(CapacityError):
        partial_trace(new_plus_state(13), range(13))


def test_trace_distance_values():
    zero = density_matrix(StateVector.basis(1, 0))
    one = density_matrix(StateVector.basis(1, 1))
    plus = density_matrix(new_plus_state(1))
    assert trace_distance(zero, one) == pytest.approx(1.0)
    assert trace_distance(zero, plus) == pytest.approx(0.7071067811865476, abs=1e-12)
    assert trace_distance(zero, zero) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("num_qubits", [1, 2, 3])
def test_trace_distance_triangle_inequality(random_state, num_qubits):
    for _ in range(20):
        a, b, c = (partial_trace(random_state(num_qubits + 1), range(num_qubits)) for _ in range(3))
        assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12
        assert trace_distance(a, b) == pytest.approx(trace_distance(b, a), abs=1e-12)


def test_fidelity_ignores_global_phase(random_state):
    psi = random_state(2)
    rotated = StateVector.from_amplitudes(np.exp(0.7j) * psi.amplitudes)
    assert fidelity_pure(psi, rotated) == pytest.approx(1.0)


def test_conjugate_density_by_x():
    rho = conjugate_density(density_matrix(StateVector.basis(1, 0)), PauliOperator.from_label("X"))
    np.testing.assert_allclose(rho.matrix, [[0, 0], [0, 1]], atol=1e-12)


def test_density_matrix_validation():
    with pytest.raises(InvalidInputError):
        DensityMatrix.from_matrix(np.eye(2))
    with pytest.raises(InvalidInputError):
        DensityMatrix.from_matrix(np.diag([1.5, -0.5]))


@pytest.mark.parametrize("probabilities, base, expected", [
    ([0.25] * 4, 2, 2.0),
    ([1.0], 2, 0.0),
    ([0.5, 0.5], "e", math.log(2)),
    ([0.5, 0.5, 0.0], 2, 1.0),
])
def test_shannon_entropy(probabilities, base, expected):
    assert shannon_entropy(probabilities, base=base) == pytest.approx(expected, abs=1e-12)


def test_shannon_entropy_rejects_invalid_input():
    with pytest.raises(InvalidInputError):
        shannon_entropy([0.5, 0.6])
    with pytest.raises(InvalidInputError):
        shannon_entropy([0.5, 0.5], base=3)


def test_shannon_entropy_ignores_order_and_zero_outcomes(rng):
    for size in (2, 5, 9):
        p = rng.dirichlet(np.ones(size))
        expected = shannon_entropy(p)
        assert shannon_entropy(rng.permutation(p)) == pytest.approx(expected, abs=1e-12)
        assert shannon_entropy(np.concatenate([p, np.zeros(3)])) == pytest.approx(expected, abs=1e-12)
        assert shannon_entropy(ProbabilityDistribution(p, tuple(f"k{i}" for i in range(size)))) == expected


def test_distribution_labels_must_match():
    with pytest.raises(InvalidInputError):
        ProbabilityDistribution(np.array([0.5, 0.5]), ("a",))
    assert ProbabilityDistribution.uniform(4).labels == (0, 1, 2, 3)
