"""
Gate application, XY-plane measurement and partial trace on dense states.

All functions return new values; inputs are never modified.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from landauer_mbqc.config import MAX_DENSITY_QUBITS, MAX_STATE_QUBITS
from landauer_mbqc.errors import CapacityError, InvalidInputError, QubitIndexError
from landauer_mbqc.qsim.gates import is_unitary
from landauer_mbqc.qsim.states import DensityMatrix, PauliOperator, StateVector

logger = logging.getLogger(__name__)

ZERO_BRANCH_THRESHOLD = 1e-14


@dataclass(frozen=True)
class MeasurementBranch:
    """One outcome of an XY-plane measurement."""
    outcome: int
    probability: float
    collapsed: Optional[StateVector]  # None when the branch is impossible
    is_zero: bool


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not isinstance(qubit, (int, np.integer)) or not 0 <= qubit < state.num_qubits:
        raise QubitIndexError(f"Qubit {qubit!r} out of range for a {state.num_qubits}-qubit state")


def _normalized_state(num_qubits: int, amplitudes: np.ndarray) -> StateVector:
    amplitudes = np.ravel(amplitudes)
    return StateVector(num_qubits=num_qubits, amplitudes=amplitudes / np.linalg.norm(amplitudes))


def _flip_sign_where_set(tensor: np.ndarray, axes: Sequence[int]) -> None:
    index = [slice(None)] * tensor.ndim
    for axis in axes:
        index[axis] = 1
    tensor[tuple(index)] *= -1


def new_plus_state(n: int) -> StateVector:
    """
    The product state |+>^n.

    Args:
        n: Qubit count (1..24)

    Returns:
        StateVector with all 2^n amplitudes equal to 2^{-n/2}

    Raises:
        CapacityError: If n is out of range
    """
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_STATE_QUBITS:
        raise CapacityError(f"Plus state needs 1..{MAX_STATE_QUBITS} qubits, got {n!r}")
    return StateVector(num_qubits=int(n), amplitudes=np.full(2 ** n, 2.0 ** (-n / 2), dtype=complex))


def random_pure_state(num_qubits: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state drawn from normalized complex Gaussians."""
    if not 1 <= num_qubits <= MAX_STATE_QUBITS:
        raise CapacityError(f"Random state needs 1..{MAX_STATE_QUBITS} qubits, got {num_qubits}")
    dim = 2 ** num_qubits
    amplitudes = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return _normalized_state(num_qubits, amplitudes)


def apply_single_qubit_gate(state: StateVector, qubit: int, u: np.ndarray) -> StateVector:
    """
    Apply a 2x2 unitary to one qubit.

    Args:
        state: Input state
        qubit: Target qubit
        u: 2x2 unitary (within 1e-10)

    Returns:
        Transformed state

    Raises:
        InvalidInputError: If u is not a 2x2 unitary
        QubitIndexError: If qubit is out of range
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or not is_unitary(u):
        raise InvalidInputError("Gate must be a 2x2 unitary matrix")
    _check_qubit(state, qubit)

    axis = state.axis(qubit)
    tensor = np.tensordot(u, state.tensor(), axes=([1], [axis]))
    tensor = np.moveaxis(tensor, 0, axis)
    return _normalized_state(state.num_qubits, tensor)


def apply_cz_edges(state: StateVector, edges: Iterable[Tuple[int, int]]) -> StateVector:
    """
    Apply CZ on every edge in a single pass.

    Raises:
        QubitIndexError: If an edge repeats a qubit or leaves the register
    """
    tensor = np.array(state.tensor(), copy=True)
    for q1, q2 in edges:
        _check_qubit(state, q1)
        _check_qubit(state, q2)
        if q1 == q2:
            raise QubitIndexError(f"CZ needs two distinct qubits, got ({q1}, {q2})")
        _flip_sign_where_set(tensor, (state.axis(q1), state.axis(q2)))
    return StateVector(num_qubits=state.num_qubits, amplitudes=tensor.reshape(-1))


def apply_cz(state: StateVector, q1: int, q2: int) -> StateVector:
    """Negate every amplitude whose bits q1 and q2 are both set."""
    return apply_cz_edges(state, [(q1, q2)])


def apply_pauli(state: StateVector, p: PauliOperator) -> StateVector:
    """
    Apply the Pauli string X^x Z^z (Z first), ignoring global phase.

    Raises:
        InvalidInputError: If the operator size does not match the state
    """
    if p.num_qubits != state.num_qubits:
        raise InvalidInputError(
            f"Pauli acts on {p.num_qubits} qubits, state has {state.num_qubits}"
        )
    tensor = np.array(state.tensor(), copy=True)
    for qubit in range(state.num_qubits):
        if p.z_bits[qubit]:
            _flip_sign_where_set(tensor, (state.axis(qubit),))
    for qubit in range(state.num_qubits):
        if p.x_bits[qubit]:
            tensor = np.flip(tensor, axis=state.axis(qubit))
    return StateVector(num_qubits=state.num_qubits, amplitudes=tensor.reshape(-1))


def expectation_pauli(state: StateVector, p: PauliOperator) -> float:
    """
    Expectation value of the Hermitian Pauli string named by `p`.

    Qubits with x=z=1 are read as Y, so the result is always real.
    """
    applied = apply_pauli(state, p)
    num_y = sum(x & z for x, z in zip(p.x_bits, p.z_bits))
    value = (1j ** num_y) * np.vdot(state.amplitudes, applied.amplitudes)
    return float(value.real)


def _xy_bra(angle: float, outcome: int) -> np.ndarray:
    return np.array([1.0, (-1) ** outcome * np.exp(-1j * angle)], dtype=complex) / np.sqrt(2)


def measure_xy_project(
    state: StateVector,
    qubit: int,
    angle: float,
    outcome: int,
    zero_threshold: float = ZERO_BRANCH_THRESHOLD
) -> Tuple[float, Optional[StateVector]]:
    """
    Project `qubit` onto |+-_angle> and remove it from the register.

    The remaining qubits keep their relative order (qubit indices above the
    measured one shift down by one).

    Args:
        state: Input state
        qubit: Measured qubit
        angle: Measurement angle phi in radians; outcome 0 is (|0> + e^{i phi}|1>)/sqrt(2)
        outcome: 0 or 1
        zero_threshold: Branches below this probability return no state

    Returns:
        Tuple of (probability, reduced normalized state or None)
    """
    _check_qubit(state, qubit)
    if outcome not in (0, 1):
        raise InvalidInputError(f"Outcome must be 0 or 1, got {outcome!r}")

    reduced = np.tensordot(_xy_bra(angle, outcome), state.tensor(), axes=([0], [state.axis(qubit)]))
    probability = float(np.vdot(reduced, reduced).real)
    if probability < zero_threshold:
        return probability, None
    return probability, StateVector(
        num_qubits=state.num_qubits - 1,
        amplitudes=np.ravel(reduced) / np.sqrt(probability)
    )


def measure_xy_branches(
    state: StateVector,
    qubit: int,
    angle: float,
    zero_threshold: float = ZERO_BRANCH_THRESHOLD
) -> List[MeasurementBranch]:
    """
    Both branches of an XY-plane measurement, keeping the measured qubit.

    The collapsed states leave the measured qubit in the observed eigenstate.

    Args:
        state: Input state
        qubit: Measured qubit
        angle: Measurement angle in radians
        zero_threshold: Branches below this probability are flagged and carry no state

    Returns:
        List of two MeasurementBranch values, outcome 0 first
    """
    _check_qubit(state, qubit)
    axis = state.axis(qubit)
    branches = []
    for outcome in (0, 1):
        probability, reduced = measure_xy_project(state, qubit, angle, outcome, zero_threshold)
        if reduced is None:
            logger.debug(f"Outcome {outcome} on qubit {qubit} has probability {probability:.3e}")
            branches.append(MeasurementBranch(outcome, probability, None, True))
            continue
        ket = np.conj(_xy_bra(angle, outcome))
        tensor = np.moveaxis(np.multiply.outer(ket, reduced.tensor()), 0, axis)
        collapsed = StateVector(num_qubits=state.num_qubits, amplitudes=tensor.reshape(-1))
        branches.append(MeasurementBranch(outcome, probability, collapsed, False))
    return branches


def _normalize_keep(num_qubits: int, keep: Iterable[int]) -> List[int]:
    keep = sorted(set(int(q) for q in keep))
    if not keep:
        raise InvalidInputError("Partial trace needs at least one kept qubit")
    if len(keep) > MAX_DENSITY_QUBITS:
        raise CapacityError(f"Cannot keep {len(keep)} qubits (max {MAX_DENSITY_QUBITS})")
    if keep[0] < 0 or keep[-1] >= num_qubits:
        raise QubitIndexError(f"Kept qubits {keep} out of range for {num_qubits} qubits")
    return keep


def partial_trace(state: Union[StateVector, DensityMatrix], keep: Iterable[int]) -> DensityMatrix:
    """
    Reduced density matrix on `keep` (ascending qubit order in the result).

    Args:
        state: Pure state or density matrix
        keep: Qubits to keep (1..12 of them)

    Returns:
        DensityMatrix on len(keep) qubits

    Raises:
        CapacityError: If more than 12 qubits are kept
    """
    n = state.num_qubits
    keep = _normalize_keep(n, keep)
    kept_set = set(keep)
    # most significant kept qubit first, matching the C-ordered reshape
    keep_axes = [n - 1 - q for q in reversed(keep)]
    trace_axes = [n - 1 - q for q in reversed(range(n)) if q not in kept_set]
    dk = 2 ** len(keep)

    if isinstance(state, StateVector):
        tensor = np.transpose(state.tensor(), keep_axes + trace_axes).reshape(dk, -1)
        rho = tensor @ tensor.conj().T
    else:
        dt = 2 ** (n - len(keep))
        tensor = state.matrix.reshape((2,) * (2 * n))
        order = keep_axes + trace_axes + [a + n for a in keep_axes] + [a + n for a in trace_axes]
        tensor = np.transpose(tensor, order).reshape(dk, dt, dk, dt)
        rho = np.trace(tensor, axis1=1, axis2=3)
    return DensityMatrix.from_matrix(rho)


def density_matrix(state: StateVector) -> DensityMatrix:
    """Projector |psi><psi| of a pure state with at most 12 qubits."""
    if state.num_qubits > MAX_DENSITY_QUBITS:
        raise CapacityError(f"Cannot form a {state.num_qubits}-qubit density matrix")
    return DensityMatrix.from_matrix(np.outer(state.amplitudes, state.amplitudes.conj()))


def conjugate_density(rho: DensityMatrix, p: PauliOperator) -> DensityMatrix:
    """P rho P^dagger."""
    if p.num_qubits != rho.num_qubits:
        raise InvalidInputError(f"Pauli acts on {p.num_qubits} qubits, matrix on {rho.num_qubits}")
    matrix = p.to_matrix()
    return DensityMatrix.from_matrix(matrix @ rho.matrix @ matrix.conj().T)
