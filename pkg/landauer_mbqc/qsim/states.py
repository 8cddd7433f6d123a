"""
Value types of the dense simulator.

Conventions:
- qubit k is bit k of the amplitude index (qubit 0 is the least significant bit)
- global phases are never compared; equality goes through fidelity or trace distance
- instances are immutable; the backing numpy arrays are marked read-only
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from landauer_mbqc.config import MAX_DENSITY_QUBITS, MAX_STATE_QUBITS
from landauer_mbqc.errors import CapacityError, InvalidInputError

NORM_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-10
DISTRIBUTION_TOLERANCE = 1e-10


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex, copy=True)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class StateVector:
    """
    Dense pure state of up to 24 qubits.

    A 0-qubit state (a single unit-modulus amplitude) is allowed; it is what
    remains when a pattern measures every qubit.
    """
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 0 <= self.num_qubits <= MAX_STATE_QUBITS:
            raise CapacityError(
                f"StateVector supports 0..{MAX_STATE_QUBITS} qubits, got {self.num_qubits}"
            )
        amplitudes = _frozen(np.ravel(self.amplitudes))
        if amplitudes.shape != (2 ** self.num_qubits,):
            raise InvalidInputError(
                f"Expected {2 ** self.num_qubits} amplitudes, got {amplitudes.shape[0]}"
            )
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise InvalidInputError(f"State is not normalized: squared norm {norm!r}")
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def from_amplitudes(cls, amplitudes: Iterable[complex], normalize: bool = False) -> "StateVector":
        """
        Build a state from raw amplitudes.

        Args:
            amplitudes: 2^n complex amplitudes, index bit k addresses qubit k
            normalize: Rescale to unit norm instead of requiring it

        Returns:
            StateVector instance

        Raises:
            InvalidInputError: If the length is not a power of two or the vector is zero
        """
        array = np.asarray(list(amplitudes) if not isinstance(amplitudes, np.ndarray) else amplitudes,
                           dtype=complex).ravel()
        size = array.shape[0]
        if size == 0 or size & (size - 1):
            raise InvalidInputError(f"Amplitude count must be a power of two, got {size}")
        if normalize:
            norm = np.linalg.norm(array)
            if norm == 0:
                raise InvalidInputError("Cannot normalize the zero vector")
            array = array / norm
        return cls(num_qubits=size.bit_length() - 1, amplitudes=array)

    @classmethod
    def basis(cls, num_qubits: int, index: int = 0) -> "StateVector":
        """Computational basis state |index>."""
        if not 0 <= num_qubits <= MAX_STATE_QUBITS:
            raise CapacityError(f"StateVector supports 0..{MAX_STATE_QUBITS} qubits, got {num_qubits}")
        amplitudes = np.zeros(2 ** num_qubits, dtype=complex)
        amplitudes[index] = 1.0
        return cls(num_qubits=num_qubits, amplitudes=amplitudes)

    @staticmethod
    def product(low: "StateVector", high: "StateVector") -> "StateVector":
        """
        Tensor product with `low` on the least significant qubits.

        Args:
            low: State of qubits 0..low.num_qubits-1
            high: State of the following qubits

        Returns:
            StateVector on low.num_qubits + high.num_qubits qubits
        """
        total = low.num_qubits + high.num_qubits
        if total > MAX_STATE_QUBITS:
            raise CapacityError(f"Product state would need {total} qubits (max {MAX_STATE_QUBITS})")
        return StateVector(num_qubits=total, amplitudes=np.kron(high.amplitudes, low.amplitudes))

    def axis(self, qubit: int) -> int:
        """Tensor axis of `qubit` in the C-ordered reshape returned by `tensor()`."""
        return self.num_qubits - 1 - qubit

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to (2,)*n; axis 0 is the most significant qubit."""
        return self.amplitudes.reshape((2,) * self.num_qubits)


@dataclass(frozen=True)
class DensityMatrix:
    """Small density matrix (at most 12 qubits)."""
    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        if not 0 <= self.num_qubits <= MAX_DENSITY_QUBITS:
            raise CapacityError(
                f"DensityMatrix supports 0..{MAX_DENSITY_QUBITS} qubits, got {self.num_qubits}"
            )
        matrix = _frozen(self.matrix)
        dim = 2 ** self.num_qubits
        if matrix.shape != (dim, dim):
            raise InvalidInputError(f"Expected a {dim}x{dim} matrix, got {matrix.shape}")
        deviation = float(np.max(np.abs(matrix - matrix.conj().T))) if dim else 0.0
        if deviation > HERMITIAN_TOLERANCE:
            raise InvalidInputError(f"Matrix is not Hermitian (max deviation {deviation:.3e})")
        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > TRACE_TOLERANCE:
            raise InvalidInputError(f"Density matrix trace is {trace!r}, expected 1")
        smallest = float(np.min(np.linalg.eigvalsh(matrix)))
        if smallest < -PSD_TOLERANCE:
            raise InvalidInputError(f"Density matrix has negative eigenvalue {smallest:.3e}")
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "DensityMatrix":
        """
        Build a density matrix, symmetrizing away round-off asymmetry.

        Args:
            matrix: Square complex array of dimension 2^n

        Returns:
            DensityMatrix instance
        """
        matrix = np.asarray(matrix, dtype=complex)
        dim = matrix.shape[0]
        if matrix.ndim != 2 or matrix.shape[1] != dim or dim & (dim - 1):
            raise InvalidInputError(f"Expected a square matrix of power-of-two size, got {matrix.shape}")
        return cls(num_qubits=dim.bit_length() - 1, matrix=(matrix + matrix.conj().T) / 2)

    @classmethod
    def maximally_mixed(cls, num_qubits: int) -> "DensityMatrix":
        """I / 2^n."""
        dim = 2 ** num_qubits
        return cls(num_qubits=num_qubits, matrix=np.eye(dim, dtype=complex) / dim)


_PAULI_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_LETTER_BITS = {letter: bits for bits, letter in _PAULI_LETTERS.items()}


@dataclass(frozen=True)
class PauliOperator:
    """
    Phase-free Pauli string, operator = tensor_k X^{x_k} Z^{z_k}.

    A Y on a qubit is stored as x=z=1 (XZ up to a global phase).
    """
    num_qubits: int
    x_bits: Tuple[int, ...]
    z_bits: Tuple[int, ...]

    def __post_init__(self):
        x_bits = tuple(int(b) for b in self.x_bits)
        z_bits = tuple(int(b) for b in self.z_bits)
        if len(x_bits) != self.num_qubits or len(z_bits) != self.num_qubits:
            raise InvalidInputError(
                f"Pauli bit vectors must have length {self.num_qubits}, "
                f"got {len(x_bits)} and {len(z_bits)}"
            )
        if any(b not in (0, 1) for b in x_bits + z_bits):
            raise InvalidInputError("Pauli bit vectors must contain only 0 and 1")
        object.__setattr__(self, "x_bits", x_bits)
        object.__setattr__(self, "z_bits", z_bits)

    @classmethod
    def identity(cls, num_qubits: int) -> "PauliOperator":
        return cls(num_qubits, (0,) * num_qubits, (0,) * num_qubits)

    @classmethod
    def from_label(cls, label: str) -> "PauliOperator":
        """
        Parse a label such as "XIZ"; character k acts on qubit k.

        Raises:
            InvalidInputError: On characters other than I, X, Y, Z
        """
        try:
            bits = [_LETTER_BITS[c] for c in label.upper()]
        except KeyError:
            raise InvalidInputError(f"Invalid Pauli label: {label!r}")
        return cls(len(bits), tuple(b[0] for b in bits), tuple(b[1] for b in bits))

    @classmethod
    def from_masks(cls, num_qubits: int, x_mask: int, z_mask: int) -> "PauliOperator":
        """Inverse of `x_mask` / `z_mask`: bit k of each mask addresses qubit k."""
        return cls(
            num_qubits,
            tuple((x_mask >> k) & 1 for k in range(num_qubits)),
            tuple((z_mask >> k) & 1 for k in range(num_qubits)),
        )

    @property
    def label(self) -> str:
        return "".join(_PAULI_LETTERS[(x, z)] for x, z in zip(self.x_bits, self.z_bits))

    @property
    def x_mask(self) -> int:
        return sum(bit << k for k, bit in enumerate(self.x_bits))

    @property
    def z_mask(self) -> int:
        return sum(bit << k for k, bit in enumerate(self.z_bits))

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        """Phase-free product."""
        if other.num_qubits != self.num_qubits:
            raise InvalidInputError("Pauli operators act on different qubit counts")
        return PauliOperator(
            self.num_qubits,
            tuple(a ^ b for a, b in zip(self.x_bits, other.x_bits)),
            tuple(a ^ b for a, b in zip(self.z_bits, other.z_bits)),
        )

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix of X^x Z^z factors (qubit 0 least significant)."""
        from landauer_mbqc.qsim.gates import IDENTITY, PAULI_X, PAULI_Z

        matrix = np.ones((1, 1), dtype=complex)
        for x, z in zip(reversed(self.x_bits), reversed(self.z_bits)):
            factor = (PAULI_X if x else IDENTITY) @ (PAULI_Z if z else IDENTITY)
            matrix = np.kron(matrix, factor)
        return matrix


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Finite probability distribution with outcome labels."""
    probabilities: np.ndarray
    labels: Tuple = field(default=())

    def __post_init__(self):
        probabilities = np.array(self.probabilities, dtype=float, copy=True).ravel()
        if probabilities.size == 0:
            raise InvalidInputError("Distribution must have at least one outcome")
        if np.any(probabilities < 0):
            raise InvalidInputError(f"Negative probability: {float(probabilities.min())!r}")
        if np.any(probabilities > 1 + DISTRIBUTION_TOLERANCE):
            raise InvalidInputError(f"Probability above one: {float(probabilities.max())!r}")
        total = float(probabilities.sum())
        if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
            raise InvalidInputError(f"Probabilities sum to {total!r}, expected 1")
        labels = tuple(self.labels) if self.labels else tuple(range(probabilities.size))
        if len(labels) != probabilities.size:
            raise InvalidInputError(
                f"Got {len(labels)} labels for {probabilities.size} probabilities"
            )
        probabilities.flags.writeable = False
        object.__setattr__(self, "probabilities", probabilities)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def uniform(cls, size: int, labels: Optional[Sequence] = None) -> "ProbabilityDistribution":
        return cls(np.full(size, 1.0 / size), tuple(labels) if labels else ())

    def __len__(self) -> int:
        return int(self.probabilities.size)
