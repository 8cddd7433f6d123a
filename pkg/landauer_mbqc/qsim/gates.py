"""Single-qubit gate matrices."""

import numpy as np

IDENTITY = np.eye(2, dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

UNITARY_TOLERANCE = 1e-10

for _gate in (IDENTITY, HADAMARD, PAULI_X, PAULI_Y, PAULI_Z):
    _gate.flags.writeable = False


def rz(theta: float) -> np.ndarray:
    """exp(-i theta Z / 2)."""
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)


def rx(theta: float) -> np.ndarray:
    """exp(-i theta X / 2)."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def phase(theta: float) -> np.ndarray:
    """diag(1, e^{i theta}), equal to rz(theta) up to a global phase."""
    return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=complex)


def is_unitary(u: np.ndarray, atol: float = UNITARY_TOLERANCE) -> bool:
    """Check U U^dagger = I elementwise within `atol`."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=atol, rtol=0))
