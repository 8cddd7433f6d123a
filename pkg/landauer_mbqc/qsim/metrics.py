"""Distance measures and entropy."""

import math
from typing import Sequence, Union

import numpy as np
import scipy.linalg
import scipy.stats

from landauer_mbqc.errors import InvalidInputError
from landauer_mbqc.qsim.states import DensityMatrix, ProbabilityDistribution, StateVector


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """
    Trace distance (1/2) * sum of singular values of (a - b).

    Raises:
        InvalidInputError: If the dimensions differ
    """
    if a.num_qubits != b.num_qubits:
        raise InvalidInputError(
            f"Cannot compare {a.num_qubits}-qubit and {b.num_qubits}-qubit density matrices"
        )
    return float(0.5 * np.sum(scipy.linalg.svdvals(a.matrix - b.matrix)))


def fidelity_pure(state: StateVector, target: StateVector) -> float:
    """
    |<target|state>|^2, insensitive to global phase.

    Raises:
        InvalidInputError: If the qubit counts differ
    """
    if state.num_qubits != target.num_qubits:
        raise InvalidInputError(
            f"Cannot compare {state.num_qubits}-qubit and {target.num_qubits}-qubit states"
        )
    overlap = abs(np.vdot(target.amplitudes, state.amplitudes)) ** 2
    return float(min(overlap, 1.0))


def shannon_entropy(
    d: Union[ProbabilityDistribution, Sequence[float]],
    base: Union[int, float, str] = 2
) -> float:
    """
    Shannon entropy -sum p log p with 0 log 0 = 0.

    Args:
        d: Distribution (raw sequences are validated first)
        base: 2 for bits, "e" (or math.e) for nats

    Returns:
        Entropy in the requested unit

    Raises:
        InvalidInputError: For invalid distributions or unsupported bases
    """
    if not isinstance(d, ProbabilityDistribution):
        d = ProbabilityDistribution(np.asarray(d, dtype=float))
    if base == 2:
        log_base = 2
    elif base == "e" or base == math.e:
        log_base = None
    else:
        raise InvalidInputError(f"Entropy base must be 2 or 'e', got {base!r}")
    return float(max(scipy.stats.entropy(d.probabilities, base=log_base), 0.0))
