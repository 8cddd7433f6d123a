"""
Dense state-vector simulator.

Re-exports the value types, gate matrices and operations used by the rest
of the package.
"""

from landauer_mbqc.qsim.gates import HADAMARD, IDENTITY, PAULI_X, PAULI_Y, PAULI_Z, is_unitary, phase, rx, rz
from landauer_mbqc.qsim.metrics import fidelity_pure, shannon_entropy, trace_distance
from landauer_mbqc.qsim.ops import (
    MeasurementBranch,
    apply_cz,
    apply_cz_edges,
    apply_pauli,
    apply_single_qubit_gate,
    conjugate_density,
    density_matrix,
    expectation_pauli,
    measure_xy_branches,
    measure_xy_project,
    new_plus_state,
    partial_trace,
    random_pure_state,
)
from landauer_mbqc.qsim.states import DensityMatrix, PauliOperator, ProbabilityDistribution, StateVector

__all__ = [
    'StateVector',
    'DensityMatrix',
    'PauliOperator',
    'ProbabilityDistribution',
    'MeasurementBranch',
    'IDENTITY',
    'HADAMARD',
    'PAULI_X',
    'PAULI_Y',
    'PAULI_Z',
    'rz',
    'rx',
    'phase',
    'is_unitary',
    'new_plus_state',
    'random_pure_state',
    'apply_single_qubit_gate',
    'apply_cz',
    'apply_cz_edges',
    'apply_pauli',
    'expectation_pauli',
    'measure_xy_project',
    'measure_xy_branches',
    'partial_trace',
    'density_matrix',
    'conjugate_density',
    'trace_distance',
    'fidelity_pure',
    'shannon_entropy',
]
