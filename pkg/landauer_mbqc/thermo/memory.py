"""
Canonical memory states and the Sagawa-Ueda erasure-work bound.

Each measurement result j is stored in a memory state with its own energy
levels; level set 0 doubles as the standard (erased) state.
"""

import logging
import math
from typing import List, NamedTuple, Sequence, Union

import numpy as np
import scipy.special
from pydantic import BaseModel, ConfigDict, Field, field_validator

from landauer_mbqc.errors import InvalidInputError
from landauer_mbqc.qsim import ProbabilityDistribution, shannon_entropy
from landauer_mbqc.thermo.constants import SI, PhysicalConstants

logger = logging.getLogger(__name__)


def _scaled_levels(levels: Sequence[float], temperature: float, constants: PhysicalConstants) -> np.ndarray:
    levels = np.asarray(levels, dtype=float)
    if levels.ndim != 1 or levels.size == 0:
        raise InvalidInputError("A memory state needs at least one energy level")
    return -levels / constants.kt(temperature)


def log_partition_function(levels: Sequence[float], temperature: float, constants: PhysicalConstants = SI) -> float:
    """ln Z computed with log-sum-exp."""
    return float(scipy.special.logsumexp(_scaled_levels(levels, temperature, constants)))


def partition_function(levels: Sequence[float], temperature: float, constants: PhysicalConstants = SI) -> float:
    """
    Z = sum over levels of exp(-E / kT).

    Raises:
        InvalidInputError: If the temperature is not positive or no level is given
    """
    return math.exp(log_partition_function(levels, temperature, constants))


def canonical_populations(levels: Sequence[float], temperature: float, constants: PhysicalConstants = SI) -> np.ndarray:
    """Boltzmann weights exp(-E / kT) / Z."""
    return scipy.special.softmax(_scaled_levels(levels, temperature, constants))


def free_energy(levels: Sequence[float], temperature: float, constants: PhysicalConstants = SI) -> float:
    """F = -kT ln Z."""
    return -constants.kt(temperature) * log_partition_function(levels, temperature, constants)


class MemoryModel(BaseModel):
    """Energy levels of the memory state for every measurement result."""
    model_config = ConfigDict(frozen=True)

    levels: List[List[float]]
    temperature: float = Field(gt=0)
    constants: PhysicalConstants = SI

    @field_validator('levels')
    @classmethod
    def validate_levels(cls, v):
        """Every memory state needs at least one level."""
        if not v:
            raise ValueError("Memory model needs at least one memory state")
        for index, state_levels in enumerate(v):
            if not state_levels:
                raise ValueError(f"Memory state {index} has no energy levels")
        return v

    @classmethod
    def symmetric(
        cls,
        num_outcomes: int,
        levels: Sequence[float],
        temperature: float,
        constants: PhysicalConstants = SI
    ) -> "MemoryModel":
        """Same Hamiltonian for every result."""
        if num_outcomes < 1:
            raise InvalidInputError(f"Memory model needs at least one outcome, got {num_outcomes}")
        return cls(levels=[list(levels)] * num_outcomes, temperature=temperature, constants=constants)

    @property
    def num_outcomes(self) -> int:
        return len(self.levels)

    def log_partition_functions(self) -> np.ndarray:
        return np.array([log_partition_function(l, self.temperature, self.constants) for l in self.levels])


class SagawaUedaBound(NamedTuple):
    delta_f: float  # joules (multiples of T in natural units)
    min_work: float
    h_nats: float


def sagawa_ueda_bound(
    model: MemoryModel,
    p: Union[ProbabilityDistribution, Sequence[float]]
) -> SagawaUedaBound:
    """
    Lower bound on the erasure work of a memory holding outcome distribution p.

    delta_F = kT ln Z_0 - sum_j p_j kT ln Z_j and min_work = kT H(p) - delta_F
    with H in nats.

    Args:
        model: Memory model (one level set per outcome, set 0 is the standard state)
        p: Outcome distribution

    Returns:
        SagawaUedaBound(delta_f, min_work, h_nats)

    Raises:
        InvalidInputError: If p is not a distribution or its size differs from the model
    """
    if not isinstance(p, ProbabilityDistribution):
        p = ProbabilityDistribution(np.asarray(p, dtype=float))
    if len(p) != model.num_outcomes:
        raise InvalidInputError(f"Distribution has {len(p)} outcomes, memory model has {model.num_outcomes}")

    kt = model.constants.kt(model.temperature)
    log_z = model.log_partition_functions()
    delta_f = kt * log_z[0] - float(np.dot(p.probabilities, kt * log_z))
    h_nats = shannon_entropy(p, base="e")
    min_work = kt * h_nats - delta_f
    logger.debug(f"Sagawa-Ueda: H={h_nats:.12f} nats, dF={delta_f!r}, W_min={min_work!r}")
    return SagawaUedaBound(delta_f=delta_f, min_work=min_work, h_nats=h_nats)
