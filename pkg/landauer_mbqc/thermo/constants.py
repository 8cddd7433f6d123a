"""Physical constants and the Landauer erasure cost."""

import math

import scipy.constants
from pydantic import BaseModel, ConfigDict, Field

from landauer_mbqc.errors import InvalidInputError

LN2 = math.log(2.0)


class PhysicalConstants(BaseModel):
    """
    Boltzmann constant and unit mode.

    In natural units k = 1 and temperatures are dimensionless, so heats come
    out as multiples of T.
    """
    model_config = ConfigDict(frozen=True)

    boltzmann_k: float = Field(default=scipy.constants.Boltzmann, gt=0)
    natural_units: bool = False

    @classmethod
    def natural(cls) -> "PhysicalConstants":
        return cls(boltzmann_k=1.0, natural_units=True)

    @property
    def k(self) -> float:
        return 1.0 if self.natural_units else self.boltzmann_k

    def kt(self, temperature: float) -> float:
        """k*T, rejecting non-positive temperatures."""
        if not temperature > 0:
            raise InvalidInputError(f"Temperature must be > 0, got {temperature!r}")
        return self.k * temperature


SI = PhysicalConstants()
NATURAL = PhysicalConstants.natural()


def landauer_heat(bits: float, temperature: float, constants: PhysicalConstants = SI) -> float:
    """
    Minimum heat for erasing `bits` bits: bits * k * T * ln 2.

    Args:
        bits: Number of erased bits (>= 0, may be fractional)
        temperature: Bath temperature (K, or dimensionless in natural units)
        constants: Constant set

    Returns:
        Heat in joules (natural units: multiples of T)

    Raises:
        InvalidInputError: If bits < 0 or temperature <= 0
    """
    if bits < 0:
        raise InvalidInputError(f"Erased bit count must be >= 0, got {bits!r}")
    return bits * constants.kt(temperature) * LN2
