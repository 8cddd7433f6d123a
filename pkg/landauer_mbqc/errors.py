"""
Exception types for the Landauer-MBQC harness.

Every error raised by the library derives from MBQCError so callers (the CLI
in particular) can separate input problems from programming errors.
"""

from typing import Optional


class MBQCError(Exception):
    """Base class for all library errors."""


class InvalidInputError(MBQCError, ValueError):
    """An argument violates a documented precondition."""


class CapacityError(MBQCError, ValueError):
    """A dense-simulation capacity guard was exceeded."""


class QubitIndexError(MBQCError, IndexError):
    """A qubit index is out of range or repeated where distinct qubits are required."""


class ImpossibleBranchError(MBQCError):
    """A forced measurement outcome has (numerically) zero probability."""


class UnsupportedResourceError(MBQCError):
    """The requested check is not defined for this resource layout."""


class PatternFileError(InvalidInputError):
    """
    A pattern file could not be parsed or validated.

    Attributes:
        path: File the error refers to
        location: Human-readable location ("line 3, column 7" or "steps.1.qubit")
    """

    def __init__(self, message: str, path: Optional[str] = None, location: Optional[str] = None):
        self.message = message
        self.path = path
        self.location = location
        parts = [message]
        if location:
            parts.append(f"at {location}")
        if path:
            parts.append(f"in {path}")
        super().__init__(" ".join(parts))
