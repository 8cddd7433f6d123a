"""
Configuration management for the Landauer-MBQC harness.

This module provides Pydantic models for all configuration needs:
- Command: CLI sub-commands
- Tolerances: numerical tolerances used by checks and reports
- RunConfig: one CLI invocation (command, pattern, seed, thermo settings)
- Settings: environment-derived settings (thread cap, log level)

It also holds the capacity caps of the dense simulator and the JSON
config-file helpers behind --config and --save-config.
"""

import os
from enum import Enum
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from landauer_mbqc.utils.file_writer import atomic_write

# Dense-simulation capacity caps
MAX_STATE_QUBITS = 24
MAX_DENSITY_QUBITS = 12
MAX_ENUMERATED_MEASUREMENTS = 16
MAX_OTP_QUBITS = 6

DEFAULT_TEMPERATURE_K = 300.0
DEFAULT_OTP_SAMPLES = 32

THREADS_ENV_VAR = "LANDAUER_MBQC_THREADS"


class Command(str, Enum):
    """Enum for CLI sub-commands."""
    RUN = "run"
    ENUMERATE = "enumerate"
    VERIFY_NO_SIGNALING = "verify-nosignaling"
    VERIFY_OTP = "verify-otp"
    VERIFY_DECOMPOSITION = "verify-decomposition"
    THERMO_REPORT = "thermo-report"
    VERIFY_SUITE = "verify-suite"


class Tolerances(BaseModel):
    """Numerical tolerances. Every override must be strictly positive."""
    state: float = Field(default=1e-12, gt=0)  # norms, hermiticity, traces
    distribution: float = Field(default=1e-10, gt=0)  # probability sums
    verification: float = Field(default=1e-10, gt=0)  # trace distances, fidelity slack
    entropy_bound: float = Field(default=1e-9, gt=0)  # slack on H >= 2n
    zero_branch: float = Field(default=1e-14, gt=0)  # branches below this are pruned

    def with_verification(self, tolerance: Optional[float]) -> "Tolerances":
        """
        Return a copy with the verification tolerance replaced.

        Args:
            tolerance: New tolerance, or None to keep the current one

        Returns:
            Tolerances instance
        """
        if tolerance is None:
            return self.model_copy()
        return Tolerances(**{**self.model_dump(), "verification": tolerance})


class RunConfig(BaseModel):
    """Configuration for a single CLI invocation."""
    command: Command
    pattern_path: Optional[str] = None
    builtin: Optional[str] = None
    builtin_params: List[float] = Field(default_factory=list)
    rows: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0, le=2**64 - 1)
    temperature: float = Field(default=DEFAULT_TEMPERATURE_K, gt=0)
    natural_units: bool = False
    tolerances: Tolerances = Field(default_factory=Tolerances)
    r: Optional[int] = Field(default=None, ge=1)
    angles_a: Optional[List[float]] = None
    angles_b: Optional[List[float]] = None
    otp_samples: int = Field(default=DEFAULT_OTP_SAMPLES, ge=1)
    include_final_erasure: bool = True
    out_path: Optional[str] = None
    max_workers: int = Field(default=1, ge=1)

    @field_validator('pattern_path')
    @classmethod
    def validate_pattern_path(cls, v):
        """Reject empty paths early."""
        if v is not None and not v.strip():
            raise ValueError("Pattern path must not be empty")
        return v


class Settings(BaseModel):
    """Settings read from the environment (and an optional .env file)."""
    max_threads: int = Field(default=1, ge=1)
    log_level: str = "WARNING"


def load_settings() -> Settings:
    """
    Load settings from environment variables.

    Reads LANDAUER_MBQC_THREADS and LOG_LEVEL after loading a .env file if
    one is present.

    Returns:
        Settings instance

    Raises:
        ValueError: If LANDAUER_MBQC_THREADS is not a positive integer
    """
    load_dotenv()

    raw_threads = os.getenv(THREADS_ENV_VAR, "1")
    try:
        max_threads = int(raw_threads)
    except ValueError:
        raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {raw_threads!r}")
    if max_threads < 1:
        raise ValueError(f"{THREADS_ENV_VAR} must be >= 1, got {max_threads}")

    return Settings(
        max_threads=max_threads,
        log_level=os.getenv("LOG_LEVEL", "WARNING").upper()
    )


def load_config_from_file(path: str) -> RunConfig:
    """
    Load a run configuration saved with --save-config.

    Args:
        path: Path to the JSON file

    Returns:
        RunConfig instance

    Raises:
        FileNotFoundError: If the file doesn't exist
        ValueError: If the file is not a valid RunConfig
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"Config file not found: {path}")

    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    try:
        return RunConfig.model_validate_json(text)
    except ValidationError as e:
        raise ValueError(f"Invalid config file {path}: {e}")


def save_config_to_file(config: RunConfig, path: str) -> None:
    """
    Save a run configuration as indented JSON.

    An existing file is kept as `<path>.backup`. The worker count comes from
    the environment and is not saved.

    Args:
        config: RunConfig instance
        path: Target path
    """
    content = config.model_dump_json(indent=2, exclude={'max_workers'})
    atomic_write(path, content + "\n", backup=True)
