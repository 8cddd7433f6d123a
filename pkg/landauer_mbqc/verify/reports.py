"""
Verification report models (schema "verify/1").

Reports serialize with `model_dump(by_alias=True)`, which renders the
`passed` field as "pass" and `schema_tag` as "schema".
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from landauer_mbqc import __version__

VERIFY_SCHEMA = "verify/1"


class VerifyReport(BaseModel):
    """Fields shared by every verification report."""
    model_config = ConfigDict(populate_by_name=True)

    schema_tag: str = Field(default=VERIFY_SCHEMA, alias="schema")
    check: str
    tool_version: str = __version__
    seed: int = 0
    tolerances: Dict[str, float]
    passed: bool = Field(alias="pass")

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True)


class NoSignalingReport(VerifyReport):
    """Trace distance between Bob's marginals under two strategies."""
    check: str = "no_signaling"
    strategy_a: Dict[str, Any]
    strategy_b: Dict[str, Any]
    r: int
    bob_region: List[int]
    distance: float = Field(ge=0)
    tolerance: float = Field(gt=0)

    @model_validator(mode='after')
    def pass_matches_distance(self) -> 'NoSignalingReport':
        if self.passed != (self.distance <= self.tolerance):
            raise ValueError("pass must equal distance <= tolerance")
        return self


class DecompositionReport(VerifyReport):
    """Per-outcome fidelity between simulated and reconstructed O_r states."""
    check: str = "decomposition"
    pattern: Dict[str, Any]
    r: int
    outcomes: List[str]
    fidelities: List[float]
    min_fidelity: float
    tolerance: float = Field(gt=0)

    @model_validator(mode='after')
    def pass_matches_fidelity(self) -> 'DecompositionReport':
        if self.passed != (self.min_fidelity >= 1 - self.tolerance):
            raise ValueError("pass must equal min_fidelity >= 1 - tolerance")
        return self


class OtpReport(VerifyReport):
    """
    One-time-pad check of a keyed Pauli family.

    `passed` requires both the encryption and the entropy bound;
    `implication_holds` is the weaker statement that encryption implies the
    entropy bound.
    """
    check: str = "one_time_pad"
    n_logical: int = Field(ge=1)
    num_keys: int = Field(ge=1)
    entropy_bits: float = Field(ge=0)
    entropy_floor_bits: float
    sample_count: int = Field(ge=1)
    max_deviation: float = Field(ge=0)
    tolerance: float = Field(gt=0)
    entropy_tolerance: float = Field(gt=0)
    encryption_pass: bool
    entropy_bound_pass: bool
    implication_holds: bool
    pattern: Optional[Dict[str, Any]] = None

    @model_validator(mode='after')
    def flags_consistent(self) -> 'OtpReport':
        if self.entropy_bound_pass != (self.entropy_bits >= 2 * self.n_logical - self.entropy_tolerance):
            raise ValueError("entropy_bound_pass must equal entropy_bits >= 2n - tolerance")
        if self.implication_holds != (not self.encryption_pass or self.entropy_bound_pass):
            raise ValueError("implication_holds must equal encryption_pass => entropy_bound_pass")
        return self


class SuiteEntry(BaseModel):
    """One check of the verification battery."""
    model_config = ConfigDict(populate_by_name=True)

    name: str
    check: str
    expected_pass: bool
    passed: bool = Field(alias="pass")
    matches_expectation: bool
    report: Dict[str, Any]


class SuiteReport(VerifyReport):
    """Batch of checks; passes when every entry matches its expected verdict."""
    check: str = "suite"
    entries: List[SuiteEntry]
