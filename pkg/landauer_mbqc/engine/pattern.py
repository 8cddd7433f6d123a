"""
Measurement-pattern types and the pattern file format.

A pattern is an ordered list of XY-plane measurements with parity
dependencies (s-domain flips the angle sign, t-domain adds pi), a list of
output qubits, and per-output X/Z correction sets that define the Pauli
frame (byproduct) of every trajectory.
"""

import json
import logging
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from landauer_mbqc.errors import InvalidInputError, PatternFileError
from landauer_mbqc.graphstate import ClusterLayout, lattice_edges
from landauer_mbqc.qsim import PauliOperator, StateVector

logger = logging.getLogger(__name__)

INPUT_NORM_SLACK = 1e-6


class PatternStep(BaseModel):
    """One adaptive measurement."""
    model_config = ConfigDict(frozen=True)

    qubit: int = Field(ge=0)
    base_angle: float
    s_domain: Tuple[int, ...] = ()
    t_domain: Tuple[int, ...] = ()


class MeasurementPattern(BaseModel):
    """An MBQC program on a layout."""
    model_config = ConfigDict(frozen=True)

    layout: ClusterLayout
    steps: Tuple[PatternStep, ...]
    outputs: Tuple[int, ...]
    x_corrections: Dict[int, Tuple[int, ...]] = Field(default_factory=dict)
    z_corrections: Dict[int, Tuple[int, ...]] = Field(default_factory=dict)
    name: Optional[str] = None

    @model_validator(mode='after')
    def validate_structure(self) -> 'MeasurementPattern':
        """Check ordering, coverage and correction-set references."""
        measured = [step.qubit for step in self.steps]
        if len(set(measured)) != len(measured):
            raise ValueError("A qubit is measured more than once")
        if len(set(self.outputs)) != len(self.outputs):
            raise ValueError("Output list contains duplicates")
        if set(measured) & set(self.outputs):
            raise ValueError(f"Qubits both measured and output: {sorted(set(measured) & set(self.outputs))}")
        if set(measured) | set(self.outputs) != set(range(self.layout.num_qubits)):
            missing = sorted(set(range(self.layout.num_qubits)) - set(measured) - set(self.outputs))
            extra = sorted((set(measured) | set(self.outputs)) - set(range(self.layout.num_qubits)))
            raise ValueError(f"Measured and output qubits must cover the layout (missing {missing}, unknown {extra})")

        earlier = set()
        for index, step in enumerate(self.steps):
            for domain_name in ('s_domain', 't_domain'):
                bad = [q for q in getattr(step, domain_name) if q not in earlier]
                if bad:
                    raise ValueError(
                        f"Step {index} (qubit {step.qubit}) {domain_name} references qubits "
                        f"not measured earlier: {bad}"
                    )
            earlier.add(step.qubit)

        for label, corrections in (('x_corrections', self.x_corrections), ('z_corrections', self.z_corrections)):
            for output, sources in corrections.items():
                if output not in self.outputs:
                    raise ValueError(f"{label} key {output} is not an output qubit")
                bad = [q for q in sources if q not in earlier]
                if bad:
                    raise ValueError(f"{label}[{output}] references unmeasured qubits: {bad}")
        return self

    @property
    def measured_qubits(self) -> List[int]:
        """Measured qubits in pattern order."""
        return [step.qubit for step in self.steps]

    @property
    def sorted_outputs(self) -> List[int]:
        return sorted(self.outputs)

    def base_angles(self) -> Dict[int, float]:
        return {step.qubit: step.base_angle for step in self.steps}

    def is_layer_ordered(self) -> bool:
        """True when measured columns never decrease along the pattern."""
        cols = [self.layout.coords(q)[1] for q in self.measured_qubits]
        return all(a <= b for a, b in zip(cols, cols[1:]))

    def measured_layers(self) -> int:
        """Number of leading columns measured completely."""
        measured = set(self.measured_qubits)
        layers = 0
        for col in range(self.layout.cols):
            if all(q in measured for q in self.layout.column(col)):
                layers += 1
            else:
                break
        return layers

    def describe(self) -> Dict[str, Any]:
        """Short descriptor for reports."""
        return {
            "name": self.name or "custom",
            "rows": self.layout.rows,
            "cols": self.layout.cols,
            "measured": len(self.steps),
            "outputs": list(self.sorted_outputs),
        }


class OutcomeRecord(BaseModel):
    """Outcomes of one trajectory and its probability."""
    model_config = ConfigDict(frozen=True)

    outcomes: Dict[int, int]
    probability: float = Field(gt=0, le=1 + 1e-10)

    def bitstring(self, order: List[int]) -> str:
        return "".join(str(self.outcomes[q]) for q in order)


class PauliFrame(BaseModel):
    """Per-output (a_x, a_z) byproduct bits."""
    model_config = ConfigDict(frozen=True)

    bits: Dict[int, Tuple[int, int]]

    @property
    def num_bits(self) -> int:
        return 2 * len(self.bits)

    def to_pauli(self, outputs: Optional[List[int]] = None) -> PauliOperator:
        """Pauli operator on `outputs` (default: all frame qubits, ascending)."""
        outputs = sorted(self.bits) if outputs is None else list(outputs)
        return PauliOperator(
            len(outputs),
            tuple(self.bits[q][0] for q in outputs),
            tuple(self.bits[q][1] for q in outputs),
        )


# ============================================================================
# Pattern file format
# ============================================================================

class _LayoutSpec(BaseModel):
    model_config = ConfigDict(extra='forbid')

    rows: int = Field(ge=1)
    cols: int = Field(ge=2)
    extra_edges: List[Tuple[int, int]] = Field(default_factory=list)


class _AmplitudeInput(BaseModel):
    model_config = ConfigDict(extra='forbid')

    amplitudes: List[Tuple[float, float]]


class _StepSpec(BaseModel):
    model_config = ConfigDict(extra='forbid')

    qubit: int = Field(ge=0)
    angle: float
    s_domain: List[int] = Field(default_factory=list)
    t_domain: List[int] = Field(default_factory=list)


class _PatternFileModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    layout: _LayoutSpec
    input: Union[Literal["plus"], _AmplitudeInput] = "plus"
    steps: List[_StepSpec]
    outputs: List[int]
    x_corrections: Dict[str, List[int]] = Field(default_factory=dict)
    z_corrections: Dict[str, List[int]] = Field(default_factory=dict)


class LoadedPattern(BaseModel):
    """A pattern file's contents: the pattern and its input (None = |+>^n)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pattern: MeasurementPattern
    input_state: Optional[StateVector] = None


def _input_from_amplitudes(pairs: List[Tuple[float, float]], rows: int) -> StateVector:
    amplitudes = np.array([complex(re, im) for re, im in pairs], dtype=complex)
    if amplitudes.size != 2 ** rows:
        raise InvalidInputError(f"Input needs {2 ** rows} amplitudes for {rows} rows, got {amplitudes.size}")
    norm = float(np.linalg.norm(amplitudes))
    if abs(norm - 1.0) > INPUT_NORM_SLACK:
        raise InvalidInputError(f"Input amplitudes have norm {norm!r}, expected 1")
    return StateVector.from_amplitudes(amplitudes, normalize=True)


def _first_error_location(error: ValidationError) -> Tuple[str, str]:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get('loc', ())) or "<root>"
    return location, first.get('msg', str(error))


def pattern_from_dict(data: Dict[str, Any], name: Optional[str] = None) -> LoadedPattern:
    """
    Build a pattern from the parsed pattern-file JSON.

    Args:
        data: Parsed JSON object
        name: Optional pattern name for reports

    Returns:
        LoadedPattern instance

    Raises:
        PatternFileError: With the offending field path on any schema or semantic error
    """
    try:
        spec = _PatternFileModel(**data) if isinstance(data, dict) else _PatternFileModel.model_validate(data)
    except ValidationError as e:
        location, message = _first_error_location(e)
        raise PatternFileError(message, location=location)

    try:
        layout = ClusterLayout(
            rows=spec.layout.rows,
            cols=spec.layout.cols,
            edges=lattice_edges(spec.layout.rows, spec.layout.cols) + [tuple(e) for e in spec.layout.extra_edges],
        )
    except ValidationError as e:
        _, message = _first_error_location(e)
        raise PatternFileError(message, location="layout.extra_edges")

    def corrections(raw: Dict[str, List[int]], label: str) -> Dict[int, Tuple[int, ...]]:
        parsed = {}
        for key, sources in raw.items():
            try:
                parsed[int(key)] = tuple(sources)
            except ValueError:
                raise PatternFileError(f"Correction key {key!r} is not a qubit index", location=label)
        return parsed

    try:
        pattern = MeasurementPattern(
            layout=layout,
            steps=tuple(
                PatternStep(qubit=s.qubit, base_angle=s.angle, s_domain=tuple(s.s_domain), t_domain=tuple(s.t_domain))
                for s in spec.steps
            ),
            outputs=tuple(spec.outputs),
            x_corrections=corrections(spec.x_corrections, "x_corrections"),
            z_corrections=corrections(spec.z_corrections, "z_corrections"),
            name=name,
        )
    except ValidationError as e:
        location, message = _first_error_location(e)
        raise PatternFileError(message, location=location)

    input_state = None
    if isinstance(spec.input, _AmplitudeInput):
        try:
            input_state = _input_from_amplitudes(spec.input.amplitudes, layout.rows)
        except InvalidInputError as e:
            raise PatternFileError(str(e), location="input.amplitudes")

    return LoadedPattern(pattern=pattern, input_state=input_state)


def load_pattern_file(path: str) -> LoadedPattern:
    """
    Load and validate a pattern JSON file.

    Args:
        path: Path to the pattern file

    Returns:
        LoadedPattern instance

    Raises:
        PatternFileError: If the file is missing, not JSON, or fails validation
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise PatternFileError(f"Cannot read pattern file: {e.strerror or e}", path=path)

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PatternFileError(f"Invalid JSON: {e.msg}", path=path, location=f"line {e.lineno}, column {e.colno}")

    try:
        loaded = pattern_from_dict(data, name=_stem(path))
    except PatternFileError as e:
        raise PatternFileError(e.message, path=path, location=e.location)

    logger.info(
        f"Loaded pattern {path}: {loaded.pattern.layout.rows}x{loaded.pattern.layout.cols}, "
        f"{len(loaded.pattern.steps)} measurements"
    )
    return loaded


def dump_pattern_file(pattern: MeasurementPattern, input_state: Optional[StateVector] = None) -> Dict[str, Any]:
    """
    Pattern-file JSON object for a pattern.

    Raises:
        InvalidInputError: If the layout lacks lattice edges (not expressible in the format)
    """
    if input_state is None:
        input_field: Union[str, Dict[str, Any]] = "plus"
    else:
        input_field = {"amplitudes": [[float(a.real), float(a.imag)] for a in input_state.amplitudes]}
    return {
        "layout": pattern.layout.to_file_dict(),
        "input": input_field,
        "steps": [
            {"qubit": s.qubit, "angle": s.base_angle, "s_domain": list(s.s_domain), "t_domain": list(s.t_domain)}
            for s in pattern.steps
        ],
        "outputs": list(pattern.outputs),
        "x_corrections": {str(q): list(v) for q, v in sorted(pattern.x_corrections.items())},
        "z_corrections": {str(q): list(v) for q, v in sorted(pattern.z_corrections.items())},
    }


def _stem(path: str) -> str:
    base = path.replace("\\", "/").rsplit("/", 1)[-1]
    return base[:-5] if base.endswith(".json") else base


def frame_from_outcomes(pattern: MeasurementPattern, outcomes: Mapping[int, int]) -> PauliFrame:
    """
    Correction-set parities for every output.

    Raises:
        InvalidInputError: If an outcome of a measured qubit is missing
    """
    missing = [q for q in pattern.measured_qubits if q not in outcomes]
    if missing:
        raise InvalidInputError(f"Outcome record is missing measured qubits {missing}")
    bits = {}
    for output in pattern.sorted_outputs:
        a_x = sum(outcomes[q] for q in pattern.x_corrections.get(output, ())) % 2
        a_z = sum(outcomes[q] for q in pattern.z_corrections.get(output, ())) % 2
        bits[output] = (a_x, a_z)
    return PauliFrame(bits=bits)
