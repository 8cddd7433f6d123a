"""
Layer-by-layer pattern compiler, circuit oracle and the built-in patterns.

Measuring a wire qubit at angle phi with outcome s leaves X^s J(phi) on the
next qubit of the wire, with J(phi) = H diag(1, e^{-i phi}). Byproducts are
pushed through later layers with

    J(-phi) X = Z J(phi)        (X absorbed by flipping the angle sign)
    J(phi) Z  = X J(phi)
    CZ(a, b) X_a = X_a Z_b CZ(a, b)

which gives the s-domains and output correction sets below.
"""

import logging
from typing import Callable, Dict, FrozenSet, List, Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np

from landauer_mbqc.config import MAX_DENSITY_QUBITS, MAX_STATE_QUBITS
from landauer_mbqc.engine.pattern import MeasurementPattern, PatternStep
from landauer_mbqc.errors import CapacityError, InvalidInputError, UnsupportedResourceError
from landauer_mbqc.graphstate import ClusterLayout
from landauer_mbqc.qsim import HADAMARD, phase

logger = logging.getLogger(__name__)

Angles = Union[Sequence[float], Mapping[int, float]]


def _angle_map(layout: ClusterLayout, angles: Angles, r: int) -> Dict[int, float]:
    measured = list(range(r * layout.rows))
    if isinstance(angles, Mapping):
        missing = [q for q in measured if q not in angles]
        if missing:
            raise InvalidInputError(f"No angle given for qubits {missing}")
        return {q: float(angles[q]) for q in measured}
    angles = [float(a) for a in angles]
    if len(angles) != len(measured):
        raise InvalidInputError(
            f"Expected {len(measured)} angles for {r} layers of {layout.rows} rows, got {len(angles)}"
        )
    return dict(zip(measured, angles))


def _check_layers(layout: ClusterLayout, r: int) -> None:
    if not layout.is_layered:
        raise UnsupportedResourceError("Layer-by-layer compilation needs a layered lattice layout")
    if not isinstance(r, int) or not 1 <= r <= layout.cols - 1:
        raise InvalidInputError(f"Measured layers must be in 1..{layout.cols - 1}, got {r!r}")


def compile_layered_pattern(
    layout: ClusterLayout,
    angles: Angles,
    measured_layers: int,
    name: Optional[str] = None
) -> MeasurementPattern:
    """
    Adaptive pattern measuring the first `measured_layers` columns.

    Args:
        layout: Layered layout (one logical wire per row)
        angles: Base angle per measured qubit, as a column-major list or a mapping
        measured_layers: Number of leading columns measured (r)
        name: Optional pattern name

    Returns:
        MeasurementPattern with outputs on column r and correction sets for them

    Raises:
        UnsupportedResourceError: If the layout is not layered
        InvalidInputError: If r or the angle list is out of shape
    """
    _check_layers(layout, measured_layers)
    angle_of = _angle_map(layout, angles, measured_layers)
    n = layout.rows

    x_sets: List[FrozenSet[int]] = [frozenset()] * n
    z_sets: List[FrozenSet[int]] = [frozenset()] * n
    steps = []
    for col in range(measured_layers):
        for row in range(n):
            q = layout.qubit(row, col)
            steps.append(PatternStep(qubit=q, base_angle=angle_of[q], s_domain=tuple(sorted(x_sets[row]))))
        new_x = [frozenset({layout.qubit(row, col)}) ^ z_sets[row] for row in range(n)]
        new_z = list(x_sets)
        for a, b in layout.vertical_edges(col + 1):
            new_z[b] = new_z[b] ^ new_x[a]
            new_z[a] = new_z[a] ^ new_x[b]
        x_sets, z_sets = new_x, new_z

    outputs = tuple(range(measured_layers * n, layout.num_qubits))
    x_corrections = {layout.qubit(row, measured_layers): tuple(sorted(x_sets[row])) for row in range(n)}
    z_corrections = {layout.qubit(row, measured_layers): tuple(sorted(z_sets[row])) for row in range(n)}
    return MeasurementPattern(
        layout=layout,
        steps=tuple(steps),
        outputs=outputs,
        x_corrections={q: v for q, v in x_corrections.items() if v},
        z_corrections={q: v for q, v in z_corrections.items() if v},
        name=name,
    )


def restrict_to_prefix(pattern: MeasurementPattern, r: int) -> MeasurementPattern:
    """
    The C_r prefix of a layered pattern, recompiled from its base angles.

    Raises:
        UnsupportedResourceError: If the layout is not layered
        InvalidInputError: If the pattern does not measure all of C_r
    """
    _check_layers(pattern.layout, r)
    if pattern.measured_layers() < r:
        raise InvalidInputError(
            f"Pattern measures {pattern.measured_layers()} full layers, prefix C_{r} needs {r}"
        )
    base = pattern.base_angles()
    prefix_name = f"{pattern.name}[C_{r}]" if pattern.name else None
    return compile_layered_pattern(pattern.layout, base, r, name=prefix_name)


def j_gate(angle: float) -> np.ndarray:
    """Logical gate of one wire measurement: H diag(1, e^{-i angle})."""
    return HADAMARD @ phase(-angle)


def _cz_diagonal(n: int, pairs: Sequence) -> np.ndarray:
    indices = np.arange(2 ** n)
    signs = np.ones(2 ** n)
    for a, b in pairs:
        both = ((indices >> a) & 1) & ((indices >> b) & 1)
        signs = np.where(both == 1, -signs, signs)
    return signs


def layered_unitary(layout: ClusterLayout, angles: Angles, r: int) -> np.ndarray:
    """
    Dense circuit oracle U_r...U_1 on the register.

    Vertical CZs of column 0, then per layer the product of J gates followed
    by the vertical CZs of the next column.

    Raises:
        CapacityError: If the register has more than 12 qubits
    """
    _check_layers(layout, r)
    n = layout.rows
    if n > MAX_DENSITY_QUBITS:
        raise CapacityError(f"Oracle needs a register of at most {MAX_DENSITY_QUBITS} qubits, got {n}")
    angle_of = _angle_map(layout, angles, r)

    unitary = np.diag(_cz_diagonal(n, layout.vertical_edges(0))).astype(complex)
    for col in range(r):
        layer = np.ones((1, 1), dtype=complex)
        for row in reversed(range(n)):
            layer = np.kron(layer, j_gate(angle_of[layout.qubit(row, col)]))
        unitary = _cz_diagonal(n, layout.vertical_edges(col + 1))[:, None] * (layer @ unitary)
    return unitary


# ============================================================================
# Built-in patterns
# ============================================================================

class BuiltinSpec(NamedTuple):
    """Registry entry: parameter count, default columns, per-layer angles."""
    num_params: int
    default_cols: Callable[[Sequence[float]], int]
    layer_angles: Callable[[Sequence[float]], List[float]]
    description: str


def _wire_cols(params: Sequence[float]) -> int:
    if not params:
        return 3
    m = params[0]
    if float(m) != int(m) or int(m) < 2:
        raise InvalidInputError(f"wire_identity needs an integer length >= 2, got {m!r}")
    return int(m)


def _wire_angles(params: Sequence[float]) -> List[float]:
    # J(0)^2 = I and J(-pi/2)^3 = (HS)^3 ~ I; an odd layer count needs the triple
    layers = _wire_cols(params) - 1
    if layers % 2 == 0 or layers == 1:
        return []
    return [-np.pi / 2] * 3


BUILTIN_PATTERNS: Dict[str, BuiltinSpec] = {
    "wire_identity": BuiltinSpec(
        num_params=1,
        default_cols=_wire_cols,
        layer_angles=_wire_angles,
        description="Identity on m columns (H for m = 2)",
    ),
    "rz": BuiltinSpec(
        num_params=1,
        default_cols=lambda params: 3,
        layer_angles=lambda params: [-params[0], 0.0],
        description="diag(1, e^{i alpha})",
    ),
    "euler_rotation": BuiltinSpec(
        num_params=3,
        default_cols=lambda params: 5,
        layer_angles=lambda params: [0.0, -params[0], -params[1], -params[2]],
        description="Rx(gamma) Rz(beta) Rx(alpha) up to global phase",
    ),
}


def list_builtin_patterns() -> List[str]:
    return sorted(BUILTIN_PATTERNS)


def builtin_pattern(
    name: str,
    params: Sequence[float] = (),
    n_rows: int = 1,
    cols: Optional[int] = None
) -> MeasurementPattern:
    """
    Built-in pattern on `n_rows` parallel wires, all columns but the last measured.

    Every wire runs the same gate. Columns beyond the gate's own length are
    measured at angle 0 and append Hadamards.

    Args:
        name: "wire_identity", "rz" or "euler_rotation"
        params: wire_identity: [m] (optional); rz: [alpha]; euler_rotation: [alpha, beta, gamma]
        n_rows: Number of parallel wires
        cols: Number of columns (defaults to the gate's own length)

    Returns:
        MeasurementPattern named after the gate

    Raises:
        InvalidInputError: For unknown names, wrong parameter counts or too few columns
        CapacityError: If the lattice would exceed 24 qubits
    """
    spec = BUILTIN_PATTERNS.get(name)
    if spec is None:
        raise InvalidInputError(f"Unknown built-in pattern {name!r} (known: {', '.join(list_builtin_patterns())})")
    params = [float(p) for p in params]
    if name != "wire_identity" and len(params) != spec.num_params:
        raise InvalidInputError(f"{name} takes {spec.num_params} parameters, got {len(params)}")
    if name == "wire_identity" and len(params) > 1:
        raise InvalidInputError(f"wire_identity takes at most one parameter, got {len(params)}")

    cols = spec.default_cols(params) if cols is None else cols
    layer_angles = spec.layer_angles(params)
    if cols < max(2, len(layer_angles) + 1):
        raise InvalidInputError(f"{name} needs at least {max(2, len(layer_angles) + 1)} columns, got {cols}")
    if n_rows < 1 or n_rows * cols > MAX_STATE_QUBITS:
        raise CapacityError(f"{n_rows}x{cols} lattice exceeds {MAX_STATE_QUBITS} qubits")

    layout = ClusterLayout.parallel_wires(n_rows, cols)
    layer_angles = layer_angles + [0.0] * (cols - 1 - len(layer_angles))
    angles = [layer_angles[col] for col in range(cols - 1) for _ in range(n_rows)]
    label = name if not params else f"{name}({', '.join(f'{p:g}' for p in params)})"
    logger.debug(f"Built-in {label} on {n_rows}x{cols}")
    return compile_layered_pattern(layout, angles, cols - 1, name=label)
