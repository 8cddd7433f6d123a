"""
Cluster and graph resource states on an n x m lattice.

Qubits are indexed column-major, qubit = col * rows + row, so every layer
(column) is a contiguous index range. C_r is the first r columns, O_r the
remaining m - r columns.
"""

import logging
from enum import Enum
from typing import Any, Dict, List, Optional, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from landauer_mbqc.config import MAX_STATE_QUBITS
from landauer_mbqc.errors import CapacityError, InvalidInputError
from landauer_mbqc.qsim import PauliOperator, StateVector, apply_cz_edges, new_plus_state

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def lattice_edges(rows: int, cols: int, vertical: bool = True) -> List[Edge]:
    """
    Nearest-neighbour edges of the rows x cols square lattice.

    Args:
        rows: Register size n
        cols: Number of layers m
        vertical: Include edges inside each column

    Returns:
        Sorted list of (low, high) qubit pairs
    """
    edges = []
    for col in range(cols):
        for row in range(rows):
            q = col * rows + row
            if col + 1 < cols:
                edges.append((q, q + rows))
            if vertical and row + 1 < rows:
                edges.append((q, q + 1))
    return sorted(edges)


class RegionKind(str, Enum):
    """Enum for the two sides of a layer cut."""
    C = "C"  # first r layers (measured side)
    O = "O"  # last m - r layers


class ClusterLayout(BaseModel):
    """
    Lattice geometry plus the entangling edges of the resource.

    When `edges` is omitted the nearest-neighbour square-lattice edge set is
    used; any other simple graph on the rows x cols qubits is accepted.
    """
    model_config = ConfigDict(frozen=True)

    rows: int = Field(ge=1)
    cols: int = Field(ge=2)
    edges: Tuple[Edge, ...]

    @model_validator(mode='before')
    @classmethod
    def fill_default_edges(cls, data: Any) -> Any:
        """Default to lattice edges and store every edge as a sorted pair."""
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if data.get('edges') is None:
            rows, cols = data.get('rows'), data.get('cols')
            if isinstance(rows, int) and isinstance(cols, int) and rows >= 1 and cols >= 2:
                data['edges'] = lattice_edges(rows, cols)
            else:
                data['edges'] = ()
        data['edges'] = tuple(sorted(tuple(sorted(int(q) for q in e)) for e in data['edges']))
        return data

    @model_validator(mode='after')
    def validate_edges(self) -> 'ClusterLayout':
        """Edges must join distinct valid qubits and appear once."""
        seen: Set[Edge] = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"Edge ({a}, {b}) joins a qubit to itself")
            if a < 0 or b >= self.num_qubits:
                raise ValueError(f"Edge ({a}, {b}) references a qubit outside 0..{self.num_qubits - 1}")
            if (a, b) in seen:
                raise ValueError(f"Duplicate edge ({a}, {b})")
            seen.add((a, b))
        return self

    @classmethod
    def square_lattice(cls, rows: int, cols: int) -> 'ClusterLayout':
        return cls(rows=rows, cols=cols, edges=None)

    @classmethod
    def parallel_wires(cls, rows: int, cols: int) -> 'ClusterLayout':
        """Independent 1D wires: horizontal lattice edges only."""
        return cls(rows=rows, cols=cols, edges=lattice_edges(rows, cols, vertical=False))

    def with_extra_edges(self, extra: List[Edge]) -> 'ClusterLayout':
        return ClusterLayout(rows=self.rows, cols=self.cols, edges=list(self.edges) + list(extra))

    @property
    def num_qubits(self) -> int:
        return self.rows * self.cols

    @property
    def is_lattice(self) -> bool:
        """True when the edge set is exactly the square lattice."""
        return set(self.edges) == set(lattice_edges(self.rows, self.cols))

    @property
    def is_layered(self) -> bool:
        """
        True when every edge is a lattice edge and all horizontal edges exist.

        Layered layouts carry one logical wire per row, which is what the
        layer-by-layer pattern compiler and the decomposition check need.
        """
        edges = set(self.edges)
        horizontal = set(lattice_edges(self.rows, self.cols, vertical=False))
        return edges <= set(lattice_edges(self.rows, self.cols)) and horizontal <= edges

    def qubit(self, row: int, col: int) -> int:
        return col * self.rows + row

    def coords(self, qubit: int) -> Tuple[int, int]:
        """(row, col) of a qubit."""
        return qubit % self.rows, qubit // self.rows

    def column(self, col: int) -> List[int]:
        return [self.qubit(row, col) for row in range(self.rows)]

    def neighbors(self, qubit: int) -> List[int]:
        return sorted({b for a, b in self.edges if a == qubit} | {a for a, b in self.edges if b == qubit})

    def vertical_edges(self, col: int) -> List[Edge]:
        """Edges inside column `col`, as (row, row) pairs."""
        rows = []
        for a, b in self.edges:
            (ra, ca), (rb, cb) = self.coords(a), self.coords(b)
            if ca == col and cb == col:
                rows.append((ra, rb))
        return rows

    def edges_between(self, col_a: int, col_b: int) -> List[Edge]:
        """Edges with one end in column col_a and the other in column col_b."""
        cols = {col_a, col_b}
        return [
            (a, b) for a, b in self.edges
            if {self.coords(a)[1], self.coords(b)[1]} == cols
        ]

    def border_edges(self, r: int) -> List[Edge]:
        """Edges crossing the cut between C_r and O_r."""
        return self.edges_between(r - 1, r)

    def to_file_dict(self) -> Dict[str, Any]:
        """Pattern-file form: rows, cols and the edges beyond the lattice."""
        lattice = set(lattice_edges(self.rows, self.cols))
        if not lattice <= set(self.edges):
            raise InvalidInputError("Layouts missing lattice edges cannot be written as rows/cols/extra_edges")
        return {
            "rows": self.rows,
            "cols": self.cols,
            "extra_edges": [list(e) for e in self.edges if e not in lattice],
        }


class Region(BaseModel):
    """C_r or O_r of a layout."""
    model_config = ConfigDict(frozen=True)

    kind: RegionKind
    r: int
    qubits: Tuple[int, ...]


def build_cluster(layout: ClusterLayout) -> StateVector:
    """
    |+> on every site followed by CZ on every edge.

    Raises:
        CapacityError: If the layout has more than 24 qubits
    """
    if layout.num_qubits > MAX_STATE_QUBITS:
        raise CapacityError(f"Layout has {layout.num_qubits} qubits (max {MAX_STATE_QUBITS})")
    logger.debug(f"Building {layout.rows}x{layout.cols} graph state with {len(layout.edges)} edges")
    return apply_cz_edges(new_plus_state(layout.num_qubits), layout.edges)


def encode_input(input_state: StateVector, layout: ClusterLayout) -> StateVector:
    """
    Place an n-qubit input on column 0, |+> elsewhere, then entangle.

    Args:
        input_state: State of exactly `layout.rows` qubits
        layout: Resource layout

    Returns:
        Resource StateVector

    Raises:
        InvalidInputError: If the input size differs from the register size
        CapacityError: If the layout has more than 24 qubits
    """
    if input_state.num_qubits != layout.rows:
        raise InvalidInputError(
            f"Input has {input_state.num_qubits} qubits, layout register has {layout.rows}"
        )
    if layout.num_qubits > MAX_STATE_QUBITS:
        raise CapacityError(f"Layout has {layout.num_qubits} qubits (max {MAX_STATE_QUBITS})")
    placed = StateVector.product(input_state, new_plus_state(layout.rows * (layout.cols - 1)))
    return apply_cz_edges(placed, layout.edges)


def region(layout: ClusterLayout, kind: Union[RegionKind, str], r: int) -> Region:
    """
    Qubits of C_r (columns 0..r-1) or O_r (columns r..m-1).

    Raises:
        InvalidInputError: If r is outside 1..m-1 or the kind is unknown
    """
    try:
        kind = RegionKind(str(kind.value if isinstance(kind, RegionKind) else kind).split("_")[0].upper())
    except ValueError:
        raise InvalidInputError(f"Unknown region kind: {kind!r}")
    if not isinstance(r, int) or not 1 <= r <= layout.cols - 1:
        raise InvalidInputError(f"Layer index r must be in 1..{layout.cols - 1}, got {r!r}")
    split = r * layout.rows
    qubits = range(split) if kind is RegionKind.C else range(split, layout.num_qubits)
    return Region(kind=kind, r=r, qubits=tuple(qubits))


def stabilizer_generator(layout: ClusterLayout, qubit: int) -> PauliOperator:
    """K_a = X_a times Z on every neighbour of a."""
    n = layout.num_qubits
    x_bits = [0] * n
    z_bits = [0] * n
    x_bits[qubit] = 1
    for b in layout.neighbors(qubit):
        z_bits[b] = 1
    return PauliOperator(n, tuple(x_bits), tuple(z_bits))


def cluster_on_columns(layout: ClusterLayout, first_col: int) -> Optional[StateVector]:
    """
    Graph state on columns first_col..m-1 using the layout's edges there.

    Qubits are relabelled from 0. Returns None when no column remains.
    """
    if first_col >= layout.cols:
        return None
    offset = first_col * layout.rows
    size = layout.num_qubits - offset
    edges = [(a - offset, b - offset) for a, b in layout.edges if a >= offset and b >= offset]
    return apply_cz_edges(new_plus_state(size), edges)
