"""Grid-encoded rectangular arrangements.

A rectangular arrangement (RA) is stored as an integer grid: cell (r, c)
holds the index of the room covering it.  Room indices are exactly 1..n and
every room's cells form a solid axis-aligned rectangle, so the grid is a
dimensionless picture of the floorplan's topology.

Four reserved negative ids mark the boundary rectangles added around the
grid before the directed adjacency graphs are extracted; they never appear
in user input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Reserved boundary ids, distinct from all room indices (rooms are >= 1).
NORTH = -1
EAST = -2
SOUTH = -3
WEST = -4

BOUNDARY_IDS = frozenset({NORTH, EAST, SOUTH, WEST})

BOUNDARY_LABELS = {NORTH: "N", EAST: "E", SOUTH: "S", WEST: "W"}
LABEL_TO_BOUNDARY = {v: k for k, v in BOUNDARY_LABELS.items()}


def vertex_label(v: int) -> str:
    """Readable name for a room id or boundary id."""
    return BOUNDARY_LABELS.get(v, str(v))


def vertex_sort_key(v: int) -> tuple[int, int]:
    """Deterministic ordering: boundaries N, E, S, W first, then rooms by index."""
    if v in BOUNDARY_IDS:
        return (0, -v)
    return (1, v)


@dataclass
class Violation:
    """One broken grid rule, with the cells that break it."""

    rule: str  # "ragged" | "bad-id" | "id-gap" | "not-rectangular"
    message: str
    cells: list[tuple[int, int]] = field(default_factory=list)

    def __str__(self) -> str:
        if self.cells:
            where = ", ".join(f"({r},{c})" for r, c in self.cells)
            return f"{self.rule}: {self.message} [cells: {where}]"
        return f"{self.rule}: {self.message}"


class MatrixError(ValueError):
    """Raised when a grid cannot be parsed or fails validation."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class EncodedMatrix:
    """Room-index grid for a rectangular arrangement.

    Construction is permissive so that `validate` can report problems;
    `parse_matrix` is the strict entry point.
    """

    def __init__(self, cells):
        arr = np.asarray(cells, dtype=int)
        if arr.ndim != 2 or arr.size == 0:
            raise MatrixError([Violation("ragged", "grid must be a non-empty 2-D array")])
        arr.setflags(write=False)
        self.cells = arr

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    @property
    def n(self) -> int:
        """Room count, taken as the largest id present."""
        return int(self.cells.max())

    def room_ids(self) -> list[int]:
        return sorted(int(v) for v in np.unique(self.cells))

    def serialize(self) -> str:
        """Whitespace grid, one row per line, trailing newline."""
        return "\n".join(" ".join(str(int(v)) for v in row) for row in self.cells) + "\n"

    def to_lists(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.cells]

    def __eq__(self, other) -> bool:
        return isinstance(other, EncodedMatrix) and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash((self.cells.shape, self.cells.tobytes()))

    def __repr__(self) -> str:
        return f"EncodedMatrix({self.to_lists()!r})"


@dataclass
class RoomExtent:
    """Inclusive cell-index bounding box of one room."""

    id: int
    top: int
    left: int
    bottom: int
    right: int

    @property
    def cell_area(self) -> int:
        return (self.bottom - self.top + 1) * (self.right - self.left + 1)


class PaddedMatrix:
    """An EncodedMatrix ringed by the four boundary rectangles.

    The interior equals the source grid; the outer ring holds NORTH/SOUTH/
    EAST/WEST ids, with corner cells assigned by a rotational scheme.
    """

    def __init__(self, cells: np.ndarray, source: EncodedMatrix):
        arr = np.asarray(cells, dtype=int)
        arr.setflags(write=False)
        self.cells = arr
        self.source = source

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    @property
    def interior(self) -> np.ndarray:
        return self.cells[1:-1, 1:-1]

    @property
    def n(self) -> int:
        return self.source.n


def parse_matrix(text: str) -> EncodedMatrix:
    """Parse a whitespace grid of room indices and validate it.

    Raises MatrixError for ragged rows, non-integer tokens, non-positive or
    missing ids, and rooms whose cells are not a solid rectangle.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MatrixError([Violation("ragged", "empty grid")])

    grid: list[list[int]] = []
    problems: list[Violation] = []
    for r, ln in enumerate(lines):
        row = []
        for c, tok in enumerate(ln.split()):
            try:
                row.append(int(tok))
            except ValueError:
                problems.append(Violation("bad-id", f"token {tok!r} is not an integer", [(r, c)]))
                row.append(0)
        grid.append(row)

    widths = {len(row) for row in grid}
    if len(widths) > 1:
        expect = len(grid[0])
        bad = [(r, len(row)) for r, row in enumerate(grid) if len(row) != expect]
        problems.append(
            Violation(
                "ragged",
                f"rows have differing lengths (row 0 has {expect} cells; "
                + ", ".join(f"row {r} has {k}" for r, k in bad)
                + ")",
            )
        )
    if problems:
        raise MatrixError(problems)

    em = EncodedMatrix(grid)
    violations = validate(em)
    if violations:
        raise MatrixError(violations)
    return em


def validate(em: EncodedMatrix) -> list[Violation]:
    """Check the grid invariants; returns violations instead of raising."""
    violations: list[Violation] = []
    cells = em.cells

    bad = np.argwhere(cells < 1)
    if bad.size:
        coords = [(int(r), int(c)) for r, c in bad]
        violations.append(Violation("bad-id", "ids must be positive integers", coords))
        present = {int(v) for v in np.unique(cells) if v >= 1}
    else:
        present = {int(v) for v in np.unique(cells)}

    if present:
        top = max(present)
        missing = sorted(set(range(1, top + 1)) - present)
        if missing:
            violations.append(
                Violation("id-gap", f"ids must cover 1..{top}; missing {missing}")
            )

    for rid in sorted(present):
        rs, cs = np.where(cells == rid)
        t, b = int(rs.min()), int(rs.max())
        l, r = int(cs.min()), int(cs.max())
        block = cells[t : b + 1, l : r + 1]
        if not np.all(block == rid):
            coords = [(int(rr), int(cc)) for rr, cc in zip(rs, cs)]
            violations.append(
                Violation(
                    "not-rectangular",
                    f"room {rid} does not fill a solid rectangle "
                    f"(bounding box rows {t}..{b}, cols {l}..{r})",
                    coords,
                )
            )
    return violations


def room_extents(em: EncodedMatrix) -> dict[int, RoomExtent]:
    """Bounding box per room; for a valid grid the box holds exactly the room."""
    out: dict[int, RoomExtent] = {}
    for rid in em.room_ids():
        rs, cs = np.where(em.cells == rid)
        out[rid] = RoomExtent(
            id=rid,
            top=int(rs.min()),
            left=int(cs.min()),
            bottom=int(rs.max()),
            right=int(cs.max()),
        )
    return out


def normalize(em: EncodedMatrix) -> EncodedMatrix:
    """Collapse runs of identical consecutive rows and columns.

    Grid resolution carries no meaning, so this is a pure de-duplication;
    adjacency structure is unchanged.
    """
    cells = em.cells
    keep_rows = [0] + [r for r in range(1, cells.shape[0]) if not np.array_equal(cells[r], cells[r - 1])]
    cells = cells[keep_rows, :]
    keep_cols = [0] + [c for c in range(1, cells.shape[1]) if not np.array_equal(cells[:, c], cells[:, c - 1])]
    cells = cells[:, keep_cols]
    return EncodedMatrix(cells)


# Corner ownership when padding: which boundary rectangle claims each corner
# cell.  Every corner-induced adjacency is incident to a vertex deleted from
# the directed graphs, so the scheme cannot affect downstream results (the
# test suite asserts this by comparing both schemes).
CORNER_SCHEMES = {
    # NW, NE, SE, SW
    "pinwheel": (NORTH, EAST, SOUTH, WEST),
    "counter": (WEST, NORTH, EAST, SOUTH),
}


def pad_boundary(em: EncodedMatrix, corner_scheme: str = "pinwheel") -> PaddedMatrix:
    """Ring the grid with one-cell NORTH/EAST/SOUTH/WEST rectangles."""
    nw, ne, se, sw = CORNER_SCHEMES[corner_scheme]
    r, c = em.rows, em.cols
    padded = np.empty((r + 2, c + 2), dtype=int)
    padded[1 : r + 1, 1 : c + 1] = em.cells
    padded[0, 1 : c + 1] = NORTH
    padded[r + 1, 1 : c + 1] = SOUTH
    padded[1 : r + 1, 0] = WEST
    padded[1 : r + 1, c + 1] = EAST
    padded[0, 0] = nw
    padded[0, c + 1] = ne
    padded[r + 1, c + 1] = se
    padded[r + 1, 0] = sw
    return PaddedMatrix(padded, em)


def oriented_adjacencies(cells: np.ndarray) -> tuple[set[tuple[int, int]], set[tuple[int, int]]]:
    """Split cell adjacencies by direction.

    Returns (horizontal, vertical): horizontal pairs (a, b) have a directly
    left of b somewhere in the grid; vertical pairs (a, b) have a directly
    above b.  Corner-only contact never produces a pair.
    """
    horizontal: set[tuple[int, int]] = set()
    vertical: set[tuple[int, int]] = set()
    left, right = cells[:, :-1], cells[:, 1:]
    for a, b in zip(left[left != right], right[left != right]):
        horizontal.add((int(a), int(b)))
    upper, lower = cells[:-1, :], cells[1:, :]
    for a, b in zip(upper[upper != lower], lower[upper != lower]):
        vertical.add((int(a), int(b)))
    return horizontal, vertical


def adjacency_graph(em: EncodedMatrix) -> dict[int, set[int]]:
    """Undirected room adjacency: edge iff the rooms share a wall section."""
    graph: dict[int, set[int]] = {rid: set() for rid in em.room_ids()}
    horizontal, vertical = oriented_adjacencies(em.cells)
    for a, b in horizontal | vertical:
        graph[a].add(b)
        graph[b].add(a)
    return graph
