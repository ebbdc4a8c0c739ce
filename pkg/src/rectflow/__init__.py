"""rectflow: dimensioned rectangular floorplans from room-grid arrangements.

A floorplan request starts as a grid of room ids (every room a solid
rectangle of cells) plus per-room width and aspect-ratio constraints.  The
engine models horizontal and vertical adjacency as directed source/sink
networks whose edge flows are shared wall lengths, minimizes the envelope
with linear programs, and iterates width and height passes until every
aspect ratio lands inside its band.
"""

from .dimension import (
    CONVERGED,
    NON_CONVERGENT,
    DimensionResult,
    DoorSpec,
    InfeasibleError,
    RoomConstraint,
    dimension,
)
from .floorplan import (
    Floorplan,
    Rect,
    VerificationReport,
    four_corner_points,
    place_rooms,
    verify_floorplan,
)
from .lp import LinearProgram, LPOutcome, Row, solve_lp
from .matrix import (
    EncodedMatrix,
    MatrixError,
    PaddedMatrix,
    Violation,
    normalize,
    pad_boundary,
    parse_matrix,
    validate,
)
from .projectio import (
    Project,
    ProjectError,
    SolveOptions,
    SolveResult,
    read_project,
    read_result,
    solve_project,
    write_project,
    write_result,
)
from .render import emit_svg
from .stgraph import StGraph, build_hst, build_vst, prune_sink_edges, topological_order

__version__ = "0.1.0"

__all__ = [
    "CONVERGED",
    "NON_CONVERGENT",
    "DimensionResult",
    "DoorSpec",
    "EncodedMatrix",
    "Floorplan",
    "InfeasibleError",
    "LPOutcome",
    "LinearProgram",
    "MatrixError",
    "PaddedMatrix",
    "Project",
    "ProjectError",
    "Rect",
    "RoomConstraint",
    "Row",
    "SolveOptions",
    "SolveResult",
    "StGraph",
    "VerificationReport",
    "Violation",
    "build_hst",
    "build_vst",
    "dimension",
    "emit_svg",
    "four_corner_points",
    "normalize",
    "pad_boundary",
    "parse_matrix",
    "place_rooms",
    "prune_sink_edges",
    "read_project",
    "read_result",
    "solve_lp",
    "solve_project",
    "topological_order",
    "validate",
    "verify_floorplan",
    "write_project",
    "write_result",
]
