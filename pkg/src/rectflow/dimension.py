"""Iterative dimensioning of a rectangular arrangement.

Both directed graphs are treated as flow networks: the flow on an edge is
the length of the wall section shared by its endpoints, so the total flow
into a room vertex is that room's width (vertical network) or height
(horizontal network).  Each network yields a small LP: minimize the summed
source flows (the envelope dimension) subject to per-room conservation,
per-room minimum/maximum inflow, and door-width lower bounds on every edge.

The solve alternates: widths first, minimum heights derived from the lower
aspect-ratio bound, then heights.  Rooms whose solved height/width ratio
exceeds the upper bound get their minimum width raised to height divided by
that bound, and the loop repeats until every ratio is in range or the
iteration cap is hit.  No termination guarantee exists, so the cap converts
a runaway loop into a reportable NON_CONVERGENT status with a full trace.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .lp import EQ, GE, INFEASIBLE, LE, OPTIMAL, LinearProgram, Row, solve_lp
from .matrix import EncodedMatrix, MatrixError, pad_boundary, validate, vertex_label
from .stgraph import StGraph, build_hst, build_vst, prune_sink_edges

CONVERGED = "CONVERGED"
NON_CONVERGENT = "NON_CONVERGENT"

DEFAULT_MAX_ITERATIONS = 50
DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class RoomConstraint:
    """Per-room dimensional requirements.

    Aspect ratio is height divided by width; `ar_min`/`ar_max` bound it.
    Maximum dimensions are optional and unbounded by default.
    """

    min_width: float
    ar_min: float = 0.5
    ar_max: float = 2.0
    max_width: float | None = None
    max_height: float | None = None

    def __post_init__(self):
        if self.min_width <= 0:
            raise ValueError("min_width must be positive")
        if not (0 < self.ar_min <= self.ar_max):
            raise ValueError("aspect ratio bounds must satisfy 0 < ar_min <= ar_max")
        if self.max_width is not None and self.max_width < self.min_width:
            raise ValueError("max_width must be at least min_width")
        if self.max_height is not None and self.max_height <= 0:
            raise ValueError("max_height must be positive")


def _pair_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass
class DoorSpec:
    """Lower bounds on wall-section lengths, so every shared wall fits a door.

    One default applies to every edge, including room-boundary edges (those
    model exterior wall sections); specific unordered pairs may override it.
    """

    default_min: float = 1.0
    overrides: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        if self.default_min <= 0:
            raise ValueError("default door width must be positive")
        normalized = {}
        for (u, v), width in self.overrides.items():
            if width <= 0:
                raise ValueError(f"door width for pair ({u}, {v}) must be positive")
            normalized[_pair_key(u, v)] = float(width)
        self.overrides = normalized

    def min_for(self, u: int, v: int) -> float:
        return self.overrides.get(_pair_key(u, v), self.default_min)


@dataclass
class FlowAssignment:
    """Solved flow network: per-edge flows and the per-room inflow sums."""

    graph: StGraph
    flow: dict[tuple[int, int], float]
    room_dim: dict[int, float]
    objective: float  # envelope dimension = summed source flows

    def conservation_residual(self) -> float:
        """Largest |inflow - outflow| over rooms where conservation applies."""
        worst = 0.0
        for room in self.graph.conservation_rooms():
            inflow = sum(self.flow[e] for e in self.graph.in_edges(room))
            outflow = sum(self.flow[e] for e in self.graph.out_edges(room))
            worst = max(worst, abs(inflow - outflow))
        return worst


@dataclass
class IterationRecord:
    """One pass of the width/height solve, as displayed by trace viewers."""

    index: int  # 1-based
    min_widths: dict[int, float]
    widths: dict[int, float]
    envelope_width: float
    min_heights: dict[int, float]
    heights: dict[int, float]
    envelope_height: float
    violators: list[int]
    updated_min_widths: dict[int, float]


@dataclass
class IterationTrace:
    records: list[IterationRecord] = field(default_factory=list)
    status: str = NON_CONVERGENT

    @property
    def iterations(self) -> int:
        return len(self.records)


@dataclass
class DimensionResult:
    status: str  # CONVERGED or NON_CONVERGENT
    widths: dict[int, float]
    heights: dict[int, float]
    width_flow: FlowAssignment
    height_flow: FlowAssignment
    trace: IterationTrace
    hst: StGraph
    vst: StGraph


class InfeasibleError(Exception):
    """A flow LP admits no solution under the given constraints."""

    def __init__(self, network: str, iteration: int, certificate: float, trace: IterationTrace):
        self.network = network  # "width" or "height"
        self.iteration = iteration
        self.certificate = certificate
        self.trace = trace
        super().__init__(
            f"{network} network infeasible at iteration {iteration} "
            f"(residual {certificate:g})"
        )


def assemble_flow_lp(
    g: StGraph,
    min_dim: dict[int, float],
    max_dim: dict[int, float] | None,
    door: DoorSpec,
) -> LinearProgram:
    """Build the flow LP for one network.

    One variable per edge, bounded below by the applicable door width.  The
    objective sums the source's outgoing flows.  Every room gets a minimum
    inflow row (and a maximum row when requested); rooms with conservation
    asserted get an inflow-equals-outflow row.
    """
    edges = g.sorted_edges()
    index = {e: j for j, e in enumerate(edges)}
    m = len(edges)
    max_dim = max_dim or {}

    missing = [r for r in sorted(g.room_ids) if r not in min_dim]
    if missing:
        raise ValueError(f"no minimum dimension for rooms {missing}")

    objective = np.zeros(m)
    for e in g.out_edges(g.source):
        objective[index[e]] = 1.0

    rows: list[Row] = []
    for room in g.conservation_rooms():
        coeffs = np.zeros(m)
        for e in g.in_edges(room):
            coeffs[index[e]] += 1.0
        for e in g.out_edges(room):
            coeffs[index[e]] -= 1.0
        rows.append(Row(coeffs, EQ, 0.0))
    for room in sorted(g.room_ids):
        coeffs = np.zeros(m)
        for e in g.in_edges(room):
            coeffs[index[e]] = 1.0
        rows.append(Row(coeffs.copy(), GE, min_dim[room]))
        if max_dim.get(room) is not None:
            rows.append(Row(coeffs, LE, max_dim[room]))

    lower = np.array([door.min_for(u, v) for u, v in edges])
    names = [f"{vertex_label(u)}->{vertex_label(v)}" for u, v in edges]
    return LinearProgram(m, objective, rows, lower=lower, var_names=names)


def _solve_network(
    g: StGraph,
    min_dim: dict[int, float],
    max_dim: dict[int, float] | None,
    door: DoorSpec,
) -> FlowAssignment:
    lp = assemble_flow_lp(g, min_dim, max_dim, door)
    outcome = solve_lp(lp)
    if outcome.status == INFEASIBLE:
        raise _NetworkInfeasible(outcome.infeasibility_certificate or 0.0)
    if outcome.status != OPTIMAL:  # pragma: no cover - objective is bounded below
        raise RuntimeError(f"flow LP ended {outcome.status}")
    edges = g.sorted_edges()
    flow = {e: float(outcome.x[j]) for j, e in enumerate(edges)}
    room_dim = {
        room: sum(flow[e] for e in g.in_edges(room)) for room in sorted(g.room_ids)
    }
    return FlowAssignment(g, flow, room_dim, float(outcome.objective_value))


class _NetworkInfeasible(Exception):
    def __init__(self, certificate: float):
        self.certificate = certificate
        super().__init__(f"flow network infeasible (residual {certificate:g})")


def solve_widths(
    vst: StGraph,
    constraints: dict[int, RoomConstraint],
    door: DoorSpec,
    current_min_width: dict[int, float],
) -> FlowAssignment:
    """Solve the vertical network; room_dim holds widths, objective the envelope width."""
    max_dim = {r: c.max_width for r, c in constraints.items()}
    return _solve_network(vst, current_min_width, max_dim, door)


def min_heights(
    widths: dict[int, float], constraints: dict[int, RoomConstraint]
) -> dict[int, float]:
    """Minimum height per room: solved width times the lower aspect-ratio bound."""
    return {r: widths[r] * constraints[r].ar_min for r in widths}


def solve_heights(
    hst: StGraph,
    minimum_heights: dict[int, float],
    door: DoorSpec,
    max_heights: dict[int, float] | None = None,
) -> FlowAssignment:
    """Solve the horizontal network; room_dim holds heights."""
    return _solve_network(hst, minimum_heights, max_heights, door)


def ar_violations(
    widths: dict[int, float],
    heights: dict[int, float],
    constraints: dict[int, RoomConstraint],
    tol: float = DEFAULT_TOL,
) -> set[int]:
    """Rooms whose height/width ratio exceeds the upper bound.

    Ratios below the lower bound cannot occur (the height solve enforces
    height >= width * ar_min); hitting one means the solver is broken.
    """
    violating: set[int] = set()
    for room, w in widths.items():
        h = heights[room]
        c = constraints[room]
        if h < w * c.ar_min - tol * max(1.0, w):
            raise RuntimeError(
                f"room {room} fell below its minimum aspect ratio "
                f"({h:g}/{w:g} < {c.ar_min:g}); solver inconsistency"
            )
        if h / w > c.ar_max + tol:
            violating.add(room)
    return violating


def update_min_widths(
    current_min: dict[int, float],
    solved_heights: dict[int, float],
    constraints: dict[int, RoomConstraint],
    violators: set[int],
) -> dict[int, float]:
    """Raise each violator's minimum width to solved height / ar_max.

    Non-violators keep their current value, and the update is a running
    maximum, so per-room minimum widths never decrease across iterations.
    """
    updated = dict(current_min)
    for room in violators:
        updated[room] = max(updated[room], solved_heights[room] / constraints[room].ar_max)
    return updated


def dimension(
    em: EncodedMatrix,
    constraints: dict[int, RoomConstraint],
    door: DoorSpec | None = None,
    *,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    tol: float = DEFAULT_TOL,
    prune: bool = False,
    corner_scheme: str = "pinwheel",
    deadline: float | None = None,
) -> DimensionResult:
    """Run the full iterative solve for a validated arrangement.

    Returns a CONVERGED result, or a NON_CONVERGENT one carrying the trace
    when the iteration cap (or the optional `deadline`, a time.monotonic()
    timestamp) is reached.  Raises InfeasibleError if either network LP has
    no solution, and MatrixError/ValueError for invalid inputs.
    """
    if max_iterations < 1:
        raise ValueError("max_iterations must be at least 1")
    problems = validate(em)
    if problems:
        raise MatrixError(problems)
    rooms = set(range(1, em.n + 1))
    if set(constraints) != rooms:
        missing = sorted(rooms - set(constraints))
        extra = sorted(set(constraints) - rooms)
        parts = []
        if missing:
            parts.append(f"missing constraints for rooms {missing}")
        if extra:
            parts.append(f"constraints for unknown rooms {extra}")
        raise ValueError("; ".join(parts))
    door = door or DoorSpec()

    pm = pad_boundary(em, corner_scheme)
    hst = build_hst(pm)
    vst = build_vst(pm)
    if prune:
        hst = prune_sink_edges(hst)
        vst = prune_sink_edges(vst)

    current_min = {r: constraints[r].min_width for r in sorted(rooms)}
    max_height = {r: constraints[r].max_height for r in rooms}
    trace = IterationTrace()
    width_flow = height_flow = None

    for iteration in range(1, max_iterations + 1):
        try:
            width_flow = solve_widths(vst, constraints, door, current_min)
        except _NetworkInfeasible as exc:
            raise InfeasibleError("width", iteration, exc.certificate, trace) from None
        widths = width_flow.room_dim
        h_min = min_heights(widths, constraints)
        try:
            height_flow = solve_heights(hst, h_min, door, max_height)
        except _NetworkInfeasible as exc:
            raise InfeasibleError("height", iteration, exc.certificate, trace) from None
        heights = height_flow.room_dim

        violators = ar_violations(widths, heights, constraints, tol)
        updated = update_min_widths(current_min, heights, constraints, violators)
        trace.records.append(
            IterationRecord(
                index=iteration,
                min_widths=dict(current_min),
                widths=dict(widths),
                envelope_width=width_flow.objective,
                min_heights=h_min,
                heights=dict(heights),
                envelope_height=height_flow.objective,
                violators=sorted(violators),
                updated_min_widths=dict(updated),
            )
        )
        if not violators:
            trace.status = CONVERGED
            return DimensionResult(
                CONVERGED, widths, heights, width_flow, height_flow, trace, hst, vst
            )
        current_min = updated
        if deadline is not None and time.monotonic() >= deadline:
            break

    trace.status = NON_CONVERGENT
    return DimensionResult(
        NON_CONVERGENT,
        width_flow.room_dim,
        height_flow.room_dim,
        width_flow,
        height_flow,
        trace,
        hst,
        vst,
    )
