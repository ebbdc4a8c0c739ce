"""Project and result documents: strict JSON schemas and the solve pipeline.

A project bundles everything a solve needs: the room grid, per-room
constraints, door widths, and options.  The JSON forms defined here are the
single source of truth for the CLI, the HTTP service, and the browser UI.

Canonical form: keys sorted, two-space indent, integral numbers written as
integers, defaults omitted (door when it is just the default width, options
fields equal to their defaults, unset maxima).  Reading and re-writing a
canonical document is byte-stable, and the browser editor reproduces the
same bytes when exporting.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .dimension import (
    CONVERGED,
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOL,
    DimensionResult,
    DoorSpec,
    FlowAssignment,
    IterationTrace,
    RoomConstraint,
    dimension,
)
from .floorplan import Floorplan, Rect, VerificationReport, place_rooms, verify_floorplan
from .matrix import (
    LABEL_TO_BOUNDARY,
    EncodedMatrix,
    Violation,
    validate,
    vertex_label,
    vertex_sort_key,
)


class ProjectError(ValueError):
    """Input document rejected: malformed JSON, schema breach, or id mismatch."""

    def __init__(self, kind: Literal["json", "schema", "ids"], messages: list[str]):
        self.kind = kind
        self.messages = messages
        super().__init__("; ".join(messages))


@dataclass
class SolveOptions:
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    tol: float = DEFAULT_TOL
    prune_sink_edges: bool = False


@dataclass
class Project:
    matrix: EncodedMatrix
    constraints: dict[int, RoomConstraint]
    door: DoorSpec = field(default_factory=DoorSpec)
    options: SolveOptions = field(default_factory=SolveOptions)


@dataclass
class SolveResult:
    status: str  # CONVERGED or NON_CONVERGENT
    floorplan: Floorplan | None
    verification: VerificationReport | None
    dimensions: DimensionResult
    timing_ms: float


# --- wire schema -----------------------------------------------------------

class _Doc(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ConstraintDoc(_Doc):
    min_width: float = Field(gt=0)
    ar_min: float = Field(default=0.5, gt=0)
    ar_max: float = Field(default=2.0, gt=0)
    max_width: float | None = None
    max_height: float | None = None


class DoorOverrideDoc(_Doc):
    rooms: tuple[int | str, int | str]
    min_width: float = Field(gt=0)


class DoorDoc(_Doc):
    default_min: float = Field(default=1.0, gt=0)
    overrides: list[DoorOverrideDoc] = Field(default_factory=list)


class OptionsDoc(_Doc):
    max_iterations: int = Field(default=DEFAULT_MAX_ITERATIONS, ge=1)
    tol: float = Field(default=DEFAULT_TOL, gt=0)
    prune_sink_edges: bool = False


class ProjectDoc(_Doc):
    matrix: list[list[int]]
    constraints: dict[str, ConstraintDoc]
    door: DoorDoc = Field(default_factory=DoorDoc)
    options: OptionsDoc = Field(default_factory=OptionsDoc)


class ValidateRequestDoc(_Doc):
    """Lenient variant for validation: constraints may be absent or partial."""

    matrix: list[list[int]]
    constraints: dict[str, ConstraintDoc] | None = None
    door: DoorDoc = Field(default_factory=DoorDoc)
    options: OptionsDoc = Field(default_factory=OptionsDoc)


def _validation_messages(exc: ValidationError) -> list[str]:
    out = []
    for err in exc.errors():
        path = "$" + "".join(
            f"[{p}]" if isinstance(p, int) else f".{p}" for p in err["loc"]
        )
        out.append(f"{path}: {err['msg']}")
    return out


def _door_vertex(token: int | str, where: str) -> int:
    if isinstance(token, str):
        if token not in LABEL_TO_BOUNDARY:
            raise ProjectError("schema", [f"{where}: unknown boundary label {token!r}"])
        return LABEL_TO_BOUNDARY[token]
    return int(token)


def project_from_dict(data: dict) -> Project:
    """Validate a raw document and build the domain project.

    Raises ProjectError with JSON paths for schema breaches, and with room
    numbers when the constraint table does not match the matrix ids.
    """
    try:
        doc = ProjectDoc.model_validate(data)
    except ValidationError as exc:
        raise ProjectError("schema", _validation_messages(exc)) from None

    matrix = matrix_from_rows(doc.matrix)
    constraints = _constraints_from_doc(doc.constraints, matrix)
    door = _door_from_doc(doc.door)
    options = SolveOptions(
        max_iterations=doc.options.max_iterations,
        tol=doc.options.tol,
        prune_sink_edges=doc.options.prune_sink_edges,
    )
    return Project(matrix, constraints, door, options)


def matrix_from_rows(rows: list[list[int]]) -> EncodedMatrix:
    if not rows or any(not row for row in rows):
        raise ProjectError("schema", ["$.matrix: must be a non-empty grid"])
    widths = {len(row) for row in rows}
    if len(widths) != 1:
        raise ProjectError("schema", ["$.matrix: rows have differing lengths"])
    return EncodedMatrix(rows)


def _constraints_from_doc(
    docs: dict[str, ConstraintDoc], matrix: EncodedMatrix
) -> dict[int, RoomConstraint]:
    constraints: dict[int, RoomConstraint] = {}
    for key, cdoc in docs.items():
        try:
            rid = int(key)
        except ValueError:
            raise ProjectError("schema", [f"$.constraints.{key}: key must be a room id"]) from None
        try:
            constraints[rid] = RoomConstraint(
                min_width=cdoc.min_width,
                ar_min=cdoc.ar_min,
                ar_max=cdoc.ar_max,
                max_width=cdoc.max_width,
                max_height=cdoc.max_height,
            )
        except ValueError as exc:
            raise ProjectError("schema", [f"$.constraints.{key}: {exc}"]) from None

    wanted = set(range(1, matrix.n + 1))
    missing = sorted(wanted - set(constraints))
    extra = sorted(set(constraints) - wanted)
    problems = []
    if missing:
        problems.append(f"missing constraints for rooms {missing}")
    if extra:
        problems.append(f"constraints given for rooms {extra} absent from the matrix")
    if problems:
        raise ProjectError("ids", problems)
    return constraints


def _door_from_doc(doc: DoorDoc) -> DoorSpec:
    overrides: dict[tuple[int, int], float] = {}
    for i, ov in enumerate(doc.overrides):
        a = _door_vertex(ov.rooms[0], f"$.door.overrides[{i}].rooms[0]")
        b = _door_vertex(ov.rooms[1], f"$.door.overrides[{i}].rooms[1]")
        overrides[(a, b)] = ov.min_width
    try:
        return DoorSpec(default_min=doc.default_min, overrides=overrides)
    except ValueError as exc:
        raise ProjectError("schema", [f"$.door: {exc}"]) from None


def read_project(text: str) -> Project:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProjectError("json", [f"malformed JSON: {exc}"]) from None
    if not isinstance(data, dict):
        raise ProjectError("schema", ["$: document must be a JSON object"])
    return project_from_dict(data)


def collect_violations(
    matrix: EncodedMatrix, constraint_ids: set[int] | None
) -> list[Violation]:
    """Matrix rule violations plus constraint/id mismatches, for reporting."""
    violations = validate(matrix)
    if constraint_ids is not None:
        wanted = set(range(1, matrix.n + 1))
        missing = sorted(wanted - constraint_ids)
        extra = sorted(constraint_ids - wanted)
        if missing:
            violations.append(
                Violation("constraint-mismatch", f"missing constraints for rooms {missing}")
            )
        if extra:
            violations.append(
                Violation(
                    "constraint-mismatch",
                    f"constraints given for rooms {extra} absent from the matrix",
                )
            )
    return violations


# --- canonical serialization ----------------------------------------------

def canonicalize(value):
    """Integral floats become ints; containers are rebuilt recursively."""
    if isinstance(value, float):
        if value.is_integer() and abs(value) < 2**53:
            return int(value)
        return value
    if isinstance(value, dict):
        return {k: canonicalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonicalize(v) for v in value]
    return value


def canonical_json(doc) -> str:
    return json.dumps(canonicalize(doc), sort_keys=True, indent=2) + "\n"


def project_to_doc(project: Project) -> dict:
    doc: dict = {
        "matrix": project.matrix.to_lists(),
        "constraints": {},
    }
    for rid in sorted(project.constraints):
        c = project.constraints[rid]
        cdoc: dict = {"min_width": c.min_width, "ar_min": c.ar_min, "ar_max": c.ar_max}
        if c.max_width is not None:
            cdoc["max_width"] = c.max_width
        if c.max_height is not None:
            cdoc["max_height"] = c.max_height
        doc["constraints"][str(rid)] = cdoc

    door = project.door
    if door.default_min != 1.0 or door.overrides:
        ddoc: dict = {"default_min": door.default_min}
        if door.overrides:
            ddoc["overrides"] = [
                {
                    "rooms": [vertex_label(a) if a < 0 else a for a in pair],
                    "min_width": width,
                }
                for pair, width in sorted(
                    door.overrides.items(),
                    key=lambda kv: (vertex_sort_key(kv[0][0]), vertex_sort_key(kv[0][1])),
                )
            ]
        doc["door"] = ddoc

    opts = project.options
    odoc: dict = {}
    if opts.max_iterations != DEFAULT_MAX_ITERATIONS:
        odoc["max_iterations"] = opts.max_iterations
    if opts.tol != DEFAULT_TOL:
        odoc["tol"] = opts.tol
    if opts.prune_sink_edges:
        odoc["prune_sink_edges"] = True
    if odoc:
        doc["options"] = odoc
    return doc


def write_project(project: Project) -> str:
    return canonical_json(project_to_doc(project))


# --- solve pipeline --------------------------------------------------------

def solve_project(project: Project, deadline: float | None = None) -> SolveResult:
    """One code path behind both the CLI and the HTTP service.

    Propagates InfeasibleError; a NON_CONVERGENT run comes back as a result
    whose floorplan and verification are None.
    """
    start = time.perf_counter()
    result = dimension(
        project.matrix,
        project.constraints,
        project.door,
        max_iterations=project.options.max_iterations,
        tol=project.options.tol,
        prune=project.options.prune_sink_edges,
        deadline=deadline,
    )
    if result.status == CONVERGED:
        fp = place_rooms(project.matrix, result.widths, result.heights)
        report = verify_floorplan(fp, project.matrix, project.door, tol=project.options.tol)
    else:
        fp = None
        report = None
    timing_ms = (time.perf_counter() - start) * 1e3
    return SolveResult(result.status, fp, report, result, timing_ms)


# --- result documents ------------------------------------------------------

def _flow_to_doc(fa: FlowAssignment) -> dict:
    return {
        "edges": {
            f"{vertex_label(u)}->{vertex_label(v)}": flow
            for (u, v), flow in sorted(fa.flow.items())
        },
        "room_dim": {str(r): d for r, d in sorted(fa.room_dim.items())},
        "envelope": fa.objective,
        "pruned": fa.graph.pruned,
    }


def trace_to_doc(trace: IterationTrace) -> dict:
    def room_map(d: dict[int, float]) -> dict:
        return {str(r): v for r, v in sorted(d.items())}

    return {
        "status": trace.status,
        "iterations": [
            {
                "index": rec.index,
                "min_widths": room_map(rec.min_widths),
                "widths": room_map(rec.widths),
                "envelope_width": rec.envelope_width,
                "min_heights": room_map(rec.min_heights),
                "heights": room_map(rec.heights),
                "envelope_height": rec.envelope_height,
                "violators": rec.violators,
                "updated_min_widths": room_map(rec.updated_min_widths),
            }
            for rec in trace.records
        ],
    }


def _verification_to_doc(report: VerificationReport) -> dict:
    return {
        "ok": report.ok,
        "tiling_ok": report.tiling_ok,
        "geometry_preserved": report.geometry_preserved,
        "adjacency": [
            {
                "rooms": [c.room_a, c.room_b],
                "orientation": c.orientation,
                "shared_length": c.shared_length,
                "door_required": c.door_required,
                "ok": c.ok,
            }
            for c in (report.adjacency_results or [])
        ],
        "messages": list(report.messages),
    }


def _floorplan_to_doc(fp: Floorplan) -> dict:
    return {
        "envelope": {"w": fp.envelope.w, "h": fp.envelope.h},
        "rooms": [
            {"id": rid, "x": r.x, "y": r.y, "w": r.w, "h": r.h}
            for rid, r in sorted(fp.rooms.items())
        ],
    }


def result_to_doc(result: SolveResult) -> dict:
    return {
        "status": result.status,
        "timing_ms": result.timing_ms,
        "floorplan": _floorplan_to_doc(result.floorplan) if result.floorplan else None,
        "verification": (
            _verification_to_doc(result.verification) if result.verification else None
        ),
        "wall_flows": {
            "width": _flow_to_doc(result.dimensions.width_flow),
            "height": _flow_to_doc(result.dimensions.height_flow),
        },
        "trace": trace_to_doc(result.dimensions.trace),
    }


def write_result(result: SolveResult) -> str:
    return canonical_json(result_to_doc(result))


class RectDoc(_Doc):
    id: int
    x: float
    y: float
    w: float
    h: float


class EnvelopeDoc(_Doc):
    w: float
    h: float


class FloorplanDoc(_Doc):
    envelope: EnvelopeDoc
    rooms: list[RectDoc]


class FlowDoc(_Doc):
    edges: dict[str, float]
    room_dim: dict[str, float]
    envelope: float
    pruned: bool


class WallFlowsDoc(_Doc):
    width: FlowDoc
    height: FlowDoc


class TraceIterationDoc(_Doc):
    index: int
    min_widths: dict[str, float]
    widths: dict[str, float]
    envelope_width: float
    min_heights: dict[str, float]
    heights: dict[str, float]
    envelope_height: float
    violators: list[int]
    updated_min_widths: dict[str, float]


class TraceDoc(_Doc):
    status: str
    iterations: list[TraceIterationDoc]


class AdjacencyCheckDoc(_Doc):
    rooms: tuple[int, int]
    orientation: str
    shared_length: float
    door_required: float
    ok: bool


class VerificationDoc(_Doc):
    ok: bool
    tiling_ok: bool | None
    geometry_preserved: bool | None
    adjacency: list[AdjacencyCheckDoc]
    messages: list[str]


class ResultDoc(_Doc):
    status: str
    timing_ms: float
    floorplan: FloorplanDoc | None
    verification: VerificationDoc | None
    wall_flows: WallFlowsDoc
    trace: TraceDoc


def read_result(text: str) -> ResultDoc:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProjectError("json", [f"malformed JSON: {exc}"]) from None
    try:
        return ResultDoc.model_validate(data)
    except ValidationError as exc:
        raise ProjectError("schema", _validation_messages(exc)) from None


def floorplan_from_doc(doc: FloorplanDoc) -> Floorplan:
    """Rebuild placed geometry from a result document (grid not recoverable)."""
    rooms = {r.id: Rect(r.x, r.y, r.w, r.h) for r in doc.rooms}
    return Floorplan(rooms, Rect(0.0, 0.0, doc.envelope.w, doc.envelope.h))
