"""Placement of solved room dimensions and geometric verification.

Rooms are anchored left-to-right in order of first cell occurrence: each
room's x is the right edge of whatever room sits immediately left of its
top-left cell, and its y is the bottom edge of the room immediately above
(0 at the envelope border).  Flow conservation is what makes any single
anchor consistent with all the other neighbors; the verifiers below check
that independently rather than trusting the argument.

Coordinates put the origin at the top-left with y growing downward, the
same convention as the grid's row order and as SVG.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dimension import DoorSpec
from .matrix import EncodedMatrix, oriented_adjacencies, room_extents

GEOMETRY_TOL = 1e-6


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"rectangle sides must be positive, got {self.w} x {self.h}")

    @property
    def right(self) -> float:
        return self.x + self.w

    @property
    def bottom(self) -> float:
        return self.y + self.h

    @property
    def area(self) -> float:
        return self.w * self.h


@dataclass
class Floorplan:
    """Placed rooms plus the envelope that should exactly contain them.

    source_em is the grid the plan was placed from; it is None for plans
    rebuilt from a result document, where the grid is no longer available.
    """

    rooms: dict[int, Rect]
    envelope: Rect
    source_em: EncodedMatrix | None = None

    def __post_init__(self):
        if not self.rooms:
            raise ValueError("floorplan must contain at least one room")


@dataclass
class AdjacencyCheck:
    """Result of checking one grid-adjacent room pair in the placed plan."""

    room_a: int  # left room for horizontal pairs, upper room for vertical
    room_b: int
    orientation: str  # "horizontal" or "vertical"
    shared_length: float
    door_required: float
    aligned: bool  # the shared wall lies on one line, preserving relative position
    ok: bool


@dataclass
class VerificationReport:
    """Partial or combined verification outcome; unset parts stay None."""

    tiling_ok: bool | None = None
    adjacency_results: list[AdjacencyCheck] | None = None
    geometry_preserved: bool | None = None
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if self.tiling_ok is False:
            return False
        if self.geometry_preserved is False:
            return False
        if self.adjacency_results is not None and any(not c.ok for c in self.adjacency_results):
            return False
        return True

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        def pick(a, b):
            return b if a is None else a

        return VerificationReport(
            tiling_ok=pick(self.tiling_ok, other.tiling_ok),
            adjacency_results=pick(self.adjacency_results, other.adjacency_results),
            geometry_preserved=pick(self.geometry_preserved, other.geometry_preserved),
            messages=self.messages + other.messages,
        )


def place_rooms(
    em: EncodedMatrix, widths: dict[int, float], heights: dict[int, float]
) -> Floorplan:
    """Convert solved dimensions into placed rectangles."""
    extents = room_extents(em)
    missing = [r for r in extents if r not in widths or r not in heights]
    if missing:
        raise ValueError(f"no dimensions for rooms {sorted(missing)}")

    placed: dict[int, Rect] = {}
    # First occurrence in a left-to-right column traversal: order by (left, top).
    for rid in sorted(extents, key=lambda r: (extents[r].left, extents[r].top)):
        ext = extents[rid]
        if ext.left == 0:
            x = 0.0
        else:
            left_id = int(em.cells[ext.top, ext.left - 1])
            if left_id not in placed:
                raise RuntimeError(f"room {left_id} not placed before its right neighbor {rid}")
            x = placed[left_id].right
        if ext.top == 0:
            y = 0.0
        else:
            above_id = int(em.cells[ext.top - 1, ext.left])
            if above_id not in placed:
                raise RuntimeError(f"room {above_id} not placed before the room below it ({rid})")
            y = placed[above_id].bottom
        placed[rid] = Rect(x, y, widths[rid], heights[rid])

    env_w = max(r.right for r in placed.values())
    env_h = max(r.bottom for r in placed.values())
    return Floorplan(placed, Rect(0.0, 0.0, env_w, env_h), em)


def verify_tiling(fp: Floorplan, tol: float = GEOMETRY_TOL) -> VerificationReport:
    """Check that the rooms tile the envelope: no overlaps, no protrusions,
    and total room area equal to the envelope area.

    Area comparison scales the tolerance by the envelope's larger side,
    since a length gap of tol along a full side changes area by that much.
    """
    messages: list[str] = []
    items = sorted(fp.rooms.items(), key=lambda kv: (kv[1].x, kv[0]))

    # Sweep rooms in x order; a pair can only overlap while the x-spans do.
    for i, (ida, a) in enumerate(items):
        for idb, b in items[i + 1 :]:
            if b.x >= a.right - tol:
                break
            dx = min(a.right, b.right) - max(a.x, b.x)
            dy = min(a.bottom, b.bottom) - max(a.y, b.y)
            if dx > tol and dy > tol:
                messages.append(f"rooms {ida} and {idb} overlap by {dx:g} x {dy:g}")

    env = fp.envelope
    for rid, r in sorted(fp.rooms.items()):
        if r.x < env.x - tol or r.y < env.y - tol or r.right > env.right + tol or r.bottom > env.bottom + tol:
            messages.append(f"room {rid} protrudes outside the envelope")

    area_sum = sum(r.area for r in fp.rooms.values())
    area_tol = tol * max(1.0, env.w, env.h)
    if abs(area_sum - env.area) > area_tol:
        messages.append(
            f"room areas sum to {area_sum:g} but the envelope area is {env.area:g}"
        )

    return VerificationReport(tiling_ok=not messages, messages=messages)


def verify_adjacency(
    fp: Floorplan,
    em: EncodedMatrix,
    door: DoorSpec,
    tol: float = GEOMETRY_TOL,
) -> VerificationReport:
    """Check every grid adjacency in the placed plan.

    Each grid-adjacent pair must share a wall segment at least the door
    width long, and the pair's relative position must be preserved: for a
    horizontal adjacency the left room's right edge coincides with the
    right room's left edge (vertical analogue for stacked rooms).
    """
    messages: list[str] = []
    checks: list[AdjacencyCheck] = []
    horizontal, vertical = oriented_adjacencies(em.cells)

    for a, b in sorted(horizontal):
        ra, rb = fp.rooms[a], fp.rooms[b]
        aligned = abs(ra.right - rb.x) <= tol
        shared = min(ra.bottom, rb.bottom) - max(ra.y, rb.y)
        checks.append(_check(a, b, "horizontal", shared, door.min_for(a, b), aligned, tol, messages))
    for a, b in sorted(vertical):
        ra, rb = fp.rooms[a], fp.rooms[b]
        aligned = abs(ra.bottom - rb.y) <= tol
        shared = min(ra.right, rb.right) - max(ra.x, rb.x)
        checks.append(_check(a, b, "vertical", shared, door.min_for(a, b), aligned, tol, messages))

    geometry_preserved = all(c.ok for c in checks)
    return VerificationReport(
        adjacency_results=checks,
        geometry_preserved=geometry_preserved,
        messages=messages,
    )


def _check(
    a: int,
    b: int,
    orientation: str,
    shared: float,
    required: float,
    aligned: bool,
    tol: float,
    messages: list[str],
) -> AdjacencyCheck:
    ok = aligned and shared > tol and shared >= required - tol
    if not aligned:
        messages.append(f"rooms {a} and {b}: shared wall is not on one line")
    elif shared <= tol:
        messages.append(f"rooms {a} and {b}: adjacency lost (zero shared wall)")
    elif shared < required - tol:
        messages.append(
            f"rooms {a} and {b}: shared wall {shared:g} is below the door width {required:g}"
        )
    return AdjacencyCheck(a, b, orientation, shared, required, aligned, ok)


def verify_floorplan(
    fp: Floorplan,
    em: EncodedMatrix,
    door: DoorSpec,
    tol: float = GEOMETRY_TOL,
) -> VerificationReport:
    """Full report: tiling plus adjacency."""
    return verify_tiling(fp, tol).merge(verify_adjacency(fp, em, door, tol))


def four_corner_points(fp: Floorplan, tol: float = GEOMETRY_TOL) -> list[tuple[float, float]]:
    """Interior points where corners of exactly four distinct rooms coincide.

    These are the cross junctions: the degenerate meetings that adjacency
    methods restricted to triangulated duals cannot produce.
    """
    clusters: dict[tuple[int, int], list[tuple[float, float, int]]] = {}
    decimals = 6
    for rid, r in fp.rooms.items():
        for x, y in ((r.x, r.y), (r.right, r.y), (r.x, r.bottom), (r.right, r.bottom)):
            key = (int(round(x * 10**decimals)), int(round(y * 10**decimals)))
            clusters.setdefault(key, []).append((x, y, rid))

    env = fp.envelope
    points: list[tuple[float, float]] = []
    for members in clusters.values():
        x, y, _ = members[0]
        interior = tol < x < env.w - tol and tol < y < env.h - tol
        if interior and len(members) == 4 and len({rid for _, _, rid in members}) == 4:
            points.append((x, y))
    return sorted(points)
