"""Directed source/sink adjacency graphs extracted from a padded grid.

Two graphs are read straight off the padded matrix: the horizontal one by
scanning rows left to right (source WEST, sink EAST), the vertical one by
scanning columns top to bottom (source NORTH, sink SOUTH).  Each scan emits
an edge for every distinct consecutive cell pair, then drops the two cross
boundary vertices, leaving n room vertices plus source and sink.

Edges follow scan order, so both graphs are acyclic and every room lies on
a source-to-sink path.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .matrix import (
    EAST,
    NORTH,
    SOUTH,
    WEST,
    PaddedMatrix,
    vertex_label,
    vertex_sort_key,
)

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass(frozen=True)
class StGraph:
    """Directed acyclic graph with one source and one sink.

    `pruned` marks that edges entering the sink were dropped, in which case
    flow conservation must not be asserted at rooms that lost their only
    outgoing edges.
    """

    orientation: str  # HORIZONTAL or VERTICAL
    edges: frozenset[tuple[int, int]]
    source: int
    sink: int
    room_ids: frozenset[int]
    pruned: bool = False

    @property
    def vertices(self) -> frozenset[int]:
        return self.room_ids | {self.source, self.sink}

    def in_edges(self, v: int) -> list[tuple[int, int]]:
        return sorted((e for e in self.edges if e[1] == v), key=_edge_key)

    def out_edges(self, v: int) -> list[tuple[int, int]]:
        return sorted((e for e in self.edges if e[0] == v), key=_edge_key)

    def conservation_rooms(self) -> list[int]:
        """Rooms where inflow must equal outflow.

        All rooms in the unpruned graph; after pruning, only rooms that
        still have outgoing edges.
        """
        rooms = sorted(self.room_ids)
        if not self.pruned:
            return rooms
        return [r for r in rooms if self.out_edges(r)]

    def sorted_edges(self) -> list[tuple[int, int]]:
        """Canonical edge order shared by the LP assembly and text dumps."""
        return sorted(self.edges, key=_edge_key)

    def dump(self) -> str:
        """One `u -> v` line per edge, canonical order."""
        return "\n".join(f"{vertex_label(u)} -> {vertex_label(v)}" for u, v in self.sorted_edges()) + "\n"


def _edge_key(edge: tuple[int, int]):
    u, v = edge
    return (vertex_sort_key(u), vertex_sort_key(v))


def _scan_edges(lines) -> set[tuple[int, int]]:
    edges: set[tuple[int, int]] = set()
    for line in lines:
        for a, b in zip(line[:-1], line[1:]):
            if a != b:
                edges.add((int(a), int(b)))
    return edges


def build_hst(pm: PaddedMatrix) -> StGraph:
    """Horizontal graph: row scans, then NORTH and SOUTH deleted."""
    edges = _scan_edges(pm.cells)
    edges = {(u, v) for u, v in edges if NORTH not in (u, v) and SOUTH not in (u, v)}
    rooms = frozenset(int(v) for v in np.unique(pm.interior))
    return StGraph(HORIZONTAL, frozenset(edges), source=WEST, sink=EAST, room_ids=rooms)


def build_vst(pm: PaddedMatrix) -> StGraph:
    """Vertical graph: column scans, then WEST and EAST deleted."""
    edges = _scan_edges(pm.cells.T)
    edges = {(u, v) for u, v in edges if WEST not in (u, v) and EAST not in (u, v)}
    rooms = frozenset(int(v) for v in np.unique(pm.interior))
    return StGraph(VERTICAL, frozenset(edges), source=NORTH, sink=SOUTH, room_ids=rooms)


def prune_sink_edges(g: StGraph) -> StGraph:
    """Drop all edges entering the sink; idempotent.

    The sink edges are redundant: each carries exactly the inflow of its
    tail room, so the remaining constraints determine the same room
    dimensions (asserted per fixture by the dimensioning tests).
    """
    if g.pruned:
        return g
    kept = frozenset(e for e in g.edges if e[1] != g.sink)
    return replace(g, edges=kept, pruned=True)


def topological_order(g: StGraph) -> list[int]:
    """Kahn's algorithm; raises ValueError if a cycle exists."""
    indeg: dict[int, int] = {v: 0 for v in g.vertices}
    for _, v in g.edges:
        indeg[v] += 1
    ready = sorted((v for v, d in indeg.items() if d == 0), key=vertex_sort_key)
    order: list[int] = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for _, w in g.out_edges(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort(key=vertex_sort_key)
    if len(order) != len(indeg):
        raise ValueError("directed graph contains a cycle")
    return order
