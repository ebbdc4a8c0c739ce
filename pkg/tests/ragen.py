"""Random arrangement generator for property and acceptance tests.

Recursive guillotine slicing with a room budget; regions at least 3x3 may
instead be carved into the five-piece wrap-around pattern (whose pieces are
then sliced further if budget remains).  Ids are renumbered by first
occurrence in row-major order, so every output passes validation by
construction.  Independent of the engine's graph and solver code.
"""

from __future__ import annotations

import random

import numpy as np

from rectflow.dimension import DoorSpec, RoomConstraint
from rectflow.matrix import EncodedMatrix


def random_arrangement(rng: random.Random, max_rooms: int = 10) -> EncodedMatrix:
    rows = rng.randint(2, 7)
    cols = rng.randint(2, 7)
    budget = rng.randint(1, max_rooms)
    grid = np.zeros((rows, cols), dtype=int)
    counter = [0]

    def room(r0, r1, c0, c1):
        counter[0] += 1
        grid[r0:r1, c0:c1] = counter[0]

    def fill(r0, r1, c0, c1, budget):
        h, w = r1 - r0, c1 - c0
        if budget >= 5 and h >= 3 and w >= 3 and rng.random() < 0.4:
            carve(r0, r1, c0, c1, budget)
            return
        directions = []
        if budget >= 2 and h >= 2:
            directions.append("h")
        if budget >= 2 and w >= 2:
            directions.append("v")
        if not directions:
            room(r0, r1, c0, c1)
            return
        if rng.choice(directions) == "h":
            cut = rng.randint(r0 + 1, r1 - 1)
            b1 = _share(budget, (cut - r0) / h, rng)
            fill(r0, cut, c0, c1, b1)
            fill(cut, r1, c0, c1, budget - b1)
        else:
            cut = rng.randint(c0 + 1, c1 - 1)
            b1 = _share(budget, (cut - c0) / w, rng)
            fill(r0, r1, c0, cut, b1)
            fill(r0, r1, cut, c1, budget - b1)

    def carve(r0, r1, c0, c1, budget):
        """Five rectangles wrapped around a centre cell block (T-junctions only)."""
        rc1 = rng.randint(r0 + 1, r1 - 2)
        rc2 = rng.randint(rc1 + 1, r1 - 1)
        cc1 = rng.randint(c0 + 1, c1 - 2)
        cc2 = rng.randint(cc1 + 1, c1 - 1)
        pieces = [
            (r0, rc1, c0, cc2),  # top strip
            (r0, rc2, cc2, c1),  # right strip
            (rc2, r1, cc1, c1),  # bottom strip
            (rc1, r1, c0, cc1),  # left strip
            (rc1, rc2, cc1, cc2),  # centre
        ]
        shares = _split_budget(budget, 5, rng)
        for (pr0, pr1, pc0, pc1), share in zip(pieces, shares):
            fill(pr0, pr1, pc0, pc1, share)

    fill(0, rows, 0, cols, budget)
    return EncodedMatrix(_renumber(grid))


def _share(budget: int, frac: float, rng: random.Random) -> int:
    jitter = rng.uniform(-0.15, 0.15)
    return min(max(1, round(budget * (frac + jitter))), budget - 1)


def _split_budget(budget: int, parts: int, rng: random.Random) -> list[int]:
    shares = [1] * parts
    for _ in range(budget - parts):
        shares[rng.randrange(parts)] += 1
    return shares


def _renumber(grid: np.ndarray) -> list[list[int]]:
    mapping: dict[int, int] = {}
    out = []
    for row in grid:
        new_row = []
        for v in row:
            v = int(v)
            if v not in mapping:
                mapping[v] = len(mapping) + 1
            new_row.append(mapping[v])
        out.append(new_row)
    return out


def random_constraints(
    rng: random.Random, em: EncodedMatrix
) -> tuple[dict[int, RoomConstraint], DoorSpec]:
    """Constraints with no maximum bounds, so a feasible scale-up always exists."""
    constraints = {}
    for rid in range(1, em.n + 1):
        ar_min = rng.uniform(0.2, 1.0)
        ar_max = ar_min + rng.uniform(0.3, 3.0)
        constraints[rid] = RoomConstraint(
            min_width=rng.uniform(1.0, 8.0),
            ar_min=ar_min,
            ar_max=ar_max,
        )
    door = DoorSpec(default_min=rng.choice([0.5, 1.0, 1.0, 2.0]))
    return constraints, door
