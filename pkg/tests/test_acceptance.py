"""Acceptance gate: the engine's external guarantees, one test per claim.

Each test prints a single PASS/FAIL line (visible under pytest -s and in
failure output) and asserts the same condition.  Tolerances are part of the
contract and must not be loosened here.
"""

import random
import time

import pytest

from conftest import acceptance_verdicts
from lp_oracle import oracle_solve, random_boxed_lp
from ragen import random_arrangement, random_constraints
from rectflow.dimension import CONVERGED, NON_CONVERGENT, dimension
from rectflow.fixtures import fixture_by_name, fixture_catalog
from rectflow.floorplan import (
    four_corner_points,
    place_rooms,
    verify_adjacency,
    verify_tiling,
)
from rectflow.lp import INFEASIBLE, OPTIMAL, solve_lp
from rectflow.projectio import solve_project

TOL = 1e-6


def _report(name: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}: {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    # The terminal-summary hook repeats collected verdicts after the run.
    acceptance_verdicts.append(line)
    assert ok, line


def _solve_random(seed: int, max_rooms: int = 10):
    rng = random.Random(seed)
    em = random_arrangement(rng, max_rooms=max_rooms)
    constraints, door = random_constraints(rng, em)
    return em, constraints, door, dimension(em, constraints, door)


def test_end_to_end_invariants():
    """Fixtures plus 200 random arrangements (n <= 10, guillotine slicing
    with wrap-around carves): every run converges or reports NON_CONVERGENT,
    and every converged plan passes tiling, adjacency, minimum width,
    aspect band, and door-bound checks at tol 1e-6."""
    failures = []
    runs = []
    for fx in fixture_catalog():
        p = fx.project
        runs.append((fx.name, p.matrix, p.constraints, p.door,
                     dimension(p.matrix, p.constraints, p.door)))
    for seed in range(200):
        em, constraints, door, res = _solve_random(1000 + seed)
        runs.append((f"seed{seed}", em, constraints, door, res))

    converged = 0
    for name, em, constraints, door, res in runs:
        if res.status not in (CONVERGED, NON_CONVERGENT):
            failures.append(f"{name}: unknown status {res.status}")
            continue
        if res.status != CONVERGED:
            continue
        converged += 1
        fp = place_rooms(em, res.widths, res.heights)
        tiling = verify_tiling(fp, tol=TOL)
        if not tiling.tiling_ok:
            failures.append(f"{name}: tiling {tiling.messages}")
        adjacency = verify_adjacency(fp, em, door, tol=TOL)
        if not adjacency.geometry_preserved:
            failures.append(f"{name}: adjacency {adjacency.messages}")
        for r in range(1, em.n + 1):
            c = constraints[r]
            w, h = res.widths[r], res.heights[r]
            if w < c.min_width - TOL:
                failures.append(f"{name}: room {r} width {w} < {c.min_width}")
            ratio = h / w
            if not (c.ar_min - TOL <= ratio <= c.ar_max + TOL):
                failures.append(f"{name}: room {r} aspect {ratio} outside band")
        for fa in (res.width_flow, res.height_flow):
            for edge, value in fa.flow.items():
                if value < door.min_for(*edge) - TOL:
                    failures.append(f"{name}: edge {edge} flow {value} below door")
    _report(
        "end-to-end invariants on fixtures + 200 random arrangements",
        not failures,
        f"{converged}/{len(runs)} converged, {len(failures)} failures"
        + (f"; first: {failures[0]}" if failures else ""),
    )


def test_2x2_oracle():
    """Hand-solved flow LPs: the 2x2 grid with minimum widths 5, aspect band
    [1, 2], door 1 dimensions to a 10 x 10 envelope of 5 x 5 rooms."""
    res = solve_project(fixture_by_name("grid2x2").project)
    fp = res.floorplan
    ok = (
        res.status == CONVERGED
        and abs(fp.envelope.w - 10.0) <= TOL
        and abs(fp.envelope.h - 10.0) <= TOL
        and all(
            abs(r.w - 5.0) <= TOL and abs(r.h - 5.0) <= TOL for r in fp.rooms.values()
        )
    )
    _report("2x2 grid dimensions match the hand-solved LP", ok,
            f"envelope {fp.envelope.w:g} x {fp.envelope.h:g}")


def test_lp_brute_force_agreement():
    """500 random bounded-feasible LPs (<= 4 vars, <= 6 rows, integer data
    in [-5, 5]): simplex objective matches exhaustive vertex enumeration
    within 1e-6, with no disagreement allowed."""
    rng = random.Random(522024)
    feasible = 0
    mismatches = []
    while feasible < 500:
        lp = random_boxed_lp(rng)
        status, objective = oracle_solve(lp)
        out = solve_lp(lp)
        if status == "INFEASIBLE":
            if out.status != INFEASIBLE:
                mismatches.append(f"oracle infeasible, solver {out.status}")
            continue
        feasible += 1
        if out.status != OPTIMAL:
            mismatches.append(f"oracle optimal {objective}, solver {out.status}")
        elif abs(out.objective_value - objective) > TOL:
            mismatches.append(
                f"objective {out.objective_value} vs oracle {objective}"
            )
    _report(
        "simplex agrees with brute-force enumeration on 500 feasible LPs",
        not mismatches,
        f"{len(mismatches)} mismatches" + (f"; first: {mismatches[0]}" if mismatches else ""),
    )


def test_conservation_and_envelope_identities():
    """Every converged solve balances inflow and outflow at each room
    (|in - out| <= 1e-6) and the summed source flows equal the envelope
    dimension in both networks."""
    bad = []
    solves = [
        (fx.name, dimension(fx.project.matrix, fx.project.constraints, fx.project.door))
        for fx in fixture_catalog()
    ]
    for seed in range(60):
        _, _, _, res = _solve_random(7000 + seed)
        solves.append((f"seed{seed}", res))
    checked = 0
    for name, res in solves:
        if res.status != CONVERGED:
            continue
        checked += 1
        for fa in (res.width_flow, res.height_flow):
            residual = fa.conservation_residual()
            if residual > TOL:
                bad.append(f"{name}: residual {residual}")
            source_total = sum(fa.flow[e] for e in fa.graph.out_edges(fa.graph.source))
            if abs(source_total - fa.objective) > TOL:
                bad.append(f"{name}: source sum {source_total} != envelope {fa.objective}")
    _report(
        "flow conservation and envelope identity on all converged solves",
        not bad,
        f"{checked} solves checked" + (f"; first: {bad[0]}" if bad else ""),
    )


def test_prune_equivalence():
    """Dropping the edges that enter a sink changes neither room widths nor
    room heights (within 1e-6) on any fixture."""
    worst = 0.0
    bad = []
    for fx in fixture_catalog():
        p = fx.project
        plain = dimension(p.matrix, p.constraints, p.door, prune=False)
        pruned = dimension(p.matrix, p.constraints, p.door, prune=True)
        if plain.status != pruned.status:
            bad.append(f"{fx.name}: status {plain.status} vs {pruned.status}")
            continue
        for r in range(1, p.matrix.n + 1):
            dw = abs(plain.widths[r] - pruned.widths[r])
            dh = abs(plain.heights[r] - pruned.heights[r])
            worst = max(worst, dw, dh)
            if dw > TOL or dh > TOL:
                bad.append(f"{fx.name}: room {r} differs by {max(dw, dh)}")
    _report("sink-edge pruning leaves all room dimensions unchanged",
            not bad, f"worst delta {worst:.2e}")


def test_four_rooms_at_a_point():
    """Arrangements where four rooms meet at a cross keep that cross in the
    placed output: conservation pins the two rooms of each column (or row)
    to equal dimensions, so the four corners stay coincident.  The
    wrap-around five-room fixture is the counterpoint: its junctions are
    all T-shaped, so it must place with no four-corner point while still
    passing every geometric check."""
    bad = []
    for name in ("grid2x2", "cross5", "hall6", "palladio9"):
        res = solve_project(fixture_by_name(name).project)
        points = [
            p for p in four_corner_points(res.floorplan)
        ]
        if not points:
            bad.append(f"{name}: no interior point with exactly 4 room corners")
        if not res.verification.ok:
            bad.append(f"{name}: verification failed")
    pin = solve_project(fixture_by_name("pinwheel5").project)
    if four_corner_points(pin.floorplan):
        bad.append("pinwheel5: unexpected four-corner point")
    if not pin.verification.ok:
        bad.append("pinwheel5: verification failed")
    _report(
        "four-rooms-at-a-point survives solving; wrap-around stays T-only",
        not bad,
        "; ".join(bad) if bad else "4 cross fixtures + pinwheel checked",
    )


def test_performance():
    """The 8-room fixture solves end to end in under a second, and random
    10-room instances average under a second each."""
    fx = fixture_by_name("spiral8")
    start = time.perf_counter()
    res = solve_project(fx.project)
    eight_room_s = time.perf_counter() - start
    assert res.status == CONVERGED

    total = 0.0
    count = 20
    for seed in range(count):
        rng = random.Random(3000 + seed)
        em = random_arrangement(rng, max_rooms=10)
        constraints, door = random_constraints(rng, em)
        start = time.perf_counter()
        dimension(em, constraints, door)
        total += time.perf_counter() - start
    average_s = total / count
    ok = eight_room_s < 1.0 and average_s < 1.0
    _report(
        "performance: 8-room < 1 s, random 10-room average < 1 s",
        ok,
        f"8-room {eight_room_s * 1e3:.1f} ms, average {average_s * 1e3:.1f} ms",
    )


def test_monotone_envelope():
    """Minimum widths only ever ratchet upward between passes, so the width
    network's objective is non-decreasing across every trace (tol 1e-9)."""
    traces = []
    for fx in fixture_catalog():
        p = fx.project
        traces.append((fx.name, dimension(p.matrix, p.constraints, p.door).trace))
    for seed in range(60):
        _, _, _, res = _solve_random(5000 + seed)
        traces.append((f"seed{seed}", res.trace))
    bad = []
    multi = 0
    for name, trace in traces:
        widths = [rec.envelope_width for rec in trace.records]
        if len(widths) > 1:
            multi += 1
        for earlier, later in zip(widths, widths[1:]):
            if later < earlier - 1e-9:
                bad.append(f"{name}: {earlier} -> {later}")
    _report(
        "envelope width is non-decreasing across iterations",
        not bad,
        f"{multi} multi-pass traces" + (f"; first: {bad[0]}" if bad else ""),
    )
