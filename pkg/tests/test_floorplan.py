"""Placement of solved dimensions and geometric verification."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ragen import random_arrangement, random_constraints
from rectflow.dimension import CONVERGED, DoorSpec, RoomConstraint, dimension
from rectflow.floorplan import (
    Floorplan,
    Rect,
    four_corner_points,
    place_rooms,
    verify_adjacency,
    verify_floorplan,
    verify_tiling,
)
from rectflow.matrix import parse_matrix

PINWHEEL = "1 1 2\n4 5 2\n4 3 3\n"


def _place(text, widths, heights):
    return place_rooms(parse_matrix(text), widths, heights)


class TestPlacement:
    def test_2x2_exact_positions(self):
        fp = _place(
            "1 2\n3 4\n",
            {r: 5.0 for r in range(1, 5)},
            {r: 5.0 for r in range(1, 5)},
        )
        assert fp.rooms[1] == Rect(0.0, 0.0, 5.0, 5.0)
        assert fp.rooms[2] == Rect(5.0, 0.0, 5.0, 5.0)
        assert fp.rooms[3] == Rect(0.0, 5.0, 5.0, 5.0)
        assert fp.rooms[4] == Rect(5.0, 5.0, 5.0, 5.0)
        assert fp.envelope == Rect(0.0, 0.0, 10.0, 10.0)

    def test_pinwheel_hand_dimensions(self):
        widths = {1: 7.0, 2: 3.0, 3: 7.0, 4: 3.0, 5: 4.0}
        heights = {1: 3.5, 2: 5.5, 3: 3.5, 4: 5.5, 5: 2.0}
        fp = _place(PINWHEEL, widths, heights)
        assert fp.rooms[1] == Rect(0.0, 0.0, 7.0, 3.5)
        assert fp.rooms[2] == Rect(7.0, 0.0, 3.0, 5.5)
        assert fp.rooms[4] == Rect(0.0, 3.5, 3.0, 5.5)
        assert fp.rooms[5] == Rect(3.0, 3.5, 4.0, 2.0)
        assert fp.rooms[3] == Rect(3.0, 5.5, 7.0, 3.5)
        assert fp.envelope.w == pytest.approx(10.0)
        assert fp.envelope.h == pytest.approx(9.0)

    def test_row_spanning_room_anchors_left(self):
        fp = _place("1 1\n2 3\n", {1: 6.0, 2: 3.0, 3: 3.0}, {1: 2.0, 2: 2.0, 3: 2.0})
        assert fp.rooms[1].x == 0.0
        assert fp.rooms[3].x == pytest.approx(3.0)


class TestTiling:
    def _grid_fp(self):
        return _place(
            "1 2\n3 4\n",
            {r: 5.0 for r in range(1, 5)},
            {r: 5.0 for r in range(1, 5)},
        )

    def test_valid_plan_passes(self):
        report = verify_tiling(self._grid_fp())
        assert report.tiling_ok
        assert report.messages == []

    def test_overlap_detected(self):
        fp = self._grid_fp()
        fp.rooms[2] = Rect(4.0, 0.0, 6.0, 5.0)  # bleeds into room 1
        report = verify_tiling(fp)
        assert not report.tiling_ok
        assert any("overlap" in m for m in report.messages)

    def test_protrusion_detected(self):
        fp = self._grid_fp()
        fp.rooms[4] = Rect(5.0, 5.0, 6.0, 5.0)  # pokes out of the envelope
        report = verify_tiling(fp)
        assert not report.tiling_ok

    def test_coverage_gap_detected(self):
        fp = self._grid_fp()
        fp.rooms[4] = Rect(5.0, 5.0, 4.0, 4.0)  # leaves uncovered area
        report = verify_tiling(fp)
        assert not report.tiling_ok
        assert any("area" in m for m in report.messages)


class TestAdjacency:
    def test_all_pairs_checked_with_lengths(self):
        fp = _place(
            "1 2\n3 4\n",
            {r: 5.0 for r in range(1, 5)},
            {r: 5.0 for r in range(1, 5)},
        )
        report = verify_adjacency(fp, parse_matrix("1 2\n3 4\n"), DoorSpec())
        assert report.geometry_preserved
        checks = {(c.room_a, c.room_b): c for c in report.adjacency_results}
        assert set(checks) == {(1, 2), (3, 4), (1, 3), (2, 4)}
        assert checks[(1, 2)].shared_length == pytest.approx(5.0)
        assert checks[(1, 2)].orientation == "horizontal"
        assert checks[(1, 3)].orientation == "vertical"

    def test_misalignment_detected(self):
        fp = _place(
            "1 2\n3 4\n",
            {r: 5.0 for r in range(1, 5)},
            {r: 5.0 for r in range(1, 5)},
        )
        fp.rooms[2] = Rect(5.5, 0.0, 4.5, 5.0)  # gap between 1 and 2
        report = verify_adjacency(fp, parse_matrix("1 2\n3 4\n"), DoorSpec())
        assert not report.geometry_preserved
        bad = next(c for c in report.adjacency_results if (c.room_a, c.room_b) == (1, 2))
        assert not bad.aligned

    def test_door_requirement_enforced(self):
        fp = _place(
            "1 2\n3 4\n",
            {r: 5.0 for r in range(1, 5)},
            {r: 5.0 for r in range(1, 5)},
        )
        door = DoorSpec(default_min=1.0, overrides={(1, 2): 6.0})
        report = verify_adjacency(fp, parse_matrix("1 2\n3 4\n"), door)
        assert not report.geometry_preserved
        bad = next(c for c in report.adjacency_results if (c.room_a, c.room_b) == (1, 2))
        assert bad.door_required == 6.0
        assert not bad.ok

    def test_pinwheel_diagonals_not_required(self):
        """Rooms on opposite sides of the centre never share an edge in the
        grid, so no adjacency check is emitted for them."""
        widths = {1: 7.0, 2: 3.0, 3: 7.0, 4: 3.0, 5: 4.0}
        heights = {1: 3.5, 2: 5.5, 3: 3.5, 4: 5.5, 5: 2.0}
        fp = _place(PINWHEEL, widths, heights)
        report = verify_adjacency(fp, parse_matrix(PINWHEEL), DoorSpec())
        assert report.geometry_preserved
        pairs = {(c.room_a, c.room_b) for c in report.adjacency_results}
        assert (1, 3) not in pairs and (3, 1) not in pairs
        assert (2, 4) not in pairs and (4, 2) not in pairs


class TestFourCornerPoints:
    def test_2x2_centre(self):
        fp = _place(
            "1 2\n3 4\n",
            {r: 5.0 for r in range(1, 5)},
            {r: 5.0 for r in range(1, 5)},
        )
        assert four_corner_points(fp) == [(5.0, 5.0)]

    def test_cross_survives_solving(self):
        em = parse_matrix("1 2 5\n3 4 5\n")
        constraints = {
            1: RoomConstraint(4.0),
            2: RoomConstraint(4.0),
            3: RoomConstraint(4.0),
            4: RoomConstraint(4.0),
            5: RoomConstraint(3.0, 1.0, 4.0),
        }
        res = dimension(em, constraints)
        assert res.status == CONVERGED
        fp = place_rooms(em, res.widths, res.heights)
        points = four_corner_points(fp)
        assert len(points) == 1

    def test_pinwheel_has_no_cross(self):
        """Wrap-around arrangements produce T-junctions only: with positive
        door widths each corner room outgrows its neighbour, so four corners
        can never coincide."""
        widths = {1: 7.0, 2: 3.0, 3: 7.0, 4: 3.0, 5: 4.0}
        heights = {1: 3.5, 2: 5.5, 3: 3.5, 4: 5.5, 5: 2.0}
        fp = _place(PINWHEEL, widths, heights)
        assert four_corner_points(fp) == []

    def test_envelope_corners_not_interior(self):
        fp = _place("1\n", {1: 4.0}, {1: 4.0})
        assert four_corner_points(fp) == []


class TestRectAndReport:
    def test_rect_rejects_degenerate_sides(self):
        with pytest.raises(ValueError):
            Rect(0.0, 0.0, 0.0, 1.0)

    def test_floorplan_requires_rooms(self):
        with pytest.raises(ValueError):
            Floorplan({}, Rect(0.0, 0.0, 1.0, 1.0))

    def test_verify_floorplan_merges_both_reports(self):
        em = parse_matrix("1 2\n3 4\n")
        fp = _place("1 2\n3 4\n", {r: 5.0 for r in range(1, 5)}, {r: 5.0 for r in range(1, 5)})
        report = verify_floorplan(fp, em, DoorSpec())
        assert report.ok
        assert report.tiling_ok and report.geometry_preserved


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_random_converged_solves_verify_cleanly(seed):
    rng = random.Random(seed)
    em = random_arrangement(rng, max_rooms=6)
    constraints, door = random_constraints(rng, em)
    res = dimension(em, constraints, door)
    if res.status != CONVERGED:
        return
    fp = place_rooms(em, res.widths, res.heights)
    report = verify_floorplan(fp, em, door)
    assert report.ok, report.messages
    assert fp.envelope.w == pytest.approx(res.width_flow.objective, abs=1e-6)
    assert fp.envelope.h == pytest.approx(res.height_flow.objective, abs=1e-6)
