"""SVG rendering: determinism, coordinate mapping, labels."""

import re

import pytest

from rectflow.fixtures import fixture_by_name
from rectflow.floorplan import Floorplan, Rect
from rectflow.projectio import solve_project
from rectflow.render import emit_svg


def _plan():
    return Floorplan(
        rooms={1: Rect(0.0, 0.0, 5.0, 5.0), 2: Rect(5.0, 0.0, 5.0, 5.0)},
        envelope=Rect(0.0, 0.0, 10.0, 5.0),
    )


def test_coordinates_scale_through_without_transforms():
    svg = emit_svg(_plan(), labels=False, scale=10.0)
    assert "transform" not in svg
    assert '<rect class="room" data-id="2" x="50" y="0" width="50" height="50"/>' in svg
    assert '<rect class="envelope" x="0" y="0" width="100" height="50"/>' in svg


def test_deterministic_output():
    fp = solve_project(fixture_by_name("palladio9").project).floorplan
    assert emit_svg(fp) == emit_svg(fp)


def test_labels_show_id_and_size():
    svg = emit_svg(_plan(), labels=True)
    assert ">1 (5&#215;5)</text>" in svg
    assert 'x="25" y="25"' in svg  # centred in room 1

    unlabelled = emit_svg(_plan(), labels=False)
    assert "<text" not in unlabelled


def test_fractional_sizes_format_plainly():
    fp = Floorplan(rooms={1: Rect(0.0, 0.0, 2.5, 3.75)}, envelope=Rect(0.0, 0.0, 2.5, 3.75))
    svg = emit_svg(fp, scale=1.0)
    assert 'width="2.5" height="3.75"' in svg
    # numeric attributes stay in plain decimal, never exponent notation
    values = re.findall(r'(?:x|y|width|height)="([^"]+)"', svg)
    assert values and all("e" not in v.lower() for v in values)


def test_scale_must_be_positive():
    with pytest.raises(ValueError):
        emit_svg(_plan(), scale=0.0)


def test_every_room_is_drawn():
    fp = solve_project(fixture_by_name("spiral8").project).floorplan
    svg = emit_svg(fp)
    for rid in range(1, 9):
        assert f'data-id="{rid}"' in svg
