"""Built-in example projects.

Each fixture is a complete, solvable project: grid, constraints, doors,
options.  They back the CLI examples, the service catalog, and the browser
example picker, and the test suite runs every one of them end to end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dimension import DoorSpec, RoomConstraint
from .matrix import parse_matrix
from .projectio import Project, SolveOptions


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    project: Project


def _project(grid: str, constraints: dict[int, RoomConstraint], door: DoorSpec | None = None) -> Project:
    return Project(
        matrix=parse_matrix(grid),
        constraints=constraints,
        door=door if door is not None else DoorSpec(),
        options=SolveOptions(),
    )


def _c(min_width: float, ar_min: float = 0.5, ar_max: float = 2.0, **kw) -> RoomConstraint:
    return RoomConstraint(min_width=min_width, ar_min=ar_min, ar_max=ar_max, **kw)


def fixture_catalog() -> list[Fixture]:
    return [
        Fixture(
            "grid2x2",
            "Four equal rooms in a 2 by 2 grid; squares off to a 10 by 10 envelope.",
            _project(
                "1 2\n3 4\n",
                {i: _c(5.0, 1.0, 2.0) for i in range(1, 5)},
            ),
        ),
        Fixture(
            "pinwheel5",
            "Five rooms wrapped around a centre in a pinwheel; T-junctions only.",
            _project(
                "1 1 2\n4 5 2\n4 3 3\n",
                {
                    1: _c(6.0),
                    2: _c(3.0),
                    3: _c(6.0),
                    4: _c(3.0),
                    5: _c(4.0),
                },
            ),
        ),
        Fixture(
            "cross5",
            "Four rooms meeting at a cross junction beside a full-height hall.",
            _project(
                "1 2 5\n3 4 5\n",
                {
                    1: _c(4.0),
                    2: _c(4.0),
                    3: _c(4.0),
                    4: _c(4.0),
                    5: _c(3.0, 1.0, 4.0),
                },
            ),
        ),
        Fixture(
            "hall6",
            "Six rooms: wide top room, tall flanks, and a central stack.",
            _project(
                "1 2 2\n3 4 5\n3 6 5\n",
                {
                    1: _c(3.0, 0.5, 2.5),
                    2: _c(6.0, 0.5, 2.5),
                    3: _c(3.0, 0.5, 2.5),
                    4: _c(4.0, 0.5, 2.5),
                    5: _c(3.0, 0.5, 2.5),
                    6: _c(4.0, 0.5, 2.5),
                },
            ),
        ),
        Fixture(
            "spiral8",
            "Eight rooms spiralling around a large centre room; the tight "
            "aspect bands make the solver widen three rooms over three passes.",
            _project(
                "1 1 2 3\n4 5 5 3\n4 5 5 6\n7 7 8 6\n",
                {
                    1: _c(5.0, 0.5, 1.0),
                    2: _c(2.0, 0.5, 1.0),
                    3: _c(2.0, 1.0, 2.0),
                    4: _c(2.0, 1.0, 2.0),
                    5: _c(8.0, 1.0, 1.2),
                    6: _c(2.0, 1.0, 2.0),
                    7: _c(5.0, 0.3, 1.0),
                    8: _c(2.0, 0.5, 1.0),
                },
            ),
        ),
        Fixture(
            "palladio9",
            "Nine-room villa plan: central hall, side wings, corner rooms.",
            _project(
                "1 2 2 2 3\n4 5 5 5 6\n4 5 5 5 6\n7 8 8 8 9\n",
                {
                    1: _c(4.0),
                    2: _c(10.0, 0.2, 0.8),
                    3: _c(4.0),
                    4: _c(4.0, 1.0, 3.0),
                    5: _c(12.0, 0.5, 1.0),
                    6: _c(4.0, 1.0, 3.0),
                    7: _c(4.0),
                    8: _c(10.0, 0.2, 0.8),
                    9: _c(4.0),
                },
                DoorSpec(default_min=1.2),
            ),
        ),
    ]


def fixture_by_name(name: str) -> Fixture:
    for fx in fixture_catalog():
        if fx.name == name:
            return fx
    raise KeyError(f"no fixture named {name!r}")
