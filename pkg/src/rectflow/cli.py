"""Command-line interface.

Exit codes: 0 success, 1 bad input, 2 infeasible constraints,
3 iteration limit reached without convergence.
"""

from __future__ import annotations

import logging
import os
import sys

import click

from .dimension import CONVERGED, InfeasibleError
from .fixtures import fixture_catalog
from .floorplan import Floorplan
from .matrix import MatrixError, parse_matrix, validate
from .projectio import (
    Project,
    ProjectError,
    canonical_json,
    collect_violations,
    floorplan_from_doc,
    project_to_doc,
    read_project,
    read_result,
    solve_project,
    write_result,
)
from .render import DEFAULT_SCALE, emit_svg
from .stgraph import build_hst, build_vst, prune_sink_edges
from .matrix import pad_boundary

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_NON_CONVERGENT = 3

log = logging.getLogger("rectflow")


def _setup_logging() -> None:
    level = os.environ.get("RECTFP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise click.ClickException(str(exc)) from None


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _fail_input(messages: list[str]) -> None:
    for msg in messages:
        click.echo(msg, err=True)
    sys.exit(EXIT_INPUT)


def _load_project(path: str) -> Project:
    try:
        return read_project(_read_input(path))
    except ProjectError as exc:
        _fail_input(exc.messages)
        raise AssertionError("unreachable")


def _load_grid_or_project(path: str):
    """Accept either a whitespace grid or a project document.

    Returns (matrix, project_or_None).  JSON detection is by first
    non-whitespace character.
    """
    text = _read_input(path)
    if text.lstrip().startswith("{"):
        try:
            project = read_project(text)
        except ProjectError as exc:
            _fail_input(exc.messages)
        return project.matrix, project
    try:
        return parse_matrix(text), None
    except MatrixError as exc:
        _fail_input([str(v) for v in exc.violations])


@click.group()
def main() -> None:
    """Turn a room grid plus dimensional constraints into a floorplan."""
    _setup_logging()


@main.command()
@click.argument("input", default="-")
@click.option("--out", default=None, help="Result JSON path ('-' for stdout, the default).")
@click.option("--svg", "svg_path", default=None, help="Also write an SVG rendering here.")
@click.option("--door", type=float, default=None, help="Override the default door width.")
@click.option("--max-iterations", type=int, default=None, help="Override the iteration cap.")
@click.option("--tol", type=float, default=None, help="Override the numeric tolerance.")
@click.option("--prune/--no-prune", default=None, help="Drop edges entering the sinks before solving.")
@click.option("--labels/--no-labels", default=True, help="Room labels in the SVG output.")
def solve(input, out, svg_path, door, max_iterations, tol, prune, labels):
    """Solve a project document and write the result JSON."""
    project = _load_project(input)
    if door is not None:
        if door <= 0:
            _fail_input(["--door must be positive"])
        project.door.default_min = door
    if max_iterations is not None:
        if max_iterations < 1:
            _fail_input(["--max-iterations must be at least 1"])
        project.options.max_iterations = max_iterations
    if tol is not None:
        if tol <= 0:
            _fail_input(["--tol must be positive"])
        project.options.tol = tol
    if prune is not None:
        project.options.prune_sink_edges = prune

    violations = collect_violations(project.matrix, set(project.constraints))
    if violations:
        _fail_input([str(v) for v in violations])

    try:
        result = solve_project(project)
    except InfeasibleError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_INFEASIBLE)

    _write_output(out, write_result(result))
    if svg_path is not None:
        if result.floorplan is None:
            click.echo("no floorplan to render: solve did not converge", err=True)
        else:
            _write_output(svg_path, emit_svg(result.floorplan, labels=labels))
    if result.status != CONVERGED:
        click.echo(
            f"did not converge within {project.options.max_iterations} iterations", err=True
        )
        sys.exit(EXIT_NON_CONVERGENT)


@main.command("validate")
@click.argument("input", default="-")
def validate_cmd(input):
    """Check a grid (or project) against the arrangement rules."""
    matrix, project = _load_grid_or_project(input)
    keys = set(project.constraints) if project is not None else None
    violations = collect_violations(matrix, keys)
    if violations:
        for v in violations:
            click.echo(str(v))
        sys.exit(EXIT_INPUT)
    click.echo("ok")


@main.command()
@click.argument("input", default="-")
@click.option("--prune/--no-prune", default=False, help="Drop edges entering the sinks.")
def graph(input, prune):
    """Print the horizontal and vertical adjacency networks."""
    matrix, _ = _load_grid_or_project(input)
    violations = validate(matrix)
    if violations:
        _fail_input([str(v) for v in violations])
    pm = pad_boundary(matrix)
    hst = build_hst(pm)
    vst = build_vst(pm)
    if prune:
        hst = prune_sink_edges(hst)
        vst = prune_sink_edges(vst)
    click.echo("# horizontal (source W, sink E)")
    click.echo(hst.dump(), nl=False)
    click.echo("# vertical (source N, sink S)")
    click.echo(vst.dump(), nl=False)


@main.command()
@click.argument("input", default="-")
@click.option("--out", default=None, help="SVG path ('-' for stdout, the default).")
@click.option("--labels/--no-labels", default=True, help="Draw room labels.")
@click.option("--scale", type=float, default=DEFAULT_SCALE, help="Plan units to pixels.")
def svg(input, out, labels, scale):
    """Render a result document to SVG."""
    try:
        doc = read_result(_read_input(input))
    except ProjectError as exc:
        _fail_input(exc.messages)
    if doc.floorplan is None:
        _fail_input(["result has no floorplan (status " + doc.status + ")"])
    fp: Floorplan = floorplan_from_doc(doc.floorplan)
    _write_output(out, emit_svg(fp, labels=labels, scale=scale))


@main.command()
@click.argument("input", default="-")
def trace(input):
    """Show the per-iteration dimensioning log of a result document."""
    try:
        doc = read_result(_read_input(input))
    except ProjectError as exc:
        _fail_input(exc.messages)
    click.echo(f"status: {doc.status}")
    for it in doc.trace.iterations:
        click.echo(f"iteration {it.index}:")
        rooms = sorted(it.widths, key=int)
        click.echo("  room   min_w    width    min_h   height")
        for r in rooms:
            click.echo(
                f"  {r:>4} {it.min_widths[r]:>8.3f} {it.widths[r]:>8.3f}"
                f" {it.min_heights[r]:>8.3f} {it.heights[r]:>8.3f}"
            )
        click.echo(
            f"  envelope: {it.envelope_width:g} x {it.envelope_height:g}"
            + (f"; aspect violators: {', '.join(map(str, it.violators))}" if it.violators else "")
        )


@main.command()
@click.option("--name", default=None, help="Print a single example project by name.")
def examples(name):
    """List the built-in example projects (or print one as JSON)."""
    catalog = fixture_catalog()
    if name is None:
        for fx in catalog:
            click.echo(f"{fx.name}: {fx.description}")
        return
    for fx in catalog:
        if fx.name == name:
            click.echo(canonical_json(project_to_doc(fx.project)), nl=False)
            return
    _fail_input([f"no example named {name!r}"])


if __name__ == "__main__":
    main()
