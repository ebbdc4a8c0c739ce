"""Deterministic SVG rendering of a placed floorplan.

Coordinates map straight through: plan units times a scale factor, origin at
the top left, y growing downward.  No transforms, so the output can be
diffed byte-for-byte across runs.
"""

from __future__ import annotations

from .floorplan import Floorplan

DEFAULT_SCALE = 10.0

_STYLE = (
    ".envelope { fill: none; stroke: #1a1a1a; stroke-width: 2; }\n"
    "    .room { fill: #f3ede2; stroke: #4a4a4a; stroke-width: 1; }\n"
    "    .label { font: 13px sans-serif; fill: #1a1a1a; "
    "text-anchor: middle; dominant-baseline: middle; }"
)


def _fmt(value: float) -> str:
    """Shortest plain decimal: integers without a dot, no exponent form."""
    if value == int(value) and abs(value) < 2**53:
        return str(int(value))
    return f"{value:.6f}".rstrip("0").rstrip(".")


def emit_svg(fp: Floorplan, labels: bool = True, scale: float = DEFAULT_SCALE) -> str:
    """Render rooms and envelope; label text is "id (w x h)" in plan units."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    pad = scale * 0.5
    width = fp.envelope.w * scale
    height = fp.envelope.h * scale
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(-pad)} {_fmt(-pad)} {_fmt(width + 2 * pad)} {_fmt(height + 2 * pad)}" '
        f'width="{_fmt(width + 2 * pad)}" height="{_fmt(height + 2 * pad)}">',
        f"  <style>{_STYLE}</style>",
        f'  <rect class="envelope" x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}"/>',
    ]
    for rid in sorted(fp.rooms):
        r = fp.rooms[rid]
        lines.append(
            f'  <rect class="room" data-id="{rid}" '
            f'x="{_fmt(r.x * scale)}" y="{_fmt(r.y * scale)}" '
            f'width="{_fmt(r.w * scale)}" height="{_fmt(r.h * scale)}"/>'
        )
    if labels:
        for rid in sorted(fp.rooms):
            r = fp.rooms[rid]
            cx = (r.x + r.w / 2) * scale
            cy = (r.y + r.h / 2) * scale
            lines.append(
                f'  <text class="label" x="{_fmt(cx)}" y="{_fmt(cy)}">'
                f"{rid} ({_fmt(r.w)}&#215;{_fmt(r.h)})</text>"
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
