"""Deterministic SVG rendering of instances and solutions.

Objects are drawn as outlines (dashed when selected); points are small
circles colored by coverage multiplicity under the given selection:
red for uncovered, green for uniquely covered, orange for multiply covered.
Output is byte-stable for fixed inputs.
"""

from __future__ import annotations

from fractions import Fraction

from .geometry import (
    DISK,
    Instance,
    Solution,
    UnitSquare,
    coverage_multiplicity,
    object_anchor,
)

SCALE = 40  # SVG units per instance unit

COLOR_UNCOVERED = "#d62728"
COLOR_UNIQUE = "#2ca02c"
COLOR_MULTI = "#ff7f0e"
COLOR_SELECTED = "#1f77b4"
COLOR_UNSELECTED = "#bbbbbb"


def _fmt(value: Fraction) -> str:
    return f"{float(value):.3f}"


def render_svg(inst: Instance, solution: Solution | None = None) -> str:
    selected = set(solution.selected) if solution is not None else set()

    xs = [p.x for p in inst.points] + [object_anchor(o).x for o in inst.objects]
    ys = [p.y for p in inst.points] + [object_anchor(o).y for o in inst.objects]
    if xs:
        lo_x, hi_x = min(xs) - 1, max(xs) + 2
        lo_y, hi_y = min(ys) - 1, max(ys) + 2
    else:
        lo_x, hi_x, lo_y, hi_y = (Fraction(0), Fraction(1),
                                  Fraction(0), Fraction(1))
    width = float((hi_x - lo_x) * SCALE)
    height = float((hi_y - lo_y) * SCALE)

    def sx(v):  # instance x -> svg x
        return _fmt((v - lo_x) * SCALE)

    def sy(v):  # instance y -> svg y (flipped)
        return _fmt((hi_y - v) * SCALE)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}">',
        f'<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" fill="white"/>',
    ]

    for i, obj in enumerate(inst.objects):
        stroke = COLOR_SELECTED if i in selected else COLOR_UNSELECTED
        dash = ' stroke-dasharray="6,4"' if i in selected else ""
        a = object_anchor(obj)
        if isinstance(obj, UnitSquare):
            parts.append(
                f'<rect x="{sx(a.x)}" y="{sy(a.y + 1)}" width="{SCALE}" height="{SCALE}" '
                f'fill="none" stroke="{stroke}" stroke-width="2"{dash}/>')
        else:
            parts.append(
                f'<circle cx="{sx(a.x)}" cy="{sy(a.y)}" r="{SCALE}" '
                f'fill="none" stroke="{stroke}" stroke-width="2"{dash}/>')

    for k in range(inst.n):
        mult = coverage_multiplicity(inst, selected, k) if selected else 0
        color = (COLOR_UNCOVERED if mult == 0
                 else COLOR_UNIQUE if mult == 1 else COLOR_MULTI)
        p = inst.points[k]
        parts.append(
            f'<circle cx="{sx(p.x)}" cy="{sy(p.y)}" r="4" fill="{color}"/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
