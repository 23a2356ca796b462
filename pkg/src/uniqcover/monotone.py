"""Monotone families of unit squares and their boundary chains.

A monotone set is a family of unit squares with a common point whose centers,
ordered by strictly increasing x, have non-increasing or non-decreasing y.
The union boundary of such a family splits into two staircase chains joined
at two extreme corners; mapping vertices through the mod-one transformation
sends all four corners of each square to a single torus point, so the two
image chains meet at every square's corner image.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import Instance, Point, SQUARE, UnitSquare, covers, object_anchor

QUADRANTS = ("NE", "NW", "SE", "SW")


@dataclass(frozen=True)
class SlotId:
    grid_point: Point
    quadrant: str


@dataclass(frozen=True)
class MonotoneSet:
    squares: tuple[int, ...]  # ordered by strictly increasing center x
    witness: Point


def _require_squares(inst: Instance) -> None:
    if inst.shape != SQUARE:
        raise ValueError("monotone-set operations are defined for unit squares only")


def _anchors(inst: Instance, squares) -> list[Point]:
    return [inst.objects[i].anchor for i in squares]


def _common_rectangle(anchors: list[Point]):
    """Intersection of the closed squares, or None when empty."""
    x_lo = max(a.x for a in anchors)
    x_hi = min(a.x for a in anchors) + 1
    y_lo = max(a.y for a in anchors)
    y_hi = min(a.y for a in anchors) + 1
    if x_lo > x_hi or y_lo > y_hi:
        return None
    return (x_lo, x_hi, y_lo, y_hi)


def _is_monotone_order(anchors: list[Point]) -> bool:
    """Strictly increasing x plus monotone (non-strict) y, in the given order."""
    for a, b in zip(anchors, anchors[1:]):
        if a.x >= b.x:
            return False
    rising = falling = True
    for a, b in zip(anchors, anchors[1:]):
        if b.y > a.y:
            falling = False
        if b.y < a.y:
            rising = False
    return rising or falling


def is_monotone_set(inst: Instance, squares) -> bool:
    """True iff the squares share a point and satisfy the center-order rule."""
    _require_squares(inst)
    squares = list(squares)
    if not squares:
        return False
    anchors = _anchors(inst, squares)
    anchors.sort(key=lambda a: (a.x, a.y))
    if _common_rectangle(anchors) is None:
        return False
    return _is_monotone_order(anchors)


def make_monotone_set(inst: Instance, squares) -> MonotoneSet:
    """Sort square indices into monotone order and attach a common witness."""
    _require_squares(inst)
    order = sorted(squares, key=lambda i: (inst.objects[i].anchor.x,
                                           inst.objects[i].anchor.y, i))
    anchors = _anchors(inst, order)
    rect = _common_rectangle(anchors)
    if rect is None or not _is_monotone_order(anchors):
        raise ValueError(f"squares {sorted(squares)} do not form a monotone set")
    x_lo, x_hi, y_lo, y_hi = rect
    return MonotoneSet(tuple(order), Point(x_lo, y_lo))


def _dedupe(vertices: list[Point]) -> list[Point]:
    out = [vertices[0]]
    for v in vertices[1:]:
        if v != out[-1]:
            out.append(v)
    return out


def complementary_chains(inst: Instance, ms: MonotoneSet):
    """The two boundary chains of the union, as vertex lists.

    Both chains run between the same two extreme corners: for a family whose
    center y rises with x they go from the lower-left corner of the first
    square to the upper-right corner of the last; for a falling family, from
    the upper-left corner of the first to the lower-right corner of the last.
    The first returned chain is the upper one.
    """
    _require_squares(inst)
    anchors = _anchors(inst, ms.squares)
    if not anchors:
        raise ValueError("empty monotone set")
    t = len(anchors)
    rising = all(anchors[i].y <= anchors[i + 1].y for i in range(t - 1))

    if rising:
        # Upper chain: left edges and top edges; lower: bottom edges and rights.
        upper = [Point(anchors[0].x, anchors[0].y)]
        for i in range(t):
            a = anchors[i]
            upper.append(Point(a.x, a.y + 1))
            if i + 1 < t:
                upper.append(Point(anchors[i + 1].x, a.y + 1))
        upper.append(Point(anchors[-1].x + 1, anchors[-1].y + 1))
        lower = [Point(anchors[0].x, anchors[0].y)]
        for i in range(t):
            a = anchors[i]
            lower.append(Point(a.x + 1, a.y))
            if i + 1 < t:
                lower.append(Point(a.x + 1, anchors[i + 1].y))
        lower.append(Point(anchors[-1].x + 1, anchors[-1].y + 1))
    else:
        # Falling family: upper chain is tops and right edges, lower chain is
        # left edges and bottoms.
        upper = [Point(anchors[0].x, anchors[0].y + 1)]
        for i in range(t):
            a = anchors[i]
            upper.append(Point(a.x + 1, a.y + 1))
            if i + 1 < t:
                upper.append(Point(a.x + 1, anchors[i + 1].y + 1))
        upper.append(Point(anchors[-1].x + 1, anchors[-1].y))
        lower = [Point(anchors[0].x, anchors[0].y + 1)]
        for i in range(t):
            a = anchors[i]
            lower.append(Point(a.x, a.y))
            if i + 1 < t:
                lower.append(Point(anchors[i + 1].x, a.y))
        lower.append(Point(anchors[-1].x + 1, anchors[-1].y))

    return _dedupe(upper), _dedupe(lower)


def chains_mod_one(inst: Instance, ms: MonotoneSet):
    """Vertex images of both complementary chains under the mod-one map.

    Postcondition (checked): the two image chains share their extreme
    vertices, i.e. they connect at corner points.
    """
    from .geometry import mod_one

    upper, lower = complementary_chains(inst, ms)
    upper_img = [mod_one(v) for v in upper]
    lower_img = [mod_one(v) for v in lower]
    if {upper_img[0], upper_img[-1]} != {lower_img[0], lower_img[-1]}:
        raise AssertionError("mod-one chain images do not connect at their corners")
    return upper_img, lower_img


def _quadrant_of(center: Point, grid: Point) -> str:
    """Quadrant of the grid point containing the center; ties prefer NE<NW<SE<SW."""
    dx = center.x - grid.x
    dy = center.y - grid.y
    if dx >= 0 and dy >= 0:
        return "NE"
    if dx <= 0 and dy >= 0:
        return "NW"
    if dx >= 0:
        return "SE"
    return "SW"


def decompose_into_monotone_sets(
    inst: Instance,
    selection,
    k: int,
    origin: Point,
) -> dict[SlotId, list[MonotoneSet]]:
    """Assign each selected square to a slot and split slots into monotone runs.

    The grid has (k+1)^2 lattice points at unit spacing from `origin`. Each
    square goes to the lexicographically smallest lattice point it contains,
    under the quadrant (at that point) holding its center. Slot members are
    then cut into maximal runs with strictly increasing center x and monotone
    center y; every run shares the slot's grid point, so each returned group
    is a monotone set. Redundancy-pruned selections stay within 4(k+1)^2
    groups; larger selections may exceed that (reported, not an error).
    """
    _require_squares(inst)
    lattice = [Point(origin.x + i, origin.y + j)
               for i in range(k + 1) for j in range(k + 1)]
    lattice.sort()

    groups: dict[SlotId, list[int]] = {}
    for idx in sorted(set(selection)):
        sq = inst.objects[idx]
        home = None
        for g in lattice:
            if covers(sq, g):
                home = g
                break
        if home is None:
            raise ValueError(
                f"square {idx} contains no lattice point of the {k}x{k} frame at {origin}")
        center = Point(sq.anchor.x + Fraction(1, 2), sq.anchor.y + Fraction(1, 2))
        slot = SlotId(home, _quadrant_of(center, home))
        groups.setdefault(slot, []).append(idx)

    result: dict[SlotId, list[MonotoneSet]] = {}
    for slot, members in groups.items():
        members.sort(key=lambda i: (inst.objects[i].anchor.x,
                                    inst.objects[i].anchor.y, i))
        runs: list[list[int]] = []
        run: list[int] = []
        direction = 0  # 0 unknown, +1 rising, -1 falling
        for idx in members:
            if not run:
                run = [idx]
                direction = 0
                continue
            prev = inst.objects[run[-1]].anchor
            cur = inst.objects[idx].anchor
            ok = cur.x > prev.x
            step = 0 if cur.y == prev.y else (1 if cur.y > prev.y else -1)
            if ok and (direction == 0 or step == 0 or step == direction):
                run.append(idx)
                if direction == 0:
                    direction = step
            else:
                runs.append(run)
                run = [idx]
                direction = 0
        if run:
            runs.append(run)
        result[slot] = [MonotoneSet(tuple(r), slot.grid_point) for r in runs]
    return result


def count_groups(decomposition: dict[SlotId, list[MonotoneSet]]) -> int:
    return sum(len(v) for v in decomposition.values())
