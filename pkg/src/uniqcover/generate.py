"""Seeded random instance generation.

All randomness is integer-valued and drawn from one `random.Random` seeded
per call, so generated instances are bit-identical across runs and platforms.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .geometry import DISK, SQUARE, Instance, Point, UnitDisk, UnitSquare, covers


def _guardian_anchor(rng: random.Random, p: Point, d: int, shape: str) -> Point:
    """Random anchor for an object guaranteed to cover point p."""
    if shape == SQUARE:
        ax = int(p.x * d) - rng.randrange(d + 1)
        ay = int(p.y * d) - rng.randrange(d + 1)
    else:
        # Offsets of at most 1/2 per axis keep the center within distance 1.
        half = d // 2
        ax = int(p.x * d) + rng.randrange(-half, half + 1)
        ay = int(p.y * d) + rng.randrange(-half, half + 1)
    return Point(Fraction(ax, d), Fraction(ay, d))


def random_instance(
    n: int,
    m: int,
    width: Fraction | int = 4,
    seed: int | str = 0,
    shape: str = SQUARE,
    denominator: int = 32,
    ensure_feasible: bool = True,
) -> Instance:
    """Random instance with points uniform on a width-by-width frame.

    With `ensure_feasible` (the default) the tail of the object list is
    re-anchored onto points that would otherwise stay uncovered, one guardian
    object per point; layouts that would need more guardians than objects are
    redrawn with a derived seed, so output is still a pure function of the
    arguments.
    """
    if ensure_feasible and n > 0 and m == 0:
        raise ValueError("cannot make a feasible instance with n > 0 and m = 0")
    d = denominator
    w = int(Fraction(width) * d)
    make = UnitSquare if shape == SQUARE else UnitDisk

    for attempt in range(64):
        rng = random.Random(f"gen:{seed}:{attempt}")
        points = [Point(Fraction(rng.randrange(w + 1), d), Fraction(rng.randrange(w + 1), d))
                  for _ in range(n)]
        # Anchors may stick out one unit below/left so frame edges are coverable.
        objects = [make(Point(Fraction(rng.randrange(-d, w + 1), d),
                              Fraction(rng.randrange(-d, w + 1), d)))
                   for _ in range(m)]
        if not ensure_feasible or n == 0:
            return Instance(shape, d, points, objects)

        # Guardian repair: while some point is uncovered, re-anchor the next
        # tail slot onto the first such point (each slot is rewritten at most
        # once, walking from the end). A rewrite may momentarily uncover other
        # points; they get their own guardian later if slots remain.
        slot = m - 1
        while slot >= 0:
            uncovered = [k for k, p in enumerate(points)
                         if not any(covers(o, p) for o in objects)]
            if not uncovered:
                break
            objects[slot] = make(_guardian_anchor(rng, points[uncovered[0]], d, shape))
            slot -= 1
        if any(not any(covers(o, p) for o in objects) for p in points):
            continue  # layout unrepairable this attempt; redraw
        return Instance(shape, d, points, objects)
    raise ValueError(f"could not build a feasible instance for n={n}, m={m}, width={width}")
