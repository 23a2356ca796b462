"""Shared helpers for the test suite: seeded instance families."""

from __future__ import annotations

import random
from fractions import Fraction

from uniqcover import SQUARE, Instance, UnitSquare, pt
from uniqcover.generate import random_instance


def squares_instance(points, anchors, denominator=8) -> Instance:
    return Instance(SQUARE, denominator,
                    [pt(x, y) for x, y in points],
                    [UnitSquare(pt(x, y)) for x, y in anchors])


def random_monotone_instance(rng: random.Random, denominator=64, max_squares=6) -> Instance:
    """Random monotone family: anchors strictly increasing in x within a unit
    window, y monotone within a unit window, so a common point exists."""
    d = denominator
    t = rng.randrange(1, max_squares + 1)
    base_x = rng.randrange(-2 * d, 2 * d)
    base_y = rng.randrange(-2 * d, 2 * d)
    xs = sorted(rng.sample(range(d + 1), t))
    ys = sorted(rng.choices(range(d + 1), k=t))
    if rng.random() < 0.5:
        ys = ys[::-1]
    anchors = [(Fraction(base_x + x, d), Fraction(base_y + y, d))
               for x, y in zip(xs, ys)]
    return squares_instance([], anchors, denominator=d)


def frame_instance(seed: int, width=2, max_m=7, max_n=15, denominator=16) -> Instance:
    """Deterministic feasible instance for the oracle-equivalence suites.

    The nominal (n, m) derive from the seed; layouts that cannot be made
    feasible degrade n deterministically, so every seed yields an instance.
    """
    m = 4 + seed % (max_m - 3)
    n = 1 + (seed * 7) % max_n
    while True:
        try:
            return random_instance(n, m, width=width, seed=seed,
                                   denominator=denominator)
        except ValueError:
            if n <= 1:
                raise
            n = max(1, n // 2)
