import random
from fractions import Fraction

import pytest

from uniqcover import DISK, SQUARE, Instance, Point, UnitDisk, UnitSquare, brute_force, mod_one, prune_covered_redundant, pt
from uniqcover.generate import random_instance
from uniqcover.monotone import (
    MonotoneSet,
    chains_mod_one,
    complementary_chains,
    count_groups,
    decompose_into_monotone_sets,
    is_monotone_set,
    make_monotone_set,
)


def _squares(anchors, denominator=64):
    return Instance(SQUARE, denominator, [], [UnitSquare(pt(x, y)) for x, y in anchors])


STAIRCASE = [(0, 0), ("1/2", "1/4"), ("7/8", "3/4")]  # rising three-square staircase


def test_is_monotone_single_square():
    inst = _squares([(0, 0)])
    assert is_monotone_set(inst, [0])


def test_is_monotone_staircase():
    inst = _squares(STAIRCASE)
    assert is_monotone_set(inst, [0, 1, 2])


def test_is_monotone_rejects_disjoint():
    inst = _squares([(0, 0), (5, 5)])
    assert not is_monotone_set(inst, [0, 1])


def test_is_monotone_rejects_non_monotone_y():
    inst = _squares([(0, 0), ("1/4", "1/2"), ("1/2", "1/4")])
    assert not is_monotone_set(inst, [0, 1, 2])


def test_is_monotone_requires_squares():
    inst = Instance(DISK, 4, [], [UnitDisk(pt(0, 0))])
    with pytest.raises(ValueError):
        is_monotone_set(inst, [0])


def test_single_square_chains_are_opposite_corner_paths():
    inst = _squares([(0, 0)])
    ms = make_monotone_set(inst, [0])
    upper, lower = complementary_chains(inst, ms)
    assert upper == [pt(0, 0), pt(0, 1), pt(1, 1)]
    assert lower == [pt(0, 0), pt(1, 0), pt(1, 1)]


def test_staircase_chains_have_one_reflex_step_per_pair():
    inst = _squares(STAIRCASE)
    ms = make_monotone_set(inst, [0, 1, 2])
    upper, lower = complementary_chains(inst, ms)
    # Each consecutive pair contributes one step (two vertices) per chain.
    assert len(upper) == 2 + 2 * 3 - 1  # ends + per-square corners, deduped
    assert upper[0] == lower[0] == pt(0, 0)
    assert upper[-1] == lower[-1] == pt(Fraction(15, 8), Fraction(7, 4))


# --- independent rectangle-union boundary oracle -------------------------


def _segments_of_chain(chain):
    return [(a, b) if a <= b else (b, a) for a, b in zip(chain, chain[1:]) if a != b]


def _split_segments(segments, xs, ys):
    """Break axis-aligned segments at the given coordinate sets."""
    out = set()
    xs, ys = sorted(set(xs)), sorted(set(ys))
    for a, b in segments:
        if a.y == b.y:
            cuts = [a.x] + [x for x in xs if a.x < x < b.x] + [b.x]
            for u, v in zip(cuts, cuts[1:]):
                out.add((Point(u, a.y), Point(v, a.y)))
        else:
            cuts = [a.y] + [y for y in ys if a.y < y < b.y] + [b.y]
            for u, v in zip(cuts, cuts[1:]):
                out.add((Point(a.x, u), Point(a.x, v)))
    return out


def _union_boundary_segments(inst, squares):
    """Grid-decomposition union boundary: cell faces between inside and outside."""
    anchors = [inst.objects[i].anchor for i in squares]
    xs = sorted({a.x for a in anchors} | {a.x + 1 for a in anchors})
    ys = sorted({a.y for a in anchors} | {a.y + 1 for a in anchors})

    def inside(cx, cy):
        return any(a.x <= cx <= a.x + 1 and a.y <= cy <= a.y + 1 for a in anchors)

    segments = set()
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            midx = (xs[i] + xs[i + 1]) / 2
            midy = (ys[j] + ys[j + 1]) / 2
            if not inside(midx, midy):
                continue
            # Four faces; a face is boundary if the neighbor cell is outside.
            if i == 0 or not inside((xs[i - 1] + xs[i]) / 2, midy):
                segments.add((Point(xs[i], ys[j]), Point(xs[i], ys[j + 1])))
            if i == len(xs) - 2 or not inside((xs[i + 1] + xs[i + 2]) / 2, midy):
                segments.add((Point(xs[i + 1], ys[j]), Point(xs[i + 1], ys[j + 1])))
            if j == 0 or not inside(midx, (ys[j - 1] + ys[j]) / 2):
                segments.add((Point(xs[i], ys[j]), Point(xs[i + 1], ys[j])))
            if j == len(ys) - 2 or not inside(midx, (ys[j + 1] + ys[j + 2]) / 2):
                segments.add((Point(xs[i], ys[j + 1]), Point(xs[i + 1], ys[j + 1])))
    return segments


def random_monotone_instance(rng, denominator=64, max_squares=6):
    """Random monotone family: anchors strictly increasing in x within a unit
    window, y monotone within a unit window (so a common point exists)."""
    d = denominator
    t = rng.randrange(1, max_squares + 1)
    base_x = rng.randrange(-2 * d, 2 * d)
    base_y = rng.randrange(-2 * d, 2 * d)
    xs = sorted(rng.sample(range(d + 1), t))
    ys = sorted(rng.choices(range(d + 1), k=t))
    if rng.random() < 0.5:
        ys = ys[::-1]
    anchors = [(Fraction(base_x + x, d), Fraction(base_y + y, d)) for x, y in zip(xs, ys)]
    return _squares(anchors, denominator=d)


def test_chains_match_rectangle_union_oracle():
    rng = random.Random(12345)
    for _ in range(120):
        inst = random_monotone_instance(rng)
        squares = list(range(inst.m))
        assert is_monotone_set(inst, squares)
        ms = make_monotone_set(inst, squares)
        upper, lower = complementary_chains(inst, ms)

        chain_segments = _segments_of_chain(upper) + _segments_of_chain(lower)
        oracle_segments = _union_boundary_segments(inst, squares)
        xs = {p.x for seg in oracle_segments for p in seg}
        ys = {p.y for seg in oracle_segments for p in seg}
        got = _split_segments(chain_segments, xs, ys)
        want = _split_segments(oracle_segments, xs, ys)
        assert got == want


def test_mod_one_single_square_corners_collapse():
    inst = _squares([("1/4", "1/4")], denominator=4)
    ms = make_monotone_set(inst, [0])
    upper, lower = chains_mod_one(inst, ms)
    assert upper[0] == upper[-1] == pt("1/4", "1/4")
    assert lower[0] == lower[-1] == pt("1/4", "1/4")


def test_mod_one_staircase_connects_and_passes_all_corners():
    inst = _squares(STAIRCASE, denominator=8)
    ms = make_monotone_set(inst, [0, 1, 2])
    upper, lower = chains_mod_one(inst, ms)
    assert {upper[0], upper[-1]} == {lower[0], lower[-1]}
    for sq in inst.objects:
        corner = mod_one(sq.anchor)
        assert corner in upper and corner in lower


def test_mod_one_chain_endpoints_random():
    rng = random.Random(999)
    for _ in range(150):
        inst = random_monotone_instance(rng)
        ms = make_monotone_set(inst, range(inst.m))
        upper, lower = chains_mod_one(inst, ms)
        assert {upper[0], upper[-1]} == {lower[0], lower[-1]}


def test_decompose_empty_selection():
    inst = _squares([])
    assert decompose_into_monotone_sets(inst, [], 1, pt(0, 0)) == {}


def test_decompose_single_square_k1():
    inst = _squares([("-1/4", "-1/4")], denominator=4)
    decomp = decompose_into_monotone_sets(inst, [0], 1, pt(0, 0))
    assert count_groups(decomp) == 1 <= 4 * (1 + 1) ** 2
    [(slot, groups)] = decomp.items()
    assert slot.grid_point == pt(0, 0)
    assert groups[0].squares == (0,)


def test_decompose_pruned_optima_within_bound():
    checked = 0
    for seed in range(40):
        inst = random_instance(8, 6, width=2, seed=seed, denominator=8)
        res = brute_force(inst)
        pruned = prune_covered_redundant(inst, res.best.selected)
        lo_x = min(p.x for p in inst.points)
        lo_y = min(p.y for p in inst.points)
        decomp = decompose_into_monotone_sets(inst, pruned, 2, Point(lo_x, lo_y))
        assert count_groups(decomp) <= 4 * (2 + 1) ** 2
        for groups in decomp.values():
            for ms in groups:
                assert is_monotone_set(inst, ms.squares)
                assert all(ms.squares.count(i) == 1 for i in ms.squares)
        checked += 1
    assert checked == 40
