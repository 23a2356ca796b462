"""Shifting-strategy approximation for unique set cover on unit squares.

For each of the k*k grid offsets, the plane is partitioned into k-by-k cells;
each cell's subproblem (its points, plus every square intersecting the cell)
is solved exactly by the sweep solver, the per-cell selections are unioned,
redundant squares are pruned, and the union is re-evaluated on the full
instance. The best offset wins. The final evaluation on the whole instance
is authoritative: cross-cell overlap may demote boundary points from unique
to multiply covered, and per-cell objective values are never summed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .dp import DPStats, solve_restricted
from .errors import InfeasibleError
from .geometry import Instance, Point, SQUARE, Solution, evaluate, prune_covered_redundant


@dataclass(frozen=True)
class ShiftConfig:
    """Approximation parameter and the derived grid geometry."""

    epsilon: Fraction
    k: int
    offsets: tuple[tuple[int, int], ...]

    @classmethod
    def for_epsilon(cls, epsilon, k_override: int | None = None) -> "ShiftConfig":
        eps = Fraction(epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        k = k_override if k_override is not None else max(1, math.ceil(Fraction(2) / eps))
        offsets = tuple((a, b) for a in range(k) for b in range(k))
        return cls(eps, k, offsets)


@dataclass
class PtasStats:
    offsets: int = 0
    cells: int = 0
    dp: DPStats = field(default_factory=DPStats)


def cell_subproblem(inst: Instance, cell_origin: Point, k: int):
    """Sub-instance for one k-by-k cell.

    Points on the left/bottom edges belong to the cell, points on the
    right/top edges do not, so shifted cells partition the point set.
    Squares are included whenever their closed region intersects the closed
    cell. Returns (sub_instance, point_indices, object_indices).
    """
    x0, y0 = cell_origin
    x1, y1 = x0 + k, y0 + k
    point_idx = [i for i, p in enumerate(inst.points)
                 if x0 <= p.x < x1 and y0 <= p.y < y1]
    obj_idx = []
    for j, obj in enumerate(inst.objects):
        a = obj.anchor
        if a.x <= x1 and a.x + 1 >= x0 and a.y <= y1 and a.y + 1 >= y0:
            obj_idx.append(j)
    sub = Instance(
        inst.shape,
        inst.denominator,
        [inst.points[i] for i in point_idx],
        [inst.objects[j] for j in obj_idx],
    )
    return sub, point_idx, obj_idx


def _cells_for_offset(inst: Instance, k: int, offset: tuple[int, int]):
    """Origins of the offset grid cells that contain at least one point."""
    a, b = offset
    seen = {}
    for p in inst.points:
        ix = (p.x - a) // k
        iy = (p.y - b) // k
        seen[(ix, iy)] = None
    return [Point(Fraction(a + ix * k), Fraction(b + iy * k)) for ix, iy in seen]


def ptas(
    inst: Instance,
    epsilon,
    k_override: int | None = None,
    state_cap: int = 10_000_000,
    stats_out: PtasStats | None = None,
) -> Solution:
    """Shifting-strategy approximation; feasible whenever the instance is.

    Raises InfeasibleError when some point is covered by no square (cell
    subproblems see every square that could cover their points, so this is
    offset-independent).
    """
    if inst.shape != SQUARE:
        raise ValueError("the shifting strategy is implemented for unit squares")
    config = ShiftConfig.for_epsilon(epsilon, k_override)
    stats = stats_out if stats_out is not None else PtasStats()

    best: Solution | None = None
    best_offset = None
    for offset in config.offsets:
        stats.offsets += 1
        union: set[int] = set()
        for origin in _cells_for_offset(inst, config.k, offset):
            stats.cells += 1
            sub, point_idx, obj_idx = cell_subproblem(inst, origin, config.k)
            cell_sol = solve_restricted(sub, config.k, origin=origin,
                                        state_cap=state_cap, stats_out=stats.dp)
            union.update(obj_idx[j] for j in cell_sol.selected)
        pruned = prune_covered_redundant(inst, union)
        candidate = evaluate(inst, pruned)
        assert candidate.feasible
        if best is None or candidate.unique_count > best.unique_count:
            best, best_offset = candidate, offset
    if best is None:
        # No points at all: the empty selection is vacuously feasible.
        return evaluate(inst, [])
    return best
