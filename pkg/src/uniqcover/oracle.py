"""Exhaustive ground-truth solvers for desk-scale instances.

`brute_force` enumerates selections as increasing index sequences, which is
exactly lexicographic order on the sorted index tuples, and keeps the first
optimum it meets; pruning only discards subtrees that provably contain no
strictly better selection, so the returned optimum is the lexicographically
smallest one. Bitmasks over points keep each tree node cheap.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .errors import InfeasibleError, LimitExceededError
from .geometry import Instance, Solution, covers, evaluate


@dataclass(frozen=True)
class OptResult:
    best: Solution
    optimum: int
    explored: int


def _cover_masks(inst: Instance) -> list[int]:
    masks = []
    for obj in inst.objects:
        mask = 0
        for k, p in enumerate(inst.points):
            if covers(obj, p):
                mask |= 1 << k
        masks.append(mask)
    return masks


def brute_force(inst: Instance, limit_m: int = 20) -> OptResult:
    """Exact optimum over all feasible selections, lexicographic tie-break.

    Raises LimitExceededError when m exceeds `limit_m` and InfeasibleError
    when even selecting every object leaves a point uncovered.
    """
    m = inst.m
    if m > limit_m:
        raise LimitExceededError(f"m={m} exceeds brute-force limit {limit_m}")
    all_mask = (1 << inst.n) - 1
    masks = _cover_masks(inst)

    union_all = 0
    for mask in masks:
        union_all |= mask
    if union_all != all_mask:
        raise InfeasibleError("some point is covered by no object")

    # suffix_union[j] = union of cover masks of objects with index >= j
    suffix_union = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        suffix_union[j] = suffix_union[j + 1] | masks[j]

    # coverers[k] = ascending object indices covering point k
    coverers = [[] for _ in range(inst.n)]
    for j, mask in enumerate(masks):
        while mask:
            low = mask & -mask
            coverers[low.bit_length() - 1].append(j)
            mask ^= low

    best_value = -1
    best_set: tuple[int, ...] = ()
    explored = 0

    def visit(last: int, chosen: list[int], cov1: int, cov2: int) -> None:
        nonlocal best_value, best_set, explored
        explored += 1
        if cov1 == all_mask:
            value = (cov1 & ~cov2).bit_count()
            if value > best_value:
                best_value = value
                best_set = tuple(chosen)

        # If some uncovered point has a single remaining coverer f, every
        # feasible extension includes f, so children skipping past f are dead.
        child_cap = m - 1
        uncovered = all_mask & ~cov1
        while uncovered:
            low = uncovered & -uncovered
            lst = coverers[low.bit_length() - 1]
            pos = bisect_right(lst, last)
            remaining = len(lst) - pos
            if remaining == 0:
                return  # point can never be covered in this subtree
            if remaining == 1 and lst[pos] < child_cap:
                child_cap = lst[pos]
            uncovered ^= low

        for j in range(last + 1, child_cap + 1):
            ncov2 = cov2 | (cov1 & masks[j])
            ncov1 = cov1 | masks[j]
            rest = suffix_union[j + 1]
            if all_mask & ~ncov1 & ~rest:
                continue  # some point would stay uncovered forever
            upper = ((ncov1 & ~ncov2) | (rest & ~ncov1)).bit_count()
            if upper <= best_value:
                continue
            chosen.append(j)
            visit(j, chosen, ncov1, ncov2)
            chosen.pop()

    visit(-1, [], 0, 0)
    if best_value < 0:
        raise InfeasibleError("no feasible selection found")
    best = evaluate(inst, best_set)
    assert best.feasible and best.unique_count == best_value
    return OptResult(best=best, optimum=best_value, explored=explored)


def greedy_baseline(inst: Instance) -> Solution:
    """Greedy set cover, then drop objects whose removal costs nothing.

    No approximation guarantee; used as a benchmark comparator only.
    """
    all_mask = (1 << inst.n) - 1
    masks = _cover_masks(inst)
    union_all = 0
    for mask in masks:
        union_all |= mask
    if union_all != all_mask:
        raise InfeasibleError("some point is covered by no object")

    chosen: list[int] = []
    covered = 0
    while covered != all_mask:
        best_j, best_gain = -1, 0
        for j, mask in enumerate(masks):
            if j in chosen:
                continue
            gain = (mask & ~covered).bit_count()
            if gain > best_gain:
                best_j, best_gain = j, gain
        chosen.append(best_j)
        covered |= masks[best_j]

    # Redundancy pruning: remove while feasibility holds and uniques do not drop.
    current = evaluate(inst, chosen)
    changed = True
    while changed:
        changed = False
        for j in sorted(chosen):
            trial = [i for i in chosen if i != j]
            cand = evaluate(inst, trial)
            if cand.feasible and cand.unique_count >= current.unique_count:
                chosen = trial
                current = cand
                changed = True
                break
    return current


def sat_brute_force(formula, limit_n: int = 24):
    """First satisfying assignment in lexicographic order, or None.

    Assignments are tuples of booleans indexed by variable (1-based variables
    map to positions 0..N-1); False sorts before True, so enumeration order is
    the integer order of the assignment read as a binary string.
    """
    n = formula.n_vars
    if n > limit_n:
        raise LimitExceededError(f"N={n} exceeds SAT brute-force limit {limit_n}")
    clauses = [[(lit.var, lit.neg) for lit in cl.literals] for cl in formula.clauses]
    for bits in range(1 << n):
        assignment = tuple(bool((bits >> (n - 1 - i)) & 1) for i in range(n))
        ok = True
        for clause in clauses:
            if not any(assignment[var - 1] != neg for var, neg in clause):
                ok = False
                break
        if ok:
            return assignment
    return None
