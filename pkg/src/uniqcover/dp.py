"""Exact solver for unit-square instances whose points fit a k-by-k frame.

The solver sweeps the fractional part of x from 0 to 1 and explores
decompositions of candidate selections into *chains*: families of unit
squares with strictly increasing anchor x, monotone anchor y, a shared
lattice point of the frame grid, and all anchors in one integer cell (so
fractional anchor parts strictly increase along the chain). Every selection
that matters decomposes into such chains, because a redundancy-pruned
optimum splits into monotone families around grid points and any monotone
family splits at integer-cell boundaries.

Chain state is a sliding window of eight references
(start, start-successor, prev-predecessor, prev, curr, curr-successor,
end-predecessor, end). Six of these are the classic sweep tuple; the two
successor/predecessor companions of the extremes are required to decide
unique coverage exactly: for a point x-covered by a whole chain segment, the
squares covering it form one consecutive run, a run strictly inside a
segment never has length one (the y-spans of its neighbours would have to be
more than one apart, impossible for squares sharing a point), and therefore
multiplicity is 0, 1 or >=2 exactly when membership in the four segment
boundary squares says so. Chains are active for the whole sweep - opened
before the first event and closed after the last - because a chain can cover
points at any fractional x, and a dormant chain would make slab costs
undercount multiplicity.

Costs: a transition advancing the sweep from one corner to the next charges
the points whose x fractional part lies in the half-open slab between them
(points exactly on an event line belong to the slab to its right). A
transition with an uncovered point in its slab is discarded; otherwise the
transition earns one per uniquely covered slab point, and the answer is the
longest source-to-sink path.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import FrameTooSmallError, InfeasibleError, StateBudgetExceededError
from .geometry import Instance, Point, SQUARE, Solution, evaluate

NONE = -1

Window = tuple[int, int, int, int, int, int, int, int]
# layout: (s1, s2, pp, p, c, cp, ep, e); NONE marks chain boundaries.


@dataclass
class DPStats:
    run_states: int = 0
    decl_nodes: int = 0
    declarations: int = 0
    edges: int = 0


class SweepContext:
    """Integer-arithmetic view of one instance, plus the chain machinery."""

    def __init__(self, inst: Instance, k: int, origin: Point | None = None,
                 state_cap: int = 10_000_000):
        if inst.shape != SQUARE:
            raise ValueError("the sweep solver handles unit squares only")
        self.inst = inst
        self.k = k
        self.d = d = inst.denominator
        self.state_cap = state_cap

        self.px = [int(p.x * d) for p in inst.points]
        self.py = [int(p.y * d) for p in inst.points]
        n = inst.n

        if origin is None:
            if n == 0:
                origin = Point(Fraction(0), Fraction(0))
            else:
                origin = Point(min(p.x for p in inst.points),
                               min(p.y for p in inst.points))
        self.ox = int(origin.x * d)
        self.oy = int(origin.y * d)
        if n:
            if (max(self.px) - min(self.px) > k * d or min(self.px) < self.ox
                    or max(self.px) > self.ox + k * d):
                raise FrameTooSmallError(
                    f"points exceed the {k}x{k} frame at {origin} in x")
            if (max(self.py) - min(self.py) > k * d or min(self.py) < self.oy
                    or max(self.py) > self.oy + k * d):
                raise FrameTooSmallError(
                    f"points exceed the {k}x{k} frame at {origin} in y")

        # Candidate squares: only those covering at least one point matter
        # (an optimum never needs a square that covers nothing).
        self.ax = {}
        self.ay = {}
        self.cell = {}
        self.frac = {}
        self.cov_mask = {}
        self.covy_mask = {}
        self.candidates = []
        for i, sq in enumerate(inst.objects):
            ax = int(sq.anchor.x * d)
            ay = int(sq.anchor.y * d)
            mask = 0
            ymask = 0
            for pk in range(n):
                if ay <= self.py[pk] <= ay + d:
                    ymask |= 1 << pk
                    if ax <= self.px[pk] <= ax + d:
                        mask |= 1 << pk
            if mask:
                self.candidates.append(i)
                self.ax[i] = ax
                self.ay[i] = ay
                self.cell[i] = ax // d
                self.frac[i] = ax % d
                self.cov_mask[i] = mask
                self.covy_mask[i] = ymask

        order = sorted(range(n), key=lambda pk: (self.px[pk] % d, pk))
        self.points_by_frac = order
        self.point_fracs = [self.px[pk] % d for pk in order]

        self._declarations = self._enumerate_declarations()
        self._mult_memo: dict[tuple[Window, int], int] = {}

    # -- chain declarations ------------------------------------------------

    def _monotone_ok(self, refs: list[int]) -> bool:
        ax, ay, cell, d = self.ax, self.ay, self.cell, self.d
        for a, b in zip(refs, refs[1:]):
            if ax[a] >= ax[b]:
                return False
        if len({cell[r] for r in refs}) != 1:
            return False
        ys = [ay[r] for r in refs]
        if max(ys) - min(ys) > d:
            return False
        rising = all(a <= b for a, b in zip(ys, ys[1:]))
        falling = all(a >= b for a, b in zip(ys, ys[1:]))
        if not (rising or falling):
            return False
        return self._anchored(refs)

    def _anchored(self, refs: list[int]) -> bool:
        """The common rectangle of the refs must contain a frame lattice point."""
        ax, ay, d = self.ax, self.ay, self.d
        x_lo = max(ax[r] for r in refs)
        x_hi = min(ax[r] for r in refs) + d
        y_lo = max(ay[r] for r in refs)
        y_hi = min(ay[r] for r in refs) + d
        # smallest i with ox + i*d >= x_lo, check <= x_hi and 0 <= i <= k
        i_lo = -((self.ox - x_lo) // d)
        if i_lo < 0:
            i_lo = 0
        if i_lo > self.k or self.ox + i_lo * d > x_hi:
            return False
        j_lo = -((self.oy - y_lo) // d)
        if j_lo < 0:
            j_lo = 0
        if j_lo > self.k or self.oy + j_lo * d > y_hi:
            return False
        return True

    def _enumerate_declarations(self) -> list[tuple[int, Window, tuple[int, ...]]]:
        """All chain openings: (min ref index, phase-0 window, declared refs)."""
        cands = sorted(self.candidates, key=lambda i: (self.ax[i], self.ay[i], i))
        decls: list[tuple[int, Window, tuple[int, ...]]] = []
        N = len(cands)
        for a in range(N):
            u = cands[a]
            decls.append((u, (u, NONE, NONE, NONE, u, NONE, NONE, u), (u,)))
            for b in range(a + 1, N):
                v = cands[b]
                if not self._monotone_ok([u, v]):
                    continue
                decls.append((min(u, v), (u, v, NONE, NONE, u, v, u, v), (u, v)))
                for c in range(a + 1, N):
                    w = cands[c]
                    if w == v or not (self.ax[u] < self.ax[w] < self.ax[v]):
                        continue
                    if self._monotone_ok([u, w, v]):
                        decls.append((min(u, w, v),
                                      (u, w, NONE, NONE, u, w, w, v), (u, w, v)))
                    for e2 in range(c + 1, N):
                        x = cands[e2]
                        if x == v or not (self.ax[w] < self.ax[x] < self.ax[v]):
                            continue
                        if self._monotone_ok([u, w, x, v]):
                            decls.append((min(u, w, x, v),
                                          (u, w, NONE, NONE, u, w, x, v),
                                          (u, w, x, v)))
        decls.sort(key=lambda t: (t[0], t[1]))
        return decls

    # -- per-chain multiplicity classification -----------------------------

    def _ycov(self, ref: int, pk: int) -> bool:
        return ref != NONE and (self.covy_mask[ref] >> pk) & 1 == 1

    def _part_mult(self, first: int, first_in: int, last: int, last_in: int,
                   pk: int) -> int:
        """Multiplicity of point pk within a chain segment [first..last],
        all of whose members x-cover the point.

        `first_in`/`last_in` are the segment neighbours of the extremes. The
        covering squares form one consecutive run; a run strictly inside the
        segment has length >= 2, so the boundary memberships decide exactly.
        """
        ay, d, yq = self.ay, self.d, self.py[pk]
        lo = min(ay[first], ay[last])
        hi = max(ay[first], ay[last]) + d
        if not lo <= yq <= hi:
            return 0
        if first == last:
            return 1
        if self._ycov(first, pk) and not self._ycov(first_in, pk):
            return 1
        if self._ycov(last, pk) and not self._ycov(last_in, pk):
            return 1
        return 2

    def chain_mult(self, win: Window, pk: int) -> int:
        """Exact 0 / 1 / >=2 multiplicity of point pk among the chain squares,
        valid whenever the sweep position lies in the window's validity arc."""
        key = (win, pk)
        cached = self._mult_memo.get(key)
        if cached is not None:
            return cached
        s1, s2, pp, p, c, cp, ep, e = win
        ax, d = self.ax, self.d
        xq = self.px[pk]
        m = 0
        if p != NONE:
            if ax[p] <= xq <= ax[s1] + d:
                m += self._part_mult(s1, s2, p, pp, pk)
            elif xq == ax[p] + d:
                if self._ycov(p, pk):
                    m += 1
        if c != NONE and m < 2:
            if xq - d <= ax[c] and ax[e] <= xq:
                m += self._part_mult(c, cp, e, ep, pk)
        if m > 2:
            m = 2
        self._mult_memo[key] = m
        return m

    # -- slabs and transitions ----------------------------------------------

    def slab_points(self, lo: int, hi: int) -> list[int]:
        """Indices of points whose x mod 1 lies in [lo, hi), as numerators."""
        a = bisect_left(self.point_fracs, lo)
        b = bisect_left(self.point_fracs, hi)
        return self.points_by_frac[a:b]

    def slab_cost(self, lo: int, hi: int, wins) -> tuple[int, int]:
        """(uncovered, unique) counts over the slab for the active chains."""
        uncovered = 0
        unique = 0
        for pk in self.slab_points(lo, hi):
            total = 0
            for win in wins:
                total += self.chain_mult(win, pk)
                if total >= 2:
                    break
            if total == 0:
                uncovered += 1
            elif total == 1:
                unique += 1
        return uncovered, unique

    def advance_options(self, win: Window, used_refs) -> list[Window]:
        """Successor windows when the sweep passes the corner of `curr`."""
        s1, s2, pp, p, c, cp, ep, e = win
        if cp == NONE:
            return [(s1, s2, p, c, NONE, NONE, ep, e)]
        if cp == e:
            return [(s1, s2, p, c, cp, NONE, ep, e)]
        if cp == ep:
            return [(s1, s2, p, c, cp, e, ep, e)]
        ax, ay, cell, d = self.ax, self.ay, self.cell, self.d
        rising = ay[e] >= ay[s1]
        falling = ay[e] <= ay[s1]
        outs = []
        for u in self.candidates:
            if u in used_refs:
                continue
            if not (ax[cp] < ax[u] < ax[ep]) or cell[u] != cell[s1]:
                continue
            if rising and not (ay[cp] <= ay[u] <= ay[ep]):
                continue
            if falling and not (ay[cp] >= ay[u] >= ay[ep]):
                continue
            outs.append((s1, s2, p, c, cp, u, ep, e))
        outs.append((s1, s2, p, c, cp, ep, ep, e))
        return outs


def _window_refs(win: Window):
    return [r for r in win if r != NONE]


def _pending(ctx: SweepContext, win: Window):
    c = win[4]
    if c == NONE:
        return None
    return (ctx.frac[c], c, win)


def solve_restricted(
    inst: Instance,
    k: int,
    origin: Point | None = None,
    state_cap: int = 10_000_000,
    debug_dump: str | None = None,
    stats_out: DPStats | None = None,
) -> Solution:
    """Optimal unique set cover for points inside a k-by-k frame of squares.

    Exactness contract: the returned unique_count equals the brute-force
    optimum. Raises InfeasibleError when no selection covers every point,
    FrameTooSmallError when the points do not fit the frame, and
    StateBudgetExceededError when exploration exceeds `state_cap` states.
    """
    ctx = SweepContext(inst, k, origin, state_cap)
    stats = stats_out if stats_out is not None else DPStats()
    stats.declarations = len(ctx._declarations)
    d = ctx.d

    run_memo: dict[tuple[int, frozenset], tuple[int, object] | None] = {}
    NEG = None  # "no path" marker in the memo

    def check_cap():
        if len(run_memo) + stats.decl_nodes > ctx.state_cap:
            raise StateBudgetExceededError(len(run_memo) + stats.decl_nodes,
                                           ctx.state_cap)

    def run_value(pos: int, wins: frozenset):
        """Best gain from this sweep state to the sink, or None if no path."""
        key = (pos, wins)
        if key in run_memo:
            return run_memo[key]
        check_cap()
        run_memo[key] = NEG  # placeholder; states form a DAG so no cycles
        pend = [p for p in (_pending(ctx, w) for w in wins) if p is not None]
        if not pend:
            uncovered, gain = ctx.slab_cost(pos, d, wins)
            result = None if uncovered else (gain, ("close",))
        else:
            f, _, win = min(pend)
            uncovered, gain = ctx.slab_cost(pos, f, wins)
            if uncovered:
                result = None
            else:
                used = set()
                for w in wins:
                    used.update(_window_refs(w))
                best = None
                rest = wins - {win}
                for nxt in ctx.advance_options(win, used):
                    stats.edges += 1
                    sub = run_value(f, rest | {nxt})
                    if sub is None:
                        continue
                    total = gain + sub[0]
                    if best is None or total > best[0]:
                        best = (total, ("advance", win, nxt))
                result = best
        run_memo[key] = result
        return result

    def boxes_cover_all(wins) -> bool:
        if inst.n == 0:
            return True
        ax, ay = ctx.ax, ctx.ay
        for pk in range(inst.n):
            xq, yq = ctx.px[pk], ctx.py[pk]
            ok = False
            for (s1, s2, pp, p, c, cp, ep, e) in wins:
                lo_y = min(ay[s1], ay[e])
                hi_y = max(ay[s1], ay[e]) + d
                if ax[s1] <= xq <= ax[e] + d and lo_y <= yq <= hi_y:
                    ok = True
                    break
            if not ok:
                return False
        return True

    best_overall: tuple[int, frozenset] | None = None

    def explore_decls(wins: frozenset, used: frozenset, min_next: int):
        nonlocal best_overall
        if best_overall is not None and best_overall[0] == inst.n:
            return  # nothing can beat covering every point uniquely
        stats.decl_nodes += 1
        check_cap()
        if boxes_cover_all(wins):
            value = run_value(0, wins)
            if value is not None and (best_overall is None or value[0] > best_overall[0]):
                best_overall = (value[0], wins)
        for key_idx, w0, refs in ctx._declarations:
            if key_idx < min_next:
                continue
            if any(r in used for r in refs):
                continue
            explore_decls(wins | {w0}, used | frozenset(refs), key_idx + 1)

    explore_decls(frozenset(), frozenset(), -1)

    if debug_dump is not None:
        with open(debug_dump, "w") as fh:
            for (pos, wins), value in sorted(
                    run_memo.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
                fh.write(json.dumps({
                    "pos": pos,
                    "windows": sorted(list(w) for w in wins),
                    "value": None if value is None else value[0],
                }) + "\n")

    stats.run_states = len(run_memo)
    if best_overall is None:
        raise InfeasibleError("no chain decomposition covers every point")

    # Reconstruct the winning path, collecting every reference that appears.
    _, wins = best_overall
    selected: set[int] = set()
    pos = 0
    for w in wins:
        selected.update(_window_refs(w))
    state = (pos, wins)
    while True:
        value = run_memo[state]
        assert value is not None
        if value[1][0] == "close":
            break
        _, win, nxt = value[1]
        selected.update(_window_refs(nxt))
        pend = [p for p in (_pending(ctx, w) for w in state[1]) if p is not None]
        f = min(pend)[0]
        state = (f, (state[1] - {win}) | {nxt})

    solution = evaluate(inst, sorted(selected))
    assert solution.feasible
    assert solution.unique_count == best_overall[0], (
        "sweep value disagrees with re-evaluation; this indicates a bug")
    return solution


def transition_cost(ctx: SweepContext, pos: int, next_pos: int, wins) -> tuple[int, int]:
    """(uncovered, unique-gain) over the slab [pos, next_pos) for the given
    chain windows; exposed for tests and the state-graph dump."""
    return ctx.slab_cost(pos, next_pos, wins)
