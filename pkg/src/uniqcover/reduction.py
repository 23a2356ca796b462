"""Compiler from laid-out restricted 3SAT formulas to unique-set-cover instances.

Construction summary (mirrored left/right; distances halve for squares):

* Variables sit on the vertical line x = 0. Each variable object owns up to
  three *ports* (straight toward each side, one raised, one lowered); a port
  hosts the start object of one wire and the cloud shared with the variable.
* Each clause owns a column at a side-and-level dependent depth. Its three
  wires terminate in a cluster: one terminal approached horizontally on the
  clause lane, one from above and one from below on the column. The single
  clause point sits at the column on the clause lane, covered by exactly the
  three terminals.
* A wire is a chain of objects along an L-shaped polyline (port lane, then
  the column); consecutive objects overlap and share a cloud of K+1 points.
  Wire length parity is adjusted by re-spacing so that selecting the variable
  object covers the clause point through the wire exactly for positive
  literals; a negation pair (two extra objects straddling two consecutive
  wire clouds plus a fresh cloud of their own) flips that parity.
* Objects are laid out first; clouds are placed afterwards by a deterministic
  search over candidate positions inside their host overlap, each candidate
  checked exactly against every object. Layouts that cannot be realized
  raise RoutingFailureError (retried at doubled pitches up to a bound).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, lcm

from .errors import (
    InfeasibleError,
    RoutingFailureError,
    ThresholdNotMetError,
)
from .formula import Clause, LaidOutFormula, Literal, formula_satisfied, parse_formula
from .geometry import (
    DISK,
    SQUARE,
    Instance,
    Point,
    Solution,
    UnitDisk,
    UnitSquare,
    covers,
)
from .oracle import brute_force, sat_brute_force

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Cloud:
    point_indices: tuple[int, ...]   # K+1 points, indices into the instance
    coverers: tuple[int, ...]        # exactly the objects meant to cover them


@dataclass(frozen=True)
class Wire:
    variable: int                    # 1-based
    clause_index: int
    slot: str                        # "top" | "mid" | "bot"
    negated: bool
    objects: tuple[int, ...]         # chain order, start first
    negation_pair: tuple[int, int] | None
    cloud_indices: tuple[int, ...]   # clouds along the chain, variable one first

    @property
    def terminal(self) -> int:
        return self.objects[-1]


@dataclass
class ReductionOutput:
    formula: LaidOutFormula
    shape: str
    instance: Instance
    clouds: list[Cloud]
    clause_points: list[tuple[int, tuple[int, int, int]]]  # (point idx, terminals)
    variable_objects: list[int]      # object index per variable (1-based -> [v-1])
    wires: list[Wire]

    @property
    def c(self) -> int:
        return len(self.clouds)

    @property
    def threshold(self) -> int:
        return self.c * (self.formula.n_clauses + 1)


@dataclass(frozen=True)
class _Params:
    pitch: Fraction          # vertical distance between variables
    port: Fraction           # lane offset of raised/lowered ports
    start: Fraction          # distance of the straight start object
    step: Fraction           # maximum spacing of consecutive wire objects
    base: Fraction           # depth of the level-0 clause column
    gap: Fraction            # extra depth per level
    t_side: Fraction         # clause point to side terminal distance
    t_vert: Fraction         # clause point to top/bottom terminal distance
    pair_off: Fraction       # perpendicular offset of negation-pair objects
    pair_push: Fraction      # extra push of the pair's own cloud
    reach: Fraction          # coverage radius scale (1 for disks; 1/2 in L-inf for squares)


def _params(shape: str, scale: int) -> _Params:
    s = Fraction(scale)
    if shape == DISK:
        return _Params(
            pitch=Fraction(21, 4) * s, port=Fraction(3, 2), start=Fraction(3, 2),
            step=Fraction(3, 2), base=Fraction(15, 4) * s, gap=Fraction(4) * s,
            t_side=Fraction(3, 4), t_vert=Fraction(3, 4),
            pair_off=Fraction(1, 2), pair_push=Fraction(5, 8), reach=Fraction(1),
        )
    return _Params(
        pitch=Fraction(3) * s, port=Fraction(3, 4), start=Fraction(3, 4),
        step=Fraction(3, 4), base=Fraction(5, 2) * s, gap=Fraction(5, 2) * s,
        t_side=Fraction(3, 8), t_vert=Fraction(3, 8),
        pair_off=Fraction(3, 8), pair_push=Fraction(1, 4), reach=HALF,
    )


def _seg_len(a: Point, b: Point) -> Fraction:
    # polyline segments are axis-aligned
    return abs(b.x - a.x) + abs(b.y - a.y)


def _walk(poly: list[Point], dist: Fraction) -> Point:
    """Point at the given arclength along an axis-aligned polyline."""
    left = dist
    for a, b in zip(poly, poly[1:]):
        seg = _seg_len(a, b)
        if left <= seg:
            if seg == 0:
                return a
            fx = a.x + (b.x - a.x) * left / seg
            fy = a.y + (b.y - a.y) * left / seg
            return Point(fx, fy)
        left -= seg
    return poly[-1]


class _Builder:
    def __init__(self, formula: LaidOutFormula, shape: str, scale: int):
        self.formula = formula
        self.shape = shape
        self.P = _params(shape, scale)
        self.objects: list[Point] = []        # anchors/centers
        self.obj_wire: list[int | None] = []  # wire id or None (variable objects)
        self.obj_var: list[int | None] = []   # owning variable (1-based) or None
        self.obj_clause: list[int | None] = []
        self.var_obj: dict[int, int] = {}
        self.wires: list[dict] = []
        self.K = formula.n_clauses

    # -- geometric helpers ---------------------------------------------------

    def _covers_pt(self, center: Point, p: Point) -> bool:
        # all builder bookkeeping uses object CENTERS, for both shapes
        if self.shape == DISK:
            return (p.x - center.x) ** 2 + (p.y - center.y) ** 2 <= 1
        return abs(p.x - center.x) <= HALF and abs(p.y - center.y) <= HALF

    def _add_object(self, center: Point, wire_id, var, clause) -> int:
        # squares are stored by anchor (lower-left corner)
        self.objects.append(center)
        self.obj_wire.append(wire_id)
        self.obj_var.append(var)
        self.obj_clause.append(clause)
        return len(self.objects) - 1

    def _center(self, idx: int) -> Point:
        return self.objects[idx]

    # -- layout --------------------------------------------------------------

    def build(self) -> ReductionOutput:
        formula = self.formula
        P = self.P
        var_y = {v: Fraction(v - 1) * P.pitch for v in range(1, formula.n_vars + 1)}

        for v in range(1, formula.n_vars + 1):
            self.var_obj[v] = self._add_object(Point(Fraction(0), var_y[v]), None, v, None)

        # Clause columns: depth by level, per side.
        col_x: dict[int, Fraction] = {}
        for ci, cl in enumerate(formula.clauses):
            depth = P.base + P.gap * cl.level
            col_x[ci] = -depth if cl.side == "L" else depth

        # Port bookkeeping: each variable owns "straight:L", "straight:R",
        # "up", "down"; each is usable once.
        ports_free: dict[int, set[str]] = {
            v: {"straight:L", "straight:R", "up", "down"}
            for v in range(1, formula.n_vars + 1)
        }

        def lane_of(v: int, port: str) -> Fraction:
            if port.startswith("straight"):
                return var_y[v]
            return var_y[v] + P.port if port == "up" else var_y[v] - P.port

        def start_of(v: int, port: str, side: str) -> Point:
            if port.startswith("straight"):
                dx = -P.start if side == "L" else P.start
                return Point(dx, var_y[v])
            dy = P.port if port == "up" else -P.port
            return Point(Fraction(0), var_y[v] + dy)

        # Assign slots and ports clause by clause, shallow columns first, with
        # backtracking: up/down ports are shared between the two sides, so a
        # greedy choice for one clause can starve a later one.
        order = sorted(range(len(formula.clauses)),
                       key=lambda ci: (abs(col_x[ci]), ci))

        def clause_options(ci):
            cl = formula.clauses[ci]
            straight = f"straight:{cl.side}"
            occs = sorted(enumerate(cl.literals),
                          key=lambda t: (var_y[t[1].var], t[0]))
            # Among occurrences tied at the middle height, prefer a positive
            # literal for the middle slot: a middle-lane wire squeezed between
            # its variable's other two lanes cannot host a negation pair.
            mid_y = var_y[occs[1][1].var]
            mid_pick = next((k for k in (1, 0, 2)
                             if var_y[occs[k][1].var] == mid_y
                             and not occs[k][1].neg), 1)
            rest = [occs[k] for k in range(3) if k != mid_pick]
            bot_occ, top_occ = rest[0][1], rest[1][1]
            mid_occ = occs[mid_pick][1]
            for mid_port in (straight, "up", "down"):
                if mid_port not in ports_free[mid_occ.var]:
                    continue
                p_y = lane_of(mid_occ.var, mid_port)
                taken_mid = {(mid_occ.var, mid_port)}
                # ports face the clause: the wire reaching the cluster from
                # above prefers its variable's lowered port, and vice versa
                for top_port in ("down", straight, "up"):
                    if (top_occ.var, top_port) in taken_mid \
                            or top_port not in ports_free[top_occ.var]:
                        continue
                    if lane_of(top_occ.var, top_port) < p_y + P.t_vert:
                        continue
                    taken_top = taken_mid | {(top_occ.var, top_port)}
                    for bot_port in ("up", straight, "down"):
                        if (bot_occ.var, bot_port) in taken_top \
                                or bot_port not in ports_free[bot_occ.var]:
                            continue
                        if lane_of(bot_occ.var, bot_port) > p_y - P.t_vert:
                            continue
                        yield [("mid", mid_occ, mid_port, p_y),
                               ("top", top_occ, top_port, p_y),
                               ("bot", bot_occ, bot_port, p_y)]

        assignments: dict[int, list[tuple[str, Literal, str, Fraction]]] = {}

        def pairable() -> bool:
            # A negated wire on its variable's straight lane cannot host a
            # negation pair when both sibling lanes are also in use.
            lanes_by_var: dict[int, set[Fraction]] = {}
            for option in assignments.values():
                for _, occ, port, _ in option:
                    lanes_by_var.setdefault(occ.var, set()).add(
                        lane_of(occ.var, port))
            for option in assignments.values():
                for _, occ, port, _ in option:
                    if occ.neg and port.startswith("straight"):
                        v = occ.var
                        if {var_y[v] + P.port, var_y[v] - P.port} <= lanes_by_var[v]:
                            return False
            return True

        def assign(pos: int) -> bool:
            if pos == len(order):
                return pairable()
            ci = order[pos]
            for option in clause_options(ci):
                consumed = [(occ.var, port) for _, occ, port, _ in option]
                for v, port in consumed:
                    ports_free[v].remove(port)
                assignments[ci] = option
                if assign(pos + 1):
                    return True
                del assignments[ci]
                for v, port in consumed:
                    ports_free[v].add(port)
            return False

        if not assign(0):
            raise RoutingFailureError(
                "no consistent port assignment for the clause wires",
                retryable=False)

        # Clause points and terminals.
        clause_point: dict[int, Point] = {}
        for ci in range(len(formula.clauses)):
            p_y = assignments[ci][0][3]
            clause_point[ci] = Point(col_x[ci], p_y)

        # Build wires (objects only; clouds placed later).
        for ci in range(len(formula.clauses)):
            cl = formula.clauses[ci]
            side = cl.side
            inward = 1 if side == "L" else -1   # direction from column toward x=0
            X = col_x[ci]
            p = clause_point[ci]
            for slot, lit, port, p_y in assignments[ci]:
                v = lit.var
                lane = lane_of(v, port)
                s0 = start_of(v, port, side)
                if slot == "mid":
                    target = Point(X + inward * P.t_side, p_y)
                    poly = [s0, target]
                else:
                    t_y = p.y + P.t_vert if slot == "top" else p.y - P.t_vert
                    target = Point(X, t_y)
                    poly = [s0, Point(X, lane), target]
                self._build_wire(ci, slot, lit, v, poly, lane)

        return self._finish(clause_point)

    def _build_wire(self, ci, slot, lit, v, poly, lane):
        P = self.P
        L = sum(_seg_len(a, b) for a, b in zip(poly, poly[1:]))
        count = max(2, ceil(L / P.step) + 1)
        if count % 2 == 1:
            count += 1
        if count > 60:
            raise RoutingFailureError(
                f"wire for clause {ci} slot {slot} needs {count} objects",
                retryable=False)
        wire_id = len(self.wires)
        tries = 0
        while True:
            positions = [_walk(poly, L * i / (count - 1)) for i in range(count)]
            if len({(p.x, p.y) for p in positions}) != count:
                raise RoutingFailureError(
                    f"degenerate wire spacing for clause {ci} slot {slot}")
            if not lit.neg or self._pair_slots(positions, lane):
                break
            count += 2
            tries += 1
            if tries > 8:
                raise RoutingFailureError(
                    f"cannot host a negation pair on clause {ci} slot {slot}",
                    retryable=False)
        ids = [self._add_object(pos, wire_id, v, ci) for pos in positions]
        self.wires.append({
            "variable": v, "clause": ci, "slot": slot, "negated": lit.neg,
            "objects": ids, "lane": lane, "positions": positions,
            "pair": None, "pair_j": None,
        })

    def _pair_slots(self, positions, lane):
        """Cloud indices j (>=1) such that objects j-1, j, j+1 sit on the lane."""
        usable = []
        for j in range(1, len(positions) - 1):
            trio = positions[j - 1: j + 2]
            if all(q.y == lane for q in trio):
                usable.append(j)
        return usable

    def _place_negation_pairs(self, clause_point):
        P = self.P
        # clearance needed so that a later exact cloud search around a center
        # cannot collide: coverage reach plus the search spread allowance
        spread = HALF
        reach = P.reach

        def dist_ok(c: Point, q: Point, clearance: Fraction) -> bool:
            if self.shape == DISK:
                return (c.x - q.x) ** 2 + (c.y - q.y) ** 2 > clearance ** 2
            return abs(c.x - q.x) > clearance or abs(c.y - q.y) > clearance

        def objects_overlap(c: Point, q: Point) -> bool:
            if self.shape == DISK:
                return (c.x - q.x) ** 2 + (c.y - q.y) ** 2 < 4
            return abs(c.x - q.x) < 1 and abs(c.y - q.y) < 1

        def candidate_ok(a: Point, b: Point, h: Point, wid: int, var: int,
                         foreign_cloud_centers) -> bool:
            for idx, c in enumerate(self.objects):
                if self.obj_wire[idx] == wid:
                    continue
                # the pair cloud must stay clear of every other object
                if not dist_ok(c, h, reach + spread):
                    return False
                if self.obj_var[idx] != var:
                    # unrelated objects must not even overlap the pair disks
                    if objects_overlap(c, a) or objects_overlap(c, b):
                        return False
            for center, owner in foreign_cloud_centers:
                if owner == wid:
                    continue
                if not dist_ok(a, center, reach + spread) or \
                        not dist_ok(b, center, reach + spread):
                    return False
            for p in clause_point.values():
                if self._covers_pt(a, p) or self._covers_pt(b, p):
                    return False
            return True

        # canonical overlap-lens centers of every wire, used as keep-out zones
        foreign_cloud_centers: list[tuple[Point, int]] = []
        for wid, wire in enumerate(self.wires):
            v_center = self._center(self.var_obj[wire["variable"]])
            s0 = wire["positions"][0]
            foreign_cloud_centers.append(
                (Point((v_center.x + s0.x) / 2, (v_center.y + s0.y) / 2), wid))
            for q1, q2 in zip(wire["positions"], wire["positions"][1:]):
                foreign_cloud_centers.append(
                    (Point((q1.x + q2.x) / 2, (q1.y + q2.y) / 2), wid))

        for wid, wire in enumerate(self.wires):
            if not wire["negated"]:
                continue
            positions = wire["positions"]
            lane = wire["lane"]
            slots = self._pair_slots(positions, lane)
            slots.sort(key=lambda j: (abs(2 * j - len(positions)), j))
            placed = False
            for j in slots:
                mid_a = Point((positions[j - 1].x + positions[j].x) / 2, lane)
                mid_b = Point((positions[j].x + positions[j + 1].x) / 2, lane)
                for sign in (1, -1):
                    dy = sign * P.pair_off
                    a = Point(mid_a.x, lane + dy)
                    b = Point(mid_b.x, lane + dy)
                    h = Point(positions[j].x, lane + sign * (P.pair_off + P.pair_push))
                    if not candidate_ok(a, b, h, wid, wire["variable"],
                                        foreign_cloud_centers):
                        continue
                    ida = self._add_object(a, wid, wire["variable"], wire["clause"])
                    idb = self._add_object(b, wid, wire["variable"], wire["clause"])
                    wire["pair"] = (ida, idb)
                    wire["pair_j"] = j
                    wire["pair_h_center"] = h
                    placed = True
                    break
                if placed:
                    break
            if not placed:
                # A middle lane squeezed between two used sibling lanes of the
                # same variable stays blocked at every layout scale.
                sibling_lanes = {w["lane"] for w in self.wires
                                 if w is not wire and w["variable"] == wire["variable"]}
                hopeless = {lane + P.port, lane - P.port} <= sibling_lanes
                raise RoutingFailureError(
                    f"no valid negation-pair placement on wire {wid}",
                    retryable=not hopeless)

    # -- clouds ---------------------------------------------------------------

    def _cloud_candidates(self, center: Point, axis: Point, perp: Point):
        K = self.K
        widths = [Fraction(1, 8), Fraction(1, 16)]
        shifts = [Fraction(0), Fraction(1, 8), Fraction(-1, 8),
                  Fraction(1, 4), Fraction(-1, 4), Fraction(3, 8), Fraction(-3, 8)]
        perps = [Fraction(0), Fraction(1, 8), Fraction(-1, 8),
                 Fraction(1, 4), Fraction(-1, 4)]
        for w in widths:
            for shift in shifts:
                for pe in perps:
                    pts = []
                    for i in range(K + 1):
                        offset = shift + w * Fraction(2 * i - K, 2 * max(K, 1))
                        pts.append(Point(center.x + axis.x * offset + perp.x * pe,
                                         center.y + axis.y * offset + perp.y * pe))
                    yield pts

    def _exact_coverers(self, p: Point):
        return tuple(i for i, c in enumerate(self.objects) if self._covers_pt(c, p))

    def _place_cloud(self, center, axis, perp, intended) -> list[Point] | None:
        want = tuple(sorted(intended))
        for pts in self._cloud_candidates(center, axis, perp):
            if len({(q.x, q.y) for q in pts}) != len(pts):
                continue
            if all(self._exact_coverers(q) == want for q in pts):
                return pts
        return None

    # -- assembly -------------------------------------------------------------

    def _reorder_objects(self) -> None:
        """Renumber objects variable by variable, each wire's chain followed by
        its negation pair. Keeping the indices of one gadget contiguous makes
        the exhaustive oracle's index-order search cascade locally."""
        order: list[int] = []
        for v in sorted(self.var_obj):
            order.append(self.var_obj[v])
            for wire in self.wires:
                if wire["variable"] != v:
                    continue
                order.extend(wire["objects"])
                if wire["pair"] is not None:
                    order.extend(wire["pair"])
        assert sorted(order) == list(range(len(self.objects)))
        remap = {old: new for new, old in enumerate(order)}
        self.objects = [self.objects[old] for old in order]
        self.obj_wire = [self.obj_wire[old] for old in order]
        self.obj_var = [self.obj_var[old] for old in order]
        self.obj_clause = [self.obj_clause[old] for old in order]
        for v in self.var_obj:
            self.var_obj[v] = remap[self.var_obj[v]]
        for wire in self.wires:
            wire["objects"] = [remap[o] for o in wire["objects"]]
            if wire["pair"] is not None:
                wire["pair"] = (remap[wire["pair"][0]], remap[wire["pair"][1]])

    def _finish(self, clause_point) -> ReductionOutput:
        self._place_negation_pairs(clause_point)
        self._reorder_objects()

        points: list[Point] = []
        clouds: list[Cloud] = []
        wire_cloud_indices: dict[int, list[int]] = {}

        def add_cloud(pts: list[Point], coverers) -> int:
            start = len(points)
            points.extend(pts)
            clouds.append(Cloud(tuple(range(start, start + len(pts))),
                                tuple(sorted(coverers))))
            return len(clouds) - 1

        unit_x = Point(Fraction(1), Fraction(0))
        unit_y = Point(Fraction(0), Fraction(1))

        for wid, wire in enumerate(self.wires):
            ids = wire["objects"]
            positions = wire["positions"]
            v_obj = self.var_obj[wire["variable"]]
            pair = wire["pair"]
            pair_j = wire["pair_j"]
            my_clouds: list[int] = []

            # variable cloud between the variable object and the start object
            v_center = self._center(v_obj)
            s_center = positions[0]
            mid = Point((v_center.x + s_center.x) / 2, (v_center.y + s_center.y) / 2)
            axis = unit_x if v_center.y == s_center.y else unit_y
            perp = unit_y if axis is unit_x else unit_x
            pts = self._place_cloud(mid, axis, perp, (v_obj, ids[0]))
            if pts is None:
                raise RoutingFailureError(f"cannot place the variable cloud of wire {wid}")
            my_clouds.append(add_cloud(pts, (v_obj, ids[0])))

            for i in range(1, len(ids)):
                a, b = positions[i - 1], positions[i]
                mid = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
                if a.x == b.x:
                    axis, perp = unit_y, unit_x
                elif a.y == b.y:
                    axis, perp = unit_x, unit_y
                else:
                    axis, perp = unit_x, unit_y   # corner-straddling chord
                intended = [ids[i - 1], ids[i]]
                if pair is not None and i == pair_j:
                    intended.append(pair[0])
                elif pair is not None and i == pair_j + 1:
                    intended.append(pair[1])
                pts = self._place_cloud(mid, axis, perp, intended)
                if pts is None:
                    raise RoutingFailureError(
                        f"cannot place cloud {i} of wire {wid} at {mid}")
                my_clouds.append(add_cloud(pts, intended))

            if pair is not None:
                h_center = wire["pair_h_center"]
                pts = self._place_cloud(h_center, unit_x, unit_y, pair)
                if pts is None:
                    raise RoutingFailureError(
                        f"cannot place the negation-pair cloud of wire {wid}")
                my_clouds.append(add_cloud(pts, pair))
            wire_cloud_indices[wid] = my_clouds

        clause_points: list[tuple[int, tuple[int, int, int]]] = []
        terminals_by_clause: dict[int, list[int]] = {}
        for wire in self.wires:
            terminals_by_clause.setdefault(wire["clause"], []).append(wire["objects"][-1])
        for ci in sorted(clause_point):
            p = clause_point[ci]
            terms = tuple(sorted(terminals_by_clause[ci]))
            if self._exact_coverers(p) != terms:
                raise RoutingFailureError(
                    f"clause point {ci} is not covered by exactly its terminals")
            clause_points.append((len(points), terms))
            points.append(p)

        if self.shape == DISK:
            obj_points = list(self.objects)
            make = UnitDisk
        else:
            # builder coordinates are centers; squares are anchored at the
            # lower-left corner
            obj_points = [Point(c.x - HALF, c.y - HALF) for c in self.objects]
            make = UnitSquare
        denom = lcm(*(f.denominator
                      for q in points + obj_points
                      for f in (q.x, q.y)), 1)
        instance = Instance(self.shape, denom, points, [make(c) for c in obj_points])

        wires = [Wire(w["variable"], w["clause"], w["slot"], w["negated"],
                      tuple(w["objects"]), w["pair"],
                      tuple(wire_cloud_indices[wid]))
                 for wid, w in enumerate(self.wires)]
        return ReductionOutput(
            formula=self.formula, shape=self.shape, instance=instance,
            clouds=clouds, clause_points=clause_points,
            variable_objects=[self.var_obj[v] for v in range(1, self.formula.n_vars + 1)],
            wires=wires,
        )


def build_instance(formula: LaidOutFormula, shape: str) -> ReductionOutput:
    """Compile a formula into an instance; satisfiable iff some feasible
    selection covers at least c*(K+1) points uniquely."""
    formula.validate()
    if shape not in (DISK, SQUARE):
        raise ValueError(f"shape must be {DISK!r} or {SQUARE!r}")
    last_error = None
    scale = 1
    while scale <= 2 ** 10:
        try:
            out = _Builder(formula, shape, scale).build()
        except RoutingFailureError as exc:
            last_error = exc
            if not exc.retryable:
                raise
            scale *= 2
            continue
        violations = validate_gadgets(out)
        if violations:
            last_error = RoutingFailureError("; ".join(violations[:3]))
            scale *= 2
            continue
        return out
    raise last_error if last_error is not None else RoutingFailureError("layout failed")


def validate_gadgets(out: ReductionOutput) -> list[str]:
    """Structural checks; an empty list means the construction is sound."""
    violations: list[str] = []
    inst = out.instance
    K = out.formula.n_clauses

    if inst.n != out.c * (K + 1) + K:
        violations.append(
            f"point count {inst.n} != c*(K+1)+K = {out.c}*{K + 1}+{K}")

    for idx, cloud in enumerate(out.clouds):
        if len(cloud.point_indices) != K + 1:
            violations.append(f"cloud {idx} has {len(cloud.point_indices)} points")
        for pi in cloud.point_indices:
            actual = tuple(i for i in range(inst.m)
                           if covers(inst.objects[i], inst.points[pi]))
            if actual != cloud.coverers:
                violations.append(
                    f"cloud {idx} point {pi}: coverers {actual} != intended {cloud.coverers}")

    for pi, terms in out.clause_points:
        actual = tuple(i for i in range(inst.m)
                       if covers(inst.objects[i], inst.points[pi]))
        if actual != terms:
            violations.append(
                f"clause point {pi}: coverers {actual} != terminals {terms}")

    # Intersection policy: objects of unrelated wires must not overlap.
    owner_wire: dict[int, int] = {}
    owner_var: dict[int, int] = {}
    owner_clause: dict[int, int | None] = {}
    terminals = set()
    for wid, wire in enumerate(out.wires):
        for o in wire.objects + (wire.negation_pair or ()):
            owner_wire[o] = wid
            owner_var[o] = wire.variable
            owner_clause[o] = wire.clause_index
        terminals.add(wire.terminal)
    for v, o in enumerate(out.variable_objects, start=1):
        owner_var[o] = v

    def overlaps(i: int, j: int) -> bool:
        a = inst.objects[i].anchor if inst.shape == SQUARE else inst.objects[i].center
        b = inst.objects[j].anchor if inst.shape == SQUARE else inst.objects[j].center
        if inst.shape == DISK:
            return (a.x - b.x) ** 2 + (a.y - b.y) ** 2 < 4
        return abs(a.x - b.x) < 1 and abs(a.y - b.y) < 1

    clause_pts = {i: inst.points[pi] for i, (pi, _) in enumerate(out.clause_points)}

    def near_cluster(o: int, ci) -> bool:
        if ci is None or ci not in clause_pts:
            return False
        p = clause_pts[ci]
        c = inst.objects[o].anchor if inst.shape == SQUARE else inst.objects[o].center
        return abs(c.x - p.x) <= 3 and abs(c.y - p.y) <= 3

    m = inst.m
    for i in range(m):
        for j in range(i + 1, m):
            if not overlaps(i, j):
                continue
            wi, wj = owner_wire.get(i), owner_wire.get(j)
            if wi is not None and wj is not None:
                if wi == wj:
                    continue
                if owner_var[i] == owner_var[j]:
                    continue  # fan-out near a shared variable
                ci, cj = owner_clause[i], owner_clause[j]
                if ci == cj and near_cluster(i, ci) and near_cluster(j, cj):
                    continue  # terminal cluster of one clause
                violations.append(f"objects {i} and {j} of unrelated wires overlap")
            elif wi is None and wj is None:
                violations.append(f"variable objects {i} and {j} overlap")
            else:
                var_obj, wire_obj = (i, j) if wi is None else (j, i)
                if owner_var.get(var_obj) != owner_var.get(wire_obj):
                    violations.append(
                        f"variable object {var_obj} overlaps a foreign wire object {wire_obj}")
    return violations


def decode_assignment(out: ReductionOutput, sol: Solution) -> tuple[bool, ...]:
    """Variable is true iff its object is selected; requires a solution at or
    above the unique-coverage threshold."""
    if not sol.feasible or sol.unique_count < out.threshold:
        raise ThresholdNotMetError(
            f"solution (feasible={sol.feasible}, unique={sol.unique_count}) "
            f"is below the threshold {out.threshold}")
    selected = set(sol.selected)
    assignment = tuple(obj in selected for obj in out.variable_objects)
    if not formula_satisfied(out.formula, assignment):
        raise AssertionError(
            "decoded assignment does not satisfy the formula; construction bug")
    return assignment


def roundtrip_check(formula: LaidOutFormula, shape: str, limit_m: int = 48) -> bool:
    """Satisfiability and the coverage threshold must agree on both sides."""
    out = build_instance(formula, shape)
    sat = sat_brute_force(formula)
    try:
        res = brute_force(out.instance, limit_m=limit_m)
        covered = res.optimum >= out.threshold
    except InfeasibleError:
        covered = False
        res = None
    if sat is None:
        return not covered
    if not covered or res is None:
        return False
    decode_assignment(out, res.best)  # raises if the decoded assignment fails
    return True


def certificate_json(out: ReductionOutput) -> str:
    data = {
        "c": out.c,
        "threshold": out.threshold,
        "clouds": [{"coverers": list(c.coverers), "points": list(c.point_indices)}
                   for c in out.clouds],
        "clause_points": [{"point": pi, "terminals": list(t)}
                          for pi, t in out.clause_points],
        "variable_objects": out.variable_objects,
        "wires": [{
            "variable": w.variable,
            "clause": w.clause_index,
            "slot": w.slot,
            "negated": w.negated,
            "objects": list(w.objects),
            "negation_pair": list(w.negation_pair) if w.negation_pair else None,
            "clouds": list(w.cloud_indices),
        } for w in out.wires],
    }
    return json.dumps(data, indent=1, sort_keys=True)


__all__ = [
    "Cloud",
    "ReductionOutput",
    "Wire",
    "build_instance",
    "certificate_json",
    "decode_assignment",
    "parse_formula",
    "roundtrip_check",
    "validate_gadgets",
]
