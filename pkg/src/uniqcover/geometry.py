"""Exact planar geometry for unique-coverage problems on unit squares and unit disks.

Coordinates are rational numbers (`fractions.Fraction`); every containment
predicate is decided by exact integer arithmetic, so boundary cases (a point
on a square edge, or exactly on a unit circle) are never subject to rounding.
An instance carries one global denominator and all of its coordinates must be
integer multiples of 1/denominator; that is also the wire format.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import DenominatorError

SQUARE = "square"
DISK = "disk"

ONE = Fraction(1)


class Point(NamedTuple):
    x: Fraction
    y: Fraction


class UnitSquare(NamedTuple):
    """Closed axis-aligned unit square [x, x+1] x [y, y+1], anchored at its lower-left corner."""

    anchor: Point


class UnitDisk(NamedTuple):
    """Closed disk of radius 1."""

    center: Point


GeomObject = Union[UnitSquare, UnitDisk]


def pt(x, y) -> Point:
    """Build a Point, coercing ints/strings/Fractions to exact rationals."""
    return Point(Fraction(x), Fraction(y))


def mod_one(p: Point) -> Point:
    """Map (x, y) to (x mod 1, y mod 1); the result lies in [0, 1)^2."""
    return Point(p.x % 1, p.y % 1)


def covers(obj: GeomObject, p: Point) -> bool:
    """Exact closed-region containment test."""
    if isinstance(obj, UnitSquare):
        ax, ay = obj.anchor
        return ax <= p.x <= ax + 1 and ay <= p.y <= ay + 1
    if isinstance(obj, UnitDisk):
        cx, cy = obj.center
        return (p.x - cx) ** 2 + (p.y - cy) ** 2 <= 1
    raise TypeError(f"not a unit square or unit disk: {obj!r}")


def _check_coord(value: Fraction, denominator: int, what: str) -> None:
    scaled = value * denominator
    if scaled.denominator != 1:
        raise DenominatorError(
            f"{what} {value} is not a multiple of 1/{denominator}"
        )


@dataclass
class Instance:
    """A unique-set-cover instance: points to cover and candidate objects.

    Indices into `points` and `objects` are the stable identifiers used by
    every solver; duplicates are legal and count separately in multiplicity.
    """

    shape: str
    denominator: int
    points: list[Point] = field(default_factory=list)
    objects: list[GeomObject] = field(default_factory=list)

    def __post_init__(self):
        if self.shape not in (SQUARE, DISK):
            raise ValueError(f"shape must be {SQUARE!r} or {DISK!r}: {self.shape!r}")
        if not (isinstance(self.denominator, int) and self.denominator >= 1):
            raise ValueError(f"denominator must be a positive integer: {self.denominator!r}")
        want = UnitSquare if self.shape == SQUARE else UnitDisk
        for i, obj in enumerate(self.objects):
            if not isinstance(obj, want):
                raise ValueError(f"object {i} is {type(obj).__name__}, expected {want.__name__}")
        for i, p in enumerate(self.points):
            _check_coord(p.x, self.denominator, f"point {i} x")
            _check_coord(p.y, self.denominator, f"point {i} y")
        for i, obj in enumerate(self.objects):
            a = object_anchor(obj)
            _check_coord(a.x, self.denominator, f"object {i} x")
            _check_coord(a.y, self.denominator, f"object {i} y")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.objects)


def object_anchor(obj: GeomObject) -> Point:
    """The defining point of an object: square anchor or disk center."""
    return obj.anchor if isinstance(obj, UnitSquare) else obj.center


@dataclass(frozen=True)
class Solution:
    """A selection of object indices together with its recomputed objective."""

    selected: tuple[int, ...]
    unique_count: int
    feasible: bool


def coverage_multiplicity(inst: Instance, selected: Iterable[int], p_index: int) -> int:
    """Number of selected objects covering the point; duplicates count separately."""
    p = inst.points[p_index]
    count = 0
    for i in selected:
        if covers(inst.objects[i], p):
            count += 1
    return count


def evaluate(inst: Instance, selected: Iterable[int]) -> Solution:
    """Score a selection: feasibility plus the number of uniquely covered points."""
    sel = sorted(set(selected))
    for i in sel:
        if not 0 <= i < inst.m:
            raise IndexError(f"object index out of range: {i}")
    feasible = True
    unique = 0
    for p in inst.points:
        mult = 0
        for i in sel:
            if covers(inst.objects[i], p):
                mult += 1
                if mult > 1:
                    break
        if mult == 0:
            feasible = False
        elif mult == 1:
            unique += 1
    return Solution(tuple(sel), unique, feasible)


def prune_covered_redundant(inst: Instance, selected: Iterable[int]) -> tuple[int, ...]:
    """Drop objects all of whose covered points have multiplicity >= 2.

    Removing such an object keeps feasibility and never decreases the number
    of uniquely covered points, so this is safe on any selection. Runs to a
    fixpoint, scanning indices in ascending order.
    """
    sel = sorted(set(selected))
    cover_sets = {i: [k for k, p in enumerate(inst.points) if covers(inst.objects[i], p)]
                  for i in sel}
    mult = [0] * inst.n
    for i in sel:
        for k in cover_sets[i]:
            mult[k] += 1
    changed = True
    while changed:
        changed = False
        for i in list(sel):
            if all(mult[k] >= 2 for k in cover_sets[i]):
                sel.remove(i)
                for k in cover_sets[i]:
                    mult[k] -= 1
                changed = True
    return tuple(sel)


# --- JSON wire formats (version 1) ---------------------------------------

_INSTANCE_FIELDS = {"version", "shape", "denominator", "points", "objects"}
_SOLUTION_FIELDS = {"selected", "unique_count", "feasible"}


def instance_to_json(inst: Instance) -> str:
    d = inst.denominator
    data = {
        "version": 1,
        "shape": inst.shape,
        "denominator": d,
        "points": [[int(p.x * d), int(p.y * d)] for p in inst.points],
        "objects": [[int(object_anchor(o).x * d), int(object_anchor(o).y * d)]
                    for o in inst.objects],
    }
    return json.dumps(data, separators=(",", ":"), sort_keys=True)


def _int_pair(value, what: str) -> tuple[int, int]:
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)):
        raise ValueError(f"{what} must be a pair of integers: {value!r}")
    return value[0], value[1]


def instance_from_json(text: str) -> Instance:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("instance JSON must be an object")
    unknown = set(data) - _INSTANCE_FIELDS
    if unknown:
        raise ValueError(f"unknown instance fields: {sorted(unknown)}")
    missing = _INSTANCE_FIELDS - set(data)
    if missing:
        raise ValueError(f"missing instance fields: {sorted(missing)}")
    if data["version"] != 1:
        raise ValueError(f"unsupported instance version: {data['version']!r}")
    shape = data["shape"]
    if shape not in (SQUARE, DISK):
        raise ValueError(f"unknown shape: {shape!r}")
    den = data["denominator"]
    if not isinstance(den, int) or isinstance(den, bool) or den < 1:
        raise ValueError(f"denominator must be a positive integer: {den!r}")
    points = []
    for i, raw in enumerate(data["points"]):
        ix, iy = _int_pair(raw, f"point {i}")
        points.append(Point(Fraction(ix, den), Fraction(iy, den)))
    make = UnitSquare if shape == SQUARE else UnitDisk
    objects = []
    for i, raw in enumerate(data["objects"]):
        ix, iy = _int_pair(raw, f"object {i}")
        objects.append(make(Point(Fraction(ix, den), Fraction(iy, den))))
    return Instance(shape, den, points, objects)


def solution_to_json(sol: Solution) -> str:
    data = {
        "selected": list(sol.selected),
        "unique_count": sol.unique_count,
        "feasible": sol.feasible,
    }
    return json.dumps(data, separators=(",", ":"), sort_keys=True)


def solution_from_json(text: str) -> Solution:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("solution JSON must be an object")
    unknown = set(data) - _SOLUTION_FIELDS
    if unknown:
        raise ValueError(f"unknown solution fields: {sorted(unknown)}")
    missing = _SOLUTION_FIELDS - set(data)
    if missing:
        raise ValueError(f"missing solution fields: {sorted(missing)}")
    sel = data["selected"]
    if (not isinstance(sel, list)
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in sel)):
        raise ValueError("selected must be a list of integers")
    if not isinstance(data["unique_count"], int) or isinstance(data["unique_count"], bool):
        raise ValueError("unique_count must be an integer")
    if not isinstance(data["feasible"], bool):
        raise ValueError("feasible must be a boolean")
    return Solution(tuple(sorted(sel)), data["unique_count"], data["feasible"])


def instance_digest(inst: Instance) -> str:
    """Stable hex digest of the canonical instance JSON."""
    return hashlib.sha256(instance_to_json(inst).encode("ascii")).hexdigest()
