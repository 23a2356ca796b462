"""Solvers for unique set cover on unit squares and unit disks.

The package provides exact geometry primitives, an exhaustive oracle, an
exact sweep-line dynamic program for instances whose points fit a k-by-k
frame, a shifting-strategy approximation built on top of it, and a compiler
from restricted planar 3SAT formulas to unique-set-cover instances.
"""

from .geometry import (
    DISK,
    SQUARE,
    Instance,
    Point,
    Solution,
    UnitDisk,
    UnitSquare,
    coverage_multiplicity,
    covers,
    evaluate,
    instance_digest,
    instance_from_json,
    instance_to_json,
    mod_one,
    prune_covered_redundant,
    pt,
    solution_from_json,
    solution_to_json,
)
from .oracle import OptResult, brute_force, greedy_baseline, sat_brute_force

__all__ = [
    "DISK",
    "SQUARE",
    "Instance",
    "OptResult",
    "Point",
    "Solution",
    "UnitDisk",
    "UnitSquare",
    "brute_force",
    "coverage_multiplicity",
    "covers",
    "evaluate",
    "greedy_baseline",
    "instance_digest",
    "instance_from_json",
    "instance_to_json",
    "mod_one",
    "prune_covered_redundant",
    "pt",
    "sat_brute_force",
    "solution_from_json",
    "solution_to_json",
]
