"""Benchmark harness: run solvers over an instance corpus and tabulate results."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dp import DPStats, solve_restricted
from .errors import UniqCoverError
from .geometry import Instance, Solution, instance_digest, instance_from_json
from .oracle import brute_force, greedy_baseline
from .ptas import PtasStats, ptas

ALGORITHMS = ("oracle", "greedy", "dp", "ptas")


@dataclass
class RunReport:
    algorithm: str
    instance: str
    digest: str
    n: int
    m: int
    unique_count: int | None
    feasible: bool | None
    wall_ms: float
    explored: int | None
    ratio: float | None
    error: str | None = None


def run_algorithm(name: str, inst: Instance, k: int = 2,
                  epsilon=Fraction(1, 2), limit_m: int = 20,
                  state_cap: int = 10_000_000) -> tuple[Solution, int | None]:
    if name == "oracle":
        res = brute_force(inst, limit_m=limit_m)
        return res.best, res.explored
    if name == "greedy":
        return greedy_baseline(inst), None
    if name == "dp":
        stats = DPStats()
        sol = solve_restricted(inst, k, state_cap=state_cap, stats_out=stats)
        return sol, stats.run_states + stats.decl_nodes
    if name == "ptas":
        stats = PtasStats()
        sol = ptas(inst, epsilon, state_cap=state_cap, stats_out=stats)
        return sol, stats.dp.run_states + stats.dp.decl_nodes
    raise ValueError(f"unknown algorithm: {name}")


def bench_corpus(paths: list[Path], algorithms=ALGORITHMS, k: int = 2,
                 epsilon=Fraction(1, 2), limit_m: int = 20,
                 state_cap: int = 10_000_000) -> list[RunReport]:
    rows: list[RunReport] = []
    for path in paths:
        inst = instance_from_json(path.read_text())
        digest = instance_digest(inst)
        optimum = None
        for name in algorithms:
            start = time.perf_counter()
            try:
                sol, explored = run_algorithm(name, inst, k=k, epsilon=epsilon,
                                              limit_m=limit_m, state_cap=state_cap)
                wall = (time.perf_counter() - start) * 1000.0
                if name == "oracle":
                    optimum = sol.unique_count
                ratio = None
                if optimum is not None:
                    ratio = 1.0 if optimum == 0 else sol.unique_count / optimum
                rows.append(RunReport(name, path.name, digest, inst.n, inst.m,
                                      sol.unique_count, sol.feasible, wall,
                                      explored, ratio))
            except (UniqCoverError, ValueError) as exc:
                wall = (time.perf_counter() - start) * 1000.0
                rows.append(RunReport(name, path.name, digest, inst.n, inst.m,
                                      None, None, wall, None, None,
                                      error=f"{type(exc).__name__}: {exc}"))
    return rows


def rows_to_csv(rows: list[RunReport]) -> str:
    header = ("instance,algorithm,n,m,unique_count,feasible,wall_ms,"
              "explored,ratio,digest,error")
    lines = [header]
    for r in rows:
        lines.append(",".join([
            r.instance, r.algorithm, str(r.n), str(r.m),
            "" if r.unique_count is None else str(r.unique_count),
            "" if r.feasible is None else str(int(r.feasible)),
            f"{r.wall_ms:.2f}",
            "" if r.explored is None else str(r.explored),
            "" if r.ratio is None else f"{r.ratio:.4f}",
            r.digest[:12],
            "" if r.error is None else r.error.replace(",", ";"),
        ]))
    return "\n".join(lines) + "\n"


def rows_to_markdown(rows: list[RunReport]) -> str:
    header = "| instance | algorithm | n | m | unique | feasible | ms | ratio |"
    sep = "|---|---|---|---|---|---|---|---|"
    lines = [header, sep]
    for r in rows:
        lines.append("| {} | {} | {} | {} | {} | {} | {:.1f} | {} |".format(
            r.instance, r.algorithm, r.n, r.m,
            "-" if r.unique_count is None else r.unique_count,
            "-" if r.feasible is None else r.feasible,
            r.wall_ms,
            "-" if r.ratio is None else f"{r.ratio:.3f}"))
    return "\n".join(lines) + "\n"


def ratio_summary(rows: list[RunReport]) -> dict[str, dict[str, float]]:
    out: dict[str, dict[str, float]] = {}
    for name in {r.algorithm for r in rows}:
        ratios = [r.ratio for r in rows if r.algorithm == name and r.ratio is not None]
        if ratios:
            out[name] = {
                "count": len(ratios),
                "min": min(ratios),
                "mean": sum(ratios) / len(ratios),
            }
    return out
