"""Command-line front end: generate, solve, reduce, verify, render, bench.

Exit codes: 0 success, 1 malformed input or usage error, 2 infeasible
instance, 3 size/state limits exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .bench import ALGORITHMS, bench_corpus, ratio_summary, rows_to_csv, rows_to_markdown
from .dp import DPStats, solve_restricted
from .errors import (
    FormulaSyntaxError,
    FrameTooSmallError,
    InfeasibleError,
    LayoutCrossingError,
    LimitExceededError,
    RoutingFailureError,
    StateBudgetExceededError,
    UniqCoverError,
    VariableDegreeError,
)
from .generate import random_instance
from .geometry import (
    DISK,
    SQUARE,
    evaluate,
    instance_digest,
    instance_from_json,
    instance_to_json,
    solution_from_json,
    solution_to_json,
)
from .oracle import brute_force, greedy_baseline
from .ptas import PtasStats, ptas
from .reduction import build_instance, certificate_json, parse_formula, roundtrip_check
from .render import render_svg

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_LIMIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors -> exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _read_config(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    config = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {raw!r}")
        key, value = line.split("=", 1)
        config[key.strip().replace("-", "_")] = value.strip()
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="uniqcover",
                     description="unique set cover on unit squares and disks")
    parser.add_argument("--config", help="key=value defaults file; flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve an instance file")
    solve.add_argument("instance", help="instance JSON path")
    solve.add_argument("--algo", choices=list(ALGORITHMS), default="oracle")
    solve.add_argument("--k", type=int, default=2, help="frame size for the dp solver")
    solve.add_argument("--epsilon", default="1/2", help="ptas accuracy parameter")
    solve.add_argument("--limit-m", type=int, default=20, help="oracle size limit")
    solve.add_argument("--state-cap", type=int, default=10_000_000)
    solve.add_argument("--dump-states", help="write the explored state graph (dp only)")
    solve.add_argument("--report", help="write the run report JSON here instead of stderr")
    solve.add_argument("--output", help="write the solution JSON here instead of stdout")

    gen = sub.add_parser("gen", help="generate a random feasible instance")
    gen.add_argument("--n", type=int, default=10)
    gen.add_argument("--m", type=int, default=6)
    gen.add_argument("--width", default="4")
    gen.add_argument("--seed", default="0")
    gen.add_argument("--shape", choices=[SQUARE, DISK], default=SQUARE)
    gen.add_argument("--denominator", type=int, default=32)
    gen.add_argument("--allow-infeasible", action="store_true")
    gen.add_argument("--output", help="write instance JSON here instead of stdout")

    red = sub.add_parser("reduce", help="compile a formula into an instance")
    red.add_argument("formula", help="formula file path")
    red.add_argument("--shape", choices=[SQUARE, DISK], default=DISK)
    red.add_argument("--output", required=True, help="instance JSON output path")
    red.add_argument("--certificate", help="certificate JSON output path")

    ver = sub.add_parser("verify-reduction", help="round-trip formulas against both brute-force solvers")
    ver.add_argument("formulas", nargs="+", help="formula file paths")
    ver.add_argument("--shape", choices=[SQUARE, DISK, "both"], default="both")
    ver.add_argument("--limit-m", type=int, default=100)

    ren = sub.add_parser("render", help="render an instance (and solution) as SVG")
    ren.add_argument("instance")
    ren.add_argument("--solution", help="solution JSON to overlay")
    ren.add_argument("--output", required=True)

    ben = sub.add_parser("bench", help="run all solvers over a corpus directory")
    ben.add_argument("corpus", help="directory of instance JSON files")
    ben.add_argument("--algos", default=",".join(ALGORITHMS))
    ben.add_argument("--k", type=int, default=2)
    ben.add_argument("--epsilon", default="1/2")
    ben.add_argument("--limit-m", type=int, default=20)
    ben.add_argument("--state-cap", type=int, default=10_000_000)
    ben.add_argument("--format", choices=["csv", "markdown"], default="csv")
    ben.add_argument("--output", help="write the table here instead of stdout")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args) -> int:
    inst = instance_from_json(Path(args.instance).read_text())
    start = time.perf_counter()
    explored = None
    if args.algo == "oracle":
        res = brute_force(inst, limit_m=args.limit_m)
        sol, explored = res.best, res.explored
    elif args.algo == "greedy":
        sol = greedy_baseline(inst)
    elif args.algo == "dp":
        stats = DPStats()
        sol = solve_restricted(inst, args.k, state_cap=args.state_cap,
                               debug_dump=args.dump_states, stats_out=stats)
        explored = stats.run_states + stats.decl_nodes
    else:
        stats = PtasStats()
        sol = ptas(inst, Fraction(args.epsilon), state_cap=args.state_cap,
                   stats_out=stats)
        explored = stats.dp.run_states + stats.dp.decl_nodes
    wall_ms = (time.perf_counter() - start) * 1000.0
    report = {
        "algorithm": args.algo,
        "digest": instance_digest(inst),
        "n": inst.n,
        "m": inst.m,
        "unique_count": sol.unique_count,
        "feasible": sol.feasible,
        "wall_ms": round(wall_ms, 3),
        "explored": explored,
    }
    _emit(solution_to_json(sol) + "\n", args.output)
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    else:
        print(json.dumps(report, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def _cmd_gen(args) -> int:
    inst = random_instance(args.n, args.m, width=Fraction(args.width),
                           seed=args.seed, shape=args.shape,
                           denominator=args.denominator,
                           ensure_feasible=not args.allow_infeasible)
    _emit(instance_to_json(inst) + "\n", args.output)
    return EXIT_OK


def _cmd_reduce(args) -> int:
    formula = parse_formula(Path(args.formula).read_text())
    out = build_instance(formula, args.shape)
    Path(args.output).write_text(instance_to_json(out.instance) + "\n")
    cert_path = args.certificate or (args.output + ".cert.json")
    Path(cert_path).write_text(certificate_json(out) + "\n")
    print(json.dumps({
        "n": out.instance.n, "m": out.instance.m,
        "c": out.c, "threshold": out.threshold,
        "K": out.formula.n_clauses,
    }, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def _cmd_verify_reduction(args) -> int:
    shapes = [DISK, SQUARE] if args.shape == "both" else [args.shape]
    all_ok = True
    for path in args.formulas:
        formula = parse_formula(Path(path).read_text())
        for shape in shapes:
            ok = roundtrip_check(formula, shape, limit_m=args.limit_m)
            all_ok &= ok
            print(f"{'PASS' if ok else 'FAIL'} {path} [{shape}]")
    return EXIT_OK if all_ok else EXIT_BAD_INPUT


def _cmd_render(args) -> int:
    inst = instance_from_json(Path(args.instance).read_text())
    solution = None
    if args.solution:
        solution = solution_from_json(Path(args.solution).read_text())
        check = evaluate(inst, solution.selected)
        if (check.unique_count != solution.unique_count
                or check.feasible != solution.feasible):
            raise ValueError(
                "solution does not match the instance: re-evaluation gives "
                f"unique={check.unique_count} feasible={check.feasible}")
    Path(args.output).write_text(render_svg(inst, solution))
    return EXIT_OK


def _cmd_bench(args) -> int:
    corpus = sorted(Path(args.corpus).glob("*.json"))
    if not corpus:
        raise ValueError(f"no *.json instances under {args.corpus}")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm: {a}")
    rows = bench_corpus(corpus, algorithms=algos, k=args.k,
                        epsilon=Fraction(args.epsilon), limit_m=args.limit_m,
                        state_cap=args.state_cap)
    table = rows_to_csv(rows) if args.format == "csv" else rows_to_markdown(rows)
    _emit(table, args.output)
    summary = ratio_summary(rows)
    if summary:
        print(json.dumps({"ratio_summary": summary}, sort_keys=True), file=sys.stderr)
    return EXIT_OK if any(r.error is None for r in rows) else EXIT_BAD_INPUT


_CONFIGURABLE = {"k", "epsilon", "limit_m", "state_cap", "shape", "seed",
                 "width", "n", "m", "denominator", "format", "algos", "algo"}


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(argv)
    try:
        config = _read_config(args.config)
        given = {token.split("=", 1)[0] for token in argv if token.startswith("--")}
        for key, value in config.items():
            if key not in _CONFIGURABLE or not hasattr(args, key):
                continue
            if f"--{key.replace('_', '-')}" in given:
                continue  # flags win over the config file
            current = getattr(args, key)
            setattr(args, key,
                    type(current)(value) if current is not None else value)
        handler = {
            "solve": _cmd_solve,
            "gen": _cmd_gen,
            "reduce": _cmd_reduce,
            "verify-reduction": _cmd_verify_reduction,
            "render": _cmd_render,
            "bench": _cmd_bench,
        }[args.command]
        return handler(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (LimitExceededError, StateBudgetExceededError, FrameTooSmallError) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (FormulaSyntaxError, VariableDegreeError, LayoutCrossingError,
            RoutingFailureError, UniqCoverError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
