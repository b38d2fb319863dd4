"""Command-line entry points: ``solve``, ``bench`` and ``render``.

Exit codes: 0 solved (or success), 1 error, 2 unsolved within budget.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import sgf
from .bench import BACKENDS, EmptySuite, load_reference, run_bench
from .board import color_name
from .problems import InvariantViolation, ProblemSuite, load_sgf, stats_record
from .render import render_ascii
from .search import SolverConfig, solve
from .solution import UnverifiedSolution, export_solution_sgf
from .zone import Zone

EXIT_OK, EXIT_ERROR, EXIT_UNSOLVED = 0, 1, 2


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_ERROR


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        prob = load_sgf(Path(args.problem).read_bytes(), goal=args.goal,
                        label=Path(args.problem).stem)
    except (OSError, sgf.ParseError, InvariantViolation) as e:
        return _fail(str(e))
    try:
        cfg = SolverConfig(backend=args.backend, max_nodes=args.max_nodes,
                           time_limit_ms=args.time_limit_ms, seed=args.seed)
    except ValueError as e:
        return _fail(str(e))
    t = time.perf_counter()
    sol = solve(prob, cfg)
    ms = (time.perf_counter() - t) * 1000
    if args.ascii:
        print(render_ascii(prob.position, sol.zone), end="")
    winner = None if sol.winner is None else color_name(sol.winner)
    zone_size = None if sol.zone is None else len(sol.zone)
    print(f"problem: {prob.label} goal: {prob.goal.value}")
    print(f"winner: {winner or 'unsolved'}")
    print(f"nodes: {sol.stats.nodes}")
    print(f"zone size: {zone_size if zone_size is not None else '-'}")
    if args.stats:
        rec = stats_record(label=prob.label, backend=args.backend, winner=winner,
                           nodes=sol.stats.nodes, table_hits=sol.stats.table_hits,
                           pattern_reuses=sol.stats.pattern_reuses, zone_size=zone_size,
                           wall_ms=round(ms, 3) if args.timing else None, seed=args.seed)
        Path(args.stats).write_text(rec + "\n")
    if sol.winner is None:
        return EXIT_UNSOLVED
    if args.out:
        try:
            Path(args.out).write_bytes(export_solution_sgf(prob, sol))
        except (UnverifiedSolution, OSError) as e:
            return _fail(str(e))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        suite = ProblemSuite.from_directory(args.suite, goal=args.goal)
    except (OSError, sgf.ParseError, InvariantViolation) as e:
        return _fail(str(e))
    backends = BACKENDS if args.backends == "both" else (args.backends,)
    reference = None
    if args.reference:
        try:
            reference = load_reference(args.reference)
        except (OSError, ValueError) as e:
            return _fail(str(e))
    try:
        report = run_bench(suite, max_nodes=args.max_nodes, seed=args.seed,
                           backends=backends, timing=args.timing)
    except EmptySuite as e:
        return _fail(str(e))
    text = report.table(reference)
    print(text, end="")
    if args.report:
        Path(args.report).write_text(text)
    if args.jsonl:
        Path(args.jsonl).write_text(report.jsonl())
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    try:
        prob = load_sgf(Path(args.problem).read_bytes())
    except (OSError, sgf.ParseError, InvariantViolation) as e:
        return _fail(str(e))
    size = prob.position.size
    zone = None
    if args.zone:
        try:
            zone = Zone.of(size, [int(x) for x in args.zone.split(",") if x])
        except ValueError as e:
            return _fail(str(e))
    elif args.crucial:
        zone = Zone.of(size, prob.crucial)
    print(render_ascii(prob.position, zone), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rzgo", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one SGF problem")
    s.add_argument("problem")
    s.add_argument("--backend", choices=BACKENDS, default="tt")
    s.add_argument("--max-nodes", type=int, default=100_000)
    s.add_argument("--time-limit-ms", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="write the verified solution SGF here")
    s.add_argument("--stats", help="write one JSON stats record here")
    s.add_argument("--goal", choices=("live", "kill"), default=None)
    s.add_argument("--ascii", action="store_true", help="print the board with the zone")
    s.add_argument("--timing", action="store_true", help="record wall time in stats")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="compare backends on a directory of SGF problems")
    b.add_argument("suite")
    b.add_argument("--backends", choices=("both",) + BACKENDS, default="both")
    b.add_argument("--max-nodes", type=int, default=500_000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--goal", choices=("live", "kill"), default=None)
    b.add_argument("--report", help="write the text table here")
    b.add_argument("--jsonl", help="write line-delimited JSON records here")
    b.add_argument("--reference", help="JSON of label -> [tt, pt] reference counts")
    b.add_argument("--timing", action="store_true", help="record wall time")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="print a problem as a text diagram")
    r.add_argument("problem")
    r.add_argument("--zone", help="comma-separated point indices to highlight")
    r.add_argument("--crucial", action="store_true", help="highlight the crucial stones")
    r.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
