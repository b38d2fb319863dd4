"""Rebuild the bundled benchmark suite and compare the two backends on it.

Every problem is a classic corner or edge shape on an otherwise empty
board; the side that can settle the shape is to move.  Run from the
repository root:

    python demos/make_bench_suite.py            # write SGFs, then bench
    python demos/make_bench_suite.py --no-bench
"""
import argparse
from pathlib import Path

from rzgo.bench import run_bench
from rzgo.instances import curated_suite
from rzgo.render import render_ascii

HERE = Path(__file__).resolve().parent
DEFAULT_OUT = HERE.parent / "src" / "rzgo" / "data" / "bench"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    ap.add_argument("--max-nodes", type=int, default=500_000)
    ap.add_argument("--no-bench", action="store_true")
    args = ap.parse_args()

    suite = curated_suite()
    suite.write_directory(args.out)
    print(f"wrote {len(suite)} problems to {args.out}")
    first = suite.problems[0]
    print(f"\n{first.label} ({first.goal.value}):")
    print(render_ascii(first.position))
    if args.no_bench:
        return
    report = run_bench(suite, max_nodes=args.max_nodes,
                       progress=lambda row: print(f"  {row.label}: {row.nodes}"))
    print(report.table(), end="")


if __name__ == "__main__":
    main()
