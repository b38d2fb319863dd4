"""Backend comparison harness.

Every problem of a suite is solved once per backend with the same node
budget and a per-problem seed derived from the master seed.  Speedup is
``nodes_tt / nodes_pt``; the geometric mean is taken only over problems
both backends solved.  Reports contain no wall-clock data unless asked,
so two runs with the same arguments are byte-identical.
"""
from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field

from .board import color_name
from .problems import ProblemSuite, stats_record
from .search import SolverConfig, solve

BACKENDS = ("tt", "pt")


class EmptySuite(ValueError):
    pass


def problem_seed(master: int, label: str) -> int:
    d = hashlib.blake2b(f"{master}:{label}".encode(), digest_size=4).digest()
    return int.from_bytes(d, "little")


@dataclass
class BenchRow:
    label: str
    size: int
    seed: int
    nodes: dict[str, int] = field(default_factory=dict)
    winner: dict[str, str | None] = field(default_factory=dict)
    zone: dict[str, int | None] = field(default_factory=dict)
    hits: dict[str, int] = field(default_factory=dict)
    reuses: dict[str, int] = field(default_factory=dict)
    wall_ms: dict[str, float | None] = field(default_factory=dict)

    def solved(self, backend: str) -> bool:
        return self.winner.get(backend) is not None

    @property
    def common(self) -> bool:
        return all(self.solved(b) for b in BACKENDS)

    @property
    def ratio(self) -> float | None:
        if not self.common:
            return None
        return self.nodes["tt"] / self.nodes["pt"]


@dataclass
class BenchReport:
    rows: list[BenchRow]
    max_nodes: int
    seed: int
    backends: tuple[str, ...] = BACKENDS

    @property
    def common(self) -> list[BenchRow]:
        return [r for r in self.rows if r.common]

    def geomean_speedup(self) -> float | None:
        ratios = [r.ratio for r in self.common]
        if not ratios:
            return None
        return math.exp(sum(math.log(x) for x in ratios) / len(ratios))

    def pt_not_worse(self) -> float | None:
        rows = self.common
        if not rows:
            return None
        return sum(r.nodes["pt"] <= r.nodes["tt"] for r in rows) / len(rows)

    def totals(self) -> dict[str, int]:
        return {b: sum(r.nodes.get(b, 0) for r in self.rows) for b in self.backends}

    def records(self) -> list[str]:
        """One stats line per (problem, backend)."""
        out = []
        for r in self.rows:
            for b in self.backends:
                out.append(stats_record(label=r.label, backend=b, winner=r.winner[b],
                                        nodes=r.nodes[b], table_hits=r.hits[b],
                                        pattern_reuses=r.reuses[b], zone_size=r.zone[b],
                                        wall_ms=r.wall_ms[b], seed=r.seed))
        return out

    def summary(self) -> dict:
        gm = self.geomean_speedup()
        frac = self.pt_not_worse()
        return {"problems": len(self.rows), "common": len(self.common),
                "solved": {b: sum(r.solved(b) for r in self.rows) for b in self.backends},
                "total_nodes": self.totals(),
                "geomean_speedup": None if gm is None else round(gm, 6),
                "pt_not_worse_fraction": None if frac is None else round(frac, 6),
                "max_nodes": self.max_nodes, "seed": self.seed}

    def table(self, reference: dict[str, tuple[int, int]] | None = None) -> str:
        cols = ["problem", "size"]
        for b in self.backends:
            cols += [f"{b}_nodes", f"{b}_result"]
        cols.append("tt/pt")
        if reference:
            cols += ["ref_tt", "ref_pt", "ref_ratio"]
        lines = [cols]
        for r in self.rows:
            line = [r.label, f"{r.size}x{r.size}"]
            for b in self.backends:
                line += [str(r.nodes[b]), r.winner[b] or "unsolved"]
            line.append("-" if r.ratio is None else f"{r.ratio:.3f}")
            if reference:
                ref = reference.get(r.label)
                line += ([str(ref[0]), str(ref[1]), f"{ref[0] / ref[1]:.2f}"] if ref
                         else ["", "", ""])
            lines.append(line)
        s = self.summary()
        gm = s["geomean_speedup"]
        tail = ["TOTAL", ""]
        for b in self.backends:
            tail += [str(s["total_nodes"][b]), f"{s['solved'][b]}/{len(self.rows)}"]
        tail.append("-" if gm is None else f"{gm:.3f}")
        if reference:
            tail += ["", "", ""]
        lines.append(tail)
        widths = [max(len(row[i]) for row in lines) for i in range(len(cols))]
        out = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in lines]
        frac = s["pt_not_worse_fraction"]
        out.append(f"commonly solved: {s['common']}; geometric-mean speedup (tt/pt): "
                   f"{'n/a' if gm is None else f'{gm:.3f}'}; pt <= tt on "
                   f"{'n/a' if frac is None else f'{100 * frac:.1f}%'}")
        return "\n".join(out) + "\n"

    def jsonl(self) -> str:
        lines = self.records()
        lines.append(json.dumps({"summary": self.summary()}, sort_keys=True,
                                separators=(",", ":")))
        return "\n".join(lines) + "\n"


def run_bench(suite: ProblemSuite, max_nodes: int = 500_000, seed: int = 0,
              backends: tuple[str, ...] = BACKENDS, timing: bool = False,
              progress=None) -> BenchReport:
    if len(suite) == 0:
        raise EmptySuite("benchmark suite has no problems")
    rows = []
    for prob in suite:
        ps = problem_seed(seed, prob.label)
        row = BenchRow(prob.label, prob.position.size, ps)
        for b in backends:
            t = time.perf_counter()
            sol = solve(prob, SolverConfig(backend=b, max_nodes=max_nodes, seed=ps))
            ms = (time.perf_counter() - t) * 1000
            row.nodes[b] = sol.stats.nodes
            row.winner[b] = None if sol.winner is None else color_name(sol.winner)
            row.zone[b] = None if sol.zone is None else len(sol.zone)
            row.hits[b] = sol.stats.table_hits
            row.reuses[b] = sol.stats.pattern_reuses
            row.wall_ms[b] = round(ms, 3) if timing else None
        rows.append(row)
        if progress is not None:
            progress(row)
    return BenchReport(rows, max_nodes, seed, tuple(backends))


def load_reference(path) -> dict[str, tuple[int, int]]:
    """Reference node counts: JSON object mapping label -> [tt, pt]."""
    with open(path) as f:
        raw = json.load(f)
    return {k: (int(v[0]), int(v[1])) for k, v in raw.items()}
