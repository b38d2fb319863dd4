"""Brute-force reference solver and out-of-zone perturbations.

Both are deliberately simple: they are the ground truth the solver is
tested against, so they share nothing with the search beyond the rules
kernel and the goal predicate.
"""
from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field

from .board import BLACK, EMPTY, PASS, WHITE, IllegalMove, Position, play
from .life import ResourceExceeded
from .problems import Problem, Status, terminal_status
from .zone import Zone

PASS_LIMIT = 4


class NoLegalPerturbation(RuntimeError):
    pass


@dataclass
class OracleResult:
    winner: int
    nodes_visited: int
    line: list[int] = field(default_factory=list)


class _Oracle:
    """Exhaustive minimax under positional superko.

    A result depends on the line only through the superko test, so each
    memo entry records the hashes it consulted and the subset of them that
    was in the history; it is reused when that subset is unchanged.
    """

    def __init__(self, problem: Problem, region: Zone, max_nodes: int):
        self.problem = problem
        self.or_color = problem.or_color
        self.moves = [p for p in region]
        size = problem.position.size
        cr = [divmod(p, size) for p in problem.crucial]
        self.dist = {p: min(abs(p // size - r) + abs(p % size - c) for r, c in cr)
                     for p in self.moves}
        self.max_nodes = max_nodes
        self.nodes = 0
        self.memo: dict[tuple[int, int], list[tuple[frozenset, frozenset, bool, int | None]]] = {}

    def value(self, pos: Position) -> tuple[bool, frozenset, int | None]:
        """(OR wins, consulted hashes, best move)."""
        key = (pos.hash, pos.consecutive_passes)
        hist = pos.history_hashes
        for consulted, seen, val, best in self.memo.get(key, ()):
            if consulted & hist == seen:
                return val, consulted, best
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise ResourceExceeded(f"oracle exceeded {self.max_nodes} nodes")
        val, consulted, best = self._search(pos)
        self.memo.setdefault(key, []).append((consulted, consulted & hist, val, best))
        return val, consulted, best

    def _children(self, pos: Position) -> list[tuple[int, Position | None, int | None]]:
        """(move, child, hash) in search order; child None means superko."""
        want = pos.to_move == self.or_color
        hint = {best for _, _, _, best in self.memo.get((pos.hash, pos.consecutive_passes), ())}
        first, rest = [], []
        for m in self.moves:
            if pos.grid[m] != EMPTY:
                continue
            try:
                child = play(pos, m, check_superko=False)
            except IllegalMove:
                continue
            if child.hash in pos.history_hashes:
                rest.append((m, None, child.hash))
                continue
            st = terminal_status(self.problem, child)
            if st is not Status.ONGOING and (st is Status.OR_WINS) == want or m in hint:
                first.append((m, child, child.hash))
            else:
                rest.append((m, child, child.hash))
        rest.sort(key=lambda t: self.dist[t[0]])
        return first + rest + [(PASS, play(pos, PASS), None)]

    def _search(self, pos: Position) -> tuple[bool, frozenset, int | None]:
        status = terminal_status(self.problem, pos)
        if status is not Status.ONGOING:
            return status is Status.OR_WINS, frozenset(), None
        if pos.consecutive_passes >= PASS_LIMIT:
            return False, frozenset(), None
        want = pos.to_move == self.or_color
        consulted: set[int] = set()
        first = None    # the loser's line follows its first refuted move
        for m, child, h in self._children(pos):
            if h is not None:
                consulted.add(h)
            if child is None:
                continue
            val, sub, _ = self.value(child)
            consulted |= sub
            if val == want:
                return want, frozenset(consulted), m
            if first is None:
                first = m
        return not want, frozenset(consulted), first


def brute_force_solve(problem: Problem, region: Zone | None = None,
                      max_nodes: int = 2_000_000) -> OracleResult:
    """Game value of ``problem`` with both sides restricted to ``region``
    plus pass.  Four consecutive passes end the game; an unfinished goal
    then counts as a win for the AND player.

    Raises ResourceExceeded after ``max_nodes`` distinct searches.
    """
    pos = problem.position
    if region is None:
        region = Zone.full(pos.size)
    oracle = _Oracle(problem, region, max_nodes)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20_000))
    try:
        val, _, _ = oracle.value(pos)
        line = []
        cur = pos
        for _ in range(200):
            v, _, best = oracle.value(cur)
            if best is None or terminal_status(problem, cur) is not Status.ONGOING:
                break
            line.append(best)
            cur = play(cur, best)
    finally:
        sys.setrecursionlimit(limit)
    winner = problem.or_color if val else problem.and_color
    return OracleResult(winner, oracle.nodes, line)


def _all_blocks_live(grid: bytearray, size: int) -> bool:
    pos = Position(size, bytes(grid), BLACK)
    return all(b.liberties for b in pos.blocks())


def perturb_outside(position: Position, zone: Zone, rng: random.Random, k: int,
                    max_tries: int = 200) -> Position:
    """Apply ``k`` random stone additions/removals strictly outside ``zone``.

    Edits that leave any block without liberties are rejected.  The result
    has a fresh history and the same player to move.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    outside = list(zone.complement())
    if k and not outside:
        raise NoLegalPerturbation("zone covers the whole board")
    grid = bytearray(position.grid)
    size = position.size
    for _ in range(k):
        for _ in range(max_tries):
            p = rng.choice(outside)
            old = grid[p]
            if old == EMPTY:
                grid[p] = rng.choice((BLACK, WHITE))
            else:
                grid[p] = rng.choice([c for c in (EMPTY, BLACK, WHITE) if c != old])
            if _all_blocks_live(grid, size):
                break
            grid[p] = old
        else:
            raise NoLegalPerturbation(f"no legal edit found in {max_tries} tries")
    return Position(size, bytes(grid), position.to_move)


__all__ = ["OracleResult", "NoLegalPerturbation", "brute_force_solve", "perturb_outside",
           "PASS_LIMIT"]
