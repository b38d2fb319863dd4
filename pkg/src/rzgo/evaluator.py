"""Heuristic evaluator standing in for a trained policy/value network."""
from __future__ import annotations

import math
from typing import Protocol, Sequence

from .board import EMPTY, PASS, Position, neighbors
from .problems import Goal, Problem

GAMMA = 0.98
NULL_PRIOR = 0.5

# softmax weights per feature
WEIGHTS = {
    "capture": 2.5,
    "capture_crucial_adjacent": 2.0,
    "atari": 1.0,
    "escape": 1.5,
    "crucial_adjacent": 1.0,
    "liberty_delta": 0.25,
    "proximity": 3.0,
    "own_eye": -6.0,
}


class Evaluator(Protocol):
    def __call__(self, position: Position, problem: Problem,
                 moves: Sequence[int]) -> tuple[float, dict[int, float]]:
        """Value in [-1, 1] for the player to move and priors over ``moves``."""
        ...


def move_features(position: Position, problem: Problem, move: int,
                  crucial_dist: dict[int, int] | None = None,
                  crucial_blocks: set[int] | None = None) -> dict[str, float]:
    nbrs = neighbors(position.size)
    me = position.to_move
    opp = 3 - me
    grid = position.grid
    target = problem.target_color
    if crucial_blocks is None:
        crucial_blocks = _crucial_blocks(position, problem)
    f = dict.fromkeys(WEIGHTS, 0.0)
    empty_nbrs = sum(1 for n in nbrs[move] if grid[n] == EMPTY)
    libs_after = set(n for n in nbrs[move] if grid[n] == EMPTY)
    seen = set()
    for n in nbrs[move]:
        v = grid[n]
        if v == EMPTY:
            continue
        b = position.block_at(n)
        if id(b) in seen:
            continue
        seen.add(id(b))
        if v == opp:
            if len(b.liberties) == 1:
                f["capture"] += len(b.stones)
                libs_after |= b.stones & set(nbrs[move])
                if id(b) in crucial_blocks or any(
                        position.grid[q] == target and id(position.block_at(q)) in crucial_blocks
                        for s in b.stones for q in nbrs[s]):
                    f["capture_crucial_adjacent"] = 1.0
            elif len(b.liberties) == 2:
                f["atari"] += 1.0
        else:
            libs_after |= b.liberties
            if len(b.liberties) == 1:
                f["escape"] += len(b.stones)
        if id(b) in crucial_blocks:
            f["crucial_adjacent"] = 1.0
    libs_after.discard(move)
    f["liberty_delta"] = len(libs_after) - empty_nbrs
    if all(grid[n] == me for n in nbrs[move]) and not f["escape"]:
        f["own_eye"] = 1.0
    if crucial_dist is not None:
        d = crucial_dist.get(move)
        f["proximity"] = math.exp(-d / 2.0) if d is not None else 0.0
    return f


def _crucial_blocks(position: Position, problem: Problem) -> set[int]:
    grid = position.grid
    return {id(position.block_at(p)) for p in problem.crucial
            if grid[p] == problem.target_color}


_DIST_CACHE: dict[tuple[int, tuple[int, ...]], dict[int, int]] = {}


def crucial_distances(position: Position, problem: Problem) -> dict[int, int]:
    key = (position.size, problem.crucial)
    out = _DIST_CACHE.get(key)
    if out is None:
        size = position.size
        cr = [divmod(p, size) for p in problem.crucial]
        out = {}
        for p in range(size * size):
            r, c = divmod(p, size)
            out[p] = min(abs(r - a) + abs(c - b) for a, b in cr)
        if len(_DIST_CACHE) > 256:
            _DIST_CACHE.clear()
        _DIST_CACHE[key] = out
    return out


def _eyes(position: Position, problem: Problem) -> int:
    """Empty points surrounded only by target stones, next to crucial blocks."""
    nbrs = neighbors(position.size)
    grid = position.grid
    target = problem.target_color
    blocks = [position.block_at(p) for p in problem.crucial if grid[p] == target]
    cand = set()
    for b in blocks:
        cand |= b.liberties
    return sum(1 for p in cand if all(grid[n] == target for n in nbrs[p]))


def default_evaluator(position: Position, problem: Problem,
                      moves: Sequence[int]) -> tuple[float, dict[int, float]]:
    """Softmax priors over hand-written move features and a crude value.

    The value is ``0.9 * GAMMA**plies`` for the side a static look suggests
    is close to its goal, so nearer wins are worth more.
    """
    dist = crucial_distances(position, problem)
    blocks = _crucial_blocks(position, problem)
    nbrs = neighbors(position.size)
    grid = position.grid
    w = WEIGHTS["proximity"]
    logits = {}
    for m in moves:
        if m == PASS:
            continue
        if not any(grid[n] for n in nbrs[m]):
            # no adjacent stones: only the distance feature can be non-zero
            logits[m] = w * math.exp(-dist[m] / 2.0)
            continue
        f = move_features(position, problem, m, dist, blocks)
        logits[m] = sum(WEIGHTS[k] * v for k, v in f.items())
    priors: dict[int, float] = {}
    if logits:
        top = max(logits.values())
        exp = {m: math.exp(v - top) for m, v in logits.items()}
        total = sum(exp.values())
        share = 1.0 - NULL_PRIOR if PASS in moves else 1.0
        priors = {m: share * e / total for m, e in exp.items()}
        if PASS in moves:
            priors[PASS] = NULL_PRIOR
    elif PASS in moves:
        priors[PASS] = 1.0

    value = 0.0
    grid = position.grid
    target = problem.target_color
    alive_side = problem.or_color if problem.goal is Goal.LIVE else problem.and_color
    if _eyes(position, problem) >= 2:
        value = 0.9 * GAMMA ** 2
        if position.to_move != alive_side:
            value = -value
    else:
        libs = [len(position.block_at(p).liberties) for p in problem.crucial
                if grid[p] == target]
        if libs and max(libs) == 1:
            killer = 3 - target
            value = 0.9 * GAMMA ** 1
            if position.to_move != killer:
                value = -value
    return value, priors

