"""Deterministic problem generators: enclosed eye shapes for the life test,
small random life-and-death instances, and the bundled benchmark suite.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .board import BLACK, EMPTY, WHITE, Position, neighbors
from .problems import Goal, Problem, ProblemSuite, Status, load_sgf, terminal_status

Cell = tuple[int, int]


# -- polyominoes ---------------------------------------------------------------

def _normalize(cells) -> tuple[Cell, ...]:
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return tuple(sorted((r - r0, c - c0) for r, c in cells))


def _symmetries(cells) -> list[tuple[Cell, ...]]:
    out = []
    pts = list(cells)
    for _ in range(4):
        pts = [(c, -r) for r, c in pts]
        out.append(_normalize(pts))
        out.append(_normalize([(r, -c) for r, c in pts]))
    return out


def canonical(cells) -> tuple[Cell, ...]:
    return min(_symmetries(cells))


def polyominoes(n: int) -> list[tuple[Cell, ...]]:
    """Free polyominoes with ``n`` cells, sorted canonical forms."""
    shapes = {((0, 0),)}
    for _ in range(n - 1):
        grown = set()
        for s in shapes:
            cells = set(s)
            for r, c in s:
                for q in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                    if q not in cells:
                        grown.add(canonical(cells | {q}))
        shapes = grown
    return sorted(shapes)


NAMED_SHAPES = {
    ((0, 0), (0, 1), (0, 2)): "straight-3",
    ((0, 0), (0, 1), (1, 0)): "bent-3",
    ((0, 0), (0, 1), (0, 2), (0, 3)): "straight-4",
    ((0, 0), (0, 1), (0, 2), (1, 0)): "bent-4",
    ((0, 0), (0, 1), (1, 0), (1, 1)): "square-4",
    ((0, 0), (0, 1), (0, 2), (1, 1)): "pyramid-4",
    ((0, 0), (0, 1), (0, 2), (1, 1), (2, 1)): "T-5",
    ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1)): "bulky-5",
    ((0, 1), (1, 0), (1, 1), (1, 2), (2, 1)): "crossed-5",
    ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 1)): "rabbity-6",
}


def shape_name(cells) -> str:
    c = canonical(cells)
    for named, name in NAMED_SHAPES.items():
        if canonical(named) == c:
            return name
    return "poly" + str(len(c)) + ":" + "".join(f"{r}{col}" for r, col in c)


# -- eye-space corpus ------------------------------------------------------------

@dataclass
class EyeShape:
    name: str
    position: Position
    block: int          # a stone of the defending block under test
    color: int = BLACK


def _filled(size: int, holes: set[int], white: set[int]) -> Position:
    black = [p for p in range(size * size) if p not in holes]
    return Position.setup(size, black, sorted(white), WHITE)


def eye_shape_corpus(max_points: int = 7) -> list[EyeShape]:
    """Enclosed eye spaces for checking unconditional life.

    Black fills the board except the holes.  Each polyomino of up to
    ``max_points`` cells appears alone, with a separate one-point eye, with
    a white stone inside, and against a second copy of itself.  A cut
    variant splits the wall so two black blocks share the eye space.
    """
    out: list[EyeShape] = []
    for n in range(1, max_points + 1):
        for shape in polyominoes(n):
            name = shape_name(shape)
            h = 1 + max(r for r, _ in shape)
            w = 1 + max(c for _, c in shape)
            size = max(5, max(h, w) + 3)
            cells = {r * size + c for r, c in shape}
            far = size * size - 1
            corner_cells = cells
            inner = {(r + 1) * size + (c + 1) for r, c in shape}
            variants = [
                ("corner", corner_cells, set()),
                ("corner+eye", corner_cells | {far}, set()),
                ("inner+eye", inner | {far}, set()),
            ]
            if n >= 2:
                stone = min(cells)
                variants.append(("corner+eye+stone", corner_cells | {far}, {stone}))
            if n <= 4:
                other = {size * size - 1 - p for p in cells}
                if not other & (cells | {q for p in cells for q in neighbors(size)[p]}):
                    variants.append(("double", corner_cells | other, set()))
            for tag, holes, white in variants:
                if any(not any(q not in holes for q in neighbors(size)[p]) for p in white):
                    continue
                try:
                    pos = _filled(size, holes, white)
                except ValueError:
                    continue
                block = next(p for p in range(size * size) if pos.grid[p] == BLACK)
                out.append(EyeShape(f"{name}/{tag}", pos, block))
    return out


# -- random life-and-death instances ---------------------------------------------

def _transform(size: int, p: int, k: int) -> int:
    r, c = divmod(p, size)
    if k & 4:
        r, c = c, r
    if k & 1:
        r = size - 1 - r
    if k & 2:
        c = size - 1 - c
    return r * size + c


def _drop_dead(grid: bytearray, size: int) -> None:
    while True:
        pos = Position(size, bytes(grid), BLACK)
        dead = [b for b in pos.blocks() if not b.liberties]
        if not dead:
            return
        for b in dead[:1]:
            for s in b.stones:
                grid[s] = EMPTY


def random_instance(rng: random.Random, size: int = 6, max_empty: int = 10,
                    min_empty: int = 3, space: tuple[int, int] = (2, 5),
                    goal: Goal | None = None) -> Problem | None:
    """One random corner/edge instance, or None if the draw is unusable.

    A small eye space along the top edge is ringed by the target colour.
    Everything else is an opponent wall with two one-point eyes of its own,
    so the wall cannot be captured and the fight stays local.  Random
    stones go inside the eye space, the ring may have a gap, and the
    picture is rotated or reflected at random.
    """
    from .life import benson_uca

    nbrs = neighbors(size)
    n = rng.randint(*space)
    shape = rng.choice(polyominoes(n))
    if rng.random() < 0.5:
        shape = tuple(sorted((c, r) for r, c in shape))
    h = 1 + max(r for r, _ in shape)
    w = 1 + max(c for _, c in shape)
    if h > size - 3 or w > size - 1:
        return None
    c0 = rng.choice([0, 0, rng.randint(0, size - w)])
    space = {r * size + c + c0 for r, c in shape}
    target_color = rng.choice((BLACK, WHITE))
    other = 3 - target_color
    ring = {q for p in space for q in nbrs[p]} - space
    if len(ring) > 3 and rng.random() < 0.3:
        ring.discard(rng.choice(sorted(ring)))
    grid = bytearray([other]) * (size * size)
    for p in space:
        grid[p] = EMPTY
        if rng.random() < 0.15:
            grid[p] = rng.choice((BLACK, WHITE))
    for p in ring:
        grid[p] = target_color
    last = (size - 1) * size
    eye_cols = rng.sample(range(size), 2)
    if abs(eye_cols[0] - eye_cols[1]) < 2:
        return None
    eyes = [last + c for c in eye_cols]
    if any(q in ring or q in space for e in eyes for q in (e, *nbrs[e])):
        return None
    for e in eyes:
        grid[e] = EMPTY
    for p in range(size * size):
        if grid[p] == other and p not in eyes and rng.random() < 0.05:
            if all(grid[q] != EMPTY or q in space for q in nbrs[p]):
                grid[p] = EMPTY
    _drop_dead(grid, size)
    k = rng.randrange(8)
    g2 = bytearray(size * size)
    for p in range(size * size):
        g2[_transform(size, p, k)] = grid[p]
    crucial = [_transform(size, p, k) for p in ring if grid[p] == target_color]
    if not crucial:
        return None
    empties = g2.count(EMPTY)
    if not min_empty <= empties <= max_empty:
        return None
    pos = Position(size, bytes(g2), rng.choice((BLACK, WHITE)))
    if not benson_uca(pos, other):
        return None
    # keep the single largest crucial block so the goal is about one group
    blocks = {id(pos.block_at(p)): pos.block_at(p) for p in crucial}
    best = max(blocks.values(), key=lambda b: (len(b.stones), -min(b.stones)))
    if goal is None:
        goal = rng.choice((Goal.LIVE, Goal.KILL))
    prob = Problem(pos, goal, tuple(sorted(best.stones)))
    if terminal_status(prob, pos) is not Status.ONGOING:
        return None
    return prob


def generate_instances(count: int, seed: int = 0, size: int = 6, max_empty: int = 10,
                       space: tuple[int, int] = (2, 5),
                       goal: Goal | None = None) -> list[Problem]:
    """``count`` distinct random instances, reproducible from ``seed``.

    ``space`` bounds the size of the eye space; ``goal`` fixes the goal
    instead of drawing it.
    """
    rng = random.Random(seed)
    out: list[Problem] = []
    seen: set[tuple] = set()
    while len(out) < count:
        prob = random_instance(rng, size, max_empty, space=space, goal=goal)
        if prob is None:
            continue
        key = (prob.position.grid, prob.position.to_move, prob.goal, prob.crucial)
        if key in seen:
            continue
        seen.add(key)
        prob.label = f"gen{size}-{seed}-{len(out):04d}"
        out.append(prob)
    return out


# -- bundled benchmark suite -------------------------------------------------------

# Corner and edge shapes drawn in the top-left corner: X is the group the
# problem is about, O its enclosing wall, '.' empty.
CORNER_SHAPES = {
    "straight3": ("...XO", "XXXXO", "OOOOO"),
    "bent3": ("..XO", ".XXO", "XXOO", "OOO."),
    "square4": ("..XO", "..XO", "XXXO", "OOOO"),
    "corner2": ("..XO", "XXXO", "OOOO"),
    "edge3": ("O...XO", "OXXXXO", "OOOOOO"),
    "edge3m": ("OX...XO", "OXXXXXO", "OOOOOOO"),
    "straight4": ("....XO", "XXXXXO", "OOOOOO"),
    "tee4": ("...XO", "X.XXO", "XXXOO", "OOO.."),
    "bulky5": ("...XO", "..XXO", "XXXOO", "OOO.."),
    "bent3e": ("...XO", ".XXXO", "XXOOO", "OOO.."),
    "rabbit": ("....XO", "X.XXXO", "XXXOOO", "OOO..."),
    "carpenter": ("....XO", ".XXXXO", "XXOOOO", "OO...."),
}

# (board size, shape, goal, symmetry); the goal's OR side moves first.
BENCH_PROBLEMS = [
    (9, "straight3", Goal.KILL, 0), (9, "bent3", Goal.KILL, 2),
    (9, "square4", Goal.KILL, 1), (9, "corner2", Goal.KILL, 3),
    (9, "edge3", Goal.KILL, 0), (9, "edge3m", Goal.KILL, 4),
    (9, "straight4", Goal.KILL, 0), (9, "bulky5", Goal.LIVE, 0),
    (9, "tee4", Goal.LIVE, 5), (9, "straight3", Goal.LIVE, 6),
    (13, "straight3", Goal.KILL, 3), (13, "bent3", Goal.KILL, 0),
    (13, "square4", Goal.KILL, 2), (13, "edge3", Goal.KILL, 1),
    (13, "bulky5", Goal.LIVE, 7), (13, "tee4", Goal.LIVE, 0),
    (13, "rabbit", Goal.LIVE, 0),
    (19, "straight3", Goal.KILL, 0), (19, "bent3", Goal.KILL, 5),
    (19, "square4", Goal.KILL, 0), (19, "edge3", Goal.KILL, 6),
    (19, "edge3m", Goal.KILL, 0), (19, "bulky5", Goal.LIVE, 0),
    (19, "tee4", Goal.LIVE, 3), (19, "carpenter", Goal.LIVE, 0),
]


def corner_problem(shape: str, size: int, goal: Goal, symmetry: int = 0) -> Problem:
    """A shape from ``CORNER_SHAPES`` on an otherwise empty board.

    The crucial stones are the largest X block; the OR player of ``goal``
    is to move.
    """
    rows = CORNER_SHAPES[shape]
    black, white = [], []
    for r, row in enumerate(rows):
        for c, ch in enumerate(row):
            p = _transform(size, r * size + c, symmetry)
            if ch == "X":
                black.append(p)
            elif ch == "O":
                white.append(p)
    to_move = BLACK if goal is Goal.LIVE else WHITE
    pos = Position.setup(size, black, white, to_move)
    blocks = {min(b.stones): b for b in (pos.block_at(p) for p in black)}
    best = max(blocks.values(), key=lambda b: (len(b.stones), -min(b.stones)))
    label = f"{size:02d}-{shape}-{goal.value}"
    return Problem(pos, goal, tuple(sorted(best.stones)), label=label)


def curated_suite() -> ProblemSuite:
    """The problems behind the bundled suite, built from their templates."""
    return ProblemSuite([corner_problem(shape, size, goal, k)
                         for size, shape, goal, k in BENCH_PROBLEMS])


def bench_dir() -> Path:
    return Path(str(resources.files("rzgo") / "data" / "bench"))


def bench_suite() -> ProblemSuite:
    """The bundled corner/edge suite on 9x9 to 19x19 boards."""
    return ProblemSuite.from_directory(bench_dir())


__all__ = ["polyominoes", "canonical", "shape_name", "EyeShape", "eye_shape_corpus",
           "random_instance", "generate_instances", "bench_dir", "bench_suite",
           "CORNER_SHAPES", "BENCH_PROBLEMS", "corner_problem", "curated_suite",
           "load_sgf"]
