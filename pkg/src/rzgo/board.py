"""Go rules kernel.

Points are integer indices ``row * size + col``.  A position is an immutable
value: :func:`play` returns a new one.  The ko rule is positional superko
over ``(grid, to_move)``; suicide is illegal.  A pass is always legal.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

EMPTY, BLACK, WHITE = 0, 1, 2
PASS = -1
MAX_SIZE = 19
MIN_SIZE = 5

ZOBRIST_SEED = 20230917

_rng = random.Random(ZOBRIST_SEED)
# one key per (point, color); index 0 unused so that key[point][EMPTY] == 0
_STONE_KEYS = [[0, _rng.getrandbits(64), _rng.getrandbits(64)]
               for _ in range(MAX_SIZE * MAX_SIZE)]
_WHITE_TO_MOVE_KEY = _rng.getrandbits(64)

_NEIGHBORS: dict[int, tuple[tuple[int, ...], ...]] = {}


class IllegalMove(ValueError):
    def __init__(self, move: int, reason: str):
        super().__init__(f"illegal move {move}: {reason}")
        self.move = move
        self.reason = reason


def opponent(color: int) -> int:
    return 3 - color


def color_name(color: int) -> str:
    return {BLACK: "B", WHITE: "W", EMPTY: "."}[color]


def neighbors(size: int) -> tuple[tuple[int, ...], ...]:
    """4-neighbourhood table for a board size, cached."""
    table = _NEIGHBORS.get(size)
    if table is None:
        rows = []
        for p in range(size * size):
            r, c = divmod(p, size)
            nb = []
            if r > 0:
                nb.append(p - size)
            if c > 0:
                nb.append(p - 1)
            if c < size - 1:
                nb.append(p + 1)
            if r < size - 1:
                nb.append(p + size)
            rows.append(tuple(nb))
        table = _NEIGHBORS[size] = tuple(rows)
    return table


def point(size: int, col: int, row: int) -> int:
    if not (0 <= col < size and 0 <= row < size):
        raise ValueError(f"({col}, {row}) is off a {size}x{size} board")
    return row * size + col


def coords(size: int, p: int) -> tuple[int, int]:
    """(col, row) of a point."""
    row, col = divmod(p, size)
    return col, row


def zobrist(grid: bytes | bytearray, to_move: int) -> int:
    """Hash recomputed from scratch."""
    h = _WHITE_TO_MOVE_KEY if to_move == WHITE else 0
    for p, s in enumerate(grid):
        if s:
            h ^= _STONE_KEYS[p][s]
    return h


def stone_key(p: int, color: int) -> int:
    return _STONE_KEYS[p][color]


@dataclass(frozen=True)
class Block:
    color: int
    stones: frozenset[int]
    liberties: frozenset[int]


class Position:
    """Board state plus the bookkeeping needed for superko.

    ``history_hashes`` holds the hash of this position and every earlier one
    on the current line; ``prev`` links back to the previous position so the
    full grids of the line can be recovered.
    """

    __slots__ = ("size", "grid", "to_move", "hash", "history_hashes", "prev",
                 "last_move", "captured", "consecutive_passes", "_blocks")

    def __init__(self, size: int, grid: bytes, to_move: int, *, hash: int | None = None,
                 history_hashes: frozenset[int] | None = None, prev: Position | None = None,
                 last_move: int | None = None, captured: tuple[int, ...] = (),
                 consecutive_passes: int = 0):
        self.size = size
        self.grid = bytes(grid)
        self.to_move = to_move
        self.hash = zobrist(self.grid, to_move) if hash is None else hash
        self.history_hashes = (frozenset((self.hash,)) if history_hashes is None
                               else history_hashes)
        self.prev = prev
        self.last_move = last_move
        self.captured = captured
        self.consecutive_passes = consecutive_passes
        self._blocks: dict[int, Block] | None = None

    @classmethod
    def empty(cls, size: int, to_move: int = BLACK) -> Position:
        if not MIN_SIZE <= size <= MAX_SIZE:
            raise ValueError(f"board size {size} not in [{MIN_SIZE}, {MAX_SIZE}]")
        return cls(size, bytes(size * size), to_move)

    @classmethod
    def setup(cls, size: int, black: Iterable[int] = (), white: Iterable[int] = (),
              to_move: int = BLACK) -> Position:
        """Position from setup stones, validated to have no dead blocks."""
        if not MIN_SIZE <= size <= MAX_SIZE:
            raise ValueError(f"board size {size} not in [{MIN_SIZE}, {MAX_SIZE}]")
        grid = bytearray(size * size)
        for color, pts in ((BLACK, black), (WHITE, white)):
            for p in pts:
                if not 0 <= p < size * size:
                    raise ValueError(f"point {p} off board")
                if grid[p]:
                    raise ValueError(f"point {p} set twice")
                grid[p] = color
        pos = cls(size, bytes(grid), to_move)
        for b in pos.blocks():
            if not b.liberties:
                raise ValueError(f"block at {min(b.stones)} has no liberties")
        return pos

    @classmethod
    def from_rows(cls, rows: str | list[str], to_move: int = BLACK) -> Position:
        """Parse a diagram of ``X`` (black), ``O`` (white) and ``.`` rows."""
        if isinstance(rows, str):
            rows = [r.strip() for r in rows.strip().splitlines() if r.strip()]
        rows = [r.replace(" ", "") for r in rows]
        size = len(rows)
        black, white = [], []
        for r, line in enumerate(rows):
            if len(line) != size:
                raise ValueError("diagram must be square")
            for c, ch in enumerate(line):
                if ch in "Xx#":
                    black.append(r * size + c)
                elif ch in "Oo":
                    white.append(r * size + c)
        return cls.setup(size, black, white, to_move)

    # -- queries ---------------------------------------------------------
    def __getitem__(self, p: int) -> int:
        return self.grid[p]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Position) and self.size == other.size
                and self.grid == other.grid and self.to_move == other.to_move)

    def __hash__(self) -> int:
        return self.hash

    def __repr__(self) -> str:
        return f"Position(size={self.size}, to_move={color_name(self.to_move)}, hash={self.hash:#x})"

    def line(self) -> Iterator[Position]:
        """This position and its predecessors, most recent first."""
        p: Position | None = self
        while p is not None:
            yield p
            p = p.prev

    def block_at(self, p: int) -> Block | None:
        if self.grid[p] == EMPTY:
            return None
        if self._blocks is None:
            self._index_blocks()
        return self._blocks[p]

    def blocks(self) -> list[Block]:
        if self._blocks is None:
            self._index_blocks()
        seen, out = set(), []
        for p in sorted(self._blocks):
            b = self._blocks[p]
            if id(b) not in seen:
                seen.add(id(b))
                out.append(b)
        return out

    def _index_blocks(self) -> None:
        nbrs = neighbors(self.size)
        grid = self.grid
        index: dict[int, Block] = {}
        for p, s in enumerate(grid):
            if s == EMPTY or p in index:
                continue
            stones, libs, stack = {p}, set(), [p]
            while stack:
                q = stack.pop()
                for n in nbrs[q]:
                    v = grid[n]
                    if v == s:
                        if n not in stones:
                            stones.add(n)
                            stack.append(n)
                    elif v == EMPTY:
                        libs.add(n)
            b = Block(s, frozenset(stones), frozenset(libs))
            for q in stones:
                index[q] = b
        self._blocks = index

    def empty_points(self) -> list[int]:
        return [p for p, s in enumerate(self.grid) if s == EMPTY]

    def stones(self, color: int) -> list[int]:
        return [p for p, s in enumerate(self.grid) if s == color]


def blocks(position: Position) -> list[Block]:
    return position.blocks()


def _resolve(pos: Position, move: int) -> tuple[bytes, int, tuple[int, ...]]:
    """Grid, hash and captured points after ``move``; superko not checked."""
    grid = pos.grid
    if not 0 <= move < len(grid):
        raise IllegalMove(move, "off board")
    if grid[move] != EMPTY:
        raise IllegalMove(move, "occupied")
    color = pos.to_move
    opp = 3 - color
    nbrs = neighbors(pos.size)
    h = pos.hash ^ _STONE_KEYS[move][color] ^ _WHITE_TO_MOVE_KEY
    captured: list[int] = []
    has_liberty = False
    for n in nbrs[move]:
        v = grid[n]
        if v == EMPTY:
            has_liberty = True
        elif v == opp and n not in captured:
            b = pos.block_at(n)
            if b.liberties == {move}:
                captured.extend(b.stones)
    if not captured and not has_liberty:
        # no empty neighbour and nothing captured: only a friendly block
        # with another liberty can save the move
        for n in nbrs[move]:
            if grid[n] == color and len(pos.block_at(n).liberties) > 1:
                has_liberty = True
                break
        if not has_liberty:
            raise IllegalMove(move, "suicide")
    g = bytearray(grid)
    g[move] = color
    for q in captured:
        g[q] = EMPTY
        h ^= _STONE_KEYS[q][opp]
    return bytes(g), h, tuple(sorted(captured))


def play(position: Position, move: int, check_superko: bool = True) -> Position:
    """Return the position after ``move`` (a point index or ``PASS``)."""
    pos = position
    if move == PASS:
        h = pos.hash ^ _WHITE_TO_MOVE_KEY
        return Position(pos.size, pos.grid, 3 - pos.to_move, hash=h,
                        history_hashes=pos.history_hashes | {h}, prev=pos,
                        last_move=PASS, consecutive_passes=pos.consecutive_passes + 1)
    grid, h, captured = _resolve(pos, move)
    if check_superko and h in pos.history_hashes:
        raise IllegalMove(move, "superko")
    return Position(pos.size, grid, 3 - pos.to_move, hash=h,
                    history_hashes=pos.history_hashes | {h}, prev=pos,
                    last_move=move, captured=captured)


def result_hash(position: Position, move: int) -> int | None:
    """Hash after ``move`` ignoring superko, or None if occupied/suicide."""
    if move == PASS:
        return position.hash ^ _WHITE_TO_MOVE_KEY
    try:
        return _resolve(position, move)[1]
    except IllegalMove:
        return None


def is_legal(position: Position, move: int) -> bool:
    if move == PASS:
        return True
    h = result_hash(position, move)
    return h is not None and h not in position.history_hashes


def legal_moves(position: Position) -> list[int]:
    """Legal stone moves (no pass), in index order."""
    return [p for p in range(len(position.grid)) if position.grid[p] == EMPTY
            and is_legal(position, p)]


def superko_moves(position: Position) -> list[int]:
    """Stone moves that are legal except for the superko rule."""
    out = []
    for p in range(len(position.grid)):
        if position.grid[p] == EMPTY:
            h = result_hash(position, p)
            if h is not None and h in position.history_hashes:
                out.append(p)
    return out
