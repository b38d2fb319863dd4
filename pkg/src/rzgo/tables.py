"""Memoization backends: a full-board transposition table and a
zone-restricted pattern table stored in a trie.

Both return proven results only after a superko guard: a stored proof is
reusable when none of the positions on it repeats a position of the current
line (the winner's moves stay legal) and every loser-side superko refusal
the proof relied on still applies.

Pattern-table file format (little endian)::

    header   b"RZPT"  u16 version (=1)  u8 board_size  u32 n_patterns
    record   u16 goal_len  goal_id utf-8
             u8 to_move  u8 winner  i16 winning_move (-2 = none, -1 = pass)
             u32 proven_depth
             u16 n_points  then n_points x (u16 index, u8 state)

Footprints and sources are not persisted; loaded patterns carry an empty
footprint and so reuse only their stored result.
"""
from __future__ import annotations

import hashlib
import struct
from collections import OrderedDict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator

from .board import PASS, Position
from .zone import RZPattern, Zone, restrict

FORMAT_VERSION = 1
_NO_MOVE = -2


def verification_hash(position: Position) -> int:
    d = hashlib.blake2b(position.grid + bytes([position.to_move]), digest_size=8).digest()
    return int.from_bytes(d, "little")


@dataclass
class TableStats:
    entries: int = 0
    nodes: int = 0
    hits: int = 0
    misses: int = 0
    lookups: int = 0
    guard_rejections: int = 0
    memory_bytes: int = 0


def guard_ok(position: Position, zone: Zone, footprint: frozenset,
             rejections: frozenset) -> bool:
    """Superko guard for replaying a stored proof at ``position``.

    Only earlier positions that agree with ``position`` outside ``zone`` can
    coincide with a replayed proof position; their zone views are compared
    against the stored footprint and refusals.  A refusal counts only if
    it repeats a position played since the last pass: a pass stands for
    moves elsewhere, which would make the repetition disappear.
    """
    if not footprint and not rejections:
        return True
    outside = zone.complement()
    out_idx = list(outside)
    here = position.grid
    here_out = bytes(here[p] for p in out_idx)
    keys, recent = set(), set()
    live = position.last_move != PASS
    for h in position.line():
        if h is position:
            continue
        if bytes(h.grid[p] for p in out_idx) == here_out:
            key = (h.to_move, restrict(h.grid, zone))
            keys.add(key)
            if live:
                recent.add(key)
        if h.last_move == PASS:
            live = False
    if keys & footprint:
        return False
    return rejections <= recent


@dataclass
class TTEntry:
    hash: int
    check: int
    goal_id: str
    winner: int
    zone: Zone
    winning_move: int | None
    proven_depth: int
    footprint: frozenset = frozenset()
    history_rejections: frozenset = frozenset()
    source: Any = field(default=None, repr=False, compare=False)


class TranspositionTable:
    """Exact full-board table keyed by (Zobrist hash, goal)."""

    def __init__(self, capacity: int = 1 << 22):
        self.capacity = capacity
        self._entries: OrderedDict[tuple[int, str], TTEntry] = OrderedDict()
        self._stats = TableStats()

    def __len__(self) -> int:
        return len(self._entries)

    def store(self, entry: TTEntry) -> None:
        key = (entry.hash, entry.goal_id)
        old = self._entries.get(key)
        if old is not None and old.check == entry.check and old.proven_depth <= entry.proven_depth:
            return
        self._entries[key] = entry
        if len(self._entries) > self.capacity:
            self._entries.popitem(last=False)

    def lookup(self, position: Position, goal_id: str) -> TTEntry | None:
        st = self._stats
        st.lookups += 1
        e = self._entries.get((position.hash, goal_id))
        if e is not None and e.check == verification_hash(position):
            full = Zone.full(position.size)
            if guard_ok(position, full, e.footprint, e.history_rejections):
                st.hits += 1
                return e
            st.guard_rejections += 1
        st.misses += 1
        return None

    def stats(self) -> TableStats:
        st = self._stats
        st.entries = st.nodes = len(self._entries)
        st.memory_bytes = 200 * len(self._entries) + sum(
            40 * len(e.footprint) for e in self._entries.values())
        return TableStats(**vars(st))


class _TrieNode:
    __slots__ = ("edges", "pattern")

    def __init__(self) -> None:
        self.edges: dict[tuple[int, int], _TrieNode] = {}
        self.pattern: RZPattern | None = None


def pattern_rank(pattern: RZPattern, order: int) -> tuple[int, int, int]:
    return (len(pattern.zone), pattern.proven_depth, order)


class PatternTable:
    """Radix trie of RZ patterns, one trie per (goal, player to move).

    Each edge is an ``(index, state)`` pair; indices strictly increase along
    every root-to-leaf path.  A lookup follows every edge whose state agrees
    with the position, so points outside a pattern's zone never constrain it.
    """

    def __init__(self, capacity: int = 1_000_000):
        self.capacity = capacity
        self._roots: dict[tuple[str, int], _TrieNode] = {}
        self._order: OrderedDict[tuple[str, int, bytes, bytes], int] = OrderedDict()
        self._counter = 0
        self._node_count = 0
        self._stats = TableStats()
        self._leaf_order: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._order)

    @staticmethod
    def _key(pattern: RZPattern) -> tuple[str, int, bytes, bytes]:
        idx = b"".join(p.to_bytes(2, "little") for p in pattern.zone)
        return (pattern.goal_id, pattern.to_move, idx, pattern.stones)

    def insert(self, pattern: RZPattern) -> None:
        root = self._roots.get((pattern.goal_id, pattern.to_move))
        if root is None:
            root = self._roots[(pattern.goal_id, pattern.to_move)] = _TrieNode()
            self._node_count += 1
        node = root
        for edge in pattern.items():
            nxt = node.edges.get(edge)
            if nxt is None:
                nxt = node.edges[edge] = _TrieNode()
                self._node_count += 1
            node = nxt
        key = self._key(pattern)
        old = node.pattern
        if old is not None:
            if (len(old.zone), old.proven_depth) <= (len(pattern.zone), pattern.proven_depth):
                return
            self._leaf_order[id(pattern)] = self._leaf_order.pop(id(old))
            node.pattern = pattern
            return
        node.pattern = pattern
        self._order[key] = self._counter
        self._leaf_order[id(pattern)] = self._counter
        self._counter += 1
        while len(self._order) > self.capacity:
            self._evict()

    def _evict(self) -> None:
        (goal_id, to_move, idx, stones), _ = self._order.popitem(last=False)
        points = [int.from_bytes(idx[i:i + 2], "little") for i in range(0, len(idx), 2)]
        path = [self._roots[(goal_id, to_move)]]
        for edge in zip(points, stones):
            path.append(path[-1].edges[edge])
        leaf = path[-1]
        self._leaf_order.pop(id(leaf.pattern), None)
        leaf.pattern = None
        edges = list(zip(points, stones))
        for i in range(len(path) - 1, 0, -1):
            n = path[i]
            if n.pattern is None and not n.edges:
                del path[i - 1].edges[edges[i - 1]]
                self._node_count -= 1
            else:
                break

    def candidates(self, position: Position, to_move: int, goal_id: str) -> list[RZPattern]:
        """Every stored pattern matching ``position``, best first."""
        root = self._roots.get((goal_id, to_move))
        if root is None:
            return []
        grid = position.grid
        found = []
        stack = [root]
        while stack:
            node = stack.pop()
            if node.pattern is not None:
                found.append(node.pattern)
            for (i, s), child in node.edges.items():
                if grid[i] == s:
                    stack.append(child)
        found.sort(key=lambda p: pattern_rank(p, self._leaf_order[id(p)]))
        return found

    def lookup(self, position: Position, to_move: int, goal_id: str,
               guard: bool = True) -> RZPattern | None:
        st = self._stats
        st.lookups += 1
        for pat in self.candidates(position, to_move, goal_id):
            if not guard or guard_ok(position, pat.zone, pat.footprint, pat.history_rejections):
                st.hits += 1
                return pat
            st.guard_rejections += 1
        st.misses += 1
        return None

    def insertion_order(self, pattern: RZPattern) -> int:
        return self._leaf_order[id(pattern)]

    def patterns(self) -> Iterator[RZPattern]:
        stack = list(self._roots.values())
        while stack:
            node = stack.pop()
            if node.pattern is not None:
                yield node.pattern
            stack.extend(node.edges.values())

    def audit(self) -> bool:
        """Check the increasing-index invariant and leaf reconstruction."""
        for (goal_id, to_move), root in self._roots.items():
            stack = [(root, -1, [])]
            while stack:
                node, last, path = stack.pop()
                if node.pattern is not None:
                    p = node.pattern
                    if path != p.items() or p.goal_id != goal_id or p.to_move != to_move:
                        return False
                for (i, s), child in node.edges.items():
                    if i <= last:
                        return False
                    stack.append((child, i, path + [(i, s)]))
        return True

    def stats(self) -> TableStats:
        st = self._stats
        st.entries = len(self._order)
        st.nodes = self._node_count
        st.memory_bytes = 120 * self._node_count + sum(
            40 * len(p.footprint) for p in self.patterns())
        return TableStats(**vars(st))

    # -- persistence -----------------------------------------------------
    def save(self, path: str | Path, size: int) -> None:
        pats = sorted(self.patterns(), key=lambda p: self._leaf_order[id(p)])
        out = [b"RZPT", struct.pack("<HBI", FORMAT_VERSION, size, len(pats))]
        for p in pats:
            g = p.goal_id.encode()
            wm = _NO_MOVE if p.winning_move is None else p.winning_move
            out.append(struct.pack("<H", len(g)) + g)
            out.append(struct.pack("<BBhIH", p.to_move, p.winner, wm, p.proven_depth,
                                   len(p.zone)))
            out.extend(struct.pack("<HB", i, s) for i, s in p.items())
        Path(path).write_bytes(b"".join(out))

    @classmethod
    def load(cls, path: str | Path, capacity: int = 1_000_000) -> tuple[PatternTable, int]:
        data = Path(path).read_bytes()
        if data[:4] != b"RZPT":
            raise ValueError("not a pattern-table file")
        version, size, n = struct.unpack_from("<HBI", data, 4)
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported version {version}")
        off = 4 + struct.calcsize("<HBI")
        table = cls(capacity)
        for _ in range(n):
            (glen,) = struct.unpack_from("<H", data, off)
            off += 2
            goal_id = data[off:off + glen].decode()
            off += glen
            to_move, winner, wm, depth, k = struct.unpack_from("<BBhIH", data, off)
            off += struct.calcsize("<BBhIH")
            pts, states = [], []
            for _ in range(k):
                i, s = struct.unpack_from("<HB", data, off)
                off += 3
                pts.append(i)
                states.append(s)
            table.insert(RZPattern(Zone.of(size, pts), bytes(states), to_move, winner,
                                   goal_id, None if wm == _NO_MOVE else wm, depth))
        return table, size
