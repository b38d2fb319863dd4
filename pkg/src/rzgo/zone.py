"""Relevance-zone algebra.

A zone ``Z`` attached to a proven position ``p`` claims: every position that
agrees with ``p`` on ``Z`` (same player to move) is won by the same player
with the same strategy.  The propagation rules below add the points whose
contents decide legality and captures of the moves in that strategy, so the
claim survives arbitrary edits outside the zone:

* a capture footprint (captured stones plus their neighbours) pins the
  captured block exactly, so the capture also happens elsewhere;
* an *anchor* (all stones of a block plus one of its liberties) guarantees
  the block keeps a liberty, so it is neither captured nor a suicide.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from .board import EMPTY, PASS, Position, neighbors
from .life import UcaProof


class NoProof(ValueError):
    pass


class Zone:
    """Set of points on a board, stored as an int bitmask."""

    __slots__ = ("size", "bits")

    def __init__(self, size: int, bits: int = 0):
        self.size = size
        self.bits = bits

    @classmethod
    def of(cls, size: int, points: Iterable[int]) -> Zone:
        bits = 0
        for p in points:
            if p == PASS:
                continue
            if not 0 <= p < size * size:
                raise ValueError(f"point {p} off board")
            bits |= 1 << p
        return cls(size, bits)

    @classmethod
    def full(cls, size: int) -> Zone:
        return cls(size, (1 << (size * size)) - 1)

    def __contains__(self, p: int) -> bool:
        return p >= 0 and (self.bits >> p) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __or__(self, other: Zone | Iterable[int]) -> Zone:
        if isinstance(other, Zone):
            return Zone(self.size, self.bits | other.bits)
        return Zone(self.size, self.bits | Zone.of(self.size, other).bits)

    def __and__(self, other: Zone) -> Zone:
        return Zone(self.size, self.bits & other.bits)

    def __le__(self, other: Zone) -> bool:
        return self.bits & ~other.bits == 0

    def __ge__(self, other: Zone) -> bool:
        return other <= self

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Zone) and self.size == other.size and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.size, self.bits))

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        return f"Zone({self.size}, {self.to_list()})"

    def add(self, p: int) -> Zone:
        return Zone(self.size, self.bits | (1 << p)) if p != PASS else self

    def complement(self) -> Zone:
        return Zone(self.size, ((1 << (self.size * self.size)) - 1) & ~self.bits)

    def to_list(self) -> list[int]:
        return list(self)

    @classmethod
    def from_list(cls, size: int, points: list[int]) -> Zone:
        return cls.of(size, points)


@dataclass
class RZPattern:
    zone: Zone
    stones: bytes          # state of each zone point, in ascending point order
    to_move: int
    winner: int
    goal_id: str
    winning_move: int | None = None
    proven_depth: int = 0
    # guard data: zone-restricted views of every position on the proof
    footprint: frozenset[tuple[int, bytes]] = frozenset()
    # views of earlier positions whose repetition refused a move in the proof
    history_rejections: frozenset[tuple[int, bytes]] = frozenset()
    source: Any = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.stones) != len(self.zone):
            raise ValueError("stones must cover exactly the zone points")
        if self.winning_move is not None and self.winning_move != PASS \
                and self.winning_move not in self.zone:
            raise ValueError("winning move outside zone")

    def items(self) -> list[tuple[int, int]]:
        return list(zip(self.zone, self.stones))

    @classmethod
    def from_position(cls, position: Position, zone: Zone, winner: int, goal_id: str,
                      winning_move: int | None = None, proven_depth: int = 0,
                      **extra: Any) -> RZPattern:
        return cls(zone, restrict(position.grid, zone), position.to_move, winner, goal_id,
                   winning_move, proven_depth, **extra)


def restrict(grid: bytes, zone: Zone) -> bytes:
    return bytes(grid[p] for p in zone)


def matches(position: Position, pattern: RZPattern) -> bool:
    if position.to_move != pattern.to_move or position.size != pattern.zone.size:
        return False
    grid = position.grid
    return all(grid[p] == s for p, s in zip(pattern.zone, pattern.stones))


# -- terminal zones ------------------------------------------------------

def terminal_zone(position: Position, proof: UcaProof, crucial: Iterable[int]) -> Zone:
    """Zone certifying life of the first alive crucial block.

    Takes the crucial block, two vital regions per block (smallest first),
    and closes over every block bordering a chosen region.
    """
    if not proof:
        raise NoProof("no unconditionally alive blocks")
    start = None
    for p in sorted(crucial):
        bid = proof.block_id(p)
        if bid is not None:
            start = bid
            break
    if start is None:
        raise NoProof("no crucial block is alive")
    by_id = {min(b.stones): b for b in proof.alive_blocks}
    points: set[int] = set()
    todo, done = [start], set()
    while todo:
        bid = todo.pop()
        if bid in done:
            continue
        done.add(bid)
        points |= by_id[bid].stones
        for reg in proof.vital_regions[bid][:2]:
            points |= reg.points
            todo.extend(reg.borders - done)
    return Zone.of(position.size, points)


def capture_zone(position: Position, crucial: Iterable[int]) -> Zone:
    """Zone for the all-crucial-stones-captured terminal: the crucial points."""
    return Zone.of(position.size, crucial)


# -- propagation -----------------------------------------------------------

def _pick_liberty(libs: Iterable[int], zone: Zone, avoid: int = PASS) -> int | None:
    libs = sorted(l for l in libs if l != avoid)
    for l in libs:
        if l in zone:
            return l
    return libs[0] if libs else None


def anchor(zone: Zone, position: Position, p: int, avoid: int = PASS) -> Zone:
    """Add the whole block at ``p`` plus one liberty (other than ``avoid``)."""
    b = position.block_at(p)
    if b is None:
        return zone
    bits = zone.bits
    for s in b.stones:
        bits |= 1 << s
    lib = _pick_liberty(b.liberties, zone, avoid)
    if lib is not None:
        bits |= 1 << lib
    return Zone(zone.size, bits)


def capture_footprint(position: Position, captured: Iterable[int]) -> set[int]:
    nbrs = neighbors(position.size)
    out: set[int] = set()
    for q in captured:
        out.add(q)
        out.update(nbrs[q])
    return out


def or_propagate(child_zone: Zone, move: int, parent: Position, child: Position) -> Zone:
    """Zone of ``parent`` given that ``move`` wins into ``child``.

    Adds the move, its neighbours and the capture footprint.  Without a
    capture the mover's new block is anchored (legality), and any
    neighbouring opponent block that reaches into ``child_zone`` is
    anchored too, so it is not captured elsewhere either.
    """
    z = child_zone
    if move == PASS:
        return z
    nbrs = neighbors(parent.size)
    z = z | ([move] + list(nbrs[move]))
    if child.captured:
        z = z | capture_footprint(parent, child.captured)
    else:
        z = anchor(z, child, move)
    mover_opp = child.to_move  # opponent of the mover
    for n in nbrs[move]:
        if child.grid[n] == mover_opp:
            b = child.block_at(n)
            if any(s in child_zone for s in b.stones):
                z = anchor(z, child, n)
    return z


def and_propagate(children: Iterable[tuple[int, Zone]], size: int | None = None) -> Zone:
    """Union of the refuted children's zones and their moves."""
    bits = 0
    zsize = size
    for move, z in children:
        zsize = z.size
        bits |= z.bits
        if move is not None and move != PASS:
            bits |= 1 << move
    if zsize is None:
        raise ValueError("and_propagate needs at least one child or a size")
    return Zone(zsize, bits)


def and_move_dilation(move: int, parent: Position, child: Position, child_zone: Zone) -> Zone:
    """Extra points needed for a refuted loser move ``move``.

    The move itself, the footprint of anything it captured, and anchors for
    neighbouring winner blocks that reach into the child's zone.
    """
    z = Zone(child_zone.size, 0).add(move)
    if child.captured:
        z = z | capture_footprint(parent, child.captured)
    winner = child.to_move
    for n in neighbors(parent.size)[move]:
        if child.grid[n] == winner:
            b = child.block_at(n)
            if any(s in child_zone for s in b.stones):
                z = anchor(z | child_zone, child, n)
    return z


def illegal_point_dilation(point: int, position: Position, zone: Zone) -> Zone:
    """Points that keep an empty point a suicide for the player to move."""
    nbrs = neighbors(position.size)
    mover = position.to_move
    z = zone.add(point) | nbrs[point]
    for n in nbrs[point]:
        v = position.grid[n]
        if v == mover:
            b = position.block_at(n)
            z = z | capture_footprint(position, b.stones)
        elif v != EMPTY:
            z = anchor(z, position, n, avoid=point)
    return z


def anchor_blocks(zone: Zone, position: Position, color: int) -> Zone:
    """Anchor every ``color`` block with a stone in the zone.

    Blocks already wholly inside with a liberty inside are left alone.
    Iterates because anchoring can pull new blocks in.
    """
    while True:
        z = zone
        seen: set[int] = set()
        for p in zone:
            if position.grid[p] != color:
                continue
            b = position.block_at(p)
            bid = min(b.stones)
            if bid in seen:
                continue
            seen.add(bid)
            inside = all(s in z for s in b.stones)
            if inside and any(l in z for l in b.liberties):
                continue
            z = anchor(z, position, p)
        if z == zone:
            return z
        zone = z
