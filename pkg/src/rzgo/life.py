"""Unconditional life (Benson's algorithm).

Definitions used here, for a color ``c``:

* a *region* is a maximal 4-connected set of points not holding a ``c``
  stone (it may contain opponent stones);
* a region is *vital* to a block ``b`` of ``c`` when every empty point of
  the region is a liberty of ``b``;
* starting from all blocks of ``c`` and all regions, repeatedly drop blocks
  with fewer than two vital regions, and regions bordered by a dropped
  block, until nothing changes.  The surviving blocks are unconditionally
  alive: the opponent cannot capture them even when moving every turn.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .board import EMPTY, Block, Position, neighbors


class ResourceExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Region:
    points: frozenset[int]
    empties: frozenset[int]
    borders: frozenset[int]  # ids (smallest stone) of bordering blocks


@dataclass
class UcaProof:
    color: int
    alive_blocks: list[Block] = field(default_factory=list)
    # block id -> vital regions surviving the fixpoint
    vital_regions: dict[int, list[Region]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.alive_blocks)

    def alive_points(self) -> set[int]:
        return {p for b in self.alive_blocks for p in b.stones}

    def contains(self, p: int) -> bool:
        return any(p in b.stones for b in self.alive_blocks)

    def block_id(self, p: int) -> int | None:
        for b in self.alive_blocks:
            if p in b.stones:
                return min(b.stones)
        return None


def _block_id(b: Block) -> int:
    return min(b.stones)


def benson_uca(position: Position, color: int, seeds: list[int] | None = None) -> UcaProof:
    """Unconditionally alive blocks of ``color``.

    With ``seeds`` (points holding ``color`` stones) only the blocks reachable
    from the seeds through potentially vital regions are examined; the result
    for those blocks is the same as for the full computation.
    """
    size = position.size
    nbrs = neighbors(size)
    grid = position.grid

    if seeds is None:
        start = [b for b in position.blocks() if b.color == color]
    else:
        start = [position.block_at(p) for p in seeds if grid[p] == color]

    blocks: dict[int, Block] = {}
    regions: list[Region] = []
    region_of: dict[int, int] = {}   # point -> index into regions, -1 if never vital
    queue = list(start)
    while queue:
        b = queue.pop()
        bid = _block_id(b)
        if bid in blocks:
            continue
        blocks[bid] = b
        for s in b.stones:
            for n in nbrs[s]:
                if grid[n] == color or n in region_of:
                    continue
                reg = _flood_region(position, color, n, region_of, len(regions))
                if reg is None:
                    continue
                regions.append(reg)
                for q in reg.borders:
                    if q not in blocks:
                        queue.append(position.block_at(q))

    def vital(reg: Region, bid: int) -> bool:
        return bid in reg.borders and reg.empties <= blocks[bid].liberties

    alive = set(blocks)
    live_regions = set(range(len(regions)))
    while True:
        counts = {bid: 0 for bid in alive}
        for ri in live_regions:
            for bid in regions[ri].borders:
                if bid in counts and vital(regions[ri], bid):
                    counts[bid] += 1
        dead = {bid for bid, k in counts.items() if k < 2}
        alive -= dead
        drop = {ri for ri in live_regions if not regions[ri].borders <= alive}
        live_regions -= drop
        if not dead and not drop:
            break

    proof = UcaProof(color)
    for bid in sorted(alive):
        proof.alive_blocks.append(blocks[bid])
        proof.vital_regions[bid] = sorted(
            (regions[ri] for ri in live_regions if vital(regions[ri], bid)),
            key=lambda r: (len(r.points), min(r.points)))
    return proof


def _flood_region(position: Position, color: int, start: int,
                  region_of: dict[int, int], index: int) -> Region | None:
    """Flood the region containing ``start``; None if it cannot be vital."""
    nbrs = neighbors(position.size)
    grid = position.grid
    pts, empties, borders, stack = {start}, set(), set(), [start]
    small = True
    while stack:
        q = stack.pop()
        touches = False
        for n in nbrs[q]:
            v = grid[n]
            if v == color:
                touches = True
                borders.add(n)
            elif n not in pts:
                if region_of.get(n) == -1:
                    small = False
                    break
                pts.add(n)
                stack.append(n)
        if grid[q] == EMPTY:
            empties.add(q)
            if not touches:
                small = False
        if not small:
            break
    if not small:
        for q in pts:
            region_of[q] = -1
        return None
    for q in pts:
        region_of[q] = index
    ids = frozenset(min(position.block_at(s).stones) for s in borders)
    return Region(frozenset(pts), frozenset(empties), ids)


def uca_oracle(position: Position, color: int, block: Block | int,
               max_empty: int = 16, max_nodes: int = 2_000_000) -> bool:
    """Brute-force check that ``block`` survives any number of opponent moves.

    The defender never moves; the opponent plays every turn on any empty
    point where the move is legal (suicide forbidden).  Opponent stones are
    never removed, so positions cannot repeat and superko never applies.
    """
    if isinstance(block, int):
        block = position.block_at(block)
    target = min(block.stones)
    empties = position.empty_points()
    if len(empties) > max_empty:
        raise ResourceExceeded(f"{len(empties)} empty points > {max_empty}")
    nbrs = neighbors(position.size)
    opp = 3 - color
    seen: set[bytes] = set()
    budget = [max_nodes]

    def libs_and_stones(g: bytearray, p: int) -> tuple[set[int], set[int]]:
        s = g[p]
        stones, libs, stack = {p}, set(), [p]
        while stack:
            q = stack.pop()
            for n in nbrs[q]:
                if g[n] == s and n not in stones:
                    stones.add(n)
                    stack.append(n)
                elif g[n] == EMPTY:
                    libs.add(n)
        return stones, libs

    def captures(g: bytes) -> bool:
        if g in seen:
            return False
        seen.add(g)
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceExceeded("uca_oracle node budget")
        for p in range(len(g)):
            if g[p] != EMPTY:
                continue
            h = bytearray(g)
            h[p] = opp
            removed: set[int] = set()
            for n in nbrs[p]:
                if h[n] == color and n not in removed:
                    stones, libs = libs_and_stones(h, n)
                    if not libs:
                        removed |= stones
            for q in removed:
                h[q] = EMPTY
            if not removed and not libs_and_stones(h, p)[1]:
                continue  # suicide
            if target in removed:
                return True
            if captures(bytes(h)):
                return True
        return False

    return not captures(position.grid)
