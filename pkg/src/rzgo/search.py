"""Relevance-zone based best-first search.

PUCT-guided tree search with proof backup.  Every proven node records a
winner and a zone.  For wins of the OR player the zone is a relevance zone:

* at an OR node (OR to move) one winning child suffices and its zone is
  widened by :func:`~rzgo.zone.or_propagate`;
* at an AND node the null move (a pass standing for every move outside the
  zone) is searched first; the working zone is then closed under the
  refuted in-zone replies, anchoring and legality rules until every legal
  AND move inside it is refuted.

Wins of the AND player carry the whole board as zone: every legal OR move
must be refuted.  The OR player never passes; a pass can only help the
opponent, who may answer it with a pass.

Superko makes results depend on the line played.  An in-zone AND move
refused by superko counts as refuted only if the repeated position arose
after the last pass: a pass stands for moves elsewhere, which in a real
game would break the repetition.  Otherwise the AND node is unprovable
for OR.  Stored results are reused only after a guard against the
current line (see :mod:`rzgo.tables`).
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .board import EMPTY, PASS, IllegalMove, Position, _resolve, play, result_hash
from .evaluator import Evaluator, default_evaluator
from .problems import Goal, InvalidProblem, Problem, Status, terminal_info
from .tables import PatternTable, TranspositionTable, TTEntry, verification_hash
from .zone import (RZPattern, Zone, and_move_dilation, anchor_blocks, capture_zone,
                   illegal_point_dilation, or_propagate, restrict, terminal_zone)


@dataclass
class SolverConfig:
    backend: str = "tt"
    max_nodes: int = 100_000
    time_limit_ms: int | None = None
    seed: int = 0
    c_puct: float = 1.5
    depth_cap: int | None = None
    tt_capacity: int = 1 << 22
    pt_capacity: int = 1_000_000

    def __post_init__(self) -> None:
        if self.backend not in ("tt", "pt"):
            raise ValueError(f"unknown backend {self.backend!r}")


@dataclass
class SolverStats:
    nodes: int = 0
    iterations: int = 0
    table_hits: int = 0
    pattern_reuses: int = 0
    wall_ms: float = 0.0
    max_depth: int = 0


class SearchNode:
    __slots__ = ("_pos", "move", "parent", "depth", "children", "expanded",
                 "winner", "zone", "proven_depth", "best", "required",
                 "no_or", "no_and", "via", "terminal", "rejected",
                 "visits", "value_sum", "prior", "pending", "dead")

    def __init__(self, position: Position | None, move: int | None, parent: SearchNode | None,
                 prior: float = 0.0):
        self._pos = position    # built on first access for children
        self.move = move
        self.parent = parent
        self.depth = 0 if parent is None else parent.depth + 1
        self.children: dict[int, SearchNode] = {}
        self.expanded = False
        self.winner: int | None = None
        self.zone: Zone | None = None
        self.proven_depth: int | None = None
        self.best: int | None = None
        self.required: tuple[int, ...] = ()   # refuted in-zone moves of a proven AND node
        self.pending: tuple[int, ...] = ()    # in-zone moves still to refute
        self.no_or = False
        self.no_and = False
        self.via = None                       # table entry that proved this node
        self.terminal = False
        self.rejected: tuple[int, ...] = ()   # stone moves refused by superko only
        self.visits = 0
        self.value_sum = 0.0
        self.prior = prior
        self.dead = False                     # no proof reachable below (depth cap)

    @property
    def position(self) -> Position:
        if self._pos is None:
            self._pos = play(self.parent.position, self.move, check_superko=False)
        return self._pos

    @property
    def to_move(self) -> int:
        return 3 - self.parent.to_move if self._pos is None else self._pos.to_move

    @property
    def q(self) -> float:
        return self.value_sum / self.visits if self.visits else 0.0

    @property
    def resolved(self) -> bool:
        return self.winner is not None or (self.no_or and self.no_and)

    def __repr__(self) -> str:
        return (f"SearchNode(move={self.move}, depth={self.depth}, winner={self.winner}, "
                f"visits={self.visits})")


def move_order(move: int, size: int) -> int:
    return size * size if move == PASS else move


class Solver:
    """One search over one problem; see :func:`solve`."""

    def __init__(self, problem: Problem, config: SolverConfig | None = None,
                 evaluator: Evaluator | None = None,
                 table: TranspositionTable | PatternTable | None = None):
        self.problem = problem
        self.config = config or SolverConfig()
        self.evaluator = evaluator or default_evaluator
        self.or_color = problem.or_color
        self.and_color = problem.and_color
        self.goal_id = problem.goal_id
        self.size = problem.position.size
        if table is None:
            table = (TranspositionTable(self.config.tt_capacity) if self.config.backend == "tt"
                     else PatternTable(self.config.pt_capacity))
        self.table = table
        self.stats = SolverStats()
        empties = len(problem.position.empty_points())
        self.depth_cap = self.config.depth_cap or 2 * empties + 20
        self.root = SearchNode(problem.position, None, None, 1.0)

    # -- expansion ------------------------------------------------------
    def expand(self, node: SearchNode) -> float:
        """Expand a leaf; returns its value for the player to move."""
        node.expanded = True
        self.stats.nodes += 1
        self.stats.max_depth = max(self.stats.max_depth, node.depth)
        pos = node.position
        status, proof = terminal_info(self.problem, pos)
        if status is Status.OR_WINS:
            if self.problem.goal is Goal.LIVE:
                zone = terminal_zone(pos, proof, self.problem.crucial)
            else:
                zone = capture_zone(pos, self.problem.crucial)
            self._prove(node, self.or_color, zone, 0, None)
            node.terminal = True
            return self._proven_value(node)
        if status is Status.AND_WINS:
            self._prove(node, self.and_color, Zone.full(self.size), 0, None)
            node.terminal = True
            return self._proven_value(node)
        if node.depth >= self.depth_cap:
            node.no_or = node.no_and = node.dead = True
            return 0.0

        if self._table_lookup(node):
            return self._proven_value(node)

        is_or = pos.to_move == self.or_color
        moves, rejected = [], []
        for p in range(self.size * self.size):
            if pos.grid[p]:
                continue
            h = result_hash(pos, p)
            if h is None:
                continue
            if h in pos.history_hashes:
                rejected.append(p)
            else:
                moves.append(p)
        node.rejected = tuple(rejected)
        if not is_or:
            moves.append(PASS)
        if not moves:
            # OR cannot move: the opponent simply passes the game out
            self._prove(node, self.and_color, Zone.full(self.size), 0, None)
            node.terminal = True
            return self._proven_value(node)
        value, priors = self.evaluator(pos, self.problem, moves)
        for m in moves:
            node.children[m] = SearchNode(None, m, node, priors.get(m, 0.0))
        return value

    def _table_lookup(self, node: SearchNode) -> bool:
        pos = node.position
        if isinstance(self.table, TranspositionTable):
            e = self.table.lookup(pos, self.goal_id)
            if e is None:
                return False
            self.stats.table_hits += 1
            self._prove(node, e.winner, e.zone, e.proven_depth, e.winning_move)
        else:
            e = self.table.lookup(pos, pos.to_move, self.goal_id)
            if e is None:
                return False
            self.stats.table_hits += 1
            self.stats.pattern_reuses += 1
            self._prove(node, e.winner, e.zone, e.proven_depth, e.winning_move)
        node.via = e
        return True

    def _prove(self, node: SearchNode, winner: int, zone: Zone, depth: int,
               best: int | None, required: tuple[int, ...] = ()) -> None:
        node.winner = winner
        node.zone = zone
        node.proven_depth = depth
        node.best = best
        node.required = required
        node.pending = ()
        node.no_or = winner != self.or_color
        node.no_and = winner == self.or_color

    def _proven_value(self, node: SearchNode) -> float:
        return 1.0 if node.winner == node.to_move else -1.0

    # -- proof backup ---------------------------------------------------------
    def backup_proof(self, node: SearchNode) -> bool:
        """Recompute the proof state of an expanded node; True if it changed."""
        if node.winner is not None or not node.expanded or node.dead:
            return False
        before = (node.winner, node.no_or, node.no_and)
        if node.to_move == self.or_color:
            self._update_or_node(node)
        else:
            self._update_and_node(node)
        if node.winner is not None:
            self._store(node)
        return (node.winner, node.no_or, node.no_and) != before

    def _update_or_node(self, node: SearchNode) -> None:
        kids = list(node.children.values())
        wins = [k for k in kids if k.winner == self.or_color]
        if wins:
            k = min(wins, key=lambda k: (k.proven_depth, len(k.zone),
                                         move_order(k.move, self.size)))
            zone = or_propagate(k.zone, k.move, node.position, k.position)
            self._prove(node, self.or_color, zone, k.proven_depth + 1, k.move)
            return
        if all(k.winner == self.and_color for k in kids):
            depth = 1 + max(k.proven_depth for k in kids)
            self._prove(node, self.and_color, Zone.full(self.size), depth, None)
            return
        node.no_or = all(k.no_or for k in kids)
        node.no_and = any(k.no_and for k in kids)

    def _update_and_node(self, node: SearchNode) -> None:
        kids = list(node.children.values())
        wins = [k for k in kids if k.winner == self.and_color]
        if wins:
            k = min(wins, key=lambda k: (k.proven_depth, move_order(k.move, self.size)))
            self._prove(node, self.and_color, Zone.full(self.size), k.proven_depth + 1, k.move)
            return
        node.no_and = all(k.no_and for k in kids)
        null = node.children[PASS]
        if null.winner != self.or_color:
            node.no_or = null.no_or
            return
        zone, missing, blocked, depth = self.and_closure(node)
        if blocked:
            node.no_or = True
            node.pending = ()
            return
        if not missing:
            req = tuple(sorted(m for m in node.children if m != PASS and m in zone))
            self._prove(node, self.or_color, zone, depth + 1, None, req)
            return
        # moves outside the zone lose like the null move, so only the
        # unrefuted in-zone moves can still win for AND
        node.pending = tuple(missing)
        node.no_or = any(node.children[m].no_or for m in missing)
        node.no_and = all(node.children[m].no_and for m in missing)

    def and_closure(self, node: SearchNode) -> tuple[Zone, list[int], bool, int]:
        """Refutation fixpoint of an AND node whose null move is refuted.

        Returns (working zone, unrefuted in-zone moves, blocked, max depth).
        Blocked means an in-zone AND move is refused by superko through a
        repetition that reaches back past a pass.
        """
        pos = node.position
        kids = node.children
        null = kids[PASS]
        zone = null.zone
        depth = null.proven_depth
        rejected = set(node.rejected)
        recent = recent_hashes(pos) if rejected else set()
        done: set[int] = set()
        while True:
            zone = anchor_blocks(zone, pos, self.or_color)
            missing = []
            grown = zone
            for p in zone:
                if pos.grid[p] or p in done:
                    continue
                k = kids.get(p)
                if k is not None:
                    if k.winner == self.or_color:
                        grown = grown | k.zone | and_move_dilation(p, pos, k.position, k.zone)
                        depth = max(depth, k.proven_depth)
                        done.add(p)
                    else:
                        missing.append(p)
                elif p in rejected:
                    if result_hash(pos, p) not in recent:
                        return zone, [], True, depth
                    done.add(p)
                else:
                    grown = illegal_point_dilation(p, pos, grown)
                    done.add(p)
            if grown == zone:
                return zone, missing, False, depth
            zone = grown

    # -- table storage --------------------------------------------------------
    def _store(self, node: SearchNode) -> None:
        if node.terminal or node.via is not None:
            return
        zone = node.zone if isinstance(self.table, PatternTable) else Zone.full(self.size)
        footprint, rejections = proof_footprint(self, node, zone)
        pos = node.position
        if isinstance(self.table, TranspositionTable):
            self.table.store(TTEntry(pos.hash, verification_hash(pos), self.goal_id,
                                     node.winner, node.zone, node.best, node.proven_depth,
                                     footprint, rejections, node))
        else:
            self.table.insert(RZPattern.from_position(
                pos, node.zone, node.winner, self.goal_id,
                node.best if node.winner == pos.to_move else None, node.proven_depth,
                footprint=footprint, history_rejections=rejections, source=node))

    # -- selection --------------------------------------------------------------
    def select(self, node: SearchNode) -> SearchNode | None:
        """PUCT choice among children that can still settle ``node``.

        Children that can no longer help either side's proof are skipped;
        at AND nodes the null move is always tried first.
        """
        kids = node.children
        cands: dict[int, SearchNode] = {}
        if node.to_move == self.and_color:
            null = kids[PASS]
            if not null.expanded:
                return null
            refuted = null.winner == self.or_color
            if not node.no_and:
                pool = ((m, kids[m]) for m in node.pending) if refuted else kids.items()
                cands.update((m, k) for m, k in pool if not k.resolved and not k.no_and)
            if not node.no_or:
                if not refuted:
                    if not null.resolved:
                        cands[PASS] = null
                else:
                    cands.update((m, kids[m]) for m in node.pending
                                 if not kids[m].resolved and not kids[m].no_or)
        else:
            if not node.no_or:
                cands.update((m, k) for m, k in kids.items() if not k.resolved and not k.no_or)
            if not node.no_and:
                cands.update((m, k) for m, k in kids.items() if not k.resolved and not k.no_and)
        if not cands:
            return None
        sq = math.sqrt(node.visits)
        c = self.config.c_puct
        return max(cands.values(), key=lambda k: (-k.q + c * k.prior * sq / (1 + k.visits),
                                                  -move_order(k.move, self.size)))

    # -- main loop -------------------------------------------------------------
    def run(self) -> SearchNode:
        cfg = self.config
        start = time.perf_counter()
        deadline = None if cfg.time_limit_ms is None else start + cfg.time_limit_ms / 1000
        root = self.root
        while not root.resolved and self.stats.nodes < cfg.max_nodes:
            if deadline is not None and time.perf_counter() > deadline:
                break
            self.stats.iterations += 1
            path = [root]
            node = root
            while node.expanded and not node.resolved:
                nxt = self.select(node)
                if nxt is None:
                    node.no_or = node.no_and = node.dead = True
                    break
                node = nxt
                path.append(node)
            if not node.expanded:
                value = self.expand(node)
            elif node.winner is not None:
                value = self._proven_value(node)
            else:
                value = 0.0
            changed = True
            for n in reversed(path):
                if changed:
                    changed = self.backup_proof(n) or n is node
                n.visits += 1
                n.value_sum += value
                value = -value
        self.stats.wall_ms = (time.perf_counter() - start) * 1000
        return root


def recent_hashes(pos: Position) -> set[int]:
    """Hashes of the positions played since the last pass, ``pos`` included."""
    out = set()
    for h in pos.line():
        out.add(h.hash)
        if h.last_move == PASS:
            break
    return out


def proof_children(solver: Solver, node: SearchNode) -> list[SearchNode]:
    """Children a proof of ``node`` depends on (empty for leaves and table hits)."""
    if node.terminal or node.via is not None or node.winner is None:
        return []
    kids = node.children
    if node.winner == node.to_move:
        return [kids[node.best]]
    if node.winner == solver.or_color:
        return [kids[PASS]] + [kids[m] for m in node.required]
    return list(kids.values())


def proof_footprint(solver: Solver, node: SearchNode, zone: Zone
                    ) -> tuple[frozenset, frozenset]:
    """Zone views of every position on the proof below ``node``, plus the
    moves the proof relied on being refused because of earlier history.
    """
    root = node.position
    external = {(h.to_move, restrict(h.grid, zone)) for h in root.line() if h is not root}
    foot: set[tuple[int, bytes]] = set()
    rej: set[tuple[int, bytes]] = set()
    stack = [node]
    while stack:
        k = stack.pop()
        pos = k.position
        if k is not node:
            foot.add((pos.to_move, restrict(pos.grid, zone)))
        if k.via is not None:
            e = k.via
            for tm, view in e.footprint:
                foot.add((tm, _remap(pos.grid, e.zone, view, zone)))
            for tm, view in e.history_rejections:
                key = (tm, _remap(pos.grid, e.zone, view, zone))
                if key in external:
                    rej.add(key)
            continue
        if k.rejected and k.winner != pos.to_move:
            for m in k.rejected:
                if k.winner == solver.or_color and m not in k.zone:
                    continue
                grid = _resolve(pos, m)[0]
                key = (3 - pos.to_move, restrict(grid, zone))
                if key in external:
                    rej.add(key)
        stack.extend(proof_children(solver, k))
    return frozenset(foot), frozenset(rej)


def _remap(grid: bytes, sub: Zone, view: bytes, zone: Zone) -> bytes:
    g = bytearray(grid)
    for p, s in zip(sub, view):
        g[p] = s
    return restrict(g, zone)


@dataclass
class Solution:
    winner: int | None
    zone: Zone | None
    tree: object | None
    stats: SolverStats
    root: SearchNode | None = field(default=None, repr=False)
    status: str = "unsolved"


def solve(problem: Problem, config: SolverConfig | None = None,
          evaluator: Evaluator | None = None,
          table: TranspositionTable | PatternTable | None = None) -> Solution:
    """Prove the problem for one side or give up within the budget."""
    from .solution import extract_tree

    colors = {problem.position.grid[p] for p in problem.crucial}
    if len(colors) != 1 or EMPTY in colors:
        raise InvalidProblem("crucial stones missing or of both colors")
    solver = Solver(problem, config, evaluator, table)
    root = solver.run()
    if root.winner is None:
        return Solution(None, None, None, solver.stats, root)
    tree = extract_tree(solver, root)
    status = "or" if root.winner == problem.or_color else "and"
    return Solution(root.winner, root.zone, tree, solver.stats, root, status)


__all__ = ["SolverConfig", "SolverStats", "SearchNode", "Solver", "Solution", "solve",
           "IllegalMove"]
