"""Solution trees: extraction from a finished search, an independent audit,
and SGF export.

A tree stores moves, never positions, so a subtree proven in one context
can be replayed in another.  Shared subtrees (transpositions, table hits)
make the tree a DAG.

For a win of the OR player an AND node lists its null branch (key
``PASS``) plus every refuted reply inside the node zone.  For a win of the
AND player an OR node lists every legal reply.  The winner's nodes list
exactly one move.
"""
from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field

from . import sgf
from .board import BLACK, PASS, IllegalMove, Position, color_name, play, result_hash
from .problems import Problem, Status, problem_root_node, terminal_info
from .zone import Zone


class MalformedTree(ValueError):
    pass


class UnverifiedSolution(ValueError):
    pass


@dataclass(eq=False)
class SolutionNode:
    to_move: int
    winner: int
    zone: Zone
    depth: int
    move: int | None = None
    children: dict[int, SolutionNode] = field(default_factory=dict)

    def count(self) -> int:
        seen: set[int] = set()
        stack = [self]
        while stack:
            n = stack.pop()
            if id(n) in seen:
                continue
            seen.add(id(n))
            stack.extend(n.children.values())
        return len(seen)

    def copy(self) -> SolutionNode:
        """Deep copy that preserves sharing."""
        memo: dict[int, SolutionNode] = {}

        def go(n: SolutionNode) -> SolutionNode:
            c = memo.get(id(n))
            if c is None:
                c = memo[id(n)] = SolutionNode(n.to_move, n.winner, n.zone, n.depth, n.move)
                c.children = {m: go(k) for m, k in n.children.items()}
            return c
        return go(self)


def extract_tree(solver, root) -> SolutionNode:
    """Build the proof DAG below a proven search node.

    Table hits are followed into the search node that produced the entry;
    entries without one (loaded from disk) become childless nodes, which
    the audit rejects unless they are terminal.
    """
    from .search import proof_children

    memo: dict[int, SolutionNode] = {}
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000))

    def go(node, move) -> SolutionNode:
        src = node
        while src.via is not None and src.via.source is not None and src.via.source is not src:
            src = src.via.source
        out = memo.get(id(src))
        if out is not None:
            return out
        out = SolutionNode(node.to_move, node.winner, node.zone, node.proven_depth, move)
        memo[id(src)] = out
        if src.via is None:
            for k in proof_children(solver, src):
                out.children[k.move] = go(k, k.move)
        return out

    try:
        return go(root, None)
    finally:
        sys.setrecursionlimit(limit)


# -- audit -------------------------------------------------------------------

def _check_node(node: SolutionNode, size: int) -> None:
    if node.winner is None or node.zone is None:
        raise MalformedTree("node without winner or zone")
    for m, k in node.children.items():
        if not isinstance(k, SolutionNode):
            raise MalformedTree(f"child {m} is not a solution node")
        if m != PASS and not 0 <= m < size * size:
            raise MalformedTree(f"child move {m} off the board")
        if k.winner != node.winner:
            raise MalformedTree("child proves a different winner")


def _legal_stone_moves(pos: Position) -> list[int]:
    out = []
    for p in range(pos.size * pos.size):
        if pos.grid[p]:
            continue
        try:
            out.append((p, play(pos, p)))
        except IllegalMove:
            pass
    return out


class _Auditor:
    def __init__(self, problem: Problem, winner: int, max_checks: int):
        self.problem = problem
        self.winner = winner
        self.or_color = problem.or_color
        self.size = problem.position.size
        self.memo: dict[tuple[int, frozenset], bool] = {}
        self.budget = max_checks

    def status_ok(self, pos: Position) -> bool | None:
        status, _ = terminal_info(self.problem, pos)
        if status is Status.ONGOING:
            return None
        won = self.or_color if status is Status.OR_WINS else 3 - self.or_color
        return won == self.winner

    def stuck_or(self, pos: Position) -> bool:
        """OR to move with no legal stone move: AND passes the game out."""
        return pos.to_move == self.or_color and not _legal_stone_moves(pos)

    def stale_refusal(self, pos: Position, zone: Zone) -> bool:
        """An in-zone move refused by a repetition that reaches past a pass."""
        recent = None
        for p in zone:
            if pos.grid[p]:
                continue
            h = result_hash(pos, p)
            if h is None or h not in pos.history_hashes:
                continue
            if recent is None:
                recent = set()
                for q in pos.line():
                    recent.add(q.hash)
                    if q.last_move == PASS:
                        break
            if h not in recent:
                return True
        return False

    def check(self, node: SolutionNode, pos: Position) -> bool:
        key = (id(node), pos.history_hashes)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.budget -= 1
        if self.budget < 0:
            raise MalformedTree("audit budget exhausted")
        res = self._check(node, pos)
        self.memo[key] = res
        return res

    def _check(self, node: SolutionNode, pos: Position) -> bool:
        _check_node(node, self.size)
        done = self.status_ok(pos)
        if done is not None:
            return done
        if not node.children:
            return self.winner != self.or_color and self.stuck_or(pos)
        kids = node.children
        if pos.to_move == self.winner:
            if len(kids) != 1:
                raise MalformedTree("winner node must name exactly one move")
            (m, k), = kids.items()
            try:
                nxt = play(pos, m)
            except IllegalMove:
                return False
            return self.check(k, nxt)
        # loser to move
        if self.winner == self.or_color:
            null = kids.get(PASS)
            if null is None or not self.check(null, play(pos, PASS)):
                return False
            if self.stale_refusal(pos, node.zone):
                return False
            for m, nxt in _legal_stone_moves(pos):
                if m in node.zone:
                    k = kids.get(m)
                    if k is None or not self.check(k, nxt):
                        return False
            return True
        for m, nxt in _legal_stone_moves(pos):
            k = kids.get(m)
            if k is None or not self.check(k, nxt):
                return False
        return True

    def walk(self, root: SolutionNode, pos: Position, rng: random.Random,
             max_plies: int = 400) -> bool:
        """One adversarial line; out-of-zone replies follow the null branch."""
        node = root
        for _ in range(max_plies):
            _check_node(node, self.size)
            done = self.status_ok(pos)
            if done is not None:
                return done
            kids = node.children
            if not kids:
                return self.winner != self.or_color and self.stuck_or(pos)
            if pos.to_move == self.winner:
                (m, node), = kids.items()
                try:
                    pos = play(pos, m)
                except IllegalMove:
                    return False
                continue
            options = _legal_stone_moves(pos)
            if self.winner == self.or_color:
                options.append((PASS, play(pos, PASS)))
                m, nxt = rng.choice(options)
                if m == PASS or m not in node.zone:
                    node = kids.get(PASS)
                else:
                    node = kids.get(m)
            else:
                if not options:
                    return False
                m, nxt = rng.choice(options)
                node = kids.get(m)
            if node is None:
                return False
            pos = nxt
        return False


def verify_solution(solution, problem: Problem, walks: int = 64, seed: int = 0,
                    max_checks: int = 2_000_000) -> bool:
    """Solver-independent audit of a solution tree.

    Replays every line of the tree from the problem position (the loser's
    pass standing in for all moves outside a node's zone), then runs
    ``walks`` random adversarial lines in which the loser really plays
    outside the zone.  Every line must end in a terminal won by the
    claimed winner.
    """
    if solution.winner is None:
        raise MalformedTree("solution has no winner")
    tree = solution.tree
    if not isinstance(tree, SolutionNode):
        raise MalformedTree("solution has no tree")
    if tree.winner != solution.winner:
        raise MalformedTree("root winner differs from solution winner")
    aud = _Auditor(problem, solution.winner, max_checks)
    if not aud.check(tree, problem.position):
        return False
    rng = random.Random(seed)
    return all(aud.walk(tree, problem.position, rng) for _ in range(walks))


# -- SGF export --------------------------------------------------------------

def _status_comment(problem: Problem, node: SolutionNode) -> str:
    side = "or" if node.winner == problem.or_color else "and"
    return f"{color_name(node.winner)} wins ({side}), depth {node.depth}, zone {len(node.zone)}"


def _sgf_subtree(problem: Problem, node: SolutionNode, mover: int) -> sgf.GameTree:
    size = problem.position.size
    n = sgf.Node()
    n.add("B" if mover == BLACK else "W", sgf.to_sgf_point(size, node.move))
    n.add("C", _status_comment(problem, node))
    return sgf.GameTree([n], _variations(problem, node))


def _variations(problem: Problem, node: SolutionNode) -> list[sgf.GameTree]:
    moves = sorted(m for m in node.children if m != PASS)
    if PASS in node.children:
        moves.append(PASS)
    return [_sgf_subtree(problem, node.children[m], node.to_move) for m in moves]


def export_solution_sgf(problem: Problem, solution, verify: bool = True) -> bytes:
    """SGF with the zone as TR marks on the root and one branch per reply.

    The first branch at every node is the principal line; at AND nodes the
    null branch (a pass) comes last.
    """
    if solution.winner is None or solution.tree is None:
        raise UnverifiedSolution("solution has no winner")
    if verify and not verify_solution(solution, problem):
        raise UnverifiedSolution("solution failed the audit")
    root = problem_root_node(problem)
    size = problem.position.size
    if solution.zone:
        root.add("TR", *(sgf.to_sgf_point(size, p) for p in solution.zone))
    root.add("C", _status_comment(problem, solution.tree))
    tree = sgf.GameTree([root], _variations(problem, solution.tree))
    return sgf.dumps(tree).encode()


__all__ = ["SolutionNode", "MalformedTree", "UnverifiedSolution", "extract_tree",
           "verify_solution", "export_solution_sgf"]
