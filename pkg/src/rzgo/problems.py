"""Problem model, goal predicate and SGF ingestion."""
from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from . import sgf
from .board import BLACK, EMPTY, WHITE, Position, color_name, opponent
from .life import UcaProof, benson_uca


class InvariantViolation(ValueError):
    pass


class InvalidProblem(ValueError):
    pass


class Goal(str, enum.Enum):
    LIVE = "live"   # OR player owns the crucial stones and must make one of them UCA
    KILL = "kill"   # OR player must capture every crucial stone


class Status(enum.Enum):
    OR_WINS = "or"
    AND_WINS = "and"
    ONGOING = "ongoing"


@dataclass
class Problem:
    position: Position
    goal: Goal
    crucial: tuple[int, ...]
    label: str = ""
    source: str = ""
    expected: str | None = None   # "B", "W" or None

    def __post_init__(self) -> None:
        self.crucial = tuple(sorted(set(self.crucial)))
        if not self.crucial:
            raise InvariantViolation("no crucial stones")
        colors = {self.position.grid[p] for p in self.crucial}
        if EMPTY in colors:
            raise InvariantViolation("crucial mark on an empty point")
        if len(colors) != 1:
            raise InvariantViolation("crucial stones of both colors")

    @property
    def target_color(self) -> int:
        return self.position.grid[self.crucial[0]]

    @property
    def or_color(self) -> int:
        t = self.target_color
        return t if self.goal is Goal.LIVE else opponent(t)

    @property
    def and_color(self) -> int:
        return opponent(self.or_color)

    @property
    def goal_id(self) -> str:
        return f"{self.goal.value}:{color_name(self.target_color)}:" + \
            ",".join(map(str, self.crucial))

    def with_position(self, position: Position) -> Problem:
        return Problem(position, self.goal, self.crucial, self.label, self.source, self.expected)


def crucial_alive(problem: Problem, position: Position) -> UcaProof | None:
    target = problem.target_color
    seeds = [p for p in problem.crucial if position.grid[p] == target]
    if not seeds:
        return None
    proof = benson_uca(position, target, seeds)
    if any(proof.contains(p) for p in seeds):
        return proof
    return None


def crucial_captured(problem: Problem, position: Position) -> bool:
    target = problem.target_color
    return all(position.grid[p] != target for p in problem.crucial)


def terminal_info(problem: Problem, position: Position) -> tuple[Status, UcaProof | None]:
    """Status plus the life proof when a crucial block is alive."""
    if crucial_captured(problem, position):
        return (Status.OR_WINS if problem.goal is Goal.KILL else Status.AND_WINS), None
    proof = crucial_alive(problem, position)
    if proof is not None:
        return (Status.OR_WINS if problem.goal is Goal.LIVE else Status.AND_WINS), proof
    return Status.ONGOING, None


def terminal_status(problem: Problem, position: Position) -> Status:
    return terminal_info(problem, position)[0]


# -- SGF ---------------------------------------------------------------------

def _goal_from_node(node: sgf.Node) -> Goal | None:
    raw = node.get("GL")
    if raw is None:
        m = re.search(r"\bgoal\s*[:=]\s*(\w+)", (node.get("C") or "").lower())
        if m:
            raw = m.group(1)
    if raw is None:
        return None
    try:
        return Goal(raw.strip().lower())
    except ValueError:
        raise InvariantViolation(f"unknown goal {raw!r}") from None


def problem_from_tree(tree: sgf.GameTree, goal: Goal | str | None = None,
                      label: str | None = None) -> Problem:
    root = tree.nodes[0]
    try:
        size = int(root.get("SZ", "19"))
        black = sgf.expand_points(size, root.props.get("AB", []))
        white = sgf.expand_points(size, root.props.get("AW", []))
        crucial = sgf.expand_points(size, root.props.get("MA", []))
    except ValueError as e:
        raise InvariantViolation(str(e)) from None
    pl = root.get("PL", "B").upper()
    if pl not in ("B", "W"):
        raise InvariantViolation(f"bad PL[{pl}]")
    try:
        position = Position.setup(size, black, white, BLACK if pl == "B" else WHITE)
    except ValueError as e:
        raise InvariantViolation(str(e)) from None
    if goal is None:
        goal = _goal_from_node(root) or Goal.LIVE
    goal = Goal(goal)
    return Problem(position, goal, tuple(crucial), label=label or root.get("GN", "") or "",
                   source=root.get("SO", "") or "", expected=root.get("RE"))


def load_sgf(data: bytes | str, goal: Goal | str | None = None,
             label: str | None = None) -> Problem:
    """Build a problem from SGF text.

    Reads SZ, AB, AW, PL and the crucial stones from MA.  The goal comes from
    ``goal`` if given, else a ``GL[live|kill]`` property, else a root comment
    containing ``goal:live`` / ``goal:kill``, else live.
    """
    return problem_from_tree(sgf.parse(data), goal, label)


def problem_root_node(problem: Problem) -> sgf.Node:
    pos = problem.position
    node = sgf.Node()
    node.add("GM", "1")
    node.add("FF", "4")
    node.add("SZ", str(pos.size))
    if problem.label:
        node.add("GN", problem.label)
    if problem.source:
        node.add("SO", problem.source)
    black = [sgf.to_sgf_point(pos.size, p) for p in pos.stones(BLACK)]
    white = [sgf.to_sgf_point(pos.size, p) for p in pos.stones(WHITE)]
    if black:
        node.add("AB", *black)
    if white:
        node.add("AW", *white)
    node.add("PL", color_name(pos.to_move))
    node.add("MA", *(sgf.to_sgf_point(pos.size, p) for p in problem.crucial))
    node.add("GL", problem.goal.value)
    if problem.expected:
        node.add("RE", problem.expected)
    return node


def dump_problem(problem: Problem) -> str:
    return sgf.dumps(sgf.GameTree([problem_root_node(problem)]))


@dataclass
class ProblemSuite:
    problems: list[Problem] = field(default_factory=list)

    def __post_init__(self) -> None:
        labels = [p.label for p in self.problems]
        if len(set(labels)) != len(labels):
            raise InvariantViolation("duplicate problem labels")

    def __len__(self) -> int:
        return len(self.problems)

    def __iter__(self):
        return iter(self.problems)

    @classmethod
    def from_directory(cls, path: str | Path, goal: Goal | str | None = None) -> ProblemSuite:
        files = sorted(Path(path).glob("*.sgf"))
        return cls([load_sgf(f.read_bytes(), goal, label=f.stem) for f in files])

    def write_directory(self, path: str | Path) -> None:
        out = Path(path)
        out.mkdir(parents=True, exist_ok=True)
        for p in self.problems:
            (out / f"{p.label}.sgf").write_text(dump_problem(p))


# -- stats records -------------------------------------------------------------

STATS_FIELDS = ("label", "backend", "winner", "nodes", "table_hits", "pattern_reuses",
                "zone_size", "wall_ms", "seed")


def stats_record(**values) -> str:
    """One JSON object per line, keys in ``STATS_FIELDS`` order."""
    missing = set(STATS_FIELDS) - set(values)
    if missing:
        raise ValueError(f"missing stats fields {sorted(missing)}")
    return json.dumps({k: values[k] for k in STATS_FIELDS}, separators=(",", ":"))


def read_stats(lines: Iterable[str]) -> list[dict]:
    return [json.loads(line) for line in lines if line.strip()]
