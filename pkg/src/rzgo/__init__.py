"""Go life-and-death solving with relevance zones.

Quick start::

    from rzgo import load_sgf, solve, SolverConfig, verify_solution
    prob = load_sgf(open("problem.sgf", "rb").read())
    sol = solve(prob, SolverConfig(backend="pt"))
    assert verify_solution(sol, prob)
"""
from .bench import BenchReport, run_bench
from .board import BLACK, EMPTY, PASS, WHITE, IllegalMove, Position, play
from .life import ResourceExceeded, UcaProof, benson_uca, uca_oracle
from .oracle import brute_force_solve, perturb_outside
from .problems import Goal, InvariantViolation, Problem, ProblemSuite, Status, load_sgf
from .render import render_ascii
from .search import Solution, SolverConfig, solve
from .solution import export_solution_sgf, verify_solution
from .tables import PatternTable, TranspositionTable
from .zone import RZPattern, Zone

__version__ = "0.1.0"

__all__ = [
    "BLACK", "WHITE", "EMPTY", "PASS", "Position", "play", "IllegalMove",
    "benson_uca", "uca_oracle", "UcaProof", "ResourceExceeded",
    "Zone", "RZPattern", "TranspositionTable", "PatternTable",
    "Goal", "Status", "Problem", "ProblemSuite", "InvariantViolation", "load_sgf",
    "SolverConfig", "Solution", "solve", "verify_solution", "export_solution_sgf",
    "brute_force_solve", "perturb_outside", "run_bench", "BenchReport", "render_ascii",
]
