"""Solve one corner problem and look at what the relevance zone buys.

1. Solve a straight-three kill on 9x9 with each backend.
2. Print the board with the zone marked.
3. Scramble the board outside the zone and re-solve the scrambled
   positions; the winner never changes, and a pattern table holding the
   one stored zone pattern answers each of them at the root.
"""
import random

from rzgo import SolverConfig, Zone, perturb_outside, render_ascii, solve, verify_solution
from rzgo.instances import corner_problem
from rzgo.problems import Goal
from rzgo.tables import PatternTable
from rzgo.zone import RZPattern

prob = corner_problem("straight3", 9, Goal.KILL)
print(render_ascii(prob.position, Zone.of(9, prob.crucial)))

for backend in ("tt", "pt"):
    sol = solve(prob, SolverConfig(backend=backend))
    print(f"{backend}: winner {'BW'[sol.winner - 1]}, {sol.stats.nodes} nodes, "
          f"zone {len(sol.zone)} points, audit {verify_solution(sol, prob)}")

print("\nzone (#, @ and + are inside):")
print(render_ascii(prob.position, sol.zone))

# one pattern is enough to recognise every scrambled copy
table = PatternTable()
table.insert(RZPattern.from_position(prob.position, sol.zone, sol.winner, prob.goal_id))

rng = random.Random(0)
for i in range(5):
    pos = perturb_outside(prob.position, sol.zone, rng, k=6)
    fresh = solve(prob.with_position(pos), SolverConfig(backend="pt"))
    reused = solve(prob.with_position(pos), SolverConfig(backend="pt"), table=table)
    print(f"scramble {i}: winner {'BW'[fresh.winner - 1]} in {fresh.stats.nodes} nodes; "
          f"with the stored pattern {'BW'[reused.winner - 1]} in {reused.stats.nodes}")
