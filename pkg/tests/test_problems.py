import pytest

from rzgo import sgf
from rzgo.board import BLACK, PASS, WHITE
from rzgo.problems import (Goal, InvariantViolation, Problem, ProblemSuite, Status, dump_problem,
                           load_sgf, read_stats, stats_record, terminal_status)
from rzgo.search import SolverConfig, solve
from rzgo.solution import (MalformedTree, UnverifiedSolution, export_solution_sgf,
                           verify_solution)

MINIMAL = "(;GM[1]FF[4]SZ[5]AB[ba][ab][bb]AW[cb][ac][bc][cc]PL[W]MA[bb]GL[kill])"


def test_minimal_problem():
    prob = load_sgf(MINIMAL)
    assert prob.position.size == 5
    assert prob.position.to_move == WHITE
    assert prob.goal is Goal.KILL
    assert prob.crucial == (6,)
    assert prob.target_color == BLACK and prob.or_color == WHITE


def test_goal_sources():
    base = "(;SZ[5]AB[aa]MA[aa]{})"
    assert load_sgf(base.format("")).goal is Goal.LIVE
    assert load_sgf(base.format("C[goal: kill]")).goal is Goal.KILL
    assert load_sgf(base.format("GL[kill]"), goal="live").goal is Goal.LIVE
    with pytest.raises(InvariantViolation):
        load_sgf(base.format("GL[seki]"))


def test_crucial_mark_on_empty_point():
    with pytest.raises(InvariantViolation):
        load_sgf("(;SZ[5]AB[aa]MA[bb])")


def test_bad_setup_is_an_invariant_violation():
    with pytest.raises(InvariantViolation):
        load_sgf("(;SZ[5]AB[aa]AW[ba][ab]MA[aa])")   # black stone without liberties
    with pytest.raises(InvariantViolation):
        load_sgf("(;SZ[5]AB[zz]MA[aa])")


@pytest.mark.parametrize("text", ["(;SZ[5]AB[aa", "", "SZ[5]", "(;SZ[5]AB[aa]MA[aa]"])
def test_truncated_sgf(text):
    with pytest.raises(sgf.ParseError):
        load_sgf(text)


def test_sgf_escapes_and_rectangles():
    tree = sgf.parse(r"(;C[a \] b]AB[aa:bb];B[cc](;W[dd])(;W[])) ")
    root = tree.nodes[0]
    assert root.get("C") == "a ] b"
    assert sgf.expand_points(5, root.props["AB"]) == [0, 1, 5, 6]
    assert len(tree.nodes) == 2 and len(tree.variations) == 2
    assert sgf.from_sgf_point(5, tree.variations[1].nodes[0].get("W")) == PASS
    again = sgf.parse(sgf.dumps(tree))
    assert again == tree


def test_problem_round_trip():
    prob = load_sgf(MINIMAL, label="m")
    back = load_sgf(dump_problem(prob))
    assert back.position == prob.position
    assert (back.goal, back.crucial) == (prob.goal, prob.crucial)


def test_terminal_status(rows):
    alive = rows("""
        .X.X.
        XXXXX
        OOOOO
        .....
        .....
    """, WHITE)
    assert terminal_status(Problem(alive, Goal.LIVE, (5,)), alive) is Status.OR_WINS
    assert terminal_status(Problem(alive, Goal.KILL, (5,)), alive) is Status.AND_WINS
    prob = load_sgf(MINIMAL)
    assert terminal_status(prob, prob.position) is Status.ONGOING


def test_suite_directory_round_trip(tmp_path):
    a = load_sgf(MINIMAL, label="a")
    b = load_sgf(MINIMAL.replace("GL[kill]", "GL[live]"), label="b")
    ProblemSuite([a, b]).write_directory(tmp_path)
    suite = ProblemSuite.from_directory(tmp_path)
    assert [p.label for p in suite] == ["a", "b"]
    assert [p.goal for p in suite] == [Goal.KILL, Goal.LIVE]
    with pytest.raises(InvariantViolation):
        ProblemSuite([a, a])


def test_stats_records():
    rec = stats_record(label="x", backend="tt", winner="B", nodes=3, table_hits=0,
                       pattern_reuses=0, zone_size=4, wall_ms=None, seed=0)
    assert rec.startswith('{"label":"x","backend":"tt"')
    assert read_stats([rec, ""]) == [dict(label="x", backend="tt", winner="B", nodes=3,
                                          table_hits=0, pattern_reuses=0, zone_size=4,
                                          wall_ms=None, seed=0)]
    with pytest.raises(ValueError):
        stats_record(label="x")


def solved_kill():
    prob = load_sgf(MINIMAL)
    return prob, solve(prob, SolverConfig(max_nodes=20_000))


def test_solution_tree_shape():
    prob, sol = solved_kill()
    assert sol.winner == WHITE
    tree = sol.tree
    assert len(tree.children) == 1          # one move for the winner
    (reply,) = tree.children.values()
    assert PASS in reply.children            # AND node: null branch plus in-zone replies
    assert all(m == PASS or m in reply.zone for m in reply.children)


def test_verify_rejects_deleted_branch():
    prob, sol = solved_kill()
    assert verify_solution(sol, prob)
    for node in _and_nodes(sol.tree):
        victims = [m for m in node.children if m != PASS]
        if victims:
            del node.children[victims[0]]
            assert not verify_solution(sol, prob)
            return
    pytest.skip("no AND branch to delete")


def _and_nodes(tree):
    stack, seen = [tree], set()
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        if PASS in n.children:
            yield n
        stack.extend(n.children.values())


def test_verify_rejects_wrong_claims():
    prob, sol = solved_kill()
    sol.winner = BLACK
    with pytest.raises(MalformedTree):
        verify_solution(sol, prob)


def test_export_solution_sgf():
    prob, sol = solved_kill()
    data = export_solution_sgf(prob, sol)
    tree = sgf.parse(data)
    root = tree.nodes[0]
    assert sgf.expand_points(5, root.props["TR"]) == sorted(sol.zone)
    assert "W wins" in root.get("C")
    first = tree.variations[0].nodes[0]
    assert sgf.from_sgf_point(5, first.get("W")) == sol.root.best
    assert load_sgf(data).position == prob.position


def test_export_refuses_broken_tree():
    prob, sol = solved_kill()
    for node in _and_nodes(sol.tree):
        node.children.clear()
    with pytest.raises(UnverifiedSolution):
        export_solution_sgf(prob, sol)
