import random

from hypothesis import given, strategies as st

from rzgo.board import BLACK, EMPTY, WHITE, Position, play
from rzgo.life import benson_uca
from rzgo.zone import (RZPattern, Zone, and_propagate, matches, or_propagate, restrict,
                       terminal_zone)

CORNER_TWO_EYES = """
    .X.X.....
    XXXX.....
    .........
    .........
    .........
    .........
    .........
    .........
    .........
"""


def test_zone_set_algebra():
    a, b = Zone.of(5, [0, 1, 2]), Zone.of(5, [2, 3])
    assert list(a | b) == [0, 1, 2, 3]
    assert list(a & b) == [2]
    assert len(a.complement()) == 22
    assert a <= a | b and not a <= b
    assert Zone.full(5) == Zone.of(5, range(25))


def test_terminal_zone_two_one_point_eyes(rows):
    pos = rows(CORNER_TWO_EYES)
    proof = benson_uca(pos, BLACK)
    zone = terminal_zone(pos, proof, [1])
    group = pos.block_at(1).stones
    assert set(zone) == set(group) | {0, 2}


def test_terminal_zone_survives_outside_edits(rows):
    pos = rows(CORNER_TWO_EYES)
    zone = terminal_zone(pos, benson_uca(pos, BLACK), [1])
    outside = list(zone.complement())
    rng = random.Random(1)
    trials = 0
    while trials < 1000:
        grid = bytearray(pos.grid)
        for p in rng.sample(outside, rng.randint(1, 20)):
            grid[p] = rng.choice((EMPTY, BLACK, WHITE))
        q = Position(9, bytes(grid), BLACK)
        if any(not b.liberties for b in q.blocks()):
            continue
        trials += 1
        assert benson_uca(q, BLACK).contains(1)


def test_or_propagate_inside_zone_adds_only_the_move(rows):
    parent = rows("""
        .....
        .XX..
        .....
        .....
        .....
    """)
    child = play(parent, 8)
    z = Zone.of(5, [3, 6, 7, 9, 13, 2, 4, 12, 11])
    out = or_propagate(z, 8, parent, child)
    assert out == z.add(8)


def test_or_propagate_capture_footprint(rows):
    parent = rows("""
        .OOO.
        OXXXO
        OO.OO
        .....
        .....
    """, WHITE)
    child = play(parent, 12)
    assert set(child.captured) == {6, 7, 8}
    out = or_propagate(Zone.of(5, [12]), 12, parent, child)
    # the captured stones and every neighbour of them
    assert {6, 7, 8, 1, 2, 3, 5, 9, 11, 12, 13} <= set(out)


def test_and_propagate_examples():
    z = Zone.of(5, [1, 2])
    assert and_propagate([(-1, z)]) == z
    zb, zc, zd = Zone.of(5, [0, 1]), Zone.of(5, [6]), Zone.of(5, [12, 13])
    out = and_propagate([(-1, zb), (7, zc), (8, zd)])
    assert set(out) == {0, 1, 6, 7, 8, 12, 13}
    disjoint = and_propagate([(-1, Zone.of(5, [0])), (-1, Zone.of(5, [24]))])
    assert len(disjoint) == 2


def test_matches_is_zone_restricted(rows):
    pos = rows(CORNER_TWO_EYES)
    zone = Zone.of(9, [0, 1, 2, 9, 10])
    pat = RZPattern.from_position(pos, zone, BLACK, "live:B:1")
    assert matches(pos, pat)
    flipped = bytearray(pos.grid)
    flipped[0] = WHITE
    assert not matches(Position(9, bytes(flipped), BLACK), pat)
    outside = bytearray(pos.grid)
    outside[80] = WHITE
    assert matches(Position(9, bytes(outside), BLACK), pat)
    assert not matches(Position(9, pos.grid, WHITE), pat)


zones = st.sets(st.integers(0, 24), max_size=25).map(lambda s: Zone.of(5, s))


@given(zones, st.integers(0, 24), st.integers(0, 2 ** 25 - 1))
def test_or_propagate_is_monotone(z, move, noise):
    grid = bytearray(25)
    rng = random.Random(noise)
    for p in range(25):
        if p != move and rng.random() < 0.4:
            grid[p] = rng.choice((BLACK, WHITE))
    parent = Position(5, bytes(grid), BLACK)
    if any(not b.liberties for b in parent.blocks()):
        return
    try:
        child = play(parent, move)
    except ValueError:
        return
    out = or_propagate(z, move, parent, child)
    assert z <= out and move in out


@given(st.lists(zones, min_size=1, max_size=4))
def test_and_propagate_is_monotone(zs):
    out = and_propagate([(-1, z) for z in zs])
    assert all(z <= out for z in zs)


def test_restrict_order():
    grid = bytes([1, 2, 0, 1] + [0] * 21)
    assert restrict(grid, Zone.of(5, [3, 0, 1])) == bytes([1, 2, 1])
