import random

import pytest
from hypothesis import given, strategies as st

from rzgo.board import (BLACK, EMPTY, PASS, WHITE, IllegalMove, Position, blocks, is_legal,
                        legal_moves, play, superko_moves, zobrist)


def test_single_stone_on_open_board():
    pos = play(Position.empty(5), 12)
    assert pos.grid[12] == BLACK
    assert pos.to_move == WHITE
    b = pos.block_at(12)
    assert b.stones == {12} and len(b.liberties) == 4


def test_capture_removes_stone(rows):
    pos = rows("""
        .X...
        XO...
        .X...
        .....
        .....
    """)
    after = play(pos, 7)
    assert after.grid[6] == EMPTY
    assert after.captured == (6,)


def test_ko_recapture_is_superko(rows):
    pos = rows("""
        .XO..
        XO.O.
        .XO..
        .....
        .....
    """)
    after = play(pos, 7)             # black captures at the ko
    assert after.captured == (6,)
    with pytest.raises(IllegalMove, match="superko"):
        play(after, 6)               # white retakes at once


def test_pass_is_always_legal():
    pos = Position.empty(5)
    assert is_legal(pos, PASS)
    assert play(pos, PASS).consecutive_passes == 1


def test_occupied_and_suicide(rows):
    pos = rows("""
        .O...
        O....
        .....
        .....
        .....
    """)
    assert not is_legal(pos, 1)
    assert not is_legal(pos, 0)
    with pytest.raises(IllegalMove, match="suicide"):
        play(pos, 0)


def test_blocks_examples(rows):
    diag = rows("""
        X....
        .X...
        .....
        .....
        .....
    """)
    assert len(blocks(diag)) == 2
    ell = rows("""
        X....
        XX...
        .....
        .....
        .....
    """)
    (b,) = blocks(ell)
    assert len(b.stones) == 3 and len(b.liberties) == 4
    assert blocks(Position.empty(5)) == []


def test_hash_depends_on_side_to_move():
    grid = bytes(25)
    assert zobrist(grid, BLACK) != zobrist(grid, WHITE)


def test_transposition_gives_same_hash():
    a = play(play(play(play(Position.empty(5), 0), 24), 6), 18)
    b = play(play(play(play(Position.empty(5), 6), 18), 0), 24)
    assert a.hash == b.hash and a == b


def test_incremental_hash_matches_rebuild():
    rng = random.Random(3)
    pos = Position.empty(6)
    for _ in range(40):
        moves = legal_moves(pos)
        pos = play(pos, rng.choice(moves + [PASS]))
        assert pos.hash == zobrist(pos.grid, pos.to_move)


def test_superko_moves_lists_refusals(rows):
    pos = rows("""
        .XO..
        XO.O.
        .XO..
        .....
        .....
    """)
    after = play(pos, 7)
    assert superko_moves(after) == [6]
    assert 6 not in legal_moves(after)


def test_setup_rejects_dead_blocks():
    with pytest.raises(ValueError):
        Position.setup(5, black=[0], white=[1, 5])


@given(st.lists(st.integers(0, 48), max_size=60))
def test_random_lines_keep_every_block_alive(moves):
    pos = Position.empty(7)
    for m in moves:
        if is_legal(pos, m):
            pos = play(pos, m)
        else:
            pos = play(pos, PASS)
        assert all(b.liberties for b in pos.blocks())
        assert pos.hash in pos.history_hashes
