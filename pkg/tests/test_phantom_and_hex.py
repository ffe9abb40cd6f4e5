"""Phantom tic-tac-toe and dark hex rule checks."""

import itertools
import random

from epimc.game import History
from epimc.games.dark_hex import DarkHexState, _connected, dark_hex_game
from epimc.games.phantom_ttt import phantom_ttt_game

from toygames import random_playout


def test_pttt_nine_probes_at_empty_board():
    game = phantom_ttt_game()
    assert list(game.initial_state().legal_actions()) == list(range(9))


def test_pttt_illegal_probe_keeps_turn_and_reveals():
    game = phantom_ttt_game()
    h = History.root(game).child(4)
    probe = h.child(4)
    assert probe.obs == (None, "I")
    assert probe.state.current_player() == 1
    assert 4 not in probe.state.legal_actions()
    legal = probe.child(0)
    assert legal.obs == ("O", "L")
    assert legal.state.current_player() == 0


def test_pttt_win_and_draw():
    game = phantom_ttt_game()
    h = History.root(game)
    for a in (0, 3, 1, 4, 2):  # p0 completes the top row
        h = h.child(a)
    assert h.state.current_player() is None
    assert h.state.returns() == (1.0, -1.0)

    h = History.root(game)
    for a in (0, 1, 2, 4, 3, 5, 7, 6, 8):  # full board, no line
        h = h.child(a)
    assert h.state.current_player() is None
    assert h.state.returns() == (0.0, 0.0)


def test_pttt_horizon_seventeen():
    game = phantom_ttt_game()
    longest = 0
    for seed in range(300):
        h = random_playout(game, random.Random(seed))
        longest = max(longest, h.length)
    assert longest <= 17


def test_hex_root_probes_and_collision():
    game = dark_hex_game(3)
    s = game.initial_state()
    assert list(s.legal_actions()) == list(range(9))
    s = s.step(4)
    collided = s.step(4)
    assert collided.to_act == 1
    assert 4 not in collided.legal_actions()


def test_hex_left_right_chain_wins_for_player_zero():
    game = dark_hex_game(3)
    h = History.root(game)
    for a in (0, 3, 1, 6, 2):  # p0 claims the whole top row: west to east
        h = h.child(a)
    assert h.state.current_player() is None
    assert h.state.returns() == (1.0, -1.0)


def test_hex_top_bottom_chain_wins_for_player_one():
    game = dark_hex_game(3)
    h = History.root(game)
    for a in (0, 1, 3, 4, 6, 7):  # p1 builds the middle column: north-south
        h = h.child(a)
    assert h.state.current_player() is None
    assert h.state.returns() == (-1.0, 1.0)


def test_hex_filled_boards_never_draw():
    # Exhaustive over all 5/4 stone splits of the 3x3 board: someone always
    # has a connection.
    for p0_cells in itertools.combinations(range(9), 5):
        m0 = sum(1 << c for c in p0_cells)
        m1 = 0b111111111 ^ m0
        assert _connected(m0, 3, 0) or _connected(m1, 3, 1), bin(m0)


def test_hex_size_validation():
    import pytest
    with pytest.raises(ValueError):
        dark_hex_game(5)
