"""Rules of the game: boards, moves, termination, mover alternation."""

import pytest

from graphnim import (GameGraph, GameState, GraphValidationError,
                      IllegalMoveError, Move, apply_move, is_terminal,
                      legal_moves, new_game, options, total_weight)


def test_fresh_state(demo):
    state = new_game(demo)
    assert state.position == demo.start == 0
    assert state.move_count == 0
    assert state.to_move == "P1"
    assert state.weights == demo.initial_weights() == (2, 5, 3, 2, 4)
    assert not is_terminal(state)


def test_legal_moves_order(demo):
    # destination first, then amount, both ascending
    state = new_game(demo)
    assert legal_moves(state) == [Move(1, 1), Move(1, 2),
                                  Move(3, 1), Move(3, 2), Move(3, 3), Move(3, 4), Move(3, 5)]


def test_options_excludes_dead_edges(demo):
    state = new_game(demo)
    assert options(state) == {1, 3}
    partial = GameState(demo, (0, 5, 3, 2, 4), 0, 2)
    assert options(partial) == {3}
    drained = GameState(demo, (0, 0, 3, 2, 4), 0, 4)
    assert options(drained) == set()
    assert is_terminal(drained)


def test_apply_move_updates_weight_and_mover(demo):
    state = new_game(demo)
    nxt = apply_move(state, Move(3, 4))
    assert nxt.position == 3
    assert nxt.move_count == 1
    assert nxt.to_move == "P2"
    assert nxt.weights == (2, 1, 3, 2, 4)
    # the input state is a frozen value, untouched by the move
    assert state.weights == (2, 5, 3, 2, 4)
    assert state.position == 0


def test_total_weight_drops_by_the_amount(demo):
    state = new_game(demo)
    assert total_weight(state) == 16
    assert total_weight(apply_move(state, Move(3, 4))) == 12


def test_illegal_moves_rejected(demo):
    state = new_game(demo)
    with pytest.raises(IllegalMoveError, match="out of range"):
        apply_move(state, Move(9, 1))
    with pytest.raises(IllegalMoveError, match="no edge"):
        apply_move(state, Move(2, 1))
    with pytest.raises(IllegalMoveError, match="amount 3 exceeds weight 2"):
        apply_move(state, Move(1, 3))
    with pytest.raises(IllegalMoveError, match="amount must be >= 1"):
        apply_move(state, Move(1, 0))
    used = GameState(demo, (0, 5, 3, 2, 4), 0, 2)
    with pytest.raises(IllegalMoveError, match="used up"):
        apply_move(used, Move(1, 1))


def test_single_edge_game():
    g = GameGraph("k2", ["a", "b"], [(0, 1, 1)], start=0)
    state = apply_move(new_game(g), Move(1, 1))
    assert is_terminal(state)
    assert state.to_move == "P2"  # P2 is stuck at b and loses


def test_mover_alternates(demo):
    state = new_game(demo)
    for expect in ("P1", "P2", "P1", "P2"):
        assert state.to_move == expect
        if is_terminal(state):
            break
        state = apply_move(state, legal_moves(state)[0])


def test_endpoints_normalized():
    g = GameGraph("rev", ["a", "b", "c"], [(2, 0, 1), (1, 2, 2)], start=0)
    assert g.edges == ((0, 2, 1), (1, 2, 2))
    assert g.edge_id(2, 0) == g.edge_id(0, 2) == 0
    assert g.other_end(0, 0) == 2
    assert g.other_end(0, 2) == 0


def test_graph_lookup_helpers(demo):
    assert demo.index_of("v3") == 2
    assert demo.index_of("nope") is None
    assert demo.edge_id(0, 2) is None
    assert not demo.is_unit()
    assert GameGraph("u", ["a", "b"], [(0, 1, 1)], 0).is_unit()


def test_graph_value_semantics(demo):
    twin = GameGraph(demo.name, demo.vertices, demo.edges, demo.start)
    assert twin == demo
    assert hash(twin) == hash(demo)
    assert GameGraph("other", demo.vertices, demo.edges, demo.start) != demo


@pytest.mark.parametrize("edges, message", [
    ([(0, 0, 1)], "loop"),
    ([(0, 1, 1), (1, 0, 2)], "duplicate edge"),
    ([(0, 3, 1)], "out of range"),
    ([(0, 1, 0)], "positive integer"),
    ([(0, 1, -2)], "positive integer"),
    ([(0, 1, 1.5)], "positive integer"),
    ([(0, 1, True)], "positive integer"),
])
def test_bad_edges_rejected(edges, message):
    with pytest.raises(GraphValidationError, match=message):
        GameGraph("bad", ["a", "b", "c"], edges, start=0)


def test_bad_vertices_and_start_rejected():
    with pytest.raises(GraphValidationError, match="duplicate label"):
        GameGraph("bad", ["a", "a"], [], start=0)
    with pytest.raises(GraphValidationError, match="must be a string"):
        GameGraph("bad", ["a", 7], [], start=0)
    with pytest.raises(GraphValidationError, match="start index"):
        GameGraph("bad", ["a", "b"], [(0, 1, 1)], start=2)
