from __future__ import annotations

import pytest
from hypothesis import given, settings

from gridfloer.grid import (
    CommuteCols,
    CyclicCols,
    CyclicRows,
    Destabilize,
    GridDiagram,
    GridError,
    Stabilize,
    apply_move,
    destabilization_pattern,
    grid_from_json,
    legal_moves,
    parse_grid,
    random_move_sequence,
    rotate,
    swap_markings,
    transpose,
    unknot_grid,
)

from .conftest import grids


def test_parse_roundtrip():
    text = "# a comment\nn = 5\nX = 0 1 2 3 4\nO = 2 3 4 0 1\n"
    g = parse_grid(text)
    assert g.n == 5 and g.ell == 1
    assert parse_grid(g.to_text()) == g
    assert grid_from_json(g.to_json()) == g


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("n = 3\nX = 0 1 1\nO = 1 2 0\n", "line 2"),
        ("n = 3\nX = 0 1 2\nO = 0 2 1\n", "share a cell"),
        ("n = 3\nX = 0 1 2\n", "missing"),
        ("n = 3\nX = 0 1 5\nO = 1 2 0\n", "out of range"),
        ("n = 3\nX = 0 1\nO = 1 2 0\n", "expected 3 entries"),
        ("n = three\nX = 0 1 2\nO = 1 2 0\n", "non-integer"),
        ("n = 3\nX = 0 1 2\nO = 1 2 0\nfoo\n", "line 4"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(GridError, match=fragment):
        parse_grid(text)


def test_components():
    hopf = GridDiagram((0, 1, 2, 3), (2, 3, 0, 1))
    assert hopf.ell == 2
    assert hopf.columns_of(0) == [0, 2] and hopf.columns_of(1) == [1, 3]
    assert hopf.n_i == (2, 2)
    assert unknot_grid(4).ell == 1


@given(grids(max_n=6))
def test_involutions(g):
    assert transpose(transpose(g)) == g
    assert rotate(rotate(rotate(rotate(g)))) == g
    assert swap_markings(swap_markings(g)) == g
    assert transpose(g).ell == g.ell == rotate(g).ell


@given(grids(max_n=6))
def test_cyclic_moves_preserve_components(g):
    for k in range(g.n):
        assert apply_move(g, CyclicRows(k)).ell == g.ell
        assert apply_move(g, CyclicCols(k)).ell == g.ell


def test_commutation_rejects_interleaved():
    g = GridDiagram((0, 1, 2, 3, 4), (2, 3, 4, 0, 1))
    # columns 0 and 1 have spans {0,2} and {1,3}: interleaved
    with pytest.raises(GridError):
        apply_move(g, CommuteCols(0))


@given(grids(max_n=5))
@settings(max_examples=40)
def test_stabilize_then_destabilize(g):
    for r in range(g.n):
        for at in ("X", "O"):
            for side in ("left", "right"):
                for o_up in (True, False):
                    h = apply_move(g, Stabilize(r, at, side, o_up))
                    assert h.n == g.n + 1 and h.ell == g.ell
                    back = [apply_move(h, Destabilize(c)) for c in range(h.n) if destabilization_pattern(h, c)]
                    assert back, "a stabilization leaves a destabilizable column"


def test_destabilize_requires_pattern():
    g = GridDiagram((0, 1, 2, 3, 4), (2, 3, 4, 0, 1))
    with pytest.raises(GridError):
        apply_move(g, Destabilize(0))


def test_random_sequence_deterministic():
    g = unknot_grid(3)
    a = random_move_sequence(g, 10, seed=3, max_n=6)
    b = random_move_sequence(g, 10, seed=3, max_n=6)
    assert a == b and len(a) == 11
    assert all(h.n <= 6 for h in a)


@given(grids(min_n=3, max_n=6))
@settings(max_examples=30)
def test_legal_moves_apply(g):
    for m in legal_moves(g, g.n + 1):
        assert apply_move(g, m).ell == g.ell
