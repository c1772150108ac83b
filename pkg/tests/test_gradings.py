from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridfloer.complex import all_permutations
from gridfloer.grid import GridDiagram, unknot_grid
from gridfloer.gradings import (
    GradingTables,
    PointSet,
    alexander,
    count_I,
    count_I_naive,
    crossing_linking_numbers,
    linking_numbers,
    maslov,
    winding_grid,
    winding_vector,
    x0_generator,
)

from .conftest import grids

points = st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), max_size=12)
weights = st.integers(-2, 2).filter(bool)


@given(points, points, st.data())
def test_count_I_matches_naive(a, b, data):
    wa = tuple(data.draw(weights) for _ in a)
    wb = tuple(data.draw(weights) for _ in b)
    A, B = PointSet(tuple(a), wa), PointSet(tuple(b), wb)
    assert count_I(A, B) == count_I_naive(A, B)


def test_unknot_2x2_gradings():
    g = GridDiagram((0, 1), (1, 0))
    assert maslov(g, (1, 0)) == -1
    assert maslov(g, (0, 1)) == 0
    assert alexander(g, (0, 1)) == (0,)
    assert alexander(g, (1, 0)) == (-2,)


def test_trefoil_x0():
    g = GridDiagram((0, 1, 2, 3, 4), (2, 3, 4, 0, 1))
    assert maslov(g, x0_generator(g)) == -4


@given(grids(max_n=6))
def test_x0_maslov(g):
    assert maslov(g, x0_generator(g)) == 1 - g.n


@given(grids(max_n=5))
@settings(max_examples=25)
def test_tables_match_scalar(g):
    perms = all_permutations(g.n)
    tab = GradingTables(g)
    m, a = tab.maslov(perms), tab.alexander(perms)
    for i in range(0, len(perms), max(1, len(perms) // 30)):
        p = tuple(int(v) for v in perms[i])
        assert m[i] == maslov(g, p)
        assert tuple(a[i]) == alexander(g, p)


def test_winding_example():
    g = unknot_grid(2)
    # the link runs through every cell of the 2x2 grid; the inner lattice point is enclosed
    assert winding_vector(g, (2, 2)) == (-1,)
    assert winding_vector(g, (0, 0)) == (0,)
    with pytest.raises(ValueError):
        winding_vector(g, (1, 1))


@given(grids(max_n=6))
@settings(max_examples=30)
def test_winding_grid_matches_ray(g):
    w = winding_grid(g)
    for i in range(g.n):
        for j in range(g.n):
            assert tuple(w[:, i, j]) == winding_vector(g, (2 * i, 2 * j))


def test_winding_zero_on_boundary():
    g = GridDiagram((0, 4, 3, 1, 2, 5), (3, 2, 5, 4, 0, 1))
    w = winding_grid(g)
    assert not w[:, 0, :].any() and not w[:, :, 0].any()


def test_linking_numbers():
    assert linking_numbers(unknot_grid(3)) == [Fraction(0)]
    unlink = GridDiagram((0, 1, 2, 3), (1, 0, 3, 2))
    assert linking_numbers(unlink) == [0, 0]
    hopf = GridDiagram((0, 1, 2, 3), (2, 3, 0, 1))
    assert linking_numbers(hopf) == [1, 1]
    # the J expression is minus the crossing count with verticals over horizontals
    assert crossing_linking_numbers(hopf) == [-1, -1]


@given(grids(min_n=3, max_n=6))
@settings(max_examples=30)
def test_j_identity_is_minus_crossing_linking(g):
    assert linking_numbers(g) == [-v for v in crossing_linking_numbers(g)]
