from __future__ import annotations

import numpy as np
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gridfloer.linalg import GF2Basis, SparseComplex, gf2_kernel, gf2_rank, smith_invariants

bit_matrices = st.integers(1, 8).flatmap(
    lambda m: st.integers(1, 8).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)
int_matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def _pack(row):
    return sum(b << j for j, b in enumerate(row))


@given(bit_matrices)
def test_gf2_rank_matches_reference(rows):
    assert gf2_rank(_pack(r) for r in rows) == _gf2_rank_ref(rows)


def _gf2_rank_ref(rows):
    """Dense elimination on a numpy array."""
    a = np.array(rows, dtype=np.uint8) % 2
    r = 0
    for c in range(a.shape[1]):
        piv = next((i for i in range(r, a.shape[0]) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


@given(bit_matrices)
def test_gf2_kernel(rows):
    cols = [_pack([rows[i][j] for i in range(len(rows))]) for j in range(len(rows[0]))]
    ker = gf2_kernel(cols, len(rows))
    assert len(ker) == len(cols) - gf2_rank(cols)
    for comb in ker:
        acc = 0
        for j, c in enumerate(cols):
            if comb >> j & 1:
                acc ^= c
        assert acc == 0
    basis = GF2Basis()
    assert all(basis.add(k) for k in ker)


@given(int_matrices)
@settings(max_examples=60)
def test_smith_matches_sympy(rows):
    from sympy.matrices.normalforms import invariant_factors

    ref = [abs(int(v)) for v in invariant_factors(sympy.Matrix(rows)) if v != 0]
    assert smith_invariants(rows) == ref


def test_smith_torsion():
    assert smith_invariants([[2, 0], [0, 3]]) == [1, 6]
    assert smith_invariants([[0, 0]]) == []


def _homology_ranks(n, edges, mod2, deg):
    sc = SparseComplex(n, edges, mod2)
    sc.reduce()
    return sorted(deg[v] for v in sc.alive), sc.edges()


def test_cancellation_square():
    # a -> b, a -> c, b -> d, c -> d with signs making d^2 = 0 over Z
    edges = [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, -1)]
    alive, rest = _homology_ranks(4, edges, False, [2, 1, 1, 0])
    assert alive == [] and rest == []


def test_cancellation_keeps_torsion_arrow():
    edges = [(0, 1, 2)]
    alive, rest = _homology_ranks(2, edges, False, [1, 0])
    assert alive == [0, 1] and rest == [(0, 1, 2)]


def test_cancellation_respects_filter():
    sc = SparseComplex(2, [(0, 1, 1)], mod2=True)
    sc.reduce(lambda s, t: False)
    assert sc.alive == {0, 1}
