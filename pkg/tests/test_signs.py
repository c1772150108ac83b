from __future__ import annotations

import random

import pytest

from gridfloer.complex import Coeffs, Flavor, build_complex, d_squared_violations
from gridfloer.grid import GridDiagram
from gridfloer.signs import GaugedSigns, SignAssignment, compare_closed_form, sign_thin, verify_axioms


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_axioms_exhaustive(n):
    rep = verify_axioms(n)
    assert rep.ok, rep.to_json()["failures"]
    assert rep.vertical_annuli == rep.horizontal_annuli == rep.generators * n


@pytest.mark.parametrize("n", [3, 4])
def test_closed_form_matches_extension(n):
    checked, bad = compare_closed_form(n)
    assert checked > 0 and not bad


def test_signs_are_units():
    sa = SignAssignment(4)
    x = (2, 0, 3, 1)
    for L in range(4):
        for R in range(4):
            if L != R:
                assert sa(x, L, R) in (-1, 1)


def test_thin_top_row_relation():
    # a thin rectangle through the top row is minus its complement from the target
    sa = SignAssignment(4)
    x = (3, 0, 1, 2)
    y = (0, 3, 1, 2)
    assert sign_thin(sa, x, 0, 3, 1) == -sign_thin(sa, y, 0, 0, 3)


def test_gauge_preserves_axioms():
    rng = random.Random(5)
    table: dict = {}

    def f(x):
        return table.setdefault(tuple(x), rng.choice((-1, 1)))

    gs = GaugedSigns(SignAssignment(4), f)
    assert verify_axioms(4, signs=gs).ok


def test_gauge_gives_isomorphic_complex():
    g = GridDiagram((0, 1, 2, 3, 4), (2, 3, 4, 0, 1))
    from gridfloer.homology import homology_int

    base = build_complex(g, Flavor.TILDE, Coeffs.INT)
    gauged = build_complex(g, Flavor.TILDE, Coeffs.INT, signs=GaugedSigns(SignAssignment(5), lambda x: -1 if x[0] % 2 else 1))
    assert d_squared_violations(gauged) == []
    assert homology_int(base) == homology_int(gauged)
