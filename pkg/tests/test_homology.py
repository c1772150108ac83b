from __future__ import annotations

import pytest
from hypothesis import given, settings

from gridfloer.complex import Coeffs, Flavor, build_complex
from gridfloer.grid import GridDiagram, unknot_grid
from gridfloer.homology import (
    PoincarePoly,
    VDivisionError,
    compute_homology,
    divide_by_v,
    divide_V_factors,
    hat_direct,
    hat_homology,
    homology_gf2,
    homology_int,
    symmetry_suite,
    tau,
    u_action_agreement,
    v_factors,
    v_poly,
)

from .conftest import grids

HAT_TEXT = {
    "trefoil_left": "q^2*t + q + t^-1",
    "trefoil_right": "t + q^-1 + q^-2*t^-1",
    "figure_eight": "q*t + 3 + q^-1*t^-1",
    "unlink_2": "1 + q^-1",
}


@pytest.mark.parametrize("name, text", sorted(HAT_TEXT.items()))
def test_known_hat(corpus, name, text):
    assert hat_homology(corpus[name]).to_text() == text


def test_hopf_hat(corpus):
    hat = hat_homology(corpus["hopf"])
    assert hat.total() == 4
    assert hat.rank(1, (1, 1)) == hat.rank(-1, (-1, -1)) == 1
    assert hat.rank(0, (1, -1)) == hat.rank(0, (-1, 1)) == 1


def test_tau_values(corpus):
    assert tau(corpus["trefoil_left"]) == -1
    assert tau(corpus["trefoil_right"]) == 1
    assert tau(corpus["figure_eight"]) == 0
    for k in (2, 3, 4, 5):
        assert tau(unknot_grid(k)) == 0


@given(grids(max_n=5))
@settings(max_examples=20, deadline=None)
def test_rank_and_cancel_agree(g):
    cx = build_complex(g, Flavor.TILDE)
    assert homology_gf2(cx, method="rank") == homology_gf2(cx, method="cancel")


@given(grids(max_n=5))
@settings(max_examples=20, deadline=None)
def test_tilde_factors_through_v(g):
    tilde = homology_gf2(build_complex(g, Flavor.TILDE))
    hat = divide_V_factors(tilde, g)
    assert hat * v_factors(g) == tilde


def test_integer_homology_torsion_free(corpus):
    for name in ("trefoil_left", "figure_eight", "hopf"):
        cx = build_complex(corpus[name], Flavor.TILDE, Coeffs.INT)
        hz = homology_int(cx)
        assert not hz.torsion
        assert hz.ranks == homology_gf2(cx).ranks


def test_integer_homology_rejects_bad_signs():
    from gridfloer.homology import SignedComplexError

    cx = build_complex(unknot_grid(4), Flavor.TILDE, Coeffs.INT)
    cx.signs = cx.signs.copy()
    cx.signs[:] = 1
    with pytest.raises(SignedComplexError):
        homology_int(cx)


def test_v_division():
    v = v_poly(1, 0)
    p = PoincarePoly({(0, (0,)): 2, (-1, (-2,)): 2})
    assert divide_by_v(p, 0) == PoincarePoly({(0, (0,)): 2})
    with pytest.raises(VDivisionError):
        divide_by_v(PoincarePoly({(0, (0,)): 1}), 0)
    assert divide_by_v(p * v, 0) == p


@pytest.mark.parametrize("name", ["trefoil_left", "figure_eight", "hopf", "unlink_2", "unknot_4"])
def test_hat_direct_agrees(corpus, name):
    g = corpus[name]
    assert hat_direct(g) == hat_homology(g)


@pytest.mark.parametrize("name", ["trefoil_left", "hopf", "unknot_3"])
def test_u_action_agreement(corpus, name):
    rep = u_action_agreement(corpus[name])
    assert rep["ok"] and rep["checked"] > 0


@pytest.mark.parametrize("name", ["trefoil_left", "figure_eight", "hopf", "torus_2_4", "unlink_2"])
def test_symmetries(corpus, name):
    rep = symmetry_suite(corpus[name])
    assert rep.ok, rep.checks


def test_poincare_json_roundtrip(corpus):
    res = compute_homology(corpus["hopf"], coeffs="z")
    p = res.tilde_poly
    assert PoincarePoly.from_json(p.to_json()) == p
    assert res.to_json()["tau"] is None


def test_poincare_text_torsion():
    p = PoincarePoly({(0, (0,)): 1}, {(1, (2,)): [2, 4]})
    assert "Z/2 + Z/4" in p.to_text()
