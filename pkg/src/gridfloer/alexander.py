"""Minesweeper determinant, Alexander polynomial and Euler characteristics."""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

import numpy as np

from .complex import GradedComplex
from .gradings import winding_grid
from .grid import GridDiagram
from .homology import PoincarePoly
from .laurent import LaurentPoly

Matrix = list[list[LaurentPoly]]


def minesweeper_exponents(g: GridDiagram) -> np.ndarray:
    """``a[k, i, j]`` = minus the winding number of component ``k`` around lattice point ``(i, j)``."""
    return -winding_grid(g)


def minesweeper(g: GridDiagram) -> Matrix:
    """``M[i][j] = t^{a(i, j)}``, with ``i`` the lattice column and ``j`` the lattice row."""
    a = minesweeper_exponents(g)
    n = g.n
    return [[LaurentPoly.monomial(a[:, i, j].tolist()) for j in range(n)] for i in range(n)]


def minesweeper_text(g: GridDiagram) -> str:
    """Rows printed top to bottom, the way the grid is drawn."""
    a = minesweeper_exponents(g)
    n = g.n
    lines = []
    for j in reversed(range(n)):
        cells = [LaurentPoly.monomial(a[:, i, j].tolist()).to_text() for i in range(n)]
        lines.append("  ".join(f"{c:>6}" for c in cells))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Determinants.


def _sign_of(perm: Sequence[int]) -> int:
    seen, s = [False] * len(perm), 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                s = -s
    return s


def det_expansion(m: Matrix) -> LaurentPoly:
    """Leibniz expansion; reference only (``n!`` terms)."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    total = LaurentPoly({}, m[0][0].nvars)
    for p in permutations(range(n)):
        term = LaurentPoly.const(_sign_of(p), m[0][0].nvars)
        for i in range(n):
            term = term * m[i][p[i]]
        total = total + term
    return total


def bareiss_det(m: Matrix) -> LaurentPoly:
    """Fraction-free elimination; every division is exact."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    nv = m[0][0].nvars
    A = [row[:] for row in m]
    sign = 1
    prev = LaurentPoly.const(1, nv)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for r in range(k + 1, n):
                if not A[r][k].is_zero():
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly({}, nv)
        p = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (p * A[i][j] - A[i][k] * A[k][j]) // prev
            A[i][k] = LaurentPoly({}, nv)
        prev = p
    return A[n - 1][n - 1] * sign


def _column_factors(g: GridDiagram) -> list[LaurentPoly]:
    """``t_k - 1`` (upward) or ``t_k^{-1} - 1`` (downward) for grid columns ``0 .. n-2``."""
    out = []
    for c in range(g.n - 1):
        k = g.comp_of_col[c]
        up = g.sigma_o[c] > g.sigma_x[c]
        out.append(LaurentPoly.var(k, g.ell, 1 if up else -1) - 1)
    return out


def reduced_minor(g: GridDiagram) -> Matrix:
    """The ``(n-1) x (n-1)`` matrix left after differencing neighbouring lattice columns.

    Row ``i`` minus row ``i-1`` vanishes off the vertical segment of grid column
    ``i-1`` and equals ``t^{a(i-1, j)} (t_k^{+-1} - 1)`` on it; the factor is pulled
    out, the lattice column 0 row (all ones) is expanded along lattice row 0.
    """
    a = minesweeper_exponents(g)
    n, ell = g.n, g.ell
    zero = LaurentPoly({}, ell)
    out = []
    for i in range(1, n):
        c = i - 1
        lo, hi = sorted((g.sigma_x[c], g.sigma_o[c]))
        row = []
        for j in range(1, n):
            row.append(LaurentPoly.monomial(a[:, c, j].tolist()) if lo < j <= hi else zero)
        out.append(row)
    return out


def laurent_det(m: Matrix, g: GridDiagram | None = None) -> LaurentPoly:
    """Exact determinant.

    With the grid supplied the column-difference reduction is applied first, so
    the ``(t_k^{+-1} - 1)`` factors never enter the elimination.
    """
    if g is None:
        return bareiss_det(m)
    if g.n == 1:
        return m[0][0]
    det = bareiss_det(reduced_minor(g))
    for f in _column_factors(g):
        det = det * f
    return det


def minesweeper_det(g: GridDiagram) -> LaurentPoly:
    return laurent_det(minesweeper(g), g)


# ---------------------------------------------------------------------------
# Normalisation.


def _recentre(p: LaurentPoly) -> LaurentPoly:
    """Doubled exponents shifted so each variable's span is symmetric about zero."""
    d = p.to_doubled()
    span = d.degree_span()
    shift = [-(lo + hi) // 2 for lo, hi in span]
    return d.shift(shift)


def _fix_sign(p: LaurentPoly, ell: int) -> LaurentPoly:
    if p.is_zero():
        return p
    if ell == 1:
        value = sum(p.terms.values())
        return -p if value < 0 else p
    return -p if p.leading()[1] < 0 else p


def normalize(p: LaurentPoly, ell: int) -> LaurentPoly:
    """Symmetric representative: centred exponents, ``Δ(1) > 0`` for knots, else lex-leading coefficient > 0.

    Exponents are returned on the doubled lattice for links and halved for knots.
    """
    if p.is_zero():
        return LaurentPoly({}, ell, doubled=ell > 1)
    q = _fix_sign(_recentre(p), ell)
    if ell == 1:
        q = q.to_undoubled()
    return q


def alexander_polynomial(g: GridDiagram) -> LaurentPoly:
    """Normalised Alexander polynomial from the minesweeper determinant.

    Knots: ``det(M) = +-t^k (t-1)^{n-1} Δ`` and the reduced minor is ``Δ`` itself.
    Links: ``det(M) = +-prod t_i^{k_i} (1-t_i)^{n_i} Δ``; the reduction removes
    every factor except one ``(1 - t_{i0})`` for the component ``i0`` of the last
    grid column, which is divided out here.
    """
    if g.n == 1:
        return LaurentPoly.const(1)
    minor = bareiss_det(reduced_minor(g))
    if g.ell > 1 and not minor.is_zero():
        i0 = g.comp_of_col[g.n - 1]
        minor = minor // (LaurentPoly.var(i0, g.ell) - 1)
    return normalize(minor, g.ell)


def symmetric_up_to_sign(p: LaurentPoly) -> bool:
    inv = p.invert_vars()
    return inv == p or inv == -p


# ---------------------------------------------------------------------------
# Euler characteristics.


def euler_characteristic(src: PoincarePoly | GradedComplex) -> LaurentPoly:
    """``sum (-1)^M rank * t^A`` on the doubled exponent lattice."""
    if isinstance(src, PoincarePoly):
        terms = src.euler_terms()
        nv = src.ell or 1
        return LaurentPoly(terms, nv, doubled=True)
    signs = np.where(src.maslov % 2 == 0, 1, -1)
    terms: dict[tuple[int, ...], int] = {}
    for row, s in zip(map(tuple, src.alex.tolist()), signs.tolist()):
        terms[row] = terms.get(row, 0) + s
    return LaurentPoly(terms, src.alex.shape[1], doubled=True)


def unit_monomial_ratio(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly | None:
    """``a / b`` when it is ``+-`` a monomial, else ``None``."""
    if a.is_zero() or b.is_zero():
        return LaurentPoly.const(1, a.nvars, a.doubled) if a.is_zero() and b.is_zero() else None
    e1, c1 = a.leading()
    e2, c2 = b.leading()
    if c1 not in (c2, -c2):
        return None
    mono = LaurentPoly.monomial([x - y for x, y in zip(e1, e2)], c1 // c2, doubled=a.doubled)
    return mono if mono * b == a else None


def hat_euler_expected(g: GridDiagram) -> LaurentPoly:
    """``prod (t_i^{1/2} - t_i^{-1/2}) Δ`` for links and ``Δ`` for knots, doubled lattice."""
    delta = alexander_polynomial(g).to_doubled()
    if g.ell == 1:
        return delta
    out = delta
    for i in range(g.ell):
        e = [0] * g.ell
        e[i] = 1
        f = [0] * g.ell
        f[i] = -1
        out = out * (LaurentPoly.monomial(e, doubled=True) - LaurentPoly.monomial(f, doubled=True))
    return out
