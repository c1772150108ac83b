"""Sign assignment on empty rectangles, giving integer coefficients.

Rectangles are keyed ``(x, L, w, b, h)``: source generator ``x`` (a tuple),
left column ``L``, width ``w``, bottom row ``b`` and height ``h``, all cyclic.
The thin (width one) signs are explicit; wider rectangles inside the
``(n-1) x (n-1)`` lower-left square use a closed formula and everything else
reduces by width using a thin rectangle glued at the lower-left corner.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .grid import GridDiagram

Key = tuple[tuple[int, ...], int, int, int, int]


def _dominance(x: Sequence[int], keep: Callable[[int], bool]) -> int:
    """``I(x, {p in x : keep(p_row)})`` for a generator given as column -> row."""
    n = len(x)
    total = 0
    for j in range(n):
        if keep(x[j]):
            xj = x[j]
            for i in range(j):
                if x[i] < xj:
                    total += 1
    return total


def _parity(e: int) -> int:
    return -1 if e & 1 else 1


def _swap(x: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    y = list(x)
    y[i], y[j] = y[j], y[i]
    return tuple(y)


class SignAssignment:
    """The explicit sign assignment for grids of size ``n`` (markings play no role)."""

    def __init__(self, n: int):
        self.n = n
        self._memo: dict[Key, int] = {}

    # -- thin rectangles ---------------------------------------------------
    def thin(self, x: tuple[int, ...], L: int, b: int, h: int) -> int:
        n = self.n
        top = b + h
        if top <= n - 1:
            if L <= n - 2:
                return _parity(_dominance(x, lambda r: r <= top))
            # last column, clear of the top row
            e = _dominance(x, lambda r: r <= b)
            e += _dominance(x, lambda r: b < r < top and r % 2 == 0)
            return _parity(e + top)
        # meets the top row: minus the complementary thin rectangle from the target
        y = _swap(x, L, (L + 1) % n)
        return -self.thin(y, L, top % n, n - h)

    # -- general empty rectangles ------------------------------------------
    def in_square(self, L: int, w: int, b: int, h: int) -> bool:
        return L + w <= self.n - 1 and b + h <= self.n - 1

    def closed_form(self, x: tuple[int, ...], L: int, w: int, b: int, h: int) -> int:
        if not self.in_square(L, w, b, h):
            raise ValueError("closed form only applies inside the lower-left (n-1)-square")
        d = b + h
        below = sum(1 for i in range(L + 1, L + w) if x[i] < b)
        e = _dominance(x, lambda r: r <= d)
        if below:
            e += below * (_dominance(x, lambda r: b < r <= d) + 1)
        return _parity(e)

    def extension(self, x: tuple[int, ...], L: int, w: int, b: int, h: int) -> int:
        """Width induction: glue the thin rectangle ending at ``x`` below-left of r."""
        n = self.n
        if w == 1:
            return self.thin(x, L, b, h)
        L1 = (L + 1) % n
        c = x[L1]
        top = (b + h) % n
        w0 = list(x)
        w0[L], w0[L1] = c, b
        w0 = tuple(w0)
        z = _swap(w0, L1, (L + w) % n)
        s1 = self.thin(w0, L, c, (b - c) % n)
        s2 = self.sign(w0, L1, w - 1, b, h)
        s3 = self.thin(z, L, c, (top - c) % n)
        return -s1 * s2 * s3

    def sign(self, x: tuple[int, ...], L: int, w: int, b: int, h: int) -> int:
        if w == 1:
            return self.thin(x, L, b, h)
        key = (x, L, w, b, h)
        s = self._memo.get(key)
        if s is None:
            if self.in_square(L, w, b, h):
                s = self.closed_form(x, L, w, b, h)
            else:
                s = self.extension(x, L, w, b, h)
            self._memo[key] = s
        return s

    def __call__(self, x: Sequence[int], L: int, R: int) -> int:
        """Sign of the rectangle leaving ``x`` with corner columns ``L`` and ``R``."""
        x = tuple(int(v) for v in x)
        n = self.n
        b = x[L]
        return self.sign(x, L, (R - L) % n, b, (x[R] - b) % n)

    def edge_signs(self, perms: np.ndarray, src: np.ndarray, L: np.ndarray, R: np.ndarray) -> np.ndarray:
        out = np.empty(src.shape[0], dtype=np.int64)
        rows = {}
        for e in range(src.shape[0]):
            s = int(src[e])
            x = rows.get(s)
            if x is None:
                x = tuple(int(v) for v in perms[s])
                rows[s] = x
            out[e] = self(x, int(L[e]), int(R[e]))
        return out


@dataclass
class GaugedSigns:
    """``S'(r) = f(x) f(y) S(r)`` for a vertex function ``f``."""

    base: SignAssignment
    f: Callable[[tuple[int, ...]], int]

    @property
    def n(self) -> int:
        return self.base.n

    def __call__(self, x: Sequence[int], L: int, R: int) -> int:
        x = tuple(int(v) for v in x)
        y = _swap(x, L, R)
        return self.f(x) * self.f(y) * self.base(x, L, R)

    def edge_signs(self, perms, src, L, R) -> np.ndarray:
        out = np.empty(src.shape[0], dtype=np.int64)
        for e in range(src.shape[0]):
            out[e] = self(perms[int(src[e])], int(L[e]), int(R[e]))
        return out


def sign_thin(sa: SignAssignment, x: Sequence[int], L: int, b: int, h: int) -> int:
    return sa.thin(tuple(x), L, b, h)


# ---------------------------------------------------------------------------
# Exhaustive axiom check.


@dataclass
class AxiomReport:
    n: int
    generators: int = 0
    square_pairs: int = 0
    vertical_annuli: int = 0
    horizontal_annuli: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "generators": self.generators,
            "checked": {
                "Sq": self.square_pairs,
                "V": self.vertical_annuli,
                "H": self.horizontal_annuli,
            },
            "failures": self.failures[:20],
            "n_failures": len(self.failures),
            "ok": self.ok,
        }


def _empty_rects(x: tuple[int, ...], n: int):
    for L in range(n):
        b = x[L]
        for R in range(n):
            if L == R:
                continue
            w = (R - L) % n
            h = (x[R] - b) % n
            if all(not 0 < (x[(L + a) % n] - b) % n < h for a in range(1, w)):
                yield L, R, w, b, h


def _cell_mask(L: int, w: int, b: int, h: int, n: int) -> int:
    m = 0
    for a in range(w):
        c = (L + a) % n
        for k in range(h):
            m |= 1 << (c * n + (b + k) % n)
    return m


def verify_axioms(g: GridDiagram | int, signs=None, cap: int = 6) -> AxiomReport:
    """Check (Sq), (V) and (H) on every composable pair of empty rectangles."""
    from .complex import all_permutations, ResourceCapError

    n = g if isinstance(g, int) else g.n
    if n > cap:
        raise ResourceCapError(f"exhaustive sign check capped at n={cap}")
    sa = signs if signs is not None else SignAssignment(n)
    report = AxiomReport(n)
    full_cols = {sum(1 << (c * n + r) for r in range(n)): c for c in range(n)}
    full_rows = {sum(1 << (c * n + r) for c in range(n)): r for r in range(n)}
    for row in all_permutations(n):
        x = tuple(int(v) for v in row)
        report.generators += 1
        groups: dict[tuple, list[int]] = defaultdict(list)
        for L1, R1, w1, b1, h1 in _empty_rects(x, n):
            y = _swap(x, L1, R1)
            s1 = sa(x, L1, R1)
            m1 = _cell_mask(L1, w1, b1, h1, n)
            for L2, R2, w2, b2, h2 in _empty_rects(y, n):
                z = _swap(y, L2, R2)
                m2 = _cell_mask(L2, w2, b2, h2, n)
                groups[(z, m1 | m2, m1 & m2)].append(s1 * sa(y, L2, R2))
        for (z, union, overlap), prods in groups.items():
            if z == x:
                if overlap or len(prods) != 1:
                    report.failures.append({"x": x, "kind": "annulus-shape", "products": prods})
                    continue
                if union in full_cols:
                    report.vertical_annuli += 1
                    if prods[0] != -1:
                        report.failures.append({"x": x, "axiom": "V", "column": full_cols[union]})
                elif union in full_rows:
                    report.horizontal_annuli += 1
                    if prods[0] != 1:
                        report.failures.append({"x": x, "axiom": "H", "row": full_rows[union]})
                else:
                    report.failures.append({"x": x, "kind": "unexpected x->x domain"})
                continue
            if len(prods) != 2:
                report.failures.append({"x": x, "z": z, "kind": "decompositions", "count": len(prods)})
                continue
            report.square_pairs += 1
            if prods[0] != -prods[1]:
                report.failures.append({"x": x, "z": z, "axiom": "Sq"})
    return report


def compare_closed_form(n: int) -> tuple[int, list]:
    """Closed formula vs. width induction on every in-square empty rectangle."""
    from .complex import all_permutations

    sa = SignAssignment(n)
    checked, bad = 0, []
    for row in all_permutations(n):
        x = tuple(int(v) for v in row)
        for L, R, w, b, h in _empty_rects(x, n):
            if w > 1 and sa.in_square(L, w, b, h):
                checked += 1
                if sa.closed_form(x, L, w, b, h) != sa.extension(x, L, w, b, h):
                    bad.append((x, L, w, b, h))
    return checked, bad
