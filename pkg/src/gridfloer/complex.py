"""Generators, rectangles and the grid chain complexes.

A rectangle leaving generator ``x`` is fixed by its left column ``L`` and
right column ``R`` (taken cyclically): its lower-left corner is ``(L, x[L])``
and its upper-right corner is ``(R, x[R])``.  Width is ``(R - L) mod n`` and
height ``(x[R] - x[L]) mod n``; the target generator swaps ``x[L]`` and ``x[R]``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .grid import GridDiagram
from .gradings import GradingTables, alexander, maslov

DEFAULT_CAP = 10


class ResourceCapError(RuntimeError):
    """Raised when a grid exceeds the generator cap."""


class Flavor(str, Enum):
    MINUS = "minus"
    HAT = "hat"
    TILDE = "tilde"
    # U_i = 0 for every i but the Alexander filtration kept (X's allowed inside)
    FILTERED = "filtered"


class Coeffs(str, Enum):
    GF2 = "f2"
    INT = "z"


@dataclass(frozen=True)
class Generator:
    perm: tuple[int, ...]
    maslov: int
    alex: tuple[int, ...]  # doubled
    index: int


@dataclass(frozen=True)
class Rectangle:
    source: tuple[int, ...]
    target: tuple[int, ...]
    left: int
    width: int
    bottom: int
    height: int
    o_counts: tuple[int, ...]  # per column of the grid: 1 if that column's O is inside
    x_counts: tuple[int, ...]
    empty: bool

    def cells(self, n: int) -> list[tuple[int, int]]:
        return [
            ((self.left + a) % n, (self.bottom + b) % n)
            for a in range(self.width)
            for b in range(self.height)
        ]

    @property
    def key(self) -> tuple:
        return (self.source, self.left, self.width, self.bottom, self.height)


def rectangle(g: GridDiagram, x: Sequence[int], L: int, R: int) -> Rectangle:
    n = g.n
    x = tuple(x)
    w = (R - L) % n
    b = x[L]
    h = (x[R] - b) % n
    empty = all(not 0 < (x[(L + a) % n] - b) % n < h for a in range(1, w))
    cols = [(L + a) % n for a in range(w)]
    o_counts = [0] * n
    x_counts = [0] * n
    for c in cols:
        if (g.sigma_o[c] - b) % n < h:
            o_counts[c] = 1
        if (g.sigma_x[c] - b) % n < h:
            x_counts[c] = 1
    y = list(x)
    y[L], y[R] = y[R], y[L]
    return Rectangle(x, tuple(y), L, w, b, h, tuple(o_counts), tuple(x_counts), empty)


def rectangles_between(g: GridDiagram, x: Sequence[int], y: Sequence[int]) -> list[Rectangle]:
    diff = [c for c in range(g.n) if x[c] != y[c]]
    if len(diff) != 2:
        return []
    i, j = diff
    return [rectangle(g, x, i, j), rectangle(g, x, j, i)]


def rectangles_from(g: GridDiagram, x: Sequence[int], empty_only: bool = True) -> Iterator[Rectangle]:
    n = g.n
    for L in range(n):
        for R in range(n):
            if L != R:
                r = rectangle(g, x, L, R)
                if r.empty or not empty_only:
                    yield r


# ---------------------------------------------------------------------------
# Vectorised enumeration.


def all_permutations(n: int) -> np.ndarray:
    """All permutations of ``0..n-1`` in lexicographic order, shape ``(n!, n)``."""
    perms = np.zeros((1, 0), dtype=np.int8)
    for size in range(1, n + 1):
        # lead with each value in turn, followed by the smaller perms relabelled around it
        k = perms.shape[0]
        out = np.empty((k * size, size), dtype=np.int8)
        for first in range(size):
            block = perms.copy()
            block[block >= first] += 1
            out[first * k : (first + 1) * k, 0] = first
            out[first * k : (first + 1) * k, 1:] = block
        perms = out
    return perms


def perm_codes(perms: np.ndarray, n: int) -> np.ndarray:
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return perms.astype(np.int64) @ weights


@dataclass
class GradedComplex:
    """Generators with bigradings and a sparse boundary.

    ``src``/``dst`` index into the generator arrays; ``left``/``right`` record the
    rectangle's corner columns so signs and U-powers can be recovered.  ``o_mask``
    and ``x_mask`` are bitmasks over grid columns of markings inside the rectangle.
    """

    grid: GridDiagram
    flavor: Flavor
    coeffs: Coeffs
    perms: np.ndarray
    maslov: np.ndarray
    alex: np.ndarray  # doubled, shape (N, ell)
    src: np.ndarray
    dst: np.ndarray
    left: np.ndarray
    right: np.ndarray
    o_mask: np.ndarray
    x_mask: np.ndarray
    signs: np.ndarray | None = None
    killed: tuple[int, ...] = ()
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return int(self.perms.shape[0])

    @property
    def n_edges(self) -> int:
        return int(self.src.shape[0])

    def generator(self, i: int) -> Generator:
        return Generator(
            tuple(int(v) for v in self.perms[i]),
            int(self.maslov[i]),
            tuple(int(v) for v in self.alex[i]),
            int(i),
        )

    def index_of(self, perm: Sequence[int]) -> int:
        n = self.grid.n
        code = int(perm_codes(np.asarray([perm]), n)[0])
        codes = self.meta.get("_codes")
        if codes is None:
            codes = perm_codes(self.perms, n)
            self.meta["_codes"] = codes
        k = int(np.searchsorted(codes, code))
        if k >= len(codes) or codes[k] != code:
            raise KeyError(perm)
        return k

    def u_exponents(self, e: int) -> tuple[int, ...]:
        m = int(self.o_mask[e])
        return tuple((m >> c) & 1 for c in range(self.grid.n))

    def edge_coefficients(self) -> np.ndarray:
        if self.signs is None:
            return np.ones(self.n_edges, dtype=np.int64)
        return self.signs

    def alexander_blocks(self) -> dict[tuple[int, ...], np.ndarray]:
        keys, inverse = np.unique(self.alex, axis=0, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        order = np.argsort(inverse, kind="stable")
        bounds = np.searchsorted(inverse[order], np.arange(len(keys) + 1))
        return {
            tuple(int(v) for v in keys[b]): order[bounds[b] : bounds[b + 1]]
            for b in range(len(keys))
        }

    def dump_blocks(self, fh) -> None:
        """Sparse triplets ``from to coeff`` per Alexander block, each after a JSON header."""
        coeff = self.edge_coefficients()
        blocks = self.alexander_blocks()
        local = np.empty(self.size, dtype=np.int64)
        for key, members in blocks.items():
            local[members] = np.arange(len(members))
        edge_block = {k: [] for k in blocks}
        alex_t = [tuple(int(v) for v in row) for row in self.alex]
        for e in range(self.n_edges):
            s = int(self.src[e])
            if alex_t[s] == alex_t[int(self.dst[e])]:
                edge_block[alex_t[s]].append(e)
        for key, members in sorted(blocks.items()):
            header = {
                "alexander_doubled": list(key),
                "generators": [[int(v) for v in self.perms[i]] for i in members],
                "maslov": [int(self.maslov[i]) for i in members],
                "edges": len(edge_block[key]),
            }
            fh.write(json.dumps(header) + "\n")
            for e in edge_block[key]:
                fh.write(f"{local[self.src[e]]} {local[self.dst[e]]} {int(coeff[e])}\n")


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ResourceCapError(
            f"grid number {n} exceeds the generator cap {cap} ({math.factorial(n)} generators); raise --cap to override"
        )


def enumerate_generators(g: GridDiagram, cap: int = DEFAULT_CAP) -> list[Generator]:
    _check_cap(g.n, cap)
    perms = all_permutations(g.n)
    tables = GradingTables(g)
    m = tables.maslov(perms)
    a = tables.alexander(perms)
    return [
        Generator(tuple(int(v) for v in perms[i]), int(m[i]), tuple(int(v) for v in a[i]), i)
        for i in range(perms.shape[0])
    ]


def _edges(g: GridDiagram, perms: np.ndarray, flavor: Flavor):
    """All empty rectangles as parallel arrays, filtered by flavor."""
    n = g.n
    N = perms.shape[0]
    codes = perm_codes(perms, n)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    so = np.asarray(g.sigma_o, dtype=np.int64)
    sx = np.asarray(g.sigma_x, dtype=np.int64)
    src_l, dst_l, L_l, R_l, om_l, xm_l = [], [], [], [], [], []
    p64 = perms.astype(np.int64)
    for L in range(n):
        b = p64[:, L]
        for R in range(n):
            if L == R:
                continue
            top = p64[:, R]
            h = (top - b) % n
            ok = np.ones(N, dtype=bool)
            for a in range(1, (R - L) % n):
                c = (L + a) % n
                d = (p64[:, c] - b) % n
                ok &= ~((d > 0) & (d < h))
            o_mask = np.zeros(N, dtype=np.int64)
            x_mask = np.zeros(N, dtype=np.int64)
            for a in range((R - L) % n):
                c = (L + a) % n
                o_mask |= (((so[c] - b) % n) < h).astype(np.int64) << c
                x_mask |= (((sx[c] - b) % n) < h).astype(np.int64) << c
            if flavor is Flavor.TILDE:
                ok &= (o_mask == 0) & (x_mask == 0)
            elif flavor is Flavor.FILTERED:
                ok &= o_mask == 0
            idx = np.nonzero(ok)[0]
            if idx.size == 0:
                continue
            delta = (top[idx] - b[idx]) * (weights[L] - weights[R])
            tgt = np.searchsorted(codes, codes[idx] + delta)
            src_l.append(idx)
            dst_l.append(tgt)
            L_l.append(np.full(idx.size, L, dtype=np.int8))
            R_l.append(np.full(idx.size, R, dtype=np.int8))
            om_l.append(o_mask[idx])
            xm_l.append(x_mask[idx])
    cat = lambda parts, dt: np.concatenate(parts).astype(dt) if parts else np.zeros(0, dtype=dt)
    return (
        cat(src_l, np.int64),
        cat(dst_l, np.int64),
        cat(L_l, np.int8),
        cat(R_l, np.int8),
        cat(om_l, np.int64),
        cat(xm_l, np.int64),
    )


def build_complex(
    g: GridDiagram,
    flavor: Flavor | str = Flavor.TILDE,
    coeffs: Coeffs | str = Coeffs.GF2,
    cap: int = DEFAULT_CAP,
    signs=None,
) -> GradedComplex:
    """Build the chain complex of ``g``.

    ``signs`` is a :class:`~gridfloer.signs.SignAssignment`; one is created when
    integer coefficients are requested without it.
    """
    flavor = Flavor(flavor)
    coeffs = Coeffs(coeffs)
    _check_cap(g.n, cap)
    perms = all_permutations(g.n)
    tables = GradingTables(g)
    m = tables.maslov(perms)
    a = tables.alexander(perms)
    edge_flavor = Flavor.MINUS if flavor is Flavor.HAT else flavor
    src, dst, L, R, om, xm = _edges(g, perms, edge_flavor)
    killed: tuple[int, ...] = ()
    if flavor is Flavor.HAT:
        # one O per component has U set to zero
        killed = tuple(g.columns_of(k)[0] for k in range(g.ell))
    cx = GradedComplex(g, flavor, coeffs, perms, m, a, src, dst, L, R, om, xm, killed=killed)
    if coeffs is Coeffs.INT:
        from .signs import SignAssignment

        sa = signs if signs is not None else SignAssignment(g.n)
        cx.signs = sa.edge_signs(perms, src, L, R)
    return cx


def generator_perm(cx: GradedComplex, i: int) -> tuple[int, ...]:
    return tuple(int(v) for v in cx.perms[i])


def recompute_gradings(g: GridDiagram, perm: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Scalar reference for a single generator (used to cross-check the tables)."""
    return maslov(g, perm), alexander(g, perm)


def d_squared_violations(cx: GradedComplex, mod2: bool | None = None, limit: int = 20) -> list[dict]:
    """Entries of ``∂∘∂`` that fail to vanish.

    Every composable pair ``x -> y -> z`` is keyed by ``(x, z)`` and the U-monomial
    of the glued domain (the sum of the two O-masks, encoded as ``(m1 | m2, m1 & m2)``);
    coefficients are summed per key.  For the tilde flavor all masks are zero.
    """
    if mod2 is None:
        mod2 = cx.signs is None
    E = cx.n_edges
    if E == 0:
        return []
    coeff = cx.edge_coefficients().astype(np.int64)
    order = np.argsort(cx.src, kind="stable")
    src, dst = cx.src[order], cx.dst[order]
    om, c = cx.o_mask[order], coeff[order]
    starts = np.searchsorted(src, np.arange(cx.size + 1))
    deg = starts[1:] - starts[:-1]
    counts = deg[dst]
    total = int(counts.sum())
    if total == 0:
        return []
    e1 = np.repeat(np.arange(E), counts)
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    e2 = starts[dst[e1]] + offsets
    keys = np.stack([src[e1], dst[e2], om[e1] | om[e2], om[e1] & om[e2]], axis=1)
    vals = c[e1] * c[e2]
    uniq, inv = np.unique(keys, axis=0, return_inverse=True)
    sums = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(sums, np.asarray(inv).reshape(-1), vals)
    if mod2:
        sums &= 1
    bad = np.nonzero(sums)[0]
    out = []
    for k in bad[:limit]:
        x, z, u_or, u_and = (int(v) for v in uniq[k])
        out.append(
            {
                "from": [int(v) for v in cx.perms[x]],
                "to": [int(v) for v in cx.perms[z]],
                "u_mask": [u_or, u_and],
                "coeff": int(sums[k]),
            }
        )
    if len(bad) > limit:
        out.append({"truncated": int(len(bad) - limit)})
    return out
