"""Exact linear algebra: GF(2) bitset elimination, chain-complex cancellation, Smith form."""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Iterable, Sequence


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of rows packed into Python ints (bit j = column j)."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                rank += 1
                break
            r ^= p
    return rank


class GF2Basis:
    """Incremental row-echelon basis; ``add`` reports whether the vector was new."""

    def __init__(self):
        self.pivots: dict[int, int] = {}

    def reduce(self, r: int) -> int:
        while r:
            p = self.pivots.get(r.bit_length() - 1)
            if p is None:
                return r
            r ^= p
        return 0

    def add(self, r: int) -> bool:
        r = self.reduce(r)
        if r:
            self.pivots[r.bit_length() - 1] = r
            return True
        return False

    def __len__(self) -> int:
        return len(self.pivots)


def gf2_kernel(columns: Sequence[int], n_rows: int) -> list[int]:
    """Kernel basis of the map whose i-th column is ``columns[i]``; vectors as bitmasks over columns."""
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for i, col in enumerate(columns):
        comb = 1 << i
        while col:
            top = col.bit_length() - 1
            hit = pivots.get(top)
            if hit is None:
                pivots[top] = (col, comb)
                break
            col ^= hit[0]
            comb ^= hit[1]
        if not col:
            kernel.append(comb)
    return kernel


# ---------------------------------------------------------------------------
# Cancellation on sparse complexes.


class SparseComplex:
    """Based complex with ``out[x] = {y: coeff}``; coefficients are ints (mod 2 when ``mod2``)."""

    def __init__(self, n_gens: int, edges: Iterable[tuple[int, int, int]], mod2: bool):
        self.mod2 = mod2
        self.alive = set(range(n_gens))
        self.out: dict[int, dict[int, int]] = defaultdict(dict)
        self.inc: dict[int, dict[int, int]] = defaultdict(dict)
        for s, t, c in edges:
            self._add(s, t, c)

    def _add(self, s: int, t: int, c: int) -> None:
        cur = self.out[s].get(t, 0) + c
        if self.mod2:
            cur &= 1
        if cur:
            self.out[s][t] = cur
            self.inc[t][s] = cur
        else:
            self.out[s].pop(t, None)
            self.inc[t].pop(s, None)

    def edges(self) -> list[tuple[int, int, int]]:
        return [(s, t, c) for s in self.alive for t, c in self.out.get(s, {}).items()]

    def cancel(self, x: int, y: int) -> None:
        """Cancel the unit arrow ``x -> y`` (zig-zag update of every other arrow)."""
        c = self.out[x][y]
        inv = c  # units are +-1 (or 1 mod 2)
        sources = [(z, a) for z, a in self.inc[y].items() if z != x]
        targets = [(w, b) for w, b in self.out[x].items() if w != y]
        for v in (x, y):
            for t in list(self.out.get(v, {})):
                self.inc[t].pop(v, None)
            for s in list(self.inc.get(v, {})):
                self.out[s].pop(v, None)
            self.out.pop(v, None)
            self.inc.pop(v, None)
            self.alive.discard(v)
        for z, a in sources:
            for w, b in targets:
                if z in self.alive and w in self.alive:
                    self._add(z, w, -a * b * inv)

    def reduce(self, allowed: Callable[[int, int], bool] = lambda s, t: True) -> None:
        """Cancel unit arrows satisfying ``allowed`` until none is left."""
        stack = sorted(self.alive, key=lambda v: -len(self.out.get(v, ())))
        while stack:
            x = stack.pop()
            if x not in self.alive:
                continue
            # Markowitz-style choice: the target with fewest other incoming arrows
            pick, best = None, None
            for y, c in self.out.get(x, {}).items():
                if (c == 1 or c == -1) and allowed(x, y):
                    fill = len(self.inc[y])
                    if best is None or fill < best:
                        pick, best = y, fill
                        if fill == 1:
                            break
            if pick is None:
                continue
            touched = set(self.inc.get(pick, {})) | set(self.out.get(x, {}))
            self.cancel(x, pick)
            stack.extend(v for v in touched if v in self.alive)


# ---------------------------------------------------------------------------
# Smith normal form.


def smith_invariants(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix."""
    A = [list(map(int, row)) for row in matrix]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        ri, rt = A[i], A[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A[t:]:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block by the pivot
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                rb, rt = A[bad], A[t]
                for j in range(t, n):
                    rt[j] += rb[j]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag
