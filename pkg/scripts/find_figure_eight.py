"""Search 6x6 grids for the figure-eight whose minesweeper matrix is

     1  1  1    t  t   t
     1  1  t^-1 1  t   t
     1  t  1    1  t   t
     1  t  t    t  t^2 t
     1  t  t    t  t   1
     1  1  1    1  1   1

(rows drawn top to bottom).  Every vertical segment is read off from the
differences of neighbouring lattice columns, the last one from what remains.
"""

from __future__ import annotations

import itertools
import sys

import numpy as np

from gridfloer.alexander import alexander_polynomial, minesweeper_exponents
from gridfloer.grid import GridDiagram, GridError

TARGET_TOP_DOWN = [
    [0, 0, 0, 1, 1, 1],
    [0, 0, -1, 0, 1, 1],
    [0, 1, 0, 0, 1, 1],
    [0, 1, 1, 1, 2, 1],
    [0, 1, 1, 1, 1, 0],
    [0, 0, 0, 0, 0, 0],
]


def target() -> np.ndarray:
    n = len(TARGET_TOP_DOWN)
    a = np.zeros((n, n), dtype=np.int64)
    for r, row in enumerate(TARGET_TOP_DOWN):
        for i, v in enumerate(row):
            a[i, n - 1 - r] = v
    return a


def search() -> list[GridDiagram]:
    want = target()
    n = want.shape[0]
    hits = []
    for sx in itertools.permutations(range(n)):
        for so in itertools.permutations(range(n)):
            if any(a == b for a, b in zip(sx, so)):
                continue
            try:
                g = GridDiagram(sx, so)
            except GridError:
                continue
            if g.ell != 1:
                continue
            if np.array_equal(minesweeper_exponents(g)[0], want):
                hits.append(g)
    return hits


def main() -> int:
    hits = search()
    for g in hits:
        print(g.to_text())
        print("Alexander:", alexander_polynomial(g))
    return 0 if hits else 1


if __name__ == "__main__":
    sys.exit(main())
