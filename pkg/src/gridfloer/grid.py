"""Toroidal grid diagrams and Cromwell moves.

Coordinates: columns ``0..n-1`` left to right, rows ``0..n-1`` bottom to top.
``sigma_x[c]`` is the row of the X in column ``c``; ``sigma_o[c]`` likewise for O.
Markings sit at cell centres ``(c + 1/2, row + 1/2)``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Sequence


class GridError(ValueError):
    """Invalid grid data or an illegal move."""


def _is_perm(seq: Sequence[int], n: int) -> bool:
    return sorted(seq) == list(range(n))


@dataclass(frozen=True)
class GridDiagram:
    sigma_x: tuple[int, ...]
    sigma_o: tuple[int, ...]
    comp_of_col: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        sx, so = tuple(int(v) for v in self.sigma_x), tuple(int(v) for v in self.sigma_o)
        object.__setattr__(self, "sigma_x", sx)
        object.__setattr__(self, "sigma_o", so)
        n = len(sx)
        if n < 1 or len(so) != n:
            raise GridError("X and O rows must be given for the same positive number of columns")
        if not _is_perm(sx, n):
            raise GridError(f"X placement {sx} is not a permutation of 0..{n - 1}")
        if not _is_perm(so, n):
            raise GridError(f"O placement {so} is not a permutation of 0..{n - 1}")
        for c in range(n):
            if sx[c] == so[c]:
                raise GridError(f"X and O share the cell (column {c}, row {sx[c]})")
        object.__setattr__(self, "comp_of_col", _trace_components(sx, so))

    @property
    def n(self) -> int:
        return len(self.sigma_x)

    @property
    def ell(self) -> int:
        return max(self.comp_of_col) + 1

    @property
    def n_i(self) -> tuple[int, ...]:
        counts = [0] * self.ell
        for k in self.comp_of_col:
            counts[k] += 1
        return tuple(counts)

    def columns_of(self, k: int) -> list[int]:
        return [c for c in range(self.n) if self.comp_of_col[c] == k]

    @property
    def x_inv(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for c, r in enumerate(self.sigma_x):
            inv[r] = c
        return tuple(inv)

    @property
    def o_inv(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for c, r in enumerate(self.sigma_o):
            inv[r] = c
        return tuple(inv)

    def to_text(self) -> str:
        return (
            f"n = {self.n}\n"
            f"X = {' '.join(map(str, self.sigma_x))}\n"
            f"O = {' '.join(map(str, self.sigma_o))}\n"
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "X": list(self.sigma_x),
            "O": list(self.sigma_o),
            "components": list(self.comp_of_col),
            "ell": self.ell,
            "n_i": list(self.n_i),
        }

    def __str__(self) -> str:
        rows = []
        for r in reversed(range(self.n)):
            cells = []
            for c in range(self.n):
                cells.append("X" if self.sigma_x[c] == r else "O" if self.sigma_o[c] == r else ".")
            rows.append(" ".join(cells))
        return "\n".join(rows)


def _trace_components(sx: tuple[int, ...], so: tuple[int, ...]) -> tuple[int, ...]:
    # Walk O -> X along rows, X -> O along columns; numbered by smallest column.
    n = len(sx)
    x_col_of_row = [0] * n
    for c, r in enumerate(sx):
        x_col_of_row[r] = c
    comp = [-1] * n
    label = 0
    for start in range(n):
        if comp[start] >= 0:
            continue
        c = start
        while comp[c] < 0:
            comp[c] = label
            c = x_col_of_row[so[c]]
        label += 1
    return tuple(comp)


def parse_grid(text: str) -> GridDiagram:
    """Parse the ``n = / X = / O =`` text format; ``#`` lines are comments."""
    fields: dict[str, str] = {}
    where: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise GridError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().upper()
        if key not in ("N", "X", "O"):
            raise GridError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise GridError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value.strip()
        where[key] = lineno
    missing = [k for k in ("N", "X", "O") if k not in fields]
    if missing:
        raise GridError(f"missing field(s): {', '.join(missing)}")
    parsed = {}
    for key in ("N", "X", "O"):
        try:
            parsed[key] = [int(v) for v in fields[key].split()]
        except ValueError as exc:
            raise GridError(f"line {where[key]}: non-integer entry ({exc})") from None
    if len(parsed["N"]) != 1:
        raise GridError(f"line {where['N']}: n must be a single integer")
    n = parsed["N"][0]
    xs, os_ = parsed["X"], parsed["O"]
    for name, seq in (("X", xs), ("O", os_)):
        if len(seq) != n:
            raise GridError(f"line {where[name]}: expected {n} entries for {name}, got {len(seq)}")
        bad = [v for v in seq if not 0 <= v < n]
        if bad:
            raise GridError(f"line {where[name]}: {name} entries out of range 0..{n - 1}: {bad}")
        if len(set(seq)) != n:
            dup = sorted({v for v in seq if seq.count(v) > 1})
            raise GridError(f"line {where[name]}: two {name}'s share row(s) {dup}")
    clash = [c for c in range(n) if xs[c] == os_[c]]
    if clash:
        raise GridError(f"lines {where['X']}/{where['O']}: X and O share a cell in column(s) {clash}")
    return GridDiagram(tuple(xs), tuple(os_))


def load_grid(path) -> GridDiagram:
    with open(path) as fh:
        return parse_grid(fh.read())


def grid_from_json(data: dict | str) -> GridDiagram:
    if isinstance(data, str):
        data = json.loads(data)
    return GridDiagram(tuple(data["X"]), tuple(data["O"]))


# ---------------------------------------------------------------------------
# Symmetry operations used by the symmetry checks.


def transpose(g: GridDiagram) -> GridDiagram:
    """Flip along the main diagonal (reverses every component's orientation)."""
    return GridDiagram(g.x_inv, g.o_inv)


def rotate(g: GridDiagram) -> GridDiagram:
    """Rotate a quarter turn counter-clockwise: cell (c, r) goes to (n-1-r, c)."""
    n = g.n
    sx, so = [0] * n, [0] * n
    for c in range(n):
        sx[n - 1 - g.sigma_x[c]] = c
        so[n - 1 - g.sigma_o[c]] = c
    return GridDiagram(tuple(sx), tuple(so))


def swap_markings(g: GridDiagram, components: Sequence[int] | None = None) -> GridDiagram:
    """Exchange X and O on the given components (all when None)."""
    comps = set(range(g.ell) if components is None else components)
    sx, so = list(g.sigma_x), list(g.sigma_o)
    for c in range(g.n):
        if g.comp_of_col[c] in comps:
            sx[c], so[c] = so[c], sx[c]
    return GridDiagram(tuple(sx), tuple(so))


# ---------------------------------------------------------------------------
# Cromwell moves.


@dataclass(frozen=True)
class CyclicRows:
    k: int


@dataclass(frozen=True)
class CyclicCols:
    k: int


@dataclass(frozen=True)
class CommuteCols:
    i: int  # swaps columns i and i+1 (mod n)


@dataclass(frozen=True)
class CommuteRows:
    j: int  # swaps rows j and j+1 (mod n)


@dataclass(frozen=True)
class Stabilize:
    """Split ``row`` in two and add a column beside its X (``at='X'``) or O.

    ``side`` places the new column left or right of that marking;
    ``o_up`` puts the row's original O in the upper copy of the row.
    """

    row: int
    at: str = "X"
    side: str = "right"
    o_up: bool = True


@dataclass(frozen=True)
class Destabilize:
    col: int


MoveSpec = CyclicRows | CyclicCols | CommuteCols | CommuteRows | Stabilize | Destabilize


def _interleaved(a: tuple[int, int], b: tuple[int, int]) -> bool:
    lo, hi = sorted(a)
    inside = [lo < v < hi for v in b]
    if any(v in a for v in b):
        return True
    return inside[0] != inside[1]


def apply_move(g: GridDiagram, m: MoveSpec) -> GridDiagram:
    n = g.n
    sx, so = list(g.sigma_x), list(g.sigma_o)
    if isinstance(m, CyclicRows):
        return GridDiagram(tuple((r + m.k) % n for r in sx), tuple((r + m.k) % n for r in so))
    if isinstance(m, CyclicCols):
        return GridDiagram(
            tuple(sx[(c - m.k) % n] for c in range(n)),
            tuple(so[(c - m.k) % n] for c in range(n)),
        )
    if isinstance(m, CommuteCols):
        if not 0 <= m.i < n or n < 3:
            raise GridError(f"commutation column {m.i} out of range for n={n}")
        a, b = m.i, (m.i + 1) % n
        if _interleaved((sx[a], so[a]), (sx[b], so[b])):
            raise GridError(f"columns {a} and {b} interleave; commutation is illegal")
        sx[a], sx[b] = sx[b], sx[a]
        so[a], so[b] = so[b], so[a]
        return GridDiagram(tuple(sx), tuple(so))
    if isinstance(m, CommuteRows):
        if not 0 <= m.j < n:
            raise GridError(f"commutation row {m.j} out of range for n={n}")
        return transpose(apply_move(transpose(g), CommuteCols(m.j)))
    if isinstance(m, Stabilize):
        return _stabilize(g, m)
    if isinstance(m, Destabilize):
        return _destabilize(g, m.col)
    raise TypeError(f"unknown move {m!r}")


def _stabilize(g: GridDiagram, m: Stabilize) -> GridDiagram:
    n = g.n
    r = m.row
    if not 0 <= r < n:
        raise GridError(f"stabilization row {r} out of range for n={n}")
    if m.at not in ("X", "O") or m.side not in ("left", "right"):
        raise GridError(f"bad stabilization variant {m!r}")
    x_col, o_col = g.x_inv[r], g.o_inv[r]
    anchor = x_col if m.at == "X" else o_col
    k = anchor + (1 if m.side == "right" else 0)  # index of the new column

    o_row, x_row = (r + 1, r) if m.o_up else (r, r + 1)

    def shift_row(row: int) -> int:
        return row + 1 if row > r else row

    sx, so = [0] * (n + 1), [0] * (n + 1)
    for c in range(n):
        nc = c if c < k else c + 1
        sx[nc] = x_row if c == x_col else shift_row(g.sigma_x[c])
        so[nc] = o_row if c == o_col else shift_row(g.sigma_o[c])
    # new column: its O shares a row with the old X, its X with the old O
    so[k] = x_row
    sx[k] = o_row
    return GridDiagram(tuple(sx), tuple(so))


def destabilization_pattern(g: GridDiagram, col: int) -> bool:
    """True if ``col`` can be removed by a destabilization (non-wrapping rows)."""
    n = g.n
    if n < 3 or not 0 <= col < n:
        return False
    rx, ro = g.sigma_x[col], g.sigma_o[col]
    if abs(rx - ro) != 1:
        return False
    rows = {rx, ro}
    for c in {(col - 1) % n, (col + 1) % n}:
        # a neighbour holding both rows would close up a separate 2x2 unknot
        if {g.sigma_x[c], g.sigma_o[c]} == rows:
            continue
        if g.x_inv[ro] == c or g.o_inv[rx] == c:
            return True
    return False


def _destabilize(g: GridDiagram, col: int) -> GridDiagram:
    if not destabilization_pattern(g, col):
        raise GridError(f"no destabilization pattern at column {col}")
    n = g.n
    rx, ro = g.sigma_x[col], g.sigma_o[col]
    lo = min(rx, ro)

    def merge_row(row: int) -> int:
        return row - 1 if row > lo else row

    sx = [merge_row(g.sigma_x[c]) for c in range(n) if c != col]
    so = [merge_row(g.sigma_o[c]) for c in range(n) if c != col]
    return GridDiagram(tuple(sx), tuple(so))


def legal_moves(g: GridDiagram, max_n: int) -> list[MoveSpec]:
    n = g.n
    moves: list[MoveSpec] = [CyclicRows(k) for k in range(1, n)] + [CyclicCols(k) for k in range(1, n)]
    if n >= 3:
        for i in range(n):
            if not _interleaved((g.sigma_x[i], g.sigma_o[i]), (g.sigma_x[(i + 1) % n], g.sigma_o[(i + 1) % n])):
                moves.append(CommuteCols(i))
        t = transpose(g)
        for j in range(n):
            if not _interleaved((t.sigma_x[j], t.sigma_o[j]), (t.sigma_x[(j + 1) % n], t.sigma_o[(j + 1) % n])):
                moves.append(CommuteRows(j))
        moves += [Destabilize(c) for c in range(n) if destabilization_pattern(g, c)]
    if n < max_n:
        for r in range(n):
            for at in ("X", "O"):
                for side in ("left", "right"):
                    for o_up in (True, False):
                        moves.append(Stabilize(r, at, side, o_up))
    return moves


def random_move_sequence(g: GridDiagram, length: int, seed: int, max_n: int) -> list[GridDiagram]:
    """``length`` random legal moves from ``g``; returns all ``length + 1`` grids."""
    rng = random.Random(seed)
    out = [g]
    cur = g
    for _ in range(length):
        # favour the moves that change the grid shape over pure relabelings
        candidates = legal_moves(cur, max_n)
        kinds: dict[type, list[MoveSpec]] = {}
        for mv in candidates:
            kinds.setdefault(type(mv), []).append(mv)
        kind = rng.choice(sorted(kinds, key=lambda t: t.__name__))
        cur = apply_move(cur, rng.choice(kinds[kind]))
        out.append(cur)
    return out


def unknot_grid(n: int) -> GridDiagram:
    """Stabilized unknot: X on the diagonal, each O just above it."""
    if n < 2:
        raise GridError("the smallest grid is 2x2")
    return GridDiagram(tuple(range(n)), tuple((c + 1) % n for c in range(n)))
