from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from gridfloer.grid import GridDiagram, load_grid

CORPUS = Path(__file__).resolve().parents[1] / "src" / "gridfloer" / "corpus"


def corpus_grids() -> dict[str, GridDiagram]:
    return {p.stem: load_grid(p) for p in sorted(CORPUS.glob("*.grid"))}


@pytest.fixture(scope="session")
def corpus() -> dict[str, GridDiagram]:
    return corpus_grids()


def random_grid(n: int, rng: random.Random) -> GridDiagram:
    """Uniform X placement, O placement a random derangement relative to it."""
    while True:
        sx = list(range(n))
        so = list(range(n))
        rng.shuffle(sx)
        rng.shuffle(so)
        if all(a != b for a, b in zip(sx, so)):
            return GridDiagram(tuple(sx), tuple(so))


@st.composite
def grids(draw, min_n: int = 2, max_n: int = 5) -> GridDiagram:
    n = draw(st.integers(min_n, max_n))
    sx = draw(st.permutations(range(n)))
    so = draw(st.permutations(range(n)).filter(lambda p: all(a != b for a, b in zip(p, sx))))
    return GridDiagram(tuple(sx), tuple(so))
