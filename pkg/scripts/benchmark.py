"""Time the tilde pipeline on stabilized figure-eight grids of growing size.

    python3 scripts/benchmark.py --sizes 6 7 8 9 10
"""

from __future__ import annotations

import argparse
import json
import resource
import time

from gridfloer.alexander import alexander_polynomial
from gridfloer.cli import corpus_dir
from gridfloer.complex import build_complex
from gridfloer.grid import Stabilize, apply_move, load_grid
from gridfloer.homology import divide_V_factors, homology_gf2


def grid_of_size(n: int):
    g = load_grid(corpus_dir() / "figure_eight.grid")
    for r in (0, 2, 4, 6, 8)[: n - g.n]:
        g = apply_move(g, Stabilize(r))
    return g


def run(n: int, threads: int) -> dict:
    g = grid_of_size(n)
    t0 = time.perf_counter()
    cx = build_complex(g, cap=max(n, 10))
    t1 = time.perf_counter()
    tilde = homology_gf2(cx, threads=threads)
    t2 = time.perf_counter()
    delta = alexander_polynomial(g) if n <= 9 else None
    t3 = time.perf_counter()
    return {
        "n": n,
        "generators": cx.size,
        "edges": cx.n_edges,
        "tilde_rank": tilde.total(),
        "hat": divide_V_factors(tilde, g).to_text(),
        "alexander": delta.to_text() if delta is not None else None,
        "seconds": {"build": round(t1 - t0, 2), "ranks": round(t2 - t1, 2), "alexander": round(t3 - t2, 2)},
        "maxrss_mb": round(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 7, 8, 9])
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    for n in args.sizes:
        print(json.dumps(run(n, args.threads)), flush=True)


if __name__ == "__main__":
    main()
