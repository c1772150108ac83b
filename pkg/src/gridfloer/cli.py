"""Command-line interface: ``gridfloer <command> ...``.

Exit codes: 0 success, 1 a verified property failed, 2 bad input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .complex import DEFAULT_CAP, Coeffs, Flavor, ResourceCapError, build_complex, d_squared_violations
from .grid import (
    CommuteCols,
    CommuteRows,
    CyclicCols,
    CyclicRows,
    Destabilize,
    GridDiagram,
    GridError,
    Stabilize,
    apply_move,
    load_grid,
    random_move_sequence,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    paths: list[str] = field(default_factory=list)
    flavor: str = "tilde"
    coeffs: str = "f2"
    cap: int = DEFAULT_CAP
    seed: int = 7
    json: bool = False
    threads: int = 1

    def check_cap(self, g: GridDiagram) -> None:
        if g.n > self.cap:
            raise ResourceCapError(f"grid number {g.n} exceeds --cap {self.cap}")


# ---------------------------------------------------------------------------
# Corpus helpers.


def corpus_dir() -> Path:
    return Path(str(resources.files("gridfloer") / "corpus"))


def corpus_names() -> list[str]:
    return sorted(p.stem for p in corpus_dir().glob("*.grid"))


def resolve(path: str) -> Path:
    """A file path, or the name of a shipped corpus grid."""
    p = Path(path)
    if p.exists():
        return p
    q = corpus_dir() / f"{path}.grid"
    if q.exists():
        return q
    raise FileNotFoundError(f"{path}: no such file and no corpus grid of that name")


def _load(path: str) -> GridDiagram:
    return load_grid(resolve(path))


def _emit(cfg: RunConfig, payload: dict, human: str) -> None:
    if cfg.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


# ---------------------------------------------------------------------------
# Commands.


def cmd_validate(cfg: RunConfig, args) -> int:
    from .gradings import crossing_linking_numbers, linking_numbers

    status = EXIT_OK
    for path in cfg.paths:
        g = _load(path)
        lk_j = [str(v) for v in linking_numbers(g)]
        lk = [str(v) for v in crossing_linking_numbers(g)]
        comps = [g.columns_of(k) for k in range(g.ell)]
        payload = {
            "path": path,
            "n": g.n,
            "ell": g.ell,
            "components": comps,
            "linking_numbers": lk,
            "linking_j_identity": lk_j,
        }
        human = f"{path}: n={g.n} ℓ={g.ell} components={comps} lk={lk} (J identity {lk_j})"
        _emit(cfg, payload, human)
    return status


def _homology_payload(cfg: RunConfig, g: GridDiagram, path: str) -> tuple[dict, str]:
    from .alexander import euler_characteristic
    from .homology import compute_homology

    res = compute_homology(g, coeffs=cfg.coeffs, cap=cfg.cap, threads=cfg.threads)
    payload = res.to_json()
    payload["flavor"] = cfg.flavor
    payload["path"] = path
    payload["hat_euler"] = euler_characteristic(res.hat_poly).to_json()
    lines = [f"{path}: n={g.n} ℓ={g.ell}"]
    if cfg.flavor == "tilde":
        lines.append(f"tilde ({cfg.coeffs}), total rank {res.tilde_poly.total()}: {res.tilde_poly.to_text()}")
    lines.append(f"hat (f2), total rank {res.hat_poly.total()}: {res.hat_poly.to_text()}")
    lines.append(f"hat Euler characteristic: {euler_characteristic(res.hat_poly).to_text()}")
    if res.tau is not None:
        lines.append(f"tau = {res.tau}")
    if cfg.flavor == "hat":
        payload.pop("bigraded", None)
    return payload, "\n".join(lines)


def _minus_report(cfg: RunConfig, g: GridDiagram, path: str) -> tuple[dict, str, bool]:
    from .homology import compute_homology, u_action_agreement

    t0 = time.perf_counter()
    cx = build_complex(g, Flavor.MINUS, Coeffs(cfg.coeffs), cap=cfg.cap)
    bad = d_squared_violations(cx)
    report = {
        "path": path,
        "flavor": "minus-report",
        "coeffs": cfg.coeffs,
        "generators": cx.size,
        "rectangles": cx.n_edges,
        "d_squared_zero": not bad,
        "d_squared_violations": bad,
    }
    ok = not bad
    if g.n <= 5:
        ua = u_action_agreement(g)
        report["u_action_agreement"] = ua
        ok &= ua["ok"]
    res = compute_homology(g, cap=cfg.cap, threads=cfg.threads)
    report["hat"] = res.hat_poly.to_json()
    report["note"] = "minus homology is represented through the tilde complex and the V-factor division"
    report["seconds"] = round(time.perf_counter() - t0, 4)
    human = (
        f"{path}: minus complex with {cx.size} generators, {cx.n_edges} rectangles; "
        f"d^2 = 0: {not bad}"
        + (f"; U-action agreement: {report['u_action_agreement']['ok']}" if "u_action_agreement" in report else "")
        + f"\nhat (f2): {res.hat_poly.to_text()}"
    )
    return report, human, ok


def cmd_homology(cfg: RunConfig, args) -> int:
    status = EXIT_OK
    for path in cfg.paths:
        g = _load(path)
        cfg.check_cap(g)
        if cfg.flavor == "minus-report":
            payload, human, ok = _minus_report(cfg, g, path)
            if not ok:
                status = EXIT_FAIL
        else:
            payload, human = _homology_payload(cfg, g, path)
        if args.dump_blocks:
            cx = build_complex(g, Flavor.TILDE, Coeffs(cfg.coeffs), cap=cfg.cap)
            with open(args.dump_blocks, "w") as fh:
                cx.dump_blocks(fh)
        _emit(cfg, payload, human)
    return status


def cmd_alexander(cfg: RunConfig, args) -> int:
    from .alexander import alexander_polynomial, minesweeper_det, minesweeper_text

    for path in cfg.paths:
        g = _load(path)
        delta = alexander_polynomial(g)
        payload = {"path": path, "ell": g.ell, "alexander": delta.to_json(), "text": delta.to_text()}
        human = f"{path}: Δ = {delta.to_text()}"
        if args.matrix:
            payload["minesweeper"] = minesweeper_text(g).splitlines()
            payload["det"] = minesweeper_det(g).to_json()
            human += "\nminesweeper matrix:\n" + minesweeper_text(g) + f"\ndet = {minesweeper_det(g).to_text()}"
        _emit(cfg, payload, human)
    return EXIT_OK


def cmd_tau(cfg: RunConfig, args) -> int:
    from .homology import tau

    for path in cfg.paths:
        g = _load(path)
        cfg.check_cap(g)
        if g.ell != 1:
            raise GridError(f"{path}: tau needs a knot, got {g.ell} components")
        t = tau(g, cap=cfg.cap)
        _emit(cfg, {"path": path, "tau": t}, f"{path}: tau = {t}")
    return EXIT_OK


def parse_move(text: str):
    """``cyclic-rows:k``, ``cyclic-cols:k``, ``commute-cols:i``, ``commute-rows:j``,
    ``destabilize:col`` or ``stabilize:row[:X|O[:left|right[:up|down]]]``."""
    name, _, rest = text.partition(":")
    parts = [p for p in rest.split(":") if p]
    try:
        if name == "cyclic-rows":
            return CyclicRows(int(parts[0]))
        if name == "cyclic-cols":
            return CyclicCols(int(parts[0]))
        if name == "commute-cols":
            return CommuteCols(int(parts[0]))
        if name == "commute-rows":
            return CommuteRows(int(parts[0]))
        if name == "destabilize":
            return Destabilize(int(parts[0]))
        if name == "stabilize":
            row = int(parts[0])
            at = parts[1] if len(parts) > 1 else "X"
            side = parts[2] if len(parts) > 2 else "right"
            o_up = (parts[3] if len(parts) > 3 else "up") == "up"
            return Stabilize(row, at, side, o_up)
    except (IndexError, ValueError) as exc:
        raise GridError(f"bad move {text!r}: {exc}") from exc
    raise GridError(f"unknown move {text!r}")


def cmd_move(cfg: RunConfig, args) -> int:
    g = _load(cfg.paths[0])
    if args.op:
        seq = [g]
        for op in args.op:
            seq.append(apply_move(seq[-1], parse_move(op)))
    else:
        seq = random_move_sequence(g, args.len, cfg.seed, args.max_n or g.n + 2)
    out = seq[-1]
    if args.out:
        Path(args.out).write_text(out.to_text())
    payload = {"steps": [h.to_json() for h in seq[1:]], "result": out.to_json()}
    human = "\n".join(f"# step {k}\n{h.to_text()}" for k, h in enumerate(seq[1:], 1)) if args.all else out.to_text()
    _emit(cfg, payload, human.rstrip())
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    from .verify import SUITES

    chosen = [s for s in SUITES if getattr(args, s)] or [s for s in SUITES if s != "moves"]
    paths = cfg.paths or corpus_names()
    report = {}
    ok = True
    for path in paths:
        g = _load(path)
        entry = {}
        for suite in chosen:
            fn = SUITES[suite]
            if suite == "moves":
                res = fn(g, seed=cfg.seed, length=args.len, max_n=args.max_n, cap=cfg.cap)
            elif suite in ("dsquared", "signs"):
                if g.n > 6:
                    res = {"ok": True, "skipped": f"n={g.n} above the exhaustive cap"}
                else:
                    res = fn(g)
            else:
                res = fn(g, cap=cfg.cap)
            entry[suite] = res
            ok &= bool(res["ok"])
        report[path] = entry
    human = "\n".join(
        f"{path}: " + ", ".join(f"{s}={'pass' if r['ok'] else 'FAIL'}" for s, r in entry.items())
        for path, entry in report.items()
    )
    _emit(cfg, {"ok": ok, "results": report}, human)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_corpus(cfg: RunConfig, args) -> int:
    from .verify import invariants

    golden_dir = corpus_dir() / "golden"
    if args.action == "list":
        rows = []
        for name in corpus_names():
            g = _load(name)
            rows.append({"name": name, "n": g.n, "ell": g.ell})
        _emit(cfg, {"grids": rows}, "\n".join(f"{r['name']:<16} n={r['n']} ℓ={r['ell']}" for r in rows))
        return EXIT_OK
    if args.action == "show":
        g = _load(args.name)
        print(g.to_text().rstrip())
        return EXIT_OK
    target = Path(args.dir) if args.dir else golden_dir
    status = EXIT_OK
    lines = []
    for name in corpus_names():
        g = _load(name)
        inv = invariants(g, cap=cfg.cap)
        golden = {"grid": g.to_json(), **inv}
        f = target / f"{name}.json"
        if args.action == "golden":
            target.mkdir(parents=True, exist_ok=True)
            f.write_text(json.dumps(golden, indent=2, sort_keys=True) + "\n")
            lines.append(f"wrote {f}")
        else:
            same = f.exists() and json.loads(f.read_text()) == json.loads(json.dumps(golden))
            lines.append(f"{name}: {'match' if same else 'MISMATCH'}")
            if not same:
                status = EXIT_FAIL
    _emit(cfg, {"ok": status == EXIT_OK, "lines": lines}, "\n".join(lines))
    return status


# ---------------------------------------------------------------------------
# Argument parsing.


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest grid number to enumerate")
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--threads", type=int, default=1, help="worker processes for per-block homology")

    p = argparse.ArgumentParser(prog="gridfloer", description="Grid homology invariants of knots and links.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="parse grids and print n, ℓ, components, linking")
    s.add_argument("paths", nargs="+")

    s = sub.add_parser("homology", parents=[common], help="tilde/hat homology and tau")
    s.add_argument("paths", nargs="+")
    s.add_argument("--flavor", choices=["tilde", "hat", "minus-report"], default="tilde")
    s.add_argument("--coeff", choices=["f2", "z"], default="f2")
    s.add_argument("--dump-blocks", metavar="FILE", help="write tilde boundary blocks as sparse triplets")

    s = sub.add_parser("alexander", parents=[common], help="normalised Alexander polynomial")
    s.add_argument("paths", nargs="+")
    s.add_argument("--matrix", action="store_true", help="also print the minesweeper matrix and determinant")

    s = sub.add_parser("tau", parents=[common], help="the tau invariant of a knot grid")
    s.add_argument("paths", nargs="+")

    s = sub.add_parser("move", parents=[common], help="apply explicit or random grid moves")
    s.add_argument("paths", nargs=1)
    s.add_argument("--op", action="append", help="e.g. commute-cols:2, stabilize:0:O:left:down (repeatable)")
    s.add_argument("--len", type=int, default=1, help="length of a random sequence when no --op is given")
    s.add_argument("--max-n", type=int, default=None)
    s.add_argument("--all", action="store_true", help="print every intermediate grid")
    s.add_argument("--out", help="write the final grid to this file")

    s = sub.add_parser("verify", parents=[common], help="run property suites (default: corpus)")
    s.add_argument("paths", nargs="*")
    for name in ("dsquared", "signs", "gradings", "moves", "symmetry", "euler"):
        s.add_argument(f"--{name}", action="store_true")
    s.add_argument("--len", type=int, default=10)
    s.add_argument("--max-n", type=int, default=None)

    s = sub.add_parser("corpus", parents=[common], help="list, show or check the shipped corpus")
    s.add_argument("action", choices=["list", "show", "check", "golden"])
    s.add_argument("name", nargs="?")
    s.add_argument("--dir", help="golden-file directory (default: the packaged one)")
    return p


COMMANDS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "alexander": cmd_alexander,
    "tau": cmd_tau,
    "move": cmd_move,
    "verify": cmd_verify,
    "corpus": cmd_corpus,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        paths=list(getattr(args, "paths", []) or []),
        flavor=getattr(args, "flavor", "tilde"),
        coeffs=getattr(args, "coeff", "f2"),
        cap=args.cap,
        seed=args.seed,
        json=args.json,
        threads=args.threads,
    )
    try:
        return COMMANDS[args.command](cfg, args)
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GridError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
