"""Command-line entry point: ``agbasis <command> <curve> [options]``.

The curve argument is a JSON config path or a preset string such as
``x_q2r:2,1`` or ``quotient_hermitian:5,3``.  The default output format is
read from ``AGBASIS_FORMAT`` (text, json or csv).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass
from typing import Callable

from .curve import CurveError, CurveSpec, enumerate_points, load_curve, semigroup_dim, validate
from .diagram import DiagramMismatch, diagram_diff, diagram_fast, diagram_oracle, empty_boxes
from .encoder import (
    bench_encode,
    encode,
    extract_message,
    info_positions,
    storage_report,
    systematic_genmatrix,
)
from .interp_gb import interpolation_basis
from .linalg import in_rowspace, rank, rref
from .orbits import OrbitDecomposition, orbit_decomposition
from .potmod import generates_same, is_reduced, oracle_gb
from .rrspace import code_dim, generator_matrix

FORMATS = ("text", "json", "csv")
DEFAULT_SEED = 20240607
DEFAULT_TRIALS = 200


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    source: str
    spec: CurveSpec
    lam: int | None
    method: str | None
    fmt: str
    seed: int
    trials: int


# -- output helpers

def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _decomp(cfg: RunConfig) -> OrbitDecomposition:
    return orbit_decomposition(cfg.spec)


def _gb(cfg: RunConfig, decomp, method: str):
    if method == "oracle":
        return oracle_gb(cfg.spec, decomp, cfg.lam)
    return interpolation_basis(cfg.spec, decomp, diagram_fast(cfg.spec, decomp, cfg.lam))


# -- commands

def cmd_validate(cfg: RunConfig) -> tuple[str, int]:
    rep = validate(cfg.spec)
    if cfg.fmt == "json":
        out = _json({"ok": rep.ok, "errors": rep.errors, "warnings": rep.warnings,
                     "notes": rep.notes, "nu": rep.nu, "genus": rep.genus})
    else:
        lines = [f"curve {cfg.spec.name}: {'valid' if rep.ok else 'INVALID'}",
                 f"a={cfg.spec.a} b={cfg.spec.b} nu={rep.nu} genus={rep.genus}"]
        lines += [f"error: {e}" for e in rep.errors]
        lines += [f"warning: {w}" for w in rep.warnings]
        lines += [f"note: {n}" for n in rep.notes]
        out = "\n".join(lines)
    return out, 0 if rep.ok else 1


def cmd_points(cfg: RunConfig) -> tuple[str, int]:
    pts = enumerate_points(cfg.spec)
    if cfg.fmt == "json":
        return _json({"count": len(pts), "points": [[p.x, p.y] for p in pts]}), 0
    if cfg.fmt == "csv":
        return _csv(["x", "y"], [(p.x, p.y) for p in pts]), 0
    return "\n".join([f"{len(pts)} affine points"] + [f"{p.x} {p.y}" for p in pts]), 0


def cmd_orbits(cfg: RunConfig) -> tuple[str, int]:
    d = _decomp(cfg)
    if cfg.fmt == "json":
        return _json(d.to_json()), 0
    rows = [(o.index + 1, o.kind, o.length, f"({o.base[0]},{o.base[1]})", len(o.ys)) for o in d.orbits]
    if cfg.fmt == "csv":
        return _csv(["index", "kind", "length", "base", "distinct_y"], rows), 0
    lines = [f"n={d.n} r={d.r} s={d.s} rho={d.rho if d.r else None}",
             f"{'idx':>4} {'kind':<6} {'len':>5} {'base':<12} {'ys':>4}"]
    lines += [f"{i:>4} {k:<6} {L:>5} {b:<12} {y:>4}" for i, k, L, b, y in rows]
    return "\n".join(lines), 0


def cmd_genmat(cfg: RunConfig) -> tuple[str, int]:
    gm = generator_matrix(cfg.spec, _decomp(cfg), cfg.lam)
    rows = gm.matrix.tolist()
    if cfg.fmt == "json":
        return _json({"lambda": cfg.lam, "k": gm.k, "n": gm.n,
                      "basis": [str(m) for m in gm.basis], "rows": rows}), 0
    if cfg.fmt == "csv":
        return _csv([f"c{j}" for j in range(gm.n)], rows), 0
    return "\n".join(" ".join(str(v) for v in r) for r in rows), 0


def cmd_dim(cfg: RunConfig) -> tuple[str, int]:
    k = code_dim(generator_matrix(cfg.spec, _decomp(cfg), cfg.lam))
    if cfg.fmt == "json":
        return _json({"lambda": cfg.lam, "k": k}), 0
    return str(k), 0


def cmd_diagram(cfg: RunConfig) -> tuple[str, int]:
    d = _decomp(cfg)
    method = cfg.method or "fast"
    shown = {}
    if method in ("oracle", "both"):
        shown["oracle"] = diagram_oracle(cfg.spec, d, cfg.lam)
    if method in ("fast", "both"):
        shown["fast"] = diagram_fast(cfg.spec, d, cfg.lam)
    diff = diagram_diff(shown["fast"], shown["oracle"]) if method == "both" else []
    if cfg.fmt == "json":
        obj = {name: dg.to_json() for name, dg in shown.items()}
        if method == "both":
            obj["diff"] = diff
        return _json(obj), 1 if diff else 0
    parts = []
    for name, dg in shown.items():
        parts.append(f"[{name}] lambda={cfg.lam} empty={empty_boxes(dg)}\n{dg.render()}")
    if method == "both":
        parts.append("DIFF\n" + "\n".join(diff) if diff else "DIFF")
    return "\n".join(parts), 1 if diff else 0


def cmd_gb(cfg: RunConfig, check: bool = False) -> tuple[str, int]:
    d = _decomp(cfg)
    method = cfg.method or "fast"
    G = _gb(cfg, d, method)
    status = 0
    obj = G.to_json()
    if check:
        other = _gb(cfg, d, "oracle" if method == "fast" else "fast")
        same = generates_same(G, other) and G.degrees == other.degrees
        obj["check"] = "pass" if same else "fail"
        status = 0 if same else 1
    if cfg.fmt == "json":
        return _json(obj), status
    lines = [f"lambda={cfg.lam} method={method} reduced={G.reduced}"]
    for i, g in enumerate(G.elements):
        src = f" [{G.provenance[i]}]" if G.provenance else ""
        lines.append(f"g{i + 1}{src}: " + " | ".join(" ".join(map(str, r)) or "0" for r in g.rows))
    if check:
        lines.append(f"check: {obj['check']}")
    return "\n".join(lines), status


def _parse_message(text: str | None) -> list[int]:
    if text is None:
        raise UsageError("--message is required")
    text = text.strip()
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse message {text!r}") from None


def cmd_encode(cfg: RunConfig, message: str | None) -> tuple[str, int]:
    w = _parse_message(message)
    d = _decomp(cfg)
    if any(not 0 <= v < cfg.spec.q for v in w):
        raise UsageError(f"message symbols must be field codes in [0, {cfg.spec.q})")
    G = _gb(cfg, d, "fast")
    P = info_positions(G, d)
    if len(w) != len(P):
        raise UsageError(f"message has {len(w)} symbols but k = {len(P)}")
    method = cfg.method or "gb"
    out = {}
    if method in ("gb", "both"):
        out["gb"] = encode(w, G, d, P).tolist()
    if method in ("genmat", "both"):
        sgm = systematic_genmatrix(generator_matrix(cfg.spec, d, cfg.lam), P)
        out["genmat"] = sgm.encode(w).tolist()
    agree = None
    if method == "both":
        agree = out["gb"] == out["genmat"]
    status = 1 if agree is False else 0
    if cfg.fmt == "json":
        obj = {"message": w, "positions": [str(m) for m in P], "codewords": out}
        if agree is not None:
            obj["agree"] = agree
        return _json(obj), status
    if cfg.fmt == "csv":
        return _csv(["method"] + [f"c{j}" for j in range(d.n)], [[k] + v for k, v in out.items()]), status
    lines = [f"positions: {' '.join(str(m) for m in P)}"]
    lines += [f"{k}: {','.join(map(str, v))}" for k, v in out.items()]
    if agree is not None:
        lines.append(f"agree: {agree}")
    return "\n".join(lines), status


BENCH_HEADER = ["lambda", "k", "n", "gb_coeffs", "genmat_coeffs", "encode_ns_gb", "encode_ns_genmat"]


def cmd_bench(cfg: RunConfig, sweep: bool, messages: int) -> tuple[str, int]:
    d = _decomp(cfg)
    if sweep:
        lams = range(d.n)
    elif cfg.lam is not None:
        lams = [cfg.lam]
    else:
        raise UsageError("bench needs --lambda or --lambda-sweep")
    rng = random.Random(cfg.seed)
    rows = []
    for lam in lams:
        G = interpolation_basis(cfg.spec, d, diagram_fast(cfg.spec, d, lam))
        gm = generator_matrix(cfg.spec, d, lam)
        P = info_positions(G, d)
        sgm = systematic_genmatrix(gm, P)
        rep = storage_report(G, gm)
        ws = [[rng.randrange(cfg.spec.q) for _ in range(len(P))] for _ in range(messages)]
        ns_gb = bench_encode(lambda w: encode(w, G, d, P), ws)
        ns_gm = bench_encode(sgm.encode, ws)
        rows.append([lam, rep.k, rep.n, rep.gb_coeffs, rep.genmat_coeffs, ns_gb, ns_gm])
    if cfg.fmt == "json":
        return _json([dict(zip(BENCH_HEADER, r)) for r in rows]), 0
    return _csv(BENCH_HEADER, rows), 0


def run_verify(cfg: RunConfig) -> list[tuple[str, bool, str]]:
    """Each check in pipeline order, as (name, ok, detail)."""
    spec, lam = cfg.spec, cfg.lam
    state: dict = {}
    results: list[tuple[str, bool, str]] = []

    def step(name: str, fn: Callable[[], tuple[bool, str]], needs=()):
        missing = [k for k in needs if k not in state]
        if missing:
            results.append((name, False, f"skipped: needs {', '.join(missing)}"))
            return
        try:
            ok, detail = fn()
        except (CurveError, DiagramMismatch, ValueError, ArithmeticError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, ok, detail))

    def validate_():
        rep = validate(spec)
        return rep.ok, "; ".join(rep.errors) or f"genus {rep.genus}, {len(rep.warnings)} warning(s)"

    def points_():
        pts = enumerate_points(spec)
        state["points"] = pts
        expected = spec.metadata.get("expected_points")
        ok = expected is None or len(pts) == expected
        return ok, f"{len(pts)} points" + (f" (expected {expected})" if expected is not None else "")

    def orbits_():
        d = orbit_decomposition(spec)
        if lam >= d.n:
            return False, f"lambda = {lam} must be below n = {d.n}"
        state["decomp"] = d
        covered = sorted(p for o in d.orbits for p in o.points) == sorted((p.x, p.y) for p in state["points"])
        return covered, f"r={d.r} s={d.s} lengths={list(d.lengths)}"

    def genmat_():
        gm = generator_matrix(spec, state["decomp"], lam)
        state["genmat"] = gm
        k = code_dim(gm)
        state["k"] = k
        return k == gm.k, f"rank {k} of {gm.k} monomials"

    def oracle_():
        G = oracle_gb(spec, state["decomp"], lam)
        state["oracle"] = G
        return is_reduced(G), f"degrees {list(G.degrees)}"

    def diagram_():
        d = state["decomp"]
        od = diagram_oracle(spec, d, lam, state["oracle"])
        fd = diagram_fast(spec, d, lam)
        state["diagram"] = fd
        state["oracle_diagram"] = od
        diff = diagram_diff(fd, od)
        return not diff, "; ".join(diff) or f"{empty_boxes(fd)} empty boxes"

    def interp_basis_():
        G = interpolation_basis(spec, state["decomp"], state["diagram"])
        state["fast"] = G
        ok = generates_same(G, state["oracle"]) and G.degrees == state["oracle"].degrees
        return ok, f"provenance {','.join(G.provenance)}"

    def identity_():
        e = empty_boxes(state["oracle_diagram"])
        sd = semigroup_dim(spec.a, spec.b, lam)
        return e == state["k"] == sd, f"empty={e} rank={state['k']} semigroup={sd}"

    def encode_():
        d, G = state["decomp"], state["fast"]
        P = info_positions(G, d)
        sgm = systematic_genmatrix(state["genmat"], P)
        R, piv = rref(spec.field, state["genmat"].matrix)
        rng = random.Random(cfg.seed)
        for _ in range(cfg.trials):
            w = [rng.randrange(spec.q) for _ in range(len(P))]
            c = encode(w, G, d, P)
            if extract_message(c, P) != w:
                return False, f"round trip failed for {w}"
            if not in_rowspace(spec.field, R, piv, c):
                return False, f"codeword for {w} is outside the code"
            if c.tolist() != sgm.encode(w).tolist():
                return False, f"encoders disagree on {w}"
        return True, f"{cfg.trials} messages, k={len(P)}"

    step("validate", validate_)
    step("points", points_)
    step("orbits", orbits_, needs=("points",))
    step("genmat-rank", genmat_, needs=("decomp",))
    step("oracle-gb", oracle_, needs=("decomp",))
    step("diagram-fast-vs-oracle", diagram_, needs=("oracle",))
    step("interpolation-basis-vs-oracle", interp_basis_, needs=("diagram",))
    step("dimension-identity", identity_, needs=("oracle_diagram", "k"))
    step("systematic-encoding", encode_, needs=("fast", "genmat"))
    return results


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    results = run_verify(cfg)
    failed = [name for name, ok, _ in results if not ok]
    if cfg.fmt == "json":
        obj = {"checks": [{"check": n, "ok": ok, "detail": det} for n, ok, det in results],
               "ok": not failed, "first_failure": failed[0] if failed else None}
        return _json(obj), 1 if failed else 0
    lines = [f"{'PASS' if ok else 'FAIL'} {name}: {det}" for name, ok, det in results]
    if failed:
        lines.append(f"verify failed at {failed[0]}")
    else:
        lines.append(f"all {len(results)} checks passed")
    return "\n".join(lines), 1 if failed else 0


# -- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("curve", help="curve JSON file or preset, e.g. x_q2r:2,1")
    common.add_argument("--format", choices=FORMATS, default=None,
                        help="output format (default: $AGBASIS_FORMAT or text)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)

    with_lam = argparse.ArgumentParser(add_help=False, parents=[common])
    with_lam.add_argument("--lambda", dest="lam", type=int, required=True)

    p = argparse.ArgumentParser(prog="agbasis", description="One-point AG codes, root diagrams and POT bases.")
    sub = p.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("curve", help="curve checks")
    csub = curve.add_subparsers(dest="curve_command", required=True)
    csub.add_parser("validate", parents=[common])
    csub.add_parser("points", parents=[common])

    sub.add_parser("orbits", parents=[common])
    sub.add_parser("genmat", parents=[with_lam])
    sub.add_parser("dim", parents=[with_lam])
    sp = sub.add_parser("diagram", parents=[with_lam])
    sp.add_argument("--method", choices=("fast", "oracle", "both"), default="fast")
    sp = sub.add_parser("gb", parents=[with_lam])
    sp.add_argument("--method", choices=("fast", "oracle"), default="fast")
    sp.add_argument("--check", action="store_true")
    sp = sub.add_parser("encode", parents=[with_lam])
    sp.add_argument("--message", required=True)
    sp.add_argument("--method", choices=("gb", "genmat", "both"), default="gb")
    sp = sub.add_parser("bench", parents=[common])
    sp.add_argument("--lambda", dest="lam", type=int, default=None)
    sp.add_argument("--lambda-sweep", action="store_true")
    sp.add_argument("--messages", type=int, default=20)
    sub.add_parser("verify", parents=[with_lam])
    return p


def _config(parser, args) -> RunConfig:
    fmt = args.format or os.environ.get("AGBASIS_FORMAT", "text")
    if fmt not in FORMATS:
        parser.error(f"AGBASIS_FORMAT must be one of {', '.join(FORMATS)}")
    try:
        spec = load_curve(args.curve)
    except (CurveError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        parser.error(f"cannot load curve {args.curve!r}: {exc}")
    lam = getattr(args, "lam", None)
    if lam is not None:
        n = len(enumerate_points(spec))
        if not 0 <= lam < n:
            parser.error(f"--lambda must satisfy 0 <= lambda < n = {n}, got {lam}")
    return RunConfig(args.curve, spec, lam, getattr(args, "method", None), fmt, args.seed, args.trials)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config(parser, args)
    try:
        if args.command == "curve":
            out, status = (cmd_validate if args.curve_command == "validate" else cmd_points)(cfg)
        elif args.command == "orbits":
            out, status = cmd_orbits(cfg)
        elif args.command == "genmat":
            out, status = cmd_genmat(cfg)
        elif args.command == "dim":
            out, status = cmd_dim(cfg)
        elif args.command == "diagram":
            out, status = cmd_diagram(cfg)
        elif args.command == "gb":
            out, status = cmd_gb(cfg, args.check)
        elif args.command == "encode":
            out, status = cmd_encode(cfg, args.message)
        elif args.command == "bench":
            out, status = cmd_bench(cfg, args.lambda_sweep, args.messages)
        else:
            out, status = cmd_verify(cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except (CurveError, DiagramMismatch, ValueError) as exc:
        print(f"agbasis {args.command}: {type(exc).__module__}.{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
