"""Command-line front end.

Exit codes: 0 ok or verified, 1 a violation was found, 2 usage or input
error, 3 unverified (a randomized search was inconclusive).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import filtration as filt
from .ext import ext_space
from .io import ParseError, Report, SemanticError, Workspace, digest, parse
from .modules import SearchExhausted, hom_dim
from .preorder import height, height_pair_check
from .system import check_system, height_consequences

OK, VIOLATION, ERROR, UNVERIFIED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _need_system(ws: Workspace):
    if ws.system is None:
        raise UsageError("this command needs [omega] and [delta] in the input")
    return ws.system


def _filtration_details(f: filt.Filtration) -> dict:
    return {"chain": [list(d) for d in f.dim_vectors()], "labels": [str(x) for x in f.labels]}


def _counts(counts: dict, omega) -> dict:
    return {str(w): int(counts.get(w, 0)) for w in omega}


def cmd_check(ws: Workspace, args, rng) -> tuple[int, str, dict]:
    sys_ = _need_system(ws)
    res = check_system(sys_, rng=rng)
    details = {"violations": [v.as_dict() for v in res.violations],
               "unverified": [v.as_dict() for v in res.unverified]}
    if not any(v.axiom in ("HS1", "relations") for v in res.violations):
        omega = sys_.omega.elements
        details["hom_dims"] = {f"{u},{w}": sys_.hom_dims[u, w] for u in omega for w in omega}
        details["ext_dims"] = {f"{u},{w}": sys_.ext_dims[u, w] for u in omega for w in omega}
        details["heights"] = {str(w): sys_.height[w] for w in omega}
    if res.violations:
        return VIOLATION, "violation", details
    if res.unverified:
        return UNVERIFIED, "unverified", details
    r4 = height_consequences(sys_)
    details["height_consequences"] = [v.as_dict() for v in r4]
    if r4:
        return VIOLATION, "violation", details
    return OK, "ok", details


def cmd_height(ws: Workspace, args, rng):
    if ws.omega is None:
        raise UsageError("height needs [omega]")
    h = height(ws.omega)
    bad = [(x, y) for x in ws.omega.elements for y in ws.omega.elements
           if height_pair_check(ws.omega, h, x, y)]
    return (VIOLATION if bad else OK), ("violation" if bad else "ok"), {
        "heights": {str(w): h[w] for w in ws.omega.elements}, "max_height": h.max_height}


def cmd_hom(ws: Workspace, args, rng):
    x, y = ws.module(args.x), ws.module(args.y)
    return OK, "ok", {"dim_hom": hom_dim(x, y), "source": args.x, "target": args.y}


def cmd_ext(ws: Workspace, args, rng):
    e = ext_space(ws.module(args.x), ws.module(args.y))
    return OK, "ok", {"dim_ext1": e.dim, "dim_cocycles": int(e.cocycles.shape[0]),
                      "dim_coboundaries": int(e.coboundaries.shape[0]), "source": args.x, "target": args.y}


def _filtration(ws: Workspace, name: str) -> filt.Filtration:
    if name not in ws.filtrations:
        raise UsageError(f"unknown filtration {name!r}")
    return ws.filtrations[name]


def cmd_verify(ws: Workspace, args, rng):
    sys_ = _need_system(ws)
    f = _filtration(ws, args.f)
    bad = filt.verify_filtration(sys_, f, rng)
    details = _filtration_details(f)
    details["multiplicities"] = _counts(filt.multiplicities(f), sys_.omega.elements)
    details["length"] = f.length
    if bad is not None:
        details["failure"] = {"index": bad[0], "reason": bad[1]}
        return VIOLATION, "violation", details
    return OK, "verified", details


def cmd_normalize(ws: Workspace, args, rng):
    sys_ = _need_system(ws)
    f = _filtration(ws, args.f)
    bad = filt.verify_filtration(sys_, f, rng)
    if bad is not None:
        return VIOLATION, "violation", {"failure": {"index": bad[0], "reason": bad[1]}}
    res = filt.normalize(sys_, f, rng, transcript=True)
    g = res.filtration
    return OK, "ok", {"input": _filtration_details(f), "normalized": _filtration_details(g),
                      "swaps": res.swaps,
                      "heights": [sys_.height[w] for w in g.labels]}


def cmd_hfilt(ws: Workspace, args, rng):
    sys_ = _need_system(ws)
    m = ws.module(args.m)
    hf = filt.h_filtration_canonical(sys_, m, rng)
    if hf is None:
        return VIOLATION, "not filtered", {"module": args.m}
    return OK, "ok", {
        "module": args.m,
        "layers": {str(i): list(w.dim_vector) for i, w in sorted(hf.layers.items())},
        "layer_multiplicities": {str(i): {str(w): n for w, n in sorted(c.items(), key=lambda kv: str(kv[0]))}
                                 for i, c in sorted(hf.layer_multiplicities().items())},
        "multiplicities": _counts(hf.multiplicities, sys_.omega.elements)}


def cmd_decompose(ws: Workspace, args, rng):
    sys_ = _need_system(ws)
    m = ws.module(args.m)
    inj1, inj2 = ws.injections_for(args.m, args.m1, args.m2)
    try:
        f1, f2 = filt.decompose_summands(sys_, m, inj1, inj2, rng)
    except filt.NotFiltered:
        return VIOLATION, "not filtered", {"module": args.m}
    omega = sys_.omega.elements
    total = filt.h_filtration_canonical(sys_, m, rng).multiplicities
    return OK, "ok", {
        "summands": {args.m1: _filtration_details(f1), args.m2: _filtration_details(f2)},
        "multiplicities": {args.m: _counts(total, omega),
                           args.m1: _counts(filt.multiplicities(f1), omega),
                           args.m2: _counts(filt.multiplicities(f2), omega)}}


def cmd_selftest(ws: Optional[Workspace], args, rng):
    from .selftest import run_selftest
    results = run_selftest(seeds=args.seeds, seed=args.seed)
    failed = [name for name, ok in results.items() if not ok]
    return (VIOLATION if failed else OK), ("failed" if failed else "ok"), {"suites": results}


COMMANDS = {
    "check": cmd_check, "height": cmd_height, "hom": cmd_hom, "ext": cmd_ext, "verify": cmd_verify,
    "normalize": cmd_normalize, "hfilt": cmd_hfilt, "decompose": cmd_decompose, "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", default=argparse.SUPPRESS, help="system file (TOML)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (default 0)")
    common.add_argument("--format", choices=["human", "structured"], default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="deltafilt", parents=[common],
                                     description="Homological systems and Delta-filtrations over GF(p).")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="verify HS1-HS4 and the height consequences")
    sub.add_parser("height", parents=[common], help="print the height function")
    for name in ("hom", "ext"):
        sp = sub.add_parser(name, parents=[common], help=f"dimension of {name.capitalize()}(X, Y)")
        sp.add_argument("x")
        sp.add_argument("y")
    for name in ("verify", "normalize"):
        sp = sub.add_parser(name, parents=[common], help=f"{name} a filtration from the input")
        sp.add_argument("f")
    sp = sub.add_parser("hfilt", parents=[common], help="canonical h-filtration by traces")
    sp.add_argument("m")
    sp = sub.add_parser("decompose", parents=[common], help="Delta-filtrations of the summands of M = M1 + M2")
    for a in ("m", "m1", "m2"):
        sp.add_argument(a)
    sp = sub.add_parser("selftest", parents=[common], help="run the oracle suites at tiny scale")
    sp.add_argument("--seeds", type=int, default=10)
    return parser


def run_command(command: str, text: Optional[str], seed: int = 0, **kwargs) -> Report:
    """Parse ``text`` (if given) and run one command, returning its report."""
    args = argparse.Namespace(command=command, seed=seed, **kwargs)
    rng = np.random.default_rng(seed)
    dig = digest(text) if text is not None else ""
    try:
        ws = parse(text).build() if text is not None else None
        if ws is None and command != "selftest":
            raise UsageError("--input is required")
        code, verdict, details = COMMANDS[command](ws, args, rng)
    except (ParseError, SemanticError, UsageError) as exc:
        details = {"error": str(exc)}
        if isinstance(exc, ParseError) and exc.line is not None:
            details.update(line=exc.line, column=exc.column)
        code, verdict = ERROR, "error"
    except SearchExhausted as exc:
        code, verdict, details = UNVERIFIED, "unverified", {"error": str(exc)}
    return Report(command, dig, verdict, code, seed, details)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    opts = vars(args)
    path = opts.pop("input", None)
    seed = opts.pop("seed", 0)
    fmt = opts.pop("format", "human")
    command = opts.pop("command")
    text = None
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return ERROR
    report = run_command(command, text, seed, **opts)
    sys.stdout.write(report.to_json() if fmt == "structured" else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
