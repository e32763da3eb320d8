"""Command-line driver: ``periodic-opuc <subcommand> [options]``.

Every subcommand writes one report (JSON by default, CSV with ``--format csv``)
that echoes the configuration, the package version and the tolerances used.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .bands import DEFAULT_GRID, RegimeLabel, angle_dist, band_structure, classify_point, v_values
from .equilibrium import band_cdf, find_singular_points
from .errors import (
    ArgumentError,
    DomainError,
    NumericError,
    OpucError,
    PropertyViolation,
    UnsupportedCaseError,
)
from .kernels import cd_kernel_direct, cd_kernel_fast, universality_sweep
from .periodic import discriminant
from .reports import angle, arc, build_report, dumps_csv, dumps_json
from .schur import (
    caratheodory_F,
    cheb_period_identity,
    classify_zeros_phi_diff,
    generating_function_residual,
    wall_from_recursion,
    schur_f,
    wall_polys,
)
from .szego import VerblunskyPeriod
from .verify import TOLERANCES, verify

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3
EXIT_UNSUPPORTED = 4


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, PropertyViolation):
        return EXIT_PROPERTY
    if isinstance(exc, UnsupportedCaseError):
        return EXIT_UNSUPPORTED
    if isinstance(exc, NumericError):
        return EXIT_NUMERIC
    if isinstance(exc, (ArgumentError, DomainError)):
        return EXIT_VALIDATION
    return EXIT_NUMERIC


# -- argument parsing ---------------------------------------------------------

def parse_complex(text: str) -> complex:
    """Accept ``0.5+0.2j``, ``0.5,0.2`` or ``[0.5, 0.2]``."""
    t = text.strip()
    try:
        if t.startswith("["):
            re_, im_ = json.loads(t)
            return complex(float(re_), float(im_))
        if "," in t:
            re_, im_ = t.split(",")
            return complex(float(re_), float(im_))
        return complex(t.replace(" ", ""))
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def load_alphas(value: str) -> VerblunskyPeriod:
    """Inline JSON array of ``[re, im]`` pairs, or a path to a file holding one."""
    text = value
    if not value.lstrip().startswith("[") and os.path.exists(value):
        with open(value, encoding="utf-8") as fh:
            text = fh.read()
    return VerblunskyPeriod.from_json(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="periodic-opuc",
        description="Orthogonal polynomials with periodic Verblunsky coefficients.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphas", help="JSON array of [re, im] pairs, or a file containing one")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--tol", type=float, default=None, help="pass/fail tolerance override")
    common.add_argument("--no-timing", action="store_true",
                        help="write null wall-clock time (byte-stable reports)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bands", parents=[common], help="band/gap structure and CDF")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID, help="critical-point scan grid")
    p.add_argument("--samples", type=int, default=16, help="CDF samples per band in the report")

    p = sub.add_parser("singular", parents=[common], help="singular points for each section")
    p.add_argument("--s", type=int, default=None, help="section index (default: all)")
    p.add_argument("--grid", type=int, default=2048, help="scan points per band")

    p = sub.add_parser("universality", parents=[common], help="kernel ratio sweep vs limit")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--a", type=float, nargs="+", default=[-3, -2, -1, 0, 1, 2, 3])
    p.add_argument("--b", type=float, nargs="+", default=[-3, -2, -1, 0, 1, 2, 3])
    p.add_argument("--n", type=int, nargs="+", default=[400, 800, 1600, 3200])
    p.add_argument("--experimental-neg-edge", action="store_true",
                   help="handle Delta=-2 edges by period doubling")
    p.add_argument("--edge-sign", type=int, choices=(-1, 1), default=-1,
                   help="sign of the edge scaling sigma_n = sign/n^2")

    p = sub.add_parser("kernel", parents=[common], help="CD kernel, direct and closed form")
    p.add_argument("--n", type=int, nargs="+", default=[100])
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--w", type=parse_complex, required=True)

    p = sub.add_parser("schur", parents=[common], help="Schur/Caratheodory functions, Wall check")
    p.add_argument("--z", type=parse_complex, nargs="+", default=None)
    p.add_argument("--grid", type=int, default=10, help="polar grid size when --z is absent")
    p.add_argument("--k", type=int, default=None, help="also compare Wall polynomials at k")

    p = sub.add_parser("identity", parents=[common], help="generating function and U-identities")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--z", type=parse_complex, default=complex(0.8 * math.cos(1), 0.8 * math.sin(1)))
    p.add_argument("--t", type=parse_complex, default=0.2 + 0j)
    p.add_argument("--N", type=int, default=60)

    p = sub.add_parser("verify", parents=[common], help="randomized property suite")
    p.add_argument("--p", type=int, default=4, help="period of random samples")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--debug-psi-scale", type=float, default=1.0,
                   help="inject a wrong second-kind normalization (negative test)")
    return parser


# -- subcommands ----------------------------------------------------------------

def _need_alphas(args) -> VerblunskyPeriod:
    if not args.alphas:
        raise ArgumentError("--alphas is required for this command")
    return load_alphas(args.alphas)


def cmd_bands(args):
    V = _need_alphas(args)
    bs = band_structure(V, args.grid)
    cdf = band_cdf(V, bs=bs)
    rows = []
    for j, (x, y) in enumerate(bs.bands):
        th = x + (y - x) * (np.arange(args.samples) + 0.5) / args.samples
        for t, v, k in zip(th, v_values(V, th, bs), cdf(th)):
            rows.append({"band": j, "theta": angle(t), "V": float(v), "k": float(k)})
    results = {
        "p": V.p,
        "effective_p": bs.p,
        "bands": [arc(x, y) for x, y in bs.bands],
        "edges": [{"theta": angle(e.theta), "delta": e.delta_value, "side": e.side,
                   "resonance": e.is_resonance, "W": e.W} for e in bs.edges],
        "closed_gaps": [{"theta": angle(t), "delta": 2 * sg}
                        for t, sg in zip(bs.closed_gaps, bs.closed_gap_signs)],
        "resonances": [angle(t) for t in bs.resonances],
        "band_mass_raw": list(cdf.band_mass),
        "total_raw": cdf.total_raw,
        "warnings": list(bs.warnings),
        "cdf": rows,
    }
    return results, rows, {"touch": 1e-9, "resonance_match": 1e-6}, True


def cmd_singular(args):
    V = _need_alphas(args)
    p = discriminant(V).p
    sections = range(p) if args.s is None else [args.s]
    if args.s is not None and not 0 <= args.s < p:
        raise ArgumentError(f"--s must lie in 0..{p - 1}")
    cdf = band_cdf(V)
    per_s, rows = {}, []
    for s in sections:
        scan = find_singular_points(V, s, scan_size=args.grid, cdf=cdf)
        per_s[str(s)] = {
            "points": [{"theta": q.theta, "residual": q.residual, "band": q.band} for q in scan.points],
            "near_misses": [{"theta": q.theta, "residual": q.residual, "band": q.band}
                            for q in scan.near_misses],
            "edge_hits": [{"theta": q.theta, "residual": q.residual} for q in scan.edge_hits],
        }
        rows += [{"s": s, "theta": q.theta, "residual": q.residual, "band": q.band}
                 for q in scan.points]
    thetas = [sorted(q["theta"] for q in v["points"]) for v in per_s.values()]
    common = all(len(t) == len(thetas[0])
                 and all(angle_dist(x, y) <= 1e-6 for x, y in zip(t, thetas[0]))
                 for t in thetas)
    results = {
        "effective_p": p,
        "sections": per_s,
        "count": len(next(iter(per_s.values()))["points"]) if per_s else 0,
        "common_to_all": common,
    }
    return results, rows, {"accept": 1e-6, "near_miss": 1e-3}, True


def cmd_universality(args):
    V = _need_alphas(args)
    label = classify_point(V, args.theta)
    if label is RegimeLabel.OUTSIDE_BANDS:
        raise DomainError(f"theta={args.theta} is outside the bands (regime {label.value})")
    rep = universality_sweep(V, args.theta, args.a, args.b, args.n,
                             experimental_neg_edge=args.experimental_neg_edge,
                             edge_sign=args.edge_sign)
    edge = label not in (RegimeLabel.INTERIOR_BULK, RegimeLabel.CLOSED_GAP)
    tol = args.tol if args.tol is not None else (0.05 if edge else 0.01)
    terminal = rep.max_errors[-1][1]
    ok = rep.monotone and terminal <= tol
    results = rep.to_dict()
    results["verdict"] = "PASS" if ok else "FAIL"
    results["terminal_error"] = terminal
    rows = results["rows"]
    return results, rows, {"terminal": tol}, ok


def cmd_kernel(args):
    V = _need_alphas(args)
    rows = []
    for n in args.n:
        d = cd_kernel_direct(V, n, args.z, args.w)
        f = cd_kernel_fast(V, n, args.z, args.w)
        rows.append({"n": n, "direct": d, "fast": f,
                     "rel_diff": abs(d - f) / max(abs(d), 1e-300)})
    ok = all(r["rel_diff"] <= (args.tol or TOLERANCES["cd_kernel_rel"]) for r in rows)
    return {"z": args.z, "w": args.w, "values": rows}, rows, \
        {"cd_kernel_rel": args.tol or TOLERANCES["cd_kernel_rel"]}, ok


def cmd_schur(args):
    V = _need_alphas(args)
    if args.z:
        zs = np.array(args.z, dtype=complex)
    else:
        r = np.linspace(0, 0.9, args.grid)
        t = np.linspace(0, 2 * np.pi, args.grid, endpoint=False)
        zs = (r[:, None] * np.exp(1j * t)).ravel()
    f = np.atleast_1d(schur_f(V, zs))
    F = np.atleast_1d(caratheodory_F(V, zs))
    rel = np.abs(F - (1 + zs * f) / (1 - zs * f))
    tol = args.tol or TOLERANCES["schur_caratheodory"]
    rows = [{"z": z, "f": a, "F": b, "relation_residual": float(c)}
            for z, a, b, c in zip(zs, f, F, rel)]
    ok = bool(np.all(np.abs(f) < 1) and np.all(F.real > 0) and np.all(rel <= tol))
    results = {"max_abs_f": float(np.max(np.abs(f))), "min_re_F": float(np.min(F.real)),
               "max_relation_residual": float(np.max(rel)), "grid": rows}
    if args.k is not None:
        W = wall_polys(V, args.k)
        P = wall_from_recursion(V, args.k * V.effective_p - 1)
        results["wall_vs_recursion"] = float(max(np.max(np.abs(W.A.coeffs - P.A.coeffs)),
                                                    np.max(np.abs(W.B.coeffs - P.B.coeffs))))
    return results, rows, {"relation": tol}, ok


def cmd_identity(args):
    V = _need_alphas(args)
    gen = generating_function_residual(V, args.z, args.t, args.N)
    lhs, rhs = cheb_period_identity(V, args.m, args.k, args.z)
    ident = abs(lhs - rhs) / max(abs(lhs), 1.0)
    results = {
        "generating_function_residual": gen,
        "cheb_identity": {"m": args.m, "k": args.k, "lhs": lhs, "rhs": rhs, "residual": ident},
    }
    rows = [{"quantity": "generating_function_residual", "value": gen},
            {"quantity": "cheb_identity_residual", "value": ident}]
    if args.k <= 8 and V.p <= 6:
        zeros = classify_zeros_phi_diff(V, args.k)
        results["zeros"] = [{"z": q.z, "label": q.label.value} for q in zeros]
    ok = gen <= TOLERANCES["generating_function"] and ident <= TOLERANCES["cheb_identity_rel"]
    return results, rows, {k: TOLERANCES[k] for k in ("generating_function",
                                                      "cheb_identity_rel")}, ok


def cmd_verify(args):
    V = load_alphas(args.alphas) if args.alphas else None
    summary = verify(V, seed=args.seed, trials=args.trials, p=args.p,
                     psi_scale=args.debug_psi_scale)
    d = summary.to_dict()
    rows = [{k: v for k, v in prop.items() if k != "failure"} for prop in d["properties"]]
    return d, rows, dict(TOLERANCES), summary.passed


COMMANDS = {
    "bands": cmd_bands,
    "singular": cmd_singular,
    "universality": cmd_universality,
    "kernel": cmd_kernel,
    "schur": cmd_schur,
    "identity": cmd_identity,
    "verify": cmd_verify,
}


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("out", "no_timing")}
    if args.alphas:
        try:
            cfg["alphas"] = load_alphas(args.alphas).to_pairs()
        except OpucError:
            pass
    return cfg


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2 already
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        results, rows, tolerances, ok = COMMANDS[args.command](args)
    except OpucError as exc:
        code = exit_code_for(exc)
        msg = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
        if isinstance(exc, PropertyViolation) and exc.case is not None:
            msg["case"] = exc.case
        sys.stderr.write(json.dumps(msg, default=str) + "\n")
        return code
    elapsed = None if args.no_timing else time.perf_counter() - start
    report = build_report(args.command, _config(args), tolerances, results, elapsed, __version__)
    text = dumps_csv(report, rows) if args.format == "csv" else dumps_json(report)
    _emit(text, args.out)
    if not ok:
        sys.stderr.write(f"{args.command}: property check failed\n")
        return EXIT_PROPERTY
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
