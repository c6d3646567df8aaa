"""Command line interface: the ``chtg`` tool.

Subcommands: trace, thresholds, scan, ring-check, invariants, family.
Output formats: --json (one object), --csv (header + rows), default human
table.  Floats in machine formats are printed with 17 significant digits and
field order is fixed, so identical configurations give byte-identical output.

Exit codes: 0 ok; 2 a certificate / elliptic hit / failed ring check was
found (scripting convenience); 64 usage error; 65 math domain error.
The environment variable CHTG_TOL overrides the classification tolerance.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

from . import analysis, arithmetic, classify as classify_mod, traces, triangle, words
from .classify import classify
from .triangle import TriangleError, TriangleParams

EXIT_OK = 0
EXIT_FOUND = 2
EXIT_USAGE = 64
EXIT_DOMAIN = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def dumps_stable(obj) -> str:
    """Deterministic JSON: insertion order kept, floats at 17 significant
    digits, infinities as strings."""
    if isinstance(obj, dict):
        inner = ",".join(f"{dumps_stable(str(k))}:{dumps_stable(v)}"
                         for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps_stable(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        return dumps_stable({"re": obj.real, "im": obj.imag})
    raise TypeError(f"cannot serialise {type(obj)!r}")


def _num(x: float) -> str:
    return format(x, ".17g")


def _parse_p(token: str):
    if token in ("inf", "oo"):
        return math.inf
    try:
        return int(token)
    except ValueError:
        raise UsageError(f"bad signature entry {token!r}") from None


def _parse_alpha(token: str) -> float:
    if token == "pi":
        return math.pi
    try:
        return float(token)
    except ValueError:
        raise UsageError(f"bad alpha {token!r}") from None


def _parse_fraction(token: str) -> float:
    if "/" in token:
        a, b = token.split("/", 1)
        try:
            return float(a) / float(b)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad fraction {token!r}") from None
    try:
        return float(token)
    except ValueError:
        raise UsageError(f"bad number {token!r}") from None


@dataclass
class RunConfig:
    params: TriangleParams
    n: float | None
    fmt: str
    tol: float
    jobs: int


def _add_common(sub, need_angle=True):
    src = sub.add_mutually_exclusive_group(required=True)
    src.add_argument("--p", nargs=3, metavar=("P1", "P2", "P3"),
                     help="signature (integers or inf)")
    src.add_argument("--lengths", nargs=3, type=float, metavar=("L1", "L2", "L3"),
                     help="ultra-parallel side distances")
    src.add_argument("--r", nargs=3, type=float, metavar=("R1", "R2", "R3"),
                     help="raw radius triple")
    ang = sub.add_mutually_exclusive_group(required=False)
    ang.add_argument("--alpha", help="angular invariant in radians (or 'pi')")
    ang.add_argument("--cos-alpha", dest="cos_alpha",
                     help="cos(alpha), fractions like 61/64 allowed")
    ang.add_argument("--t", type=float, help="t = cot(alpha/2)")
    ang.add_argument("--n", help="rotation order for the (3,1,3,2) element")
    out = sub.add_mutually_exclusive_group(required=False)
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true")
    sub.add_argument("--tol", type=float, default=None,
                     help="classification tolerance (default 1e-9 or CHTG_TOL)")
    sub.add_argument("--jobs", type=int, default=1)
    sub._chtg_need_angle = need_angle
    return sub


def _resolve(args, need_angle=True) -> RunConfig:
    n = None
    if args.p is not None:
        ps = tuple(_parse_p(tok) for tok in args.p)
        base = TriangleParams.from_signature(*ps)
    elif args.lengths is not None:
        base = TriangleParams.from_lengths(*args.lengths)
    else:
        base = TriangleParams(*args.r)
    angle_flags = [args.alpha is not None, args.cos_alpha is not None,
                   args.t is not None, args.n is not None]
    if sum(angle_flags) > 1:
        raise UsageError("supply exactly one of --alpha/--cos-alpha/--t/--n")
    if args.alpha is not None:
        params = base.with_alpha(_parse_alpha(args.alpha))
    elif args.cos_alpha is not None:
        params = base.with_cos_alpha(_parse_fraction(args.cos_alpha))
    elif args.t is not None:
        params = base.with_t(args.t)
    elif args.n is not None:
        n = _parse_p(args.n)
        if args.p is None:
            raise UsageError("--n needs a --p signature")
        group = arithmetic.group_with_rotation(*_signature(args), n)
        params = group.params
    else:
        if need_angle:
            raise UsageError("this command needs one of --alpha/--cos-alpha/--t/--n")
        params = base
    fmt = "json" if args.json else ("csv" if args.csv else "human")
    tol = args.tol
    if tol is None:
        tol = float(os.environ.get("CHTG_TOL", "1e-9"))
    return RunConfig(params, n, fmt, tol, args.jobs)


def _signature(args):
    return tuple(_parse_p(tok) for tok in args.p)


def _emit(lines):
    sys.stdout.write("\n".join(lines) + "\n")


def cmd_trace(args) -> int:
    cfg = _resolve(args)
    word = words.parse_word(args.word)
    params = cfg.params
    results = {}
    rz = triangle.realize(params)
    results["oracle"] = traces.trace_oracle(word, rz).value
    results["combinatorial"] = traces.trace_combinatorial(word, params).value
    if min(params.r) > 0.0:
        results["recursive"] = traces.trace_recursive(word, params).value
    tau = results["oracle"]
    cls = classify(tau, tol=cfg.tol)
    deltas = {name: abs(v - tau) for name, v in results.items() if name != "oracle"}
    payload = {
        "word": words.word_to_str(word),
        "tau": {"re": tau.real, "im": tau.imag},
        "method": "oracle",
        "rho": cls.rho,
        "verdict": cls.verdict,
        "methods": {name: {"re": v.real, "im": v.imag}
                    for name, v in results.items()},
        "deltas": deltas,
        "params": params.to_json_dict(),
    }
    if args.fourier:
        payload["fourier"] = traces.trace_polynomial(word, mode="exact").to_json_dict()
    if cfg.fmt == "json":
        _emit([dumps_stable(payload)])
    elif cfg.fmt == "csv":
        _emit(["method,re_tau,im_tau",
               *(f"{name},{_num(v.real)},{_num(v.imag)}"
                 for name, v in results.items())])
    else:
        lines = [f"word {words.word_to_str(word)}: tau = {tau:.12g} "
                 f"rho = {cls.rho:.6g} [{cls.verdict}]"]
        for name, v in results.items():
            lines.append(f"  {name:14s} {v:.15g}")
        for name, d in deltas.items():
            lines.append(f"  delta[{name}] = {d:.3g}")
        _emit(lines)
    if deltas and max(deltas.values()) > 1e-6:
        sys.stderr.write("method disagreement above 1e-6\n")
        return EXIT_DOMAIN
    return EXIT_OK


def _threshold_payload(params, n):
    th = analysis.thresholds(params)
    payload = {
        "params": params.to_json_dict(),
        "c_inf": th.c_inf, "t_inf": th.t_inf,
        "c_a": th.c_a, "t_a": th.t_a,
        "r_product": th.r_product,
        "family_member": th.family_member,
    }
    if th.family_member:
        payload["family_type"] = analysis.family_type(params)
        payload["f_b"] = list(th.f_b)
        payload["t_b_minus"] = th.t_b_minus
        payload["t_b_plus"] = th.t_b_plus
    if n is not None:
        payload["n"] = n
    return payload


def cmd_thresholds(args) -> int:
    cfg = _resolve(args, need_angle=False)
    payload = _threshold_payload(cfg.params, cfg.n)
    if cfg.fmt == "json":
        _emit([dumps_stable(payload)])
    else:
        lines = [f"r = ({cfg.params.r1:.12g}, {cfg.params.r2:.12g}, {cfg.params.r3:.12g})"]
        for key in ("c_inf", "t_inf", "c_a", "t_a", "r_product"):
            lines.append(f"  {key:10s} = {payload[key]:.12g}")
        lines.append(f"  family     = {payload['family_member']}")
        if payload["family_member"]:
            lines.append(f"  type       = {payload['family_type']}")
            if payload["t_b_minus"] is not None:
                lines.append(f"  t_b_minus  = {payload['t_b_minus']:.12g}")
            if payload["t_b_plus"] is not None:
                lines.append(f"  t_b_plus   = {payload['t_b_plus']:.12g}")
        _emit(lines)
    return EXIT_OK


def cmd_family(args) -> int:
    return cmd_thresholds(args)


def cmd_invariants(args) -> int:
    cfg = _resolve(args)
    params = cfg.params
    rz = triangle.realize(params)
    payload = {"params": params.to_json_dict(),
               "alpha": params.alpha, "t": params.t,
               "cartan": triangle.cartan_invariant(*rz.vertices)}
    try:
        payload["sigma"] = triangle.brehm_sigma(rz)
    except TriangleError:
        payload["sigma"] = None
    try:
        eta = triangle.hakim_sandler_eta(rz)
        payload["eta"] = {"re": eta.real, "im": eta.imag}
    except TriangleError:
        payload["eta"] = None
    if cfg.fmt == "json":
        _emit([dumps_stable(payload)])
    else:
        lines = [f"alpha  = {params.alpha:.12g}",
                 f"t      = {params.t:.12g}",
                 f"cartan = {payload['cartan']:.12g}"]
        lines.append("sigma  = " + ("undefined" if payload["sigma"] is None
                                    else f"{payload['sigma']:.12g}"))
        lines.append("eta    = " + ("undefined" if payload["eta"] is None
                                    else f"{complex(payload['eta']['re'], payload['eta']['im']):.12g}"))
        _emit(lines)
    return EXIT_OK


def cmd_scan(args) -> int:
    cfg = _resolve(args)
    report = analysis.scan_elliptic(cfg.params, args.max_len,
                                    skip_alternating=not args.include_alternating,
                                    tol=cfg.tol, jobs=cfg.jobs)
    cert = None
    if abs(cfg.params.t) > analysis.thresholds(cfg.params).t_a:
        cert = analysis.non_discreteness_certificate(cfg.params, tol=cfg.tol)
    if cfg.fmt == "json":
        payload = {"params": cfg.params.to_json_dict(), "max_len": args.max_len,
                   "rows": [r.to_json_dict() for r in report.rows],
                   "hits": [words.word_to_str(r.word) for r in report.hits],
                   "certificate": None if cert is None else {
                       "word": words.word_to_str(cert.word),
                       "tau": {"re": cert.tau.real, "im": cert.tau.imag},
                       "rho": cert.rho, "t": cert.t, "t_a": cert.t_a}}
        _emit([dumps_stable(payload)])
    elif cfg.fmt == "csv":
        lines = ["word,re_tau,im_tau,rho,verdict"]
        for r in report.rows:
            lines.append(",".join([words.word_to_str(r.word),
                                   _num(r.tau.real), _num(r.tau.imag),
                                   _num(r.rho), r.verdict]))
        _emit(lines)
    else:
        lines = []
        for r in report.rows:
            mark = " *" if (r.verdict == classify_mod.REGULAR_ELLIPTIC
                            and not r.filtered) else ""
            lines.append(f"{words.word_to_str(r.word):12s} tau = {r.tau:.8g} "
                         f"rho = {r.rho:.6g} {r.verdict}{mark}")
        lines.append(f"hits: {len(report.hits)}")
        _emit(lines)
    return EXIT_FOUND if (report.hits or cert is not None) else EXIT_OK


def cmd_ring_check(args) -> int:
    if args.p is None or args.n is None:
        raise UsageError("ring-check needs --p and --n")
    cfg = _resolve(args)
    group = arithmetic.group_with_rotation(*_signature(args), _parse_p(args.n))
    tol = args.ring_tol
    rows = []
    any_fail = False
    for w in words.enumerate_words(args.max_len, cyclically_reduced=True):
        verdict = arithmetic.group_ring_check(group, w, tol=tol)
        ok = verdict.ok
        any_fail = any_fail or not ok
        rows.append((w, verdict))
    if cfg.fmt == "json":
        payload = {"params": group.params.to_json_dict(),
                   "n": group.n, "max_len": args.max_len,
                   "rows": [{"word": words.word_to_str(w),
                             **v.to_json_dict()} for w, v in rows]}
        _emit([dumps_stable(payload)])
    elif cfg.fmt == "csv":
        lines = ["word,ok"]
        lines += [f"{words.word_to_str(w)},{int(v.ok)}" for w, v in rows]
        _emit(lines)
    else:
        lines = [f"{words.word_to_str(w):10s} ok={v.ok}" for w, v in rows]
        lines.append(f"all passed: {not any_fail}")
        _emit(lines)
    return EXIT_FOUND if any_fail else EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="chtg",
                     description="complex hyperbolic triangle group toolkit")
    subs = parser.add_subparsers(dest="command", required=True)

    p_trace = _add_common(subs.add_parser("trace", help="trace of one word"))
    p_trace.add_argument("--word", required=True, help="digit string, 'e' = identity")
    p_trace.add_argument("--fourier", action="store_true",
                         help="include the exact Fourier coefficient data")
    p_trace.set_defaults(func=cmd_trace)

    p_thr = _add_common(subs.add_parser("thresholds",
                                        help="existence/ellipticity thresholds"),
                        need_angle=False)
    p_thr.set_defaults(func=cmd_thresholds)

    p_fam = _add_common(subs.add_parser("family",
                                        help="distinguished family membership and type"),
                        need_angle=False)
    p_fam.set_defaults(func=cmd_family)

    p_inv = _add_common(subs.add_parser("invariants",
                                        help="angular and vertex invariants"))
    p_inv.set_defaults(func=cmd_invariants)

    p_scan = _add_common(subs.add_parser("scan",
                                         help="classify all short words"))
    p_scan.add_argument("--max-len", type=int, default=6)
    p_scan.add_argument("--include-alternating", action="store_true",
                        help="also flag two-letter alternation powers")
    p_scan.set_defaults(func=cmd_scan)

    p_ring = _add_common(subs.add_parser("ring-check",
                                         help="integrality of trace data"))
    p_ring.add_argument("--max-len", type=int, default=6)
    p_ring.add_argument("--ring-tol", type=float, default=1e-7)
    p_ring.set_defaults(func=cmd_ring_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (TriangleError, traces.CapExceeded, traces.ZeroRadiusUnsupported,
            analysis.NotInFamily, arithmetic.IllConditionedBasis,
            words.WordError, ValueError) as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
