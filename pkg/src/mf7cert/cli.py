"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 for usage errors (bad arguments, unknown checks, unparsable input).
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from . import invariants7 as inv, modforms7 as mf, tate, weierstrass as wst
from .checks import REGISTRY, UnknownCheckError, run_checks, run_one
from .exactalg import MF7
from .parsing import ParseError, parse_expr
from .qseries import PrecisionError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _certificate(check: str, passed: bool, witnesses: dict, bounds: dict, start: float) -> dict:
    return {
        "check": check,
        "status": "pass" if passed else "fail",
        "witnesses": witnesses,
        "bounds": bounds,
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }


def _parse(text: str, ring=MF7):
    try:
        return parse_expr(text, ring)
    except ParseError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_verify(args) -> int:
    try:
        report = run_checks(args.checks or ["all"], args.prec, args.jobs)
    except UnknownCheckError as exc:
        raise UsageError(f"unknown check: {exc.args[0]} (known: {', '.join(sorted(REGISTRY))})") from exc
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        for r in report.results:
            print(f"{r.status.upper():4}  {r.name:22} prec={r.precision}")
            if r.status != "pass" or args.verbose:
                print("      " + json.dumps(r.witnesses, sort_keys=True))
        n_pass = sum(r.status == "pass" for r in report.results)
        print(f"{n_pass}/{len(report.results)} checks passed")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_qexp(args) -> int:
    e = _parse(args.poly)
    s = mf.qexp_of_mf7(e, args.prec)
    _emit(args, {"input": str(e), "qexp": s.to_json()}, str(s))
    return EXIT_OK


def cmd_mf7(args) -> int:
    if args.action == "qexp":
        if not args.arg:
            raise UsageError("mf7 qexp needs a polynomial")
        return cmd_qexp(argparse.Namespace(**{**vars(args), "poly": args.arg}))
    if args.action == "verify":
        if args.arg not in (None, "action"):
            raise UsageError("mf7 verify only knows 'action'")
        return _run_named(args, "action")
    # invariants
    if args.degree is None or args.degree < 0:
        raise UsageError("mf7 invariants needs --degree k >= 0")
    start = time.perf_counter()
    b = mf.invariant_basis(args.degree)
    witnesses = {
        "basis": [str(x) for x in b.basis],
        "formula": [{"exponents": list(ex), "element": str(x)} for ex, x in b.formula],
        "span_match": b.span_match,
        "saturated": b.saturated,
    }
    cert = _certificate("invariants", b.ok, witnesses, {"degree": args.degree}, start)
    text = "\n".join(f"{ex}: {x}" for ex, x in b.formula) or "(none)"
    _emit(args, cert, text)
    return EXIT_OK if b.ok else EXIT_FAIL


def cmd_tate(args) -> int:
    try:
        if args.action == "xy":
            pt = tate.torsion_xy(args.n, args.k, args.d, args.prec)
            payload = {"X": pt.X.to_json(), "Y": pt.Y.to_json()}
            text = f"X = {pt.X}\nY = {pt.Y}"
        elif args.action == "alpha":
            a = tate.alpha_series(args.n, args.k, args.d, args.prec)
            payload = {f"alpha{i + 1}": s.to_json() for i, s in enumerate(a)}
            text = "\n".join(f"alpha{i + 1} = {s}" for i, s in enumerate(a))
        else:
            row = tate.lowest_term_table(args.n, args.k, args.d, max(args.prec, 2 * args.n + 1))
            payload = {"case": row.case, "computed": [str(c) for c in row.computed], "ok": row.ok}
            text = f"{row.case}: " + ", ".join(str(c) for c in row.computed) + ("" if row.ok else "  MISMATCH")
            _emit(args, payload, text)
            return EXIT_OK if row.ok else EXIT_FAIL
    except (tate.TorsionPointError, PrecisionError) as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, payload, text)
    return EXIT_OK


def cmd_wst(args) -> int:
    if args.action == "level1-image":
        m = _parse(args.arg or "Delta", wst.LEVEL1)
        img = wst.level1_image(m)
        _emit(args, {"input": str(m), "image": str(img)}, str(img))
        return EXIT_OK
    W = wst.generic_coeffs()
    ring = W.a1.ring
    params = {k: _parse(getattr(args, k), ring) for k in ("r", "s", "t", "u")}
    u = params["u"]
    if not u.is_constant() or not u.constant_coeff():
        raise UsageError("u must be a nonzero rational constant")
    T = wst.TransformParams(r=params["r"], s=params["s"], t=params["t"], u=u.constant_coeff())
    out = wst.transform(W, T)
    names = ("a1", "a2", "a3", "a4", "a6")
    payload = {n: str(x) for n, x in zip(names, out.as_tuple())}
    _emit(args, payload, "\n".join(f"{n}' = {x}" for n, x in zip(names, out.as_tuple())))
    return EXIT_OK


def cmd_hopf(args) -> int:
    return _run_named(args, "hopf-axioms" if args.action == "axioms" else "hopf-dual")


def cmd_inv(args) -> int:
    if args.action != "transfer":
        return _run_named(args, args.action)
    if not args.arg:
        raise UsageError("inv transfer needs a polynomial")
    start = time.perf_counter()
    x = _parse(args.arg, inv.R)
    tr = inv.transfer(x)
    fixed = inv.tau_on_R(tr) == tr
    cert = _certificate("transfer", fixed, {"input": str(x), "transfer": str(tr), "tau-invariant": fixed}, {}, start)
    _emit(args, cert, str(tr))
    return EXIT_OK if fixed else EXIT_FAIL


def _run_named(args, name: str) -> int:
    r = run_one(name, args.prec)
    d = r.to_json()
    _emit(args, d, f"{r.status.upper()}  {r.name}\n" + json.dumps(r.witnesses, indent=2, sort_keys=True))
    return EXIT_OK if r.status == "pass" else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def _common() -> argparse.ArgumentParser:
    # accepted both before and after the subcommand
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--prec", type=int, help="q-adic precision (default 16)")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--jobs", type=int, help="worker threads for verify (default 1)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="mf7cert", parents=[common], description="Exact checks for level-7 modular forms, Tate curves and the invariant comodule.")
    parser.add_argument("--version", action="version", version=f"mf7cert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run registered checks")
    p.add_argument("checks", nargs="*", help="check names, or 'all'")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("qexp", parents=[common], help="q-expansion of a polynomial in z1, z2, z3")
    p.add_argument("poly")
    p.set_defaults(func=cmd_qexp)

    p = sub.add_parser("tate", parents=[common], help="Tate curve torsion points")
    p.add_argument("action", choices=("xy", "alpha", "lowest"))
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--d", type=int, default=0)
    p.set_defaults(func=cmd_tate)

    p = sub.add_parser("wst", parents=[common], help="Weierstrass transformations")
    p.add_argument("action", choices=("transform", "level1-image"))
    p.add_argument("arg", nargs="?", help="polynomial in c4, c6, Delta for level1-image")
    for name, default in (("r", "0"), ("s", "0"), ("t", "0"), ("u", "1")):
        p.add_argument(f"--{name}", default=default, help="polynomial in a1..a6")
    p.set_defaults(func=cmd_wst)

    p = sub.add_parser("hopf", parents=[common], help="Hopf algebroid checks")
    p.add_argument("action", choices=("axioms", "dual-check"))
    p.set_defaults(func=cmd_hopf)

    p = sub.add_parser("inv", parents=[common], help="invariants and the comodule splitting")
    p.add_argument("action", choices=("basis48", "sbasis", "splitting", "transfer"))
    p.add_argument("arg", nargs="?", help="polynomial in z1, z2, z3, r for transfer")
    p.set_defaults(func=cmd_inv)

    p = sub.add_parser("mf7", parents=[common], help="forms for Gamma1(7)")
    p.add_argument("action", choices=("qexp", "verify", "invariants"))
    p.add_argument("arg", nargs="?")
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_mf7)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, default in (("prec", 16), ("json", False), ("jobs", 1)):
        if not hasattr(args, key):
            setattr(args, key, default)
    if args.prec < 1 or args.jobs < 1:
        print("mf7cert: --prec and --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mf7cert: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
