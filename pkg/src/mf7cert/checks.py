"""Registry of named verification checks and the report runner."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import __version__
from . import hopf, invariants7 as inv, modforms7 as mf, tate, weierstrass as wst
from .exactalg import GF3, MF7, ZETA6, CycQ6, mf7_gens, mf7_rank
from .parsing import parse_expr
from .qseries import eta_product_delta


@dataclass(frozen=True)
class CheckSpec:
    name: str
    module: str
    run: Callable[[int], "Outcome"]
    min_prec: int = 1
    topic: str = ""


@dataclass
class Outcome:
    passed: bool
    witnesses: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)


@dataclass
class CheckResult:
    name: str
    module: str
    status: str
    witnesses: dict
    precision: int
    bounds: dict
    elapsed_ms: float
    topic: str

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "module": self.module,
            "status": self.status,
            "topic": self.topic,
            "witnesses": self.witnesses,
            "precision": self.precision,
            "bounds": self.bounds,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass
class Report:
    version: str
    prec: int
    results: list

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def to_json(self, timings: bool = True) -> dict:
        checks = []
        for r in self.results:
            d = r.to_json()
            if not timings:
                d.pop("elapsed_ms")
            checks.append(d)
        return {
            "tool": "mf7cert",
            "version": self.version,
            "prec": self.prec,
            "status": "pass" if self.passed else "fail",
            "checks": checks,
        }


REGISTRY: dict = {}


def register(name: str, module: str, min_prec: int = 1, topic: str = ""):
    def deco(fn):
        if name in REGISTRY:
            raise ValueError(f"duplicate check {name}")
        REGISTRY[name] = CheckSpec(name, module, fn, min_prec, topic)
        return fn

    return deco


def _all(d: dict) -> bool:
    return all(d.values())


# ---------------------------------------------------------------------------
# exactalg


@register("ring-zeta6", "exactalg", topic="arithmetic in Q(zeta6)")
def _zeta6(prec):
    w = {
        "zeta^2 = zeta - 1": ZETA6 * ZETA6 == ZETA6 - 1,
        "zeta^3 = -1": ZETA6**3 == CycQ6(-1),
        "zeta^6 = 1": ZETA6**6 == CycQ6(1),
        "GF3: 2*2 = 1": GF3(2) * GF3(2) == GF3(1),
    }
    return Outcome(_all(w), w)


@register("nf-sigma2", "exactalg", topic="normal form modulo sigma2")
def _nf(prec):
    z1, z2, z3, s1, _, _ = mf7_gens()
    w = {
        "sigma2 -> 0": str(parse_expr("z1*z2 + z2*z3 + z3*z1")) == "0",
        "z1*z2 -> -z1*z3 - z2*z3": z1 * z2 == -z2 * z3 - z1 * z3,
        "sigma1^2 -> z1^2+z2^2+z3^2": s1 * s1 == z1 * z1 + z2 * z2 + z3 * z3,
    }
    return Outcome(_all(w), w)


@register("mf7-rank", "exactalg", topic="rank 2k+1 in degree k")
def _rank(prec):
    ranks = {k: mf7_rank(k) for k in range(13)}
    return Outcome(all(r == 2 * k + 1 for k, r in ranks.items()), {"ranks": ranks}, {"max_degree": 12})


# ---------------------------------------------------------------------------
# modforms7


@register("eisenstein-zbasis", "modforms7", min_prec=50, topic="integral basis z1, z2, z3")
def _zbasis(prec):
    zb = mf.z_basis(prec)
    expected = ([0, 1, 0], [0, -1, 1], [1, 2, 3])
    low = {f"z{i + 1}": [int(z[n]) for n in range(3)] for i, z in enumerate(zb.as_tuple())}
    second = mf.z_basis_direct(prec)
    w = {
        "mod q^3": low,
        "mod q^3 matches": all(low[f"z{i + 1}"] == list(e) for i, e in enumerate(expected)),
        f"integral to q^{prec}": True,  # z_basis raises otherwise
        "second route agrees": all(a == b for a, b in zip(zb.as_tuple(), second.as_tuple())),
    }
    return Outcome(w["mod q^3 matches"] and w["second route agrees"], w, {"prec": prec})


@register("sigma2-relation", "modforms7", min_prec=25, topic="the relation sigma2 = 0 on q-expansions")
def _relation(prec):
    zb = mf.z_basis(prec)
    s = zb.z1 * zb.z2 + zb.z2 * zb.z3 + zb.z3 * zb.z1
    return Outcome(s.is_zero(), {"sigma2": str(s)}, {"prec": prec})


@register("action", "modforms7", topic="(Z/7)^x acting on z1, z2, z3")
def _action(prec):
    cert = mf.verify_action_via_eisenstein()
    w = {
        "matrix": [[str(c) for c in row] for row in cert.matrix],
        "zeta_free": cert.zeta_free,
        "signed permutation": cert.matches,
        "notes": cert.notes,
    }
    return Outcome(cert.ok, w)


BASE_CHANGE_DET_STATED = CycQ6(Fraction(2, 27)) * (84 * ZETA6 - 42)


@register("base-change-det", "modforms7", topic="determinant of the character base change")
def _bc_det(prec):
    d = mf.base_change_det()
    w = {
        "computed": str(d),
        "stated": str(BASE_CHANGE_DET_STATED),
        "ratio": str(d * BASE_CHANGE_DET_STATED.inverse()),
    }
    return Outcome(d == BASE_CHANGE_DET_STATED, w)


@register("invariants", "modforms7", topic="invariant forms s1^a s3^b p^eps")
def _invariants(prec):
    rows = {k: mf.invariant_basis(k) for k in range(9)}
    w = {str(k): {"count": len(b.basis), "ok": b.ok} for k, b in rows.items()}
    return Outcome(all(b.ok for b in rows.values()), w, {"max_degree": 8})


@register("qexp-independence", "modforms7", topic="q-expansion is injective in each degree")
def _independence(prec):
    ranks = {k: mf.independence_degree(k) for k in range(7)}
    return Outcome(all(r == 2 * k + 1 for k, r in ranks.items()), {"ranks": ranks}, {"max_degree": 6})


# ---------------------------------------------------------------------------
# tate


@register("tate-coeffs", "tate", min_prec=3, topic="Tate curve coefficients")
def _tate_coeffs(prec):
    c = tate.tate_coeffs(1, prec)
    w = {
        "Delta = q - 24q^2": c.delta[1] == 1 and c.delta[2] == -24,
        "a4[1] = -5": c.a4[1] == -5,
        "a6[1] = -1": c.a6[1] == -1,
    }
    return Outcome(_all(w), w, {"prec": prec})


X_DISPLAY = (1, 2, 3, 4, 5, 7, 5, 9)  # q^1 .. q^8
Y_DISPLAY = (0, 1, 3, 6, 10, 14, 22, 28)


@register("tate-xy", "tate", min_prec=9, topic="X(q, q^7) and Y(q, q^7)")
def _tate_xy(prec):
    pt = tate.torsion_xy(7, 1, 0, prec)
    xs = tuple(int(pt.X[n]) for n in range(1, 9))
    ys = tuple(int(pt.Y[n]) for n in range(1, 9))
    w = {"X": list(xs), "Y": list(ys), "X matches": xs == X_DISPLAY, "Y matches": ys == Y_DISPLAY}
    return Outcome(xs == X_DISPLAY and ys == Y_DISPLAY, w, {"prec": prec})


@register("tate-curve-identity", "tate", min_prec=12, topic="torsion points lie on the curve")
def _curve(prec):
    w = {}
    for n, k, d in ((7, 1, 0), (5, 2, 0), (7, 2, 1), (7, 0, 1)):
        w[f"({n},{k},{d})"] = tate.curve_residual(n, tate.torsion_xy(n, k, d, prec)).is_zero()
    lit = tate.curve_residual(7, tate.torsion_xy_k0_literal(7, 1, prec)).is_zero()
    w["k=0 with constant 1 fails"] = not lit
    return Outcome(_all(w), w, {"prec": prec})


@register("lowest-terms", "tate", topic="lowest terms of X, Y, X + 2Y")
def _lowest(prec):
    cases = ((7, 0, 1), (7, 3, 0), (8, 4, 1), (7, 5, 0), (7, 2, 1), (9, 6, 2))
    w = {}
    for n, k, d in cases:
        row = tate.lowest_term_table(n, k, d)
        w[f"({n},{k},{d})"] = {"case": row.case, "computed": [str(c) for c in row.computed], "ok": row.ok}
    return Outcome(all(v["ok"] for v in w.values()), w)


@register("alpha-match", "tate", min_prec=25, topic="alpha_i as forms in z1, z2, z3")
def _alpha(prec):
    series = tate.alpha_series(7, 1, 0, prec)
    forms = [mf.qexp_of_mf7(e, prec) for e in wst.theorem_alphas()]
    oks = [s.agrees_with(f, prec) for s, f in zip(series, forms)]
    w = {f"alpha{i + 1}": ok for i, ok in enumerate(oks)}
    if all(oks):
        w["result"] = f"matched modulo q^{prec}"
    return Outcome(all(oks), w, {"prec": prec})


@register("alpha-routes", "tate", min_prec=12, topic="specialised and generic alpha formulas agree")
def _alpha_routes(prec):
    w = {}
    for n, k, d in ((7, 1, 0), (7, 3, 0), (5, 2, 0)):
        a = tate.alpha_series(n, k, d, prec)
        b = tate.alpha_series_general(n, k, d, prec)
        w[f"({n},{k},{d})"] = all(x.agrees_with(y, prec) for x, y in zip(a, b))
    return Outcome(_all(w), w, {"prec": prec})


@register("tate-discriminant", "tate", min_prec=20, topic="discriminant of the Tate curve")
def _tate_delta(prec):
    got, want = tate.tate_discriminant_check(1, prec)
    return Outcome(got.agrees_with(want, prec), {"Delta": str(got.truncate(5))}, {"prec": prec})


# ---------------------------------------------------------------------------
# weierstrass


@register("wst-transform", "weierstrass", topic="coordinate changes")
def _wst_transform(prec):
    W = wst.generic_coeffs()
    ring = W.a1.ring
    g = ring.gens_dict()
    T1 = wst.TransformParams(r=g["a2"], s=g["a1"], t=g["a3"] + 1)
    T2 = wst.TransformParams(r=ring.const(2) * g["a1"], s=ring.const(-1), t=g["a4"])
    w = {
        "identity": wst.transform(W, wst.TransformParams()) == W,
        "composition": wst.transform(wst.transform(W, T1), T2) == wst.transform(W, wst.compose(T1, T2)),
        "Delta invariant": wst.c4_c6_delta(wst.transform(W, T1)).delta == wst.c4_c6_delta(W).delta,
    }
    return Outcome(_all(w), w)


@register("wst-discriminant", "weierstrass", topic="1728 Delta = c4^3 - c6^2")
def _wst_delta(prec):
    inv_ = wst.c4_c6_delta(wst.generic_coeffs())
    ok = 1728 * inv_.delta == inv_.c4**3 - inv_.c6**2
    return Outcome(ok, {"generic identity": ok})


@register("kappa", "weierstrass", topic="completing the square on the Tate normal form")
def _kappa(prec):
    k2, _, k6 = wst.kappa_images()
    via = wst.kappa_via_transform()
    w = {
        "kappa(a2)": str(k2),
        "kappa(a2) display": k2 == parse_expr("1/4*(z1-z2+z3)^2 - z2*z3"),
        "kappa(a6) display": k6 == parse_expr("1/4*z1^2*z3^4"),
        "transform agrees": via == wst.kappa_curve(),
    }
    return Outcome(w["kappa(a2) display"] and w["kappa(a6) display"] and w["transform agrees"], w)


@register("level1-delta", "weierstrass", min_prec=25, topic="Delta in terms of sigma3 and p")
def _level1(prec):
    img = wst.level1_image(parse_expr("Delta", wst.LEVEL1))
    closed = parse_expr("-sigma3^3*p - 8*sigma3^4")
    series = mf.qexp_of_mf7(img, prec)
    target = eta_product_delta(7, prec)
    w = {
        "image": str(img),
        "closed form": img == closed,
        f"q-expansion equals Delta(q^7) mod q^{prec}": series.agrees_with(target, prec),
    }
    return Outcome(w["closed form"] and series.agrees_with(target, prec), w, {"prec": prec})


# ---------------------------------------------------------------------------
# hopf


@register("hopf-axioms", "hopf", topic="Hopf algebroid identities")
def _hopf_axioms(prec):
    cert = hopf.axioms_check()
    return Outcome(cert.ok, {"identities": len(cert.results), "failures": cert.failures()})


@register("hopf-mf12", "hopf", topic="extended comodule of rank 3")
def _mf12(prec):
    M = hopf.mf12_comodule()
    cert = M.check()
    ident = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    idc = hopf.comodule_map_check(ident, M, M, 0)
    w = dict(cert.results)
    w["identity map"] = idc.ok and idc.invertible
    w["comodule"] = M.to_json()
    return Outcome(cert.ok and w["identity map"], w)


@register("hopf-dual", "hopf", topic="dual comodule and the degree-shifting isomorphism")
def _dual(prec):
    M = hopf.mf12_comodule()
    D = hopf.dual_comodule(M)
    dual_map = hopf.comodule_map_check(hopf.mf12_to_dual_map(), M, D, -4)
    bad = [[0, 0, 1], [0, Fraction(1, 2), 0], [1, 0, 0]]
    corrupted = hopf.comodule_map_check(bad, M, D, -4)
    DD = hopf.dual_comodule(D)
    _, dd = hopf.find_isomorphism(M, DD, 0)
    w = {
        "dual comodule": _all(D.check().results),
        "isomorphism": dual_map.ok and dual_map.invertible,
        "corrupted map rejected": not corrupted.commutes,
        "double dual": dd is not None,
        "dual": D.to_json(),
    }
    return Outcome(w["dual comodule"] and w["isomorphism"] and w["corrupted map rejected"] and w["double dual"], w)


# ---------------------------------------------------------------------------
# invariants7


@register("lambda", "invariants7", topic="the A-module structure on R")
def _lambda(prec):
    l2, l4, l6 = inv.lambda_images()
    kap = tuple(k.change_ring(inv.R) for k in wst.kappa_images())
    at_r0 = tuple(l.evaluate({**inv.R.gens_dict(), "r": inv.R.zero()}, one=inv.R.one()) for l in (l2, l4, l6))
    w = {
        "lambda(a2)": str(l2),
        "r = 0 gives kappa": at_r0 == kap,
        "right unit gives kappa": inv.right_unit_on_lambda() == kap,
        "degrees": [l.degree() for l in (l2, l4, l6)] == [2, 4, 6],
        "tau-invariant": all(inv.tau_on_R(l) == l for l in (l2, l4, l6)),
    }
    ok = w["r = 0 gives kappa"] and w["right unit gives kappa"] and w["degrees"] and w["tau-invariant"]
    return Outcome(ok, w)


@register("basis48", "invariants7", topic="48-element basis modulo (3, a2, a4, a6)")
def _basis48(prec):
    c = inv.basis48_certificate()
    w = {
        "dimension": c.dimension,
        "per_degree": c.per_degree,
        "rank": c.basis_rank,
        "rank without one element": c.dropped_rank,
    }
    return Outcome(c.ok, w, {"max_degree": c.max_degree})


@register("sbasis", "invariants7", topic="the rank-8 invariant module")
def _sbasis(prec):
    c = inv.s_basis_certificate()
    w = {
        "invariance": c.invariance,
        "n6 identity": c.n6_identity,
        "degrees": c.degrees,
        "rational minor": c.rational_minor.to_json(),
        "mod-3 minor": c.f3_minor.to_json(),
        "3-local coordinates": c.expansions_integral,
        "reference discrepancies": c.reference_discrepancies,
    }
    return Outcome(c.ok, w, {"max_degree": 8})


@register("expansion-reference", "invariants7", topic="coordinates of the invariants in the 48-element basis")
def _expansions(prec):
    comps = [inv.compare_with_reference(n) for n in inv.S_DISPLAY_ORDER]
    w = {c.name: c.to_json() for c in comps}
    return Outcome(all(c.matches for c in comps), w, {"max_degree": 8})


@register("coaction", "invariants7", topic="coaction on the invariant module")
def _coaction(prec):
    M = inv.coaction_on_S()
    table = inv.coaction_matches_table(M)
    w = {"table": table, "comodule checks": M.check().results, "comodule": M.to_json()}
    return Outcome(_all(table) and M.check().ok, w)


@register("splitting", "invariants7", topic="splitting of the invariant module into comodules")
def _splitting(prec):
    c = inv.splitting_iso_check()
    w = {
        "source": c.source_checks,
        "target": c.target_checks,
        "map": c.map_certificate.to_json(),
        "degrees match": c.degrees_match,
        "assignment": c.assignment,
    }
    return Outcome(c.ok, w)


@register("transfer", "invariants7", topic="orbit sums over (Z/7)^x")
def _transfer(prec):
    x = parse_expr("1/2*z1^3*z2^2*z3")
    tr = inv.transfer(x)
    w = {
        "Tr(z1^3 z2^2 z3 / 2) = sigma3 p": tr == parse_expr("sigma3*p"),
        "Tr(1) = 6": inv.transfer(MF7.one()) == MF7.const(6),
        "tau^6(r) = r": inv.tau_on_R(inv.R.gen("r"), 6) == inv.R.gen("r"),
    }
    return Outcome(_all(w), w)


@register("degree-formula", "invariants7", topic="degrees of the level covers")
def _degrees(prec):
    got = {n: inv.degree_formula(n) for n in (2, 7, 12)}
    want = {2: (3, 3), 7: (48, 8), 12: (96, 24)}
    return Outcome(got == want, {str(n): list(v) for n, v in got.items()})


# ---------------------------------------------------------------------------
# runner


class UnknownCheckError(KeyError):
    pass


def resolve(selection: Iterable[str]) -> list:
    names = list(selection)
    if not names or names == ["all"]:
        return sorted(REGISTRY)
    unknown = [n for n in names if n not in REGISTRY]
    if unknown:
        raise UnknownCheckError(", ".join(unknown))
    return sorted(set(names))


def run_one(name: str, prec: int) -> CheckResult:
    spec = REGISTRY[name]
    p = max(prec, spec.min_prec)
    start = time.perf_counter()
    try:
        out = spec.run(p)
        status = "pass" if out.passed else "fail"
        witnesses, bounds = out.witnesses, out.bounds
    except Exception as exc:  # a crashing check is reported, not propagated
        status, witnesses, bounds = "fail", {"error": f"{type(exc).__name__}: {exc}"}, {}
    elapsed = round((time.perf_counter() - start) * 1000, 3)
    return CheckResult(name, spec.module, status, witnesses, p, bounds, elapsed, spec.topic)


def run_checks(selection: Iterable[str] = ("all",), prec: int = 16, jobs: int = 1) -> Report:
    names = resolve(selection)
    if jobs <= 1:
        results = [run_one(n, prec) for n in names]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda n: run_one(n, prec), names))
    results.sort(key=lambda r: r.name)
    return Report(__version__, prec, results)
