"""The 3-local Hopf algebroid (A, Gamma) with A = Z_(3)[a2, a4, a6] and
Gamma = A[r], together with free graded comodules over it.

Generators a2, a4, a6 stand for the barred Weierstrass coefficients of
y^2 = x^3 + a2 x^2 + a4 x + a6, and r for the translation x -> x + r.

Gamma (x)_A Gamma is modelled as A[r1, r2]: an element g(a, r) of the
left factor becomes g(a, r1); an element g'(a, r) of the right factor
becomes g'(eta_R(a)|_{r=r1}, r2), since the middle tensor identifies the
right A-action on the left factor with the left A-action on the right one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactalg import LOC3, QQ, Loc3, MultiPoly, PolyRing
from .linalg import det_generic, nullspace

A_GENS = ("a2", "a4", "a6")
A_WEIGHTS = (2, 4, 6)

ATILDE = PolyRing(A_GENS, A_WEIGHTS, LOC3)
GAMMA = PolyRing(A_GENS + ("r",), A_WEIGHTS + (2,), LOC3)
GAMMA2 = PolyRing(A_GENS + ("r1", "r2"), A_WEIGHTS + (2, 2), LOC3)
GAMMA3 = PolyRing(A_GENS + ("r1", "r2", "r3"), A_WEIGHTS + (2, 2, 2), LOC3)


def _g(ring: PolyRing, name: str) -> MultiPoly:
    return ring.gen(name)


def eta_r_images(r: MultiPoly) -> dict:
    """Images of a2, a4, a6 under the right unit, with r given."""
    ring = r.ring
    a2, a4, a6 = (_g(ring, n) for n in A_GENS)
    return {
        "a2": a2 + 3 * r,
        "a4": a4 + 2 * r * a2 + 3 * r * r,
        "a6": a6 + r * a4 + r * r * a2 + r * r * r,
    }


def to_gamma(p: MultiPoly) -> MultiPoly:
    return p.change_ring(GAMMA)


def eta_l(p: MultiPoly) -> MultiPoly:
    return to_gamma(p)


def eta_r(p: MultiPoly) -> MultiPoly:
    """Right unit A -> Gamma."""
    if p.used_gens() - set(A_GENS):
        raise ValueError("eta_R is defined on A only")
    images = eta_r_images(GAMMA.gen("r"))
    return p.change_ring(GAMMA).evaluate(images, one=GAMMA.one())


def epsilon(g: MultiPoly) -> MultiPoly:
    """Counit r -> 0, landing in A."""
    imgs = {n: ATILDE.gen(n) for n in A_GENS}
    imgs["r"] = ATILDE.zero()
    return g.change_ring(GAMMA).evaluate(imgs, one=ATILDE.one())


def conj(g: MultiPoly) -> MultiPoly:
    """Conjugation: r -> -r, a_i -> eta_R(a_i)."""
    r = GAMMA.gen("r")
    imgs = eta_r_images(r)
    imgs["r"] = -r
    return g.change_ring(GAMMA).evaluate(imgs, one=GAMMA.one())


def left(g: MultiPoly) -> MultiPoly:
    """g (x) 1 in A[r1, r2]."""
    return g.change_ring(GAMMA, {}).change_ring(GAMMA2, {"r": "r1"})


def right(g: MultiPoly) -> MultiPoly:
    """1 (x) g in A[r1, r2]."""
    imgs = eta_r_images(GAMMA2.gen("r1"))
    imgs["r"] = GAMMA2.gen("r2")
    return g.change_ring(GAMMA).evaluate(imgs, one=GAMMA2.one())


def psi(g: MultiPoly) -> MultiPoly:
    """Comultiplication: r -> r (x) 1 + 1 (x) r."""
    imgs = {n: GAMMA2.gen(n) for n in A_GENS}
    imgs["r"] = GAMMA2.gen("r1") + GAMMA2.gen("r2")
    return g.change_ring(GAMMA).evaluate(imgs, one=GAMMA2.one())


def eps_left(x: MultiPoly) -> MultiPoly:
    """(epsilon (x) id): A[r1, r2] -> Gamma."""
    imgs = {n: GAMMA.gen(n) for n in A_GENS}
    imgs.update({"r1": GAMMA.zero(), "r2": GAMMA.gen("r")})
    return x.evaluate(imgs, one=GAMMA.one())


def eps_right(x: MultiPoly) -> MultiPoly:
    """(id (x) epsilon): A[r1, r2] -> Gamma."""
    imgs = {n: GAMMA.gen(n) for n in A_GENS}
    imgs.update({"r1": GAMMA.gen("r"), "r2": GAMMA.zero()})
    return x.evaluate(imgs, one=GAMMA.one())


def psi_left(x: MultiPoly) -> MultiPoly:
    """(psi (x) id): A[r1, r2] -> A[r1, r2, r3]."""
    g = GAMMA3.gens_dict()
    imgs = {n: g[n] for n in A_GENS}
    imgs.update({"r1": g["r1"] + g["r2"], "r2": g["r3"]})
    return x.evaluate(imgs, one=GAMMA3.one())


def psi_right(x: MultiPoly) -> MultiPoly:
    """(id (x) psi): A[r1, r2] -> A[r1, r2, r3]."""
    g = GAMMA3.gens_dict()
    imgs = {n: g[n] for n in A_GENS}
    imgs.update({"r1": g["r1"], "r2": g["r2"] + g["r3"]})
    return x.evaluate(imgs, one=GAMMA3.one())


@dataclass
class Certificate:
    check: str
    results: dict = field(default_factory=dict)

    def record(self, name: str, ok: bool) -> None:
        self.results[name] = bool(ok)

    @property
    def ok(self) -> bool:
        return bool(self.results) and all(self.results.values())

    def failures(self) -> list:
        return [k for k, v in self.results.items() if not v]


def axioms_check(samples: Sequence[MultiPoly] = ()) -> Certificate:
    """Cogroupoid identities on generators (and on optional samples in Gamma)."""
    cert = Certificate("hopf-axioms")
    r = GAMMA.gen("r")
    a_gens = [ATILDE.gen(n) for n in A_GENS]
    gamma_elems = [r] + [to_gamma(a) for a in a_gens] + [to_gamma(s) if s.ring != GAMMA else s for s in samples]

    for a in a_gens:
        n = a.used_gens().pop()
        cert.record(f"eps(eta_L({n}))={n}", epsilon(eta_l(a)) == a)
        cert.record(f"eps(eta_R({n}))={n}", epsilon(eta_r(a)) == a)
        cert.record(f"c(eta_L({n}))=eta_R({n})", conj(eta_l(a)) == eta_r(a))
        cert.record(f"c(eta_R({n}))={n}", conj(eta_r(a)) == eta_l(a))
        # psi is a map of A-bimodules
        cert.record(f"psi(eta_L({n}))=eta_L({n})(x)1", psi(eta_l(a)) == left(eta_l(a)))
        cert.record(f"psi(eta_R({n}))=1(x)eta_R({n})", psi(eta_r(a)) == right(eta_r(a)))
    cert.record("psi(r)=r(x)1+1(x)r", psi(r) == left(r) + right(r))
    for i, g in enumerate(gamma_elems):
        tag = "r" if i == 0 else f"elem{i}"
        cert.record(f"counit-left[{tag}]", eps_left(psi(g)) == g)
        cert.record(f"counit-right[{tag}]", eps_right(psi(g)) == g)
        cert.record(f"coassoc[{tag}]", psi_left(psi(g)) == psi_right(psi(g)))
        cert.record(f"c∘c=id[{tag}]", conj(conj(g)) == g)
    # antipode on the generator r: mu(c (x) id)psi(r) = 0 = mu(id (x) c)psi(r)
    cert.record("antipode[r]", conj(r) + r == GAMMA.zero())
    return cert


# ---------------------------------------------------------------------------
# comodules


class ComoduleError(ValueError):
    pass


@dataclass(frozen=True)
class Comodule:
    """Free graded comodule; ``coaction[i][j]`` is the coefficient of
    basis_i in psi(basis_j)."""

    names: tuple
    degrees: tuple
    coaction: tuple

    @classmethod
    def build(cls, names, degrees, matrix) -> "Comodule":
        mat = tuple(tuple(to_gamma(x) if isinstance(x, MultiPoly) else GAMMA.const(x) for x in row) for row in matrix)
        if len(names) != len(degrees) or len(mat) != len(names) or any(len(row) != len(names) for row in mat):
            raise ComoduleError("basis and coaction sizes disagree")
        return cls(tuple(names), tuple(degrees), mat)

    @property
    def rank(self) -> int:
        return len(self.names)

    def psi_of(self, j: int) -> list:
        return [(self.coaction[i][j], self.names[i]) for i in range(self.rank) if self.coaction[i][j]]

    def shifted(self, k: int, suffix: str | None = None) -> "Comodule":
        """M[k]: every degree raised by k."""
        tag = suffix if suffix is not None else f"[{k}]"
        return Comodule(tuple(n + tag for n in self.names), tuple(d + k for d in self.degrees), self.coaction)

    def to_json(self) -> dict:
        return {
            "basis": [{"name": n, "degree": d} for n, d in zip(self.names, self.degrees)],
            "coaction": [[str(x) for x in row] for row in self.coaction],
        }

    # -- checks -----------------------------------------------------------

    def counit_ok(self) -> bool:
        n = self.rank
        return all(
            epsilon(self.coaction[i][j]) == (ATILDE.one() if i == j else ATILDE.zero())
            for i in range(n)
            for j in range(n)
        )

    def coassociativity_ok(self) -> bool:
        n = self.rank
        lefts = [[left(x) for x in row] for row in self.coaction]
        rights = [[right(x) for x in row] for row in self.coaction]
        for k in range(n):
            for j in range(n):
                lhs = psi(self.coaction[k][j])
                rhs = GAMMA2.zero()
                for i in range(n):
                    if self.coaction[i][j] and self.coaction[k][i]:
                        rhs = rhs + lefts[i][j] * rights[k][i]
                if lhs != rhs:
                    return False
        return True

    def homogeneity_ok(self) -> bool:
        for i in range(self.rank):
            for j in range(self.rank):
                x = self.coaction[i][j]
                if x and x.degrees() != {self.degrees[j] - self.degrees[i]}:
                    return False
        return True

    def check(self) -> Certificate:
        cert = Certificate("comodule")
        cert.record("counit", self.counit_ok())
        cert.record("coassociativity", self.coassociativity_ok())
        cert.record("homogeneity", self.homogeneity_ok())
        return cert


def trivial_comodule(name: str = "1", degree: int = 0) -> Comodule:
    return Comodule.build([name], [degree], [[1]])


def direct_sum(*mods: Comodule) -> Comodule:
    names, degrees = [], []
    for m in mods:
        names += m.names
        degrees += m.degrees
    n = len(names)
    mat = [[GAMMA.zero()] * n for _ in range(n)]
    off = 0
    for m in mods:
        for i in range(m.rank):
            for j in range(m.rank):
                mat[off + i][off + j] = m.coaction[i][j]
        off += m.rank
    return Comodule(tuple(names), tuple(degrees), tuple(tuple(r) for r in mat))


def extended_power_comodule(n: int = 3, prefix: str = "w") -> Comodule:
    """Gamma (x)_A A[x]/(monic cubic) with basis 1, x, ..., x^(n-1).

    The coaction sends x to x (x) 1 + r: psi(x^j) = sum_i binom(j, i) r^(j-i) (x) x^i.
    Since j < n no reduction by the cubic relation is needed.
    """
    r = GAMMA.gen("r")
    mat = [[GAMMA.const(math.comb(j, i)) * r ** (j - i) if i <= j else GAMMA.zero() for j in range(n)] for i in range(n)]
    return Comodule.build([f"{prefix}{i + 1}" for i in range(n)], [2 * i for i in range(n)], mat)


def mf12_comodule() -> Comodule:
    return extended_power_comodule(3, "w")


def dual_comodule(M: Comodule) -> Comodule:
    """gamma*_ij = c(gamma_ji); degrees negated."""
    n = M.rank
    mat = [[conj(M.coaction[j][i]) for j in range(n)] for i in range(n)]
    return Comodule.build([f"{x}*" for x in M.names], [-d for d in M.degrees], mat)


def mf12_to_dual_map() -> list:
    """w1 -> w3*, w2 -> -1/2 w2*, w3 -> w1* as a matrix (rows: dual basis)."""
    h = Fraction(-1, 2)
    return [[0, 0, 1], [0, h, 0], [1, 0, 0]]


@dataclass
class MapCertificate:
    commutes: bool
    homogeneous: bool
    invertible: bool
    determinant: MultiPoly | None
    mismatches: list

    @property
    def ok(self) -> bool:
        return self.commutes and self.homogeneous

    def to_json(self) -> dict:
        return {
            "commutes": self.commutes,
            "homogeneous": self.homogeneous,
            "invertible": self.invertible,
            "determinant": None if self.determinant is None else str(self.determinant),
            "mismatches": self.mismatches,
        }


def _as_a(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x.change_ring(ATILDE)
    return ATILDE.const(x)


def comodule_map_check(F, M: Comodule, N: Comodule, shift: int = 0) -> MapCertificate:
    """Check that F (rows indexed by N's basis, columns by M's) is a map of
    comodules raising degrees by ``shift``: Gamma_N F = eta_R(F) Gamma_M."""
    F = [[_as_a(x) for x in row] for row in F]
    if len(F) != N.rank or any(len(row) != M.rank for row in F):
        raise ComoduleError("map matrix has the wrong shape")
    homogeneous = all(
        not F[i][j] or F[i][j].degrees() == {M.degrees[j] + shift - N.degrees[i]}
        for i in range(N.rank)
        for j in range(M.rank)
    )
    FL = [[eta_l(x) for x in row] for row in F]
    FR = [[eta_r(x) for x in row] for row in F]
    mismatches = []
    for k in range(N.rank):
        for j in range(M.rank):
            lhs = GAMMA.zero()
            for i in range(N.rank):
                if N.coaction[k][i] and FL[i][j]:
                    lhs = lhs + N.coaction[k][i] * FL[i][j]
            rhs = GAMMA.zero()
            for l in range(M.rank):
                if FR[k][l] and M.coaction[l][j]:
                    rhs = rhs + FR[k][l] * M.coaction[l][j]
            if lhs != rhs:
                mismatches.append({"row": N.names[k], "col": M.names[j], "lhs": str(lhs), "rhs": str(rhs)})
    determinant = None
    invertible = False
    if N.rank == M.rank:
        determinant = det_generic(F, ATILDE.zero(), ATILDE.one())
        invertible = determinant.is_constant() and bool(determinant) and determinant.constant_coeff().is_unit()
    return MapCertificate(not mismatches, homogeneous, invertible, determinant, mismatches)


def solve_comodule_maps(M: Comodule, N: Comodule, shift: int = 0) -> list:
    """A Q-basis of all homogeneous comodule maps M -> N of the given shift
    whose entries are polynomials in a2, a4, a6 (each map as a matrix)."""
    unknowns = []  # (i, j, exponent)
    for i in range(N.rank):
        for j in range(M.rank):
            d = M.degrees[j] + shift - N.degrees[i]
            for e in ATILDE.monomials_of_degree(d):
                unknowns.append((i, j, e))
    if not unknowns:
        return []
    columns = []
    for (i, j, e) in unknowns:
        mono = ATILDE.monomial(e)
        FL, FR = eta_l(mono), eta_r(mono)
        col = {}
        for k in range(N.rank):
            for jj in range(M.rank):
                val = GAMMA.zero()
                if jj == j and N.coaction[k][i]:
                    val = val + N.coaction[k][i] * FL
                if k == i and M.coaction[j][jj]:
                    val = val - FR * M.coaction[j][jj]
                for m, c in val.terms.items():
                    col[(k, jj, m)] = Fraction(c.q)
        columns.append(col)
    keys = sorted({key for col in columns for key in col})
    rows = [[col.get(key, Fraction(0)) for col in columns] for key in keys]
    kernel = nullspace(rows, QQ, ncols=len(unknowns))
    maps = []
    for v in kernel:
        # clear denominators divisible by 3 so the entries are 3-local
        k = max((_v3(Fraction(x).denominator) for x in v), default=0)
        v = [x * 3**k for x in v]
        F = [[ATILDE.zero() for _ in range(M.rank)] for _ in range(N.rank)]
        for coeff, (i, j, e) in zip(v, unknowns):
            if coeff:
                F[i][j] = F[i][j] + ATILDE.monomial(e, Loc3(coeff))
        maps.append(F)
    return maps


def _v3(n: int) -> int:
    k = 0
    while n % 3 == 0:
        n //= 3
        k += 1
    return k


def find_isomorphism(M: Comodule, N: Comodule, shift: int = 0):
    """An invertible comodule map among the solution basis (or their sum)."""
    maps = solve_comodule_maps(M, N, shift)
    candidates = list(maps)
    if len(maps) > 1:
        total = [[sum((F[i][j] for F in maps), ATILDE.zero()) for j in range(M.rank)] for i in range(N.rank)]
        candidates.append(total)
    for F in candidates:
        cert = comodule_map_check(F, M, N, shift)
        if cert.ok and cert.invertible:
            return F, cert
    return None, None
