"""Weight-one Eisenstein series for Gamma1(7), the integral basis z1, z2, z3,
the action of (Z/7)^x and the invariant forms."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactalg import MF7, QQ, QZ6, ZETA6, CycQ6, MultiPoly, PolyRing, mf7_gens
from .linalg import det, inverse, matmul, nullspace, rank
from .qseries import QSeries

GENERATOR = 3  # t = [3] generates (Z/7)^x


def _discrete_log() -> dict:
    out, x = {}, 1
    for j in range(6):
        out[x] = j
        x = x * GENERATOR % 7
    return out


DLOG = _discrete_log()  # residue -> exponent of t


@dataclass(frozen=True)
class Character:
    """A character of (Z/7)^x, fixed by its value at t = [3]."""

    name: str
    at_t: CycQ6

    def __call__(self, n: int) -> CycQ6:
        n %= 7
        if n == 0:
            return CycQ6(0)
        return self.at_t ** DLOG[n]

    def values(self) -> list:
        return [self(n) for n in range(1, 7)]

    def is_odd(self) -> bool:
        return self(6) == -1


PHI1 = Character("phi1", ZETA6)
PHI2 = Character("phi2", CycQ6(-1))
PHI3 = Character("phi3", 1 - ZETA6)
CHARACTERS = (PHI1, PHI2, PHI3)


def weighted_sum(phi: Character) -> CycQ6:
    """sum_{n=1}^{6} n * phi(n)."""
    return sum((phi(n) * n for n in range(1, 7)), CycQ6(0))


def eisenstein_qexp(phi: Character, prec: int) -> QSeries:
    if not phi.is_odd():
        raise ValueError(f"{phi.name} is not odd")
    coeffs = [weighted_sum(phi) * Fraction(-1, 14)]
    for k in range(1, prec):
        coeffs.append(sum((phi(l) for l in range(1, k + 1) if k % l == 0), CycQ6(0)))
    return QSeries(QZ6, coeffs, 0, prec)


# z_i = sum_j B[i][j] E(phi_j)
_third = Fraction(1, 3)
BASE_CHANGE = [
    [(3 * ZETA6 - 1) * _third, CycQ6(Fraction(2, 3)), (-3 * ZETA6 + 2) * _third],
    [(-ZETA6 - 2) * _third, CycQ6(Fraction(2, 3)), (ZETA6 - 3) * _third],
    [(-2 * ZETA6 + 3) * _third, CycQ6(Fraction(2, 3)), (2 * ZETA6 + 1) * _third],
]


def base_change_det() -> CycQ6:
    return det(BASE_CHANGE, QZ6)


def summand_table(row: int = 0) -> list:
    """Per-divisor contribution to c_k(z_{row+1}) by the residue of the divisor."""
    out = []
    for l in range(7):
        v = sum((BASE_CHANGE[row][j] * CHARACTERS[j](l) for j in range(3)), CycQ6(0))
        out.append(v)
    return out


class IntegralityFailure(ArithmeticError):
    pass


@dataclass(frozen=True)
class ZBasis:
    prec: int
    z1: QSeries
    z2: QSeries
    z3: QSeries

    def as_tuple(self):
        return (self.z1, self.z2, self.z3)


@lru_cache(maxsize=32)
def z_basis(prec: int) -> ZBasis:
    if prec < 3:
        raise ValueError("precision must be at least 3")
    eis = [eisenstein_qexp(phi, prec) for phi in CHARACTERS]
    zs = []
    for i, row in enumerate(BASE_CHANGE):
        s = QSeries.zero(QZ6, prec)
        for b, e in zip(row, eis):
            s = s + e * b
        for n, c in s.items():
            if not c.is_rational() or c.a.denominator != 1:
                raise IntegralityFailure(f"z{i + 1}: coefficient {c} at q^{n} is not an integer")
        zs.append(s.map_coefficients(lambda c: c.a, QQ))
    return ZBasis(prec, *zs)


def z_basis_direct(prec: int) -> ZBasis:
    """z-series from the residue table of divisor contributions; a second
    route that never touches Q(zeta6) after the table is built."""
    tables = []
    for row in range(3):
        t = summand_table(row)
        if not all(c.is_rational() for c in t):
            raise IntegralityFailure("summand table is not rational")
        tables.append([c.a for c in t])
    consts = [sum((BASE_CHANGE[i][j] * weighted_sum(CHARACTERS[j]) for j in range(3)), CycQ6(0)) * Fraction(-1, 14) for i in range(3)]
    out = []
    for i in range(3):
        coeffs = [consts[i].a]
        for k in range(1, prec):
            coeffs.append(sum(tables[i][l % 7] for l in range(1, k + 1) if k % l == 0))
        out.append(QSeries(QQ, coeffs, 0, prec))
    return ZBasis(prec, *out)


def qexp_of_mf7(e: MultiPoly, prec: int) -> QSeries:
    """q-expansion of a polynomial in z1, z2, z3 (any ring with those gens)."""
    zb = z_basis(max(prec, 3))
    images = {"z1": zb.z1.truncate(prec), "z2": zb.z2.truncate(prec), "z3": zb.z3.truncate(prec)}
    foreign = e.used_gens() - set(images)
    if foreign:
        raise ValueError(f"cannot expand generators {sorted(foreign)}")
    imgs = {g: images.get(g, QSeries.zero(QQ, prec)) for g in e.ring.gens}
    return e.evaluate(imgs, one=QSeries.one(QQ, prec)).truncate(prec)


# ---------------------------------------------------------------------------
# the action


def tau_images(ring: PolyRing) -> dict:
    """t.z1 = -z3, t.z2 = -z1, t.z3 = -z2 (other generators fixed)."""
    g = ring.gens_dict()
    out = dict(g)
    out.update({"z1": -g["z3"], "z2": -g["z1"], "z3": -g["z2"]})
    return out


def action_tau(e: MultiPoly, times: int = 1) -> MultiPoly:
    images = tau_images(e.ring)
    for _ in range(times):
        e = e.evaluate(images, one=e.ring.one())
    return e


@dataclass
class ActionCertificate:
    matrix: list
    expected: list
    zeta_free: bool
    matches: bool
    determinant: CycQ6
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.zeta_free and self.matches


EXPECTED_ACTION = [[0, 0, -1], [-1, 0, 0], [0, -1, 0]]


def verify_action_via_eisenstein() -> ActionCertificate:
    """Conjugate diag(phi_j(t)) by the base change and read off t.z_i."""
    D = [[CHARACTERS[i].at_t if i == j else CycQ6(0) for j in range(3)] for i in range(3)]
    B = BASE_CHANGE
    M = matmul(matmul(B, D), inverse(B, QZ6))
    zeta_free = all(c.is_rational() for row in M for c in row)
    matches = all(M[i][j] == EXPECTED_ACTION[i][j] for i in range(3) for j in range(3))
    notes = [
        "convention t.z1=-z3, t.z2=-z1, t.z3=-z2; the opposite convention "
        "t.z1=-z2, t.z2=-z3, t.z3=-z1 is its inverse"
    ]
    return ActionCertificate(M, EXPECTED_ACTION, zeta_free, matches, det(B, QZ6), notes)


# ---------------------------------------------------------------------------
# invariants


def vector_of(e: MultiPoly, monos: Sequence[tuple]) -> list:
    index = {m: i for i, m in enumerate(monos)}
    v = [Fraction(0)] * len(monos)
    for m, c in e.terms.items():
        if m not in index:
            raise ValueError(f"monomial {m} outside the given list")
        v[index[m]] = Fraction(c)
    return v


def element_of(v: Sequence, monos: Sequence[tuple], ring: PolyRing = MF7) -> MultiPoly:
    return MultiPoly(ring, {m: c for m, c in zip(monos, v) if c})


def formula_exponents(k: int) -> list:
    """(a, b, eps) with a + 3b + 3eps = k, eps in {0, 1}, for even k."""
    if k % 2:
        return []
    out = []
    for eps in (0, 1):
        for b in range((k - 3 * eps) // 3 + 1):
            a = k - 3 * b - 3 * eps
            if a >= 0:
                out.append((a, b, eps))
    return out


def formula_element(a: int, b: int, eps: int) -> MultiPoly:
    _, _, _, s1, s3, p = mf7_gens()
    return s1**a * s3**b * p**eps


def _max_minor_gcd(rows: list) -> int:
    """gcd of all maximal minors of an integer matrix with full row rank."""
    r = len(rows)
    if r == 0:
        return 1
    g = 0
    for cols in itertools.combinations(range(len(rows[0])), r):
        d = det([[row[c] for c in cols] for row in rows], QQ)
        g = math.gcd(g, int(d))
        if g == 1:
            break
    return g


@dataclass
class InvariantBasis:
    degree: int
    basis: list  # brute-force Z-basis
    formula: list  # (exponents, element)
    span_match: bool
    integral: bool
    saturated: bool

    @property
    def ok(self) -> bool:
        return self.span_match and self.integral and self.saturated


def invariant_basis(k: int) -> InvariantBasis:
    if k < 0:
        raise ValueError("degree must be nonnegative")
    monos = MF7.monomials_of_degree(k)
    rows = []
    for m in monos:
        e = MF7.monomial(m)
        rows.append([a - b for a, b in zip(vector_of(action_tau(e), monos), vector_of(e, monos))])
    # columns of (tau - 1) are the rows above; kernel of the transpose
    cols = [list(c) for c in zip(*rows)]
    kernel = nullspace(cols, QQ, ncols=len(monos))
    integral = all(Fraction(x).denominator == 1 for v in kernel for x in v)
    if not integral:
        # clear denominators row by row; saturation is checked below
        kernel = [[x * math.lcm(*(Fraction(y).denominator for y in v)) for x in v] for v in kernel]
    basis = [element_of(v, monos) for v in kernel]

    formula = [(ex, formula_element(*ex)) for ex in formula_exponents(k)]
    fvecs = [vector_of(f, monos) for _, f in formula]
    span_match = (
        len(fvecs) == len(kernel)
        and all(action_tau(f) == f for _, f in formula)
        and rank(kernel + fvecs, QQ) == len(kernel)
    )
    saturated = span_match and _max_minor_gcd([[int(x) for x in v] for v in fvecs]) == 1
    return InvariantBasis(k, basis, formula, span_match, integral, saturated)


def independence_degree(k: int, prec: int | None = None) -> int:
    """Rank of the q-expansions of the degree-k normal monomials modulo q^prec."""
    prec = prec or 2 * k + 1
    rows = []
    for m in MF7.monomials_of_degree(k):
        s = qexp_of_mf7(MF7.monomial(m), prec)
        rows.append([s[i] for i in range(prec)])
    return rank(rows, QQ)
