"""Weierstrass equations, coordinate changes and Tate normal forms.

Coefficients may live in any commutative ring whose elements support
``+ - *`` with integers: :class:`MultiPoly`, :class:`QSeries`,
``Fraction``.  Division only ever happens by a single denominator, which
goes through :func:`divide`.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Any, NamedTuple

from .exactalg import MF7, QQ, MultiPoly, NotAUnitError, PolyRing
from .qseries import QSeries


def divide(a, b):
    """a / b where b is a unit of the ambient ring."""
    if isinstance(b, QSeries):
        return a * b.invert()
    if isinstance(b, MultiPoly):
        if not b.is_constant() or not b:
            raise NotAUnitError(f"{b} is not a unit in {b.ring!r}")
        return a / b.constant_coeff()
    if b == 0:
        raise NotAUnitError("division by zero")
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / Fraction(b)
    return a * (Fraction(1) / b) if isinstance(b, (int, Fraction)) else a / b


def inverse(u):
    if isinstance(u, QSeries):
        return u.invert()
    if isinstance(u, MultiPoly):
        return divide(u.ring.one(), u)
    return divide(Fraction(1), u)


@dataclass(frozen=True)
class WeierstrassCoeffs:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Any
    a2: Any
    a3: Any
    a4: Any
    a6: Any

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def map(self, fn) -> "WeierstrassCoeffs":
        return WeierstrassCoeffs(*(fn(x) for x in self.as_tuple()))

    def equation_residual(self, x, y):
        """LHS - RHS of the Weierstrass equation at (x, y)."""
        return y * y + self.a1 * x * y + self.a3 * y - (x * x * x + self.a2 * x * x + self.a4 * x + self.a6)

    def invariants(self) -> "Invariants":
        return c4_c6_delta(self)


@dataclass(frozen=True)
class TransformParams:
    """x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.

    ``uinv`` may be passed instead of being computed from ``u``; this is
    how a formal inverse (an independent generator) is used over
    polynomial rings.
    """

    r: Any = 0
    s: Any = 0
    t: Any = 0
    u: Any = 1
    uinv: Any = None

    def u_inverse(self):
        return self.uinv if self.uinv is not None else inverse(self.u)


class Invariants(NamedTuple):
    b2: Any
    b4: Any
    b6: Any
    b8: Any
    c4: Any
    c6: Any
    delta: Any


def transform(W: WeierstrassCoeffs, T: TransformParams) -> WeierstrassCoeffs:
    a1, a2, a3, a4, a6 = W.as_tuple()
    r, s, t = T.r, T.s, T.t
    v = T.u_inverse()
    v2 = v * v
    v3 = v2 * v
    v4 = v2 * v2
    v6 = v3 * v3
    return WeierstrassCoeffs(
        v * (a1 + 2 * s),
        v2 * (a2 - s * a1 + 3 * r - s * s),
        v3 * (a3 + r * a1 + 2 * t),
        v4 * (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t),
        v6 * (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1),
    )


def compose(T1: TransformParams, T2: TransformParams) -> TransformParams:
    """Parameters of ``transform(transform(W, T1), T2)`` as one change."""
    u1, u2 = T1.u, T2.u
    u1sq = u1 * u1
    uinv = None
    if T1.uinv is not None or T2.uinv is not None:
        uinv = T1.u_inverse() * T2.u_inverse()
    return TransformParams(
        r=T1.r + u1sq * T2.r,
        s=T1.s + u1 * T2.s,
        t=T1.t + u1sq * u1 * T2.t + T1.s * u1sq * T2.r,
        u=u1 * u2,
        uinv=uinv,
    )


def c4_c6_delta(W: WeierstrassCoeffs) -> Invariants:
    a1, a2, a3, a4, a6 = W.as_tuple()
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6
    delta = -(b2 * b2 * b8) - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return Invariants(b2, b4, b6, b8, c4, c6, delta)


class TateNormalForm(NamedTuple):
    s_prime: Any
    alpha1: Any
    alpha2: Any
    alpha3: Any


def tate_normal_from_point(W: WeierstrassCoeffs, x0, y0) -> TateNormalForm:
    """Move (x0, y0) to the origin and kill a4, a6.

    The result describes y^2 + alpha1 xy + alpha3 y = x^3 + alpha2 x^2.
    """
    a1, a2, a3, a4, _ = W.as_tuple()
    denom = a3 + a1 * x0 + 2 * y0
    s_prime = divide(a4 + 2 * a2 * x0 - a1 * y0 + 3 * x0 * x0, denom)
    alpha1 = divide(a1 * a3 + 2 * a4 + (a1 * a1 + 4 * a2) * x0 + 6 * x0 * x0, denom)
    alpha2 = a2 + 3 * x0 - a1 * s_prime - s_prime * s_prime
    return TateNormalForm(s_prime, alpha1, alpha2, denom)


def tate_normal_params(x0, y0, s_prime) -> TransformParams:
    """The change of coordinates realising :func:`tate_normal_from_point`:
    translate (x0, y0) to the origin, then shear by s'."""
    return compose(TransformParams(r=x0, t=y0), TransformParams(s=s_prime))


# ---------------------------------------------------------------------------
# level-7 specifics


def theorem_alphas(ring: PolyRing = MF7):
    """alpha1 = z1 - z2 + z3, alpha2 = z1 z2 + z1 z3, alpha3 = z1 z3^2."""
    z1, z2, z3 = ring.gen("z1"), ring.gen("z2"), ring.gen("z3")
    return z1 - z2 + z3, z1 * z2 + z1 * z3, z1 * z3 * z3


def kappa_images(ring: PolyRing = MF7) -> tuple:
    """Images of abar2, abar4, abar6 after completing the square."""
    a1, a2, a3 = theorem_alphas(ring)
    quarter, half = Fraction(1, 4), Fraction(1, 2)
    return (a1 * a1 * quarter + a2, a1 * a3 * half, a3 * a3 * quarter)


def kappa_via_transform(ring: PolyRing = MF7) -> WeierstrassCoeffs:
    """Transform the Tate normal form with s = -alpha1/2, t = -alpha3/2."""
    a1, a2, a3 = theorem_alphas(ring)
    zero = ring.zero()
    tnf = WeierstrassCoeffs(a1, a2, a3, zero, zero)
    half = Fraction(1, 2)
    return transform(tnf, TransformParams(r=zero, s=-(a1 * half), t=-(a3 * half), u=ring.one()))


def kappa_curve(ring: PolyRing = MF7) -> WeierstrassCoeffs:
    k2, k4, k6 = kappa_images(ring)
    zero = ring.zero()
    return WeierstrassCoeffs(zero, k2, zero, k4, k6)


LEVEL1 = PolyRing(("c4", "c6", "Delta"), (4, 6, 12), QQ)


def level1_image(m: MultiPoly, ring: PolyRing = MF7) -> MultiPoly:
    """Image of a polynomial in c4, c6, Delta under the map to level 7."""
    if m.ring.gens != LEVEL1.gens:
        m = m.change_ring(LEVEL1)
    inv = c4_c6_delta(kappa_curve(ring))
    return m.evaluate({"c4": inv.c4, "c6": inv.c6, "Delta": inv.delta}, one=ring.one())


# ---------------------------------------------------------------------------
# generic coefficient ring


GENERIC = PolyRing(("a1", "a2", "a3", "a4", "a6"), (1, 2, 3, 4, 6), QQ)


def generic_coeffs(ring: PolyRing = GENERIC) -> WeierstrassCoeffs:
    return WeierstrassCoeffs(*(ring.gen(g) for g in ("a1", "a2", "a3", "a4", "a6")))
