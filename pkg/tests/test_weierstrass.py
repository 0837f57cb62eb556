from fractions import Fraction

import sympy
from conftest import small_fractions
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mf7cert import tate
from mf7cert.exactalg import MF7, QQ, PolyRing
from mf7cert.modforms7 import qexp_of_mf7
from mf7cert.parsing import parse_expr
from mf7cert.qseries import eta_product_delta
from mf7cert.weierstrass import (
    LEVEL1,
    TransformParams,
    WeierstrassCoeffs,
    c4_c6_delta,
    compose,
    generic_coeffs,
    kappa_curve,
    kappa_images,
    kappa_via_transform,
    level1_image,
    tate_normal_from_point,
    tate_normal_params,
    theorem_alphas,
    transform,
)

nonzero = small_fractions.filter(bool)
curves = st.builds(WeierstrassCoeffs, small_fractions, small_fractions, small_fractions, small_fractions, small_fractions)
params = st.builds(TransformParams, small_fractions, small_fractions, small_fractions, nonzero)


def _sympy_transform(W, T):
    """Substitute x = u^2 x' + r, y = u^3 y' + s u^2 x' + t and read off a_i'."""
    x, y = sympy.symbols("x y")
    a1, a2, a3, a4, a6 = (sympy.Rational(str(c)) for c in W.as_tuple())
    r, s, t, u = (sympy.Rational(str(c)) for c in (T.r, T.s, T.t, T.u))
    X = u**2 * x + r
    Y = u**3 * y + s * u**2 * x + t
    eq = sympy.expand((Y**2 + a1 * X * Y + a3 * Y - X**3 - a2 * X**2 - a4 * X - a6) / u**6)
    P = sympy.Poly(eq, x, y)
    # normalised so that y^2 - x^3 appear with coefficients 1 and -1
    return (
        Fraction(str(P.coeff_monomial(x * y))),
        Fraction(str(-P.coeff_monomial(x**2))),
        Fraction(str(P.coeff_monomial(y))),
        Fraction(str(-P.coeff_monomial(x))),
        Fraction(str(-P.coeff_monomial(1))),
    )


@settings(max_examples=20, deadline=None)
@given(curves, params)
def test_transform_matches_substitution(W, T):
    assert transform(W, T).as_tuple() == _sympy_transform(W, T)


@settings(max_examples=20, deadline=None)
@given(curves, params, params)
def test_composition(W, T1, T2):
    assert transform(transform(W, T1), T2) == transform(W, compose(T1, T2))


def test_identity_transform():
    W = generic_coeffs()
    assert transform(W, TransformParams()) == W


def test_moving_a_point_to_the_origin_kills_a6():
    ring = PolyRing(("a1", "a2", "a3", "a4", "x0", "y0"), (1, 2, 3, 4, 2, 3), QQ)
    g = ring.gens_dict()
    x0, y0 = g["x0"], g["y0"]
    a6 = y0 * y0 + g["a1"] * x0 * y0 + g["a3"] * y0 - x0**3 - g["a2"] * x0 * x0 - g["a4"] * x0
    W = WeierstrassCoeffs(g["a1"], g["a2"], g["a3"], g["a4"], a6)
    moved = transform(W, TransformParams(r=x0, t=y0))
    assert moved.a6.is_zero()


def test_zero_curve_invariants():
    inv = c4_c6_delta(WeierstrassCoeffs(0, 0, 0, 0, 0))
    assert (inv.c4, inv.c6, inv.delta) == (0, 0, 0)


def test_generic_discriminant_identity():
    inv = c4_c6_delta(generic_coeffs())
    assert 1728 * inv.delta == inv.c4**3 - inv.c6**2


def test_tate_curve_invariants():
    curve = tate.tate_coeffs(1, 20)
    inv = c4_c6_delta(curve.weierstrass())
    assert inv.delta.agrees_with(eta_product_delta(1, 20), 20)
    assert [int(inv.c4[i]) for i in range(3)] == [1, 240, 2160]


@settings(max_examples=30, deadline=None)
@given(small_fractions, nonzero, small_fractions, small_fractions)
def test_normal_form_at_origin(a1, a3, a2, a4):
    W = WeierstrassCoeffs(a1, a2, a3, a4, 0)
    nf = tate_normal_from_point(W, 0, 0)
    assert nf.s_prime == a4 / a3
    assert nf.alpha3 == a3


@settings(max_examples=30, deadline=None)
@given(curves, small_fractions, small_fractions)
def test_normal_form_transform_and_discriminant(W, x0, y0):
    # put (x0, y0) on the curve by adjusting a6
    a6 = y0 * y0 + W.a1 * x0 * y0 + W.a3 * y0 - x0**3 - W.a2 * x0 * x0 - W.a4 * x0
    W = WeierstrassCoeffs(W.a1, W.a2, W.a3, W.a4, a6)
    assume(W.a3 + W.a1 * x0 + 2 * y0 != 0)
    nf = tate_normal_from_point(W, x0, y0)
    moved = transform(W, tate_normal_params(x0, y0, nf.s_prime))
    assert moved.as_tuple() == (nf.alpha1, nf.alpha2, nf.alpha3, 0, 0)
    assert c4_c6_delta(moved).delta == c4_c6_delta(W).delta


def test_tate_point_gives_alpha_series():
    prec = 12
    general = tate.alpha_series_general(7, 1, 0, prec)
    special = tate.alpha_series(7, 1, 0, prec)
    assert all(a.agrees_with(b, prec) for a, b in zip(general, special))


def test_kappa_displays():
    k2, k4, k6 = kappa_images()
    assert k2 == parse_expr("1/4*(z1-z2+z3)^2 - z2*z3")
    assert k6 == parse_expr("1/4*z1^2*z3^4")
    assert k4 == parse_expr("1/2*(z1-z2+z3)*z1*z3^2")


def test_completing_the_square():
    W = kappa_via_transform()
    assert W.a1.is_zero() and W.a3.is_zero()
    assert W == kappa_curve()


def test_level1_image_of_delta():
    img = level1_image(parse_expr("Delta", LEVEL1))
    assert img == parse_expr("-sigma3^3*p - 8*sigma3^4")


def test_level1_image_of_one():
    assert level1_image(LEVEL1.one()) == MF7.one()


def test_level1_delta_q_expansion():
    img = level1_image(parse_expr("Delta", LEVEL1))
    assert qexp_of_mf7(img, 25).agrees_with(eta_product_delta(7, 25), 25)


def test_alphas_from_theorem():
    a1, a2, a3 = theorem_alphas()
    assert a1 == parse_expr("z1 - z2 + z3")
    assert a2 == parse_expr("z1*z2 + z1*z3")
    assert a3 == parse_expr("z1*z3^2")
