import math
from fractions import Fraction

import pytest
from conftest import small_fractions
from hypothesis import given, settings
from hypothesis import strategies as st

from mf7cert import invariants7 as inv
from mf7cert.exactalg import MF7, MultiPoly
from mf7cert.linalg import LinearSystemError
from mf7cert.parsing import parse_expr
from mf7cert.weierstrass import kappa_images

R = inv.R


def P(text):
    return parse_expr(text, R)


@st.composite
def r_elements(draw, max_deg=8, homogeneous=True):
    deg = draw(st.integers(0, max_deg))
    monos = R.monomials_of_degree(deg)
    picks = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=4))
    return MultiPoly(R, {m: draw(small_fractions) for m in picks})


def test_lambda_a2_display():
    assert inv.lambda_images()[0] == P("1/4*(z1-z2+z3)^2 - z2*z3 - 3*r")


def test_lambda_at_r_zero_is_kappa():
    zero_r = {**R.gens_dict(), "r": R.zero()}
    for l, k in zip(inv.lambda_images(), kappa_images()):
        assert l.evaluate(zero_r, one=R.one()) == k.change_ring(R)


def test_right_unit_consistency():
    assert inv.right_unit_on_lambda() == tuple(k.change_ring(R) for k in kappa_images())


def test_lambda_degrees():
    assert [l.degree() for l in inv.lambda_images()] == [2, 4, 6]
    assert all(l.is_homogeneous() for l in inv.lambda_images())


def test_tau_fixes_lambda_a2():
    l2 = inv.lambda_images()[0]
    assert inv.tau_on_R(l2) == l2


def test_tau_order_six_on_r():
    r = R.gen("r")
    assert inv.tau_on_R(r, 6) == r
    assert inv.tau_on_R(r, 3) == r  # r + sigma2
    assert inv.tau_on_R(r) != r


def test_tau_fixes_n4_and_n6():
    assert inv.tau_on_R(inv.n4()) == inv.n4()
    assert inv.tau_on_R(inv.n6()) == inv.n6()


def test_n6_two_expressions():
    assert inv.n6() == inv.n6_expanded()


def test_basis48_certificate():
    c = inv.basis48_certificate()
    assert c.dimension == 48
    assert c.basis_rank == 48 and c.independent
    assert c.ok


@pytest.mark.parametrize("drop", ["1", "s1*z3", "s3*r", "s1^4*z2*r^2"])
def test_basis48_negative_control(drop):
    c = inv.basis48_certificate(drop=drop)
    assert c.dropped_rank == 47 and not c.dropped_spans


def test_basis_size_and_names():
    assert len(inv.BASIS48) == 48
    assert len(inv.BASIS_BY_NAME) == 48
    assert [b.name for b in inv.core_basis()][:4] == ["1", "s1", "z2", "z3"]


def test_expand_one():
    e = inv.expand_in_basis48(R.one())
    assert e.coords == {"1": inv.A_Q.one()}


def test_expand_n4_matches_display():
    e = inv.expand_in_basis48(inv.n4())
    assert e.as_poly() == inv.reference_expansion("n4")


@pytest.mark.parametrize("name", inv.S_DISPLAY_ORDER)
def test_expansions_match_reference(name):
    cmp = inv.compare_with_reference(name)
    assert cmp.matches, cmp.to_json()


def test_comparison_reports_differences():
    wrong = dict(inv.REFERENCE_EXPANSIONS)
    try:
        inv.REFERENCE_EXPANSIONS["n4"] = wrong["n4"].replace("12*a4", "13*a4")
        cmp = inv.compare_with_reference("n4")
    finally:
        inv.REFERENCE_EXPANSIONS["n4"] = wrong["n4"]
    assert not cmp.matches
    assert cmp.differing_terms[0][0] == "a4"


@settings(max_examples=20, deadline=None)
@given(r_elements())
def test_expansion_round_trip(x):
    e = inv.expand_in_basis48(x)
    assert e.recombine() == x


def test_expansion_needs_homogeneous_input():
    with pytest.raises(ValueError):
        inv.expand_in_basis48(P("1 + r"))


def test_s_basis_degrees():
    assert [inv.s_degrees()[n] for n in inv.S_DISPLAY_ORDER] == [0, 2, 4, 4, 6, 6, 8, 6]


def test_s_expansions_are_3_local():
    assert all(e.loc3_integral for e in inv.s_expansions().values())


def test_rational_minor():
    c2, _ = inv.minor_certificates()
    assert c2.nonzero
    assert all(p["matches"] for p in c2.pivot_report.values())


@pytest.mark.parametrize(
    "row,col,value",
    [
        ("s1^2*r", "n4", Fraction(4)),
        ("s1^4*r", "n6", Fraction(-33, 32)),
        ("s1*z2*r^2", "n6", Fraction(-21, 4)),
        ("z2*z3*r^2", "n6", Fraction(3, 2)),
        ("s1^4*r^2", "s1^2*n6", Fraction(5933, 3488)),
        ("s1^4*r", "s1^2*n4", Fraction(-8)),
        ("s1^4*r", "s3^2", Fraction(81, 64)),
        ("s1*z2*r^2", "s3^2", Fraction(69, 8)),
        ("z2*z3*r^2", "s3^2", Fraction(-3, 4)),
    ],
)
def test_rational_minor_entries(row, col, value):
    assert inv.s_expansions()[col].coefficient(row) == inv.A_Q.const(value)


@pytest.mark.parametrize(
    "row,col,text",
    [
        ("s1^2*r", "n6", "67/4*a2"),
        ("s1^2*r", "s1^2*n4", "168*a2"),
        ("s1^2*r", "s3^2", "-179/8*a2"),
        ("s1^3*z3", "n4", "1/2"),
        ("s1^3*z3", "n6", "3/4*a2"),
        ("s1^3*z3", "s1^2*n4", "8*a2"),
        ("s1^3*z3", "s3^2", "-11/8*a2"),
        ("s1^3*z3*r", "n6", "13/4"),
        ("s1^3*z3*r", "s1^2*n4", "24"),
        ("s1^3*z3*r", "s3^2", "-33/8"),
    ],
)
def test_mod3_minor_entries(row, col, text):
    assert inv.s_expansions()[col].coefficient(row) == parse_expr(text, inv.A_Q)


def test_mod3_minor_is_unit_times_a2():
    _, c5 = inv.minor_certificates()
    assert c5.unit_times_a2
    (m, c), = c5.determinant.terms.items()
    assert m == (1, 0, 0)
    assert c.numerator % 3 and c.denominator % 3


def test_s_basis_certificate():
    c = inv.s_basis_certificate()
    assert c.ok
    assert c.reference_discrepancies == []


def test_transfer_of_one():
    assert inv.transfer(MF7.one()) == MF7.const(6)


def test_transfer_identity():
    assert inv.transfer(parse_expr("1/2*z1^3*z2^2*z3")) == parse_expr("sigma3*p")


@settings(max_examples=30, deadline=None)
@given(r_elements(max_deg=5))
def test_transfer_is_invariant(x):
    t = inv.transfer(x)
    assert inv.tau_on_R(t) == t


@pytest.mark.parametrize("name", inv.S_NAMES)
def test_coaction_table(name):
    assert inv.coaction_matches_table()[name]


def test_coaction_of_n6():
    M = inv.coaction_on_S()
    col = dict((n, c) for c, n in M.psi_of(M.names.index("n6")))
    G = inv.GAMMA
    assert col == {"n6": G.one(), "n4": 2 * G.gen("r"), "s1^2": G.gen("r") ** 2}


def test_coaction_comodule_axioms():
    assert inv.coaction_on_S().check().ok


def test_coaction_outside_span_is_an_error():
    with pytest.raises(LinearSystemError):
        inv._solve_in_span(P("r^2"), [("1", R.one(), 0)], 4)


def test_splitting():
    c = inv.splitting_iso_check()
    assert all(c.source_checks.values()) and all(c.target_checks.values())
    assert c.map_certificate.commutes and c.map_certificate.invertible
    assert c.degrees_match
    assert c.assignment["w2[2]"] == "n4" and c.assignment["w3[2]"] == "n6"
    assert c.assignment["1[6]"] == "s3^2"


def _points_of_exact_order(n):
    return sum(1 for a in range(n) for b in range(n) if n // math.gcd(n, math.gcd(a, b)) == n)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 7, 9, 12, 15])
def test_degree_formula_counts_points(n):
    d, per_unit = inv.degree_formula(n)
    assert d == _points_of_exact_order(n)
    phi = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    assert per_unit == Fraction(d, phi)


@pytest.mark.parametrize("n,expected", [(7, (48, 8)), (2, (3, 3)), (12, (96, 24))])
def test_degree_formula_examples(n, expected):
    assert inv.degree_formula(n) == expected
