from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mf7cert.exactalg import Loc3, MultiPoly
from mf7cert.hopf import (
    ATILDE,
    GAMMA,
    GAMMA2,
    Comodule,
    ComoduleError,
    axioms_check,
    comodule_map_check,
    conj,
    direct_sum,
    dual_comodule,
    epsilon,
    eps_left,
    eps_right,
    eta_l,
    eta_r,
    find_isomorphism,
    left,
    mf12_to_dual_map,
    mf12_comodule,
    psi,
    psi_left,
    psi_right,
    right,
    trivial_comodule,
)
from mf7cert.parsing import parse_expr

loc3 = st.fractions(min_value=-9, max_value=9, max_denominator=8).filter(lambda q: q.denominator % 3)


@st.composite
def gamma_elems(draw, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(4))
        terms[e] = Loc3(draw(loc3))
    return MultiPoly(GAMMA, terms)


def G(text):
    return parse_expr(text, GAMMA)


def A(text):
    return parse_expr(text, ATILDE)


@pytest.mark.parametrize(
    "a,image",
    [("a2", "a2 + 3*r"), ("1", "1"), ("a2^2", "(a2 + 3*r)^2"), ("a4", "a4 + 2*r*a2 + 3*r^2")],
)
def test_right_unit(a, image):
    assert eta_r(A(a)) == G(image)


def test_counit_on_right_unit():
    assert epsilon(eta_r(A("a4"))) == A("a4")


def test_conjugate_of_right_unit():
    assert conj(eta_r(A("a2"))) == G("a2")


def test_coproduct_of_r():
    assert psi(G("r")) == parse_expr("r1 + r2", GAMMA2)
    assert psi(G("r")) == left(G("r")) + right(G("r"))


def test_axioms_certificate():
    cert = axioms_check([G("a2*r^2 + a6"), G("r^3 - a4*r")])
    assert cert.ok, cert.failures()


@settings(max_examples=40, deadline=None)
@given(gamma_elems())
def test_hopf_identities_on_random_elements(g):
    assert eps_left(psi(g)) == g
    assert eps_right(psi(g)) == g
    assert psi_left(psi(g)) == psi_right(psi(g))
    assert conj(conj(g)) == g


@settings(max_examples=40, deadline=None)
@given(gamma_elems(), gamma_elems())
def test_structure_maps_are_multiplicative(g, h):
    assert psi(g * h) == psi(g) * psi(h)
    assert conj(g * h) == conj(g) * conj(h)
    assert left(g * h) == left(g) * left(h)
    assert right(g * h) == right(g) * right(h)


def test_mf12_coaction():
    M = mf12_comodule()
    assert M.psi_of(0) == [(GAMMA.one(), "w1")]
    assert dict((n, c) for c, n in M.psi_of(2)) == {"w1": G("r^2"), "w2": G("2*r"), "w3": G("1")}
    assert M.degrees == (0, 2, 4)


def test_dual_coaction():
    D = dual_comodule(mf12_comodule())
    assert dict((n, c) for c, n in D.psi_of(0)) == {"w1*": G("1"), "w2*": G("-r"), "w3*": G("r^2")}
    assert dict((n, c) for c, n in D.psi_of(1)) == {"w2*": G("1"), "w3*": G("-2*r")}
    assert D.psi_of(2) == [(GAMMA.one(), "w3*")]


def test_dual_of_trivial_is_trivial():
    D = dual_comodule(trivial_comodule("e", 0))
    assert D.coaction == trivial_comodule("e", 0).coaction


def test_identity_map():
    M = mf12_comodule()
    ident = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    cert = comodule_map_check(ident, M, M)
    assert cert.ok and cert.invertible


def test_dual_isomorphism_with_shift():
    M = mf12_comodule()
    D = dual_comodule(M)
    cert = comodule_map_check(mf12_to_dual_map(), M, D, -4)
    assert cert.ok and cert.invertible
    assert cert.determinant == ATILDE.const(Fraction(1, 2))
    # equivalently a degree-preserving map onto the dual shifted up by 4
    assert comodule_map_check(mf12_to_dual_map(), M, D.shifted(4), 0).ok


def test_corrupted_dual_map_fails():
    M = mf12_comodule()
    bad = [[0, 0, 1], [0, Fraction(1, 2), 0], [1, 0, 0]]
    cert = comodule_map_check(bad, M, dual_comodule(M), -4)
    assert not cert.commutes and cert.mismatches


def test_wrong_shape_rejected():
    M = mf12_comodule()
    with pytest.raises(ComoduleError):
        comodule_map_check([[1, 0]], M, M)


def test_double_dual_isomorphism():
    M = mf12_comodule()
    F, cert = find_isomorphism(M, dual_comodule(dual_comodule(M)))
    assert F is not None and cert.invertible


def test_non_comodule_is_detected():
    bad = Comodule.build(["x", "y"], [0, 2], [[1, G("r^2")], [0, 1]])
    assert not bad.check().ok


@pytest.mark.parametrize(
    "M",
    [
        mf12_comodule(),
        dual_comodule(mf12_comodule()),
        mf12_comodule().shifted(2),
        direct_sum(trivial_comodule(), mf12_comodule().shifted(4), trivial_comodule("t", 6)),
        dual_comodule(dual_comodule(mf12_comodule())),
    ],
    ids=["mf12", "dual", "shift2", "sum", "double-dual"],
)
def test_constructed_comodules_pass_checks(M):
    assert M.check().ok


def test_comodule_json():
    data = mf12_comodule().to_json()
    assert data["basis"][2] == {"name": "w3", "degree": 4}
    assert data["coaction"][0][2] == "r^2"


def test_eta_l_is_inclusion():
    assert eta_l(A("a6")) == G("a6")
