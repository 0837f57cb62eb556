from fractions import Fraction

from hypothesis import strategies as st

from mf7cert.exactalg import FREE_Z, MF7, MultiPoly

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def z_polys(draw, ring=FREE_Z, max_deg=4, max_terms=5, homogeneous=False):
    """Random polynomials in z1, z2, z3 with small rational coefficients."""
    deg = draw(st.integers(0, max_deg))
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        if homogeneous:
            a = draw(st.integers(0, deg))
            b = draw(st.integers(0, deg - a))
            e = (a, b, deg - a - b)
        else:
            e = tuple(draw(st.integers(0, max_deg)) for _ in range(3))
        terms[e] = draw(small_fractions)
    return MultiPoly(ring, terms)


def mf7_polys(**kw):
    return z_polys(ring=MF7, **kw)


def frac(a, b=1):
    return Fraction(a, b)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
