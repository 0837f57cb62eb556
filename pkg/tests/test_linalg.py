from fractions import Fraction

import pytest
import sympy
from conftest import small_fractions
from hypothesis import given, settings
from hypothesis import strategies as st

from mf7cert.exactalg import QQ, QZ6, ZETA6, CycQ6
from mf7cert.linalg import LinearSystemError, det, det_generic, inverse, matmul, nullspace, rank, rank_mod_p, solve


def matrices(n_min=1, n_max=5, square=True):
    @st.composite
    def build(draw):
        n = draw(st.integers(n_min, n_max))
        m = n if square else draw(st.integers(n_min, n_max))
        return [[draw(small_fractions) for _ in range(m)] for _ in range(n)]

    return build()


def _sym(A):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in A])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_det_matches_sympy(A):
    assert det(A, QQ) == Fraction(str(_sym(A).det()))
    assert det_generic(A, Fraction(0), Fraction(1)) == det(A, QQ)


@settings(max_examples=60, deadline=None)
@given(matrices(square=False))
def test_rank_matches_sympy(A):
    assert rank(A, QQ) == _sym(A).rank()


@settings(max_examples=40, deadline=None)
@given(matrices(square=False))
def test_nullspace_vectors_are_killed(A):
    ncols = len(A[0])
    ker = nullspace(A, QQ, ncols=ncols)
    assert len(ker) == ncols - rank(A, QQ)
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


def test_solve_unique_and_inconsistent():
    A = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    assert solve(A, [Fraction(5), Fraction(6)], QQ) == [Fraction(-4), Fraction(9, 2)]
    with pytest.raises(LinearSystemError):
        solve([[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]], [Fraction(1), Fraction(3)], QQ)
    with pytest.raises(LinearSystemError):
        solve([[Fraction(1), Fraction(1)]], [Fraction(1)], QQ, unique=True)


def test_inverse_over_cyclotomic_field():
    A = [[ZETA6, CycQ6(1)], [CycQ6(2), 1 - ZETA6]]
    I = matmul(A, inverse(A, QZ6))
    assert I == [[CycQ6(1), CycQ6(0)], [CycQ6(0), CycQ6(1)]]


@pytest.mark.parametrize(
    "rows,expected",
    [([[1, 2], [2, 4]], 1), ([[1, 0], [0, 3]], 1), ([[1, 1], [1, 2]], 2), ([[3, 6]], 0)],
)
def test_rank_mod_3(rows, expected):
    assert rank_mod_p(rows, 3) == expected
