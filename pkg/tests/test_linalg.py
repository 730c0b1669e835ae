from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from cpinv import linalg

from .conftest import small_rat


def matrices(rows, cols):
    return st.lists(st.lists(small_rat, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def square(max_n=6):
    return st.integers(1, max_n).flatmap(lambda n: matrices(n, n))


def _sym(M):
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in M])


@given(square())
def test_det_matches_sympy(M):
    assert linalg.det(M) == Fraction(str(_sym(M).det()))


@given(square())
def test_charpoly_matches_sympy(M):
    X = sympy.Symbol("X")
    ref = sympy.Poly(_sym(M).charpoly(X).as_expr(), X).all_coeffs()
    assert linalg.charpoly(M) == [Fraction(str(c)) for c in reversed(ref)]


@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 6).flatmap(lambda c: matrices(r, c))))
def test_nullspace_and_rank(M):
    ncols = len(M[0])
    kernel = linalg.nullspace(M, ncols, Fraction(0), Fraction(1))
    assert linalg.rank(M) + len(kernel) == ncols
    assert linalg.rank(M) == _sym(M).rank()
    for v in kernel:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


@given(square(5), st.lists(small_rat, min_size=5, max_size=5))
def test_solve(M, b):
    b = b[:len(M)]
    v = linalg.solve(M, b)
    if v is None:
        assert linalg.det(M) == 0
    else:
        assert [sum(a * c for a, c in zip(row, v)) for row in M] == b


@given(square(5))
def test_inverse(M):
    inv = linalg.inverse(M)
    if linalg.det(M) == 0:
        assert inv is None
    else:
        n = len(M)
        assert linalg.matmul(M, inv) == linalg.identity(n, Fraction(0), Fraction(1))


def test_rref_pivots():
    R, piv = linalg.rref([[2, 4, 0], [1, 2, 1]])
    assert piv == [0, 2]
    assert R == [[1, 2, 0], [0, 0, 1]]
