from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import sympy_det, sympy_smith_diagonal
from qtoric import linalg


def int_matrices(rows, cols, lo=-4, hi=4):
    return st.lists(st.lists(st.integers(lo, hi), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


square = st.integers(1, 4).flatmap(lambda n: int_matrices(n, n))
rect = st.tuples(st.integers(1, 4), st.integers(1, 5)).flatmap(lambda s: int_matrices(*s))


def test_parse_rational():
    assert linalg.parse_rational("3/6") == Fraction(1, 2)
    assert linalg.parse_rational(" -2 ") == -2
    assert linalg.parse_rational(Fraction(5, 3)) == Fraction(5, 3)
    with pytest.raises(TypeError):
        linalg.parse_rational(0.5)
    with pytest.raises(TypeError):
        linalg.parse_rational(True)
    assert linalg.format_rational(Fraction(-4, 6)) == "-2/3"
    assert linalg.format_rational(7) == "7"


def test_det_small():
    assert linalg.det([[1, 0], [-1, -1]]) == -1
    assert linalg.det([[0, 1], [2, 1]]) == -2
    assert linalg.det([]) == 1
    assert isinstance(linalg.det([[2, 1], [1, 1]]), int)
    assert linalg.det([[Fraction(1, 2), 0], [0, 4]]) == 2


@given(square)
def test_det_matches_sympy(a):
    assert linalg.det(a) == sympy_det(a)


@given(square)
def test_inverse_or_singular(a):
    if linalg.det(a) == 0:
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(a)
        assert linalg.solve(a, [1] * len(a)) is None or linalg.rank(a) < len(a)
    else:
        inv = linalg.inverse(a)
        assert linalg.matmul(a, inv) == linalg.identity(len(a))


@given(rect)
def test_nullspace_and_rank(a):
    ncols = len(a[0])
    ker = linalg.nullspace(a, ncols)
    assert len(ker) + linalg.rank(a) == ncols
    for v in ker:
        assert all(x == 0 for x in linalg.matvec(a, v))


@given(rect)
def test_smith_normal_form(a):
    u, d, v = linalg.smith_normal_form(a)
    assert linalg.matmul(linalg.matmul(u, a), v) == d
    assert abs(linalg.det(u)) == 1 and abs(linalg.det(v)) == 1
    diag = [d[i][i] for i in range(min(len(a), len(a[0])))]
    assert all(x >= 0 for x in diag)
    for i in range(len(d)):
        for j in range(len(d[0])):
            if i != j:
                assert d[i][j] == 0
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) if x == 0 else (y % x == 0)
    assert diag == sympy_smith_diagonal(a)


def test_integer_inverse():
    assert linalg.integer_inverse([[1, 0], [-1, -1]]) == [[1, 0], [-1, -1]]
    with pytest.raises(ValueError):
        linalg.integer_inverse([[2, 0], [0, 1]])


def test_rref_pivots():
    rows, piv = linalg.rref([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    assert piv == [0, 1]
    assert rows == [[1, 0, -1], [0, 1, 2]]
