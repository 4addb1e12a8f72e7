from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from tkmodels.exactfield import (QQ, QQI, GaussianRational, I, Subspace, conj, image, is_direct_sum, kernel,
                                 normalize, quotient_basis, rank, rref, solve, sum_of)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
gauss = st.builds(lambda a, b: normalize(GaussianRational(a, b)), small, small)


def matrices(rows, cols, elems=gauss):
    return st.lists(st.lists(elems, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def to_sympy(m):
    return sp.Matrix([[sp.Rational(QQI(x).re.numerator, QQI(x).re.denominator)
                       + sp.I * sp.Rational(QQI(x).im.numerator, QQI(x).im.denominator) for x in r] for r in m])


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert conj(conj(a)) == a
    assert conj(a * b) == conj(a) * conj(b)


def test_real_values_collapse_to_fractions():
    assert isinstance(normalize(I * I), Fraction)
    assert normalize(I * I) == -1
    assert QQ(Fraction(1, 2)) == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        I / 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_matches_sympy(r, c, data):
    m = data.draw(matrices(r, c))
    assert rank(m) == to_sympy(m).rank()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_kernel_is_kernel(r, c, data):
    m = data.draw(matrices(r, c))
    k = kernel(m, c)
    assert k.dim == c - rank(m)
    for v in k.rows:
        assert all(not sum((x * y for x, y in zip(row, v)), 0) for row in m)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_rref_is_canonical(n, data):
    vs = data.draw(matrices(3, n))
    g = data.draw(matrices(3, 3, small))
    mixed = [[sum((g[i][k] * vs[k][j] for k in range(3)), 0) for j in range(n)] for i in range(3)]
    a, b = Subspace.span(vs, n), Subspace.span(mixed, n)
    if rank(g) == 3:
        assert a == b
    assert b <= a


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.data())
def test_dimension_formula(n, data):
    a = Subspace.span(data.draw(matrices(data.draw(st.integers(0, n)), n)), n)
    b = Subspace.span(data.draw(matrices(data.draw(st.integers(0, n)), n)), n)
    assert (a + b).dim + (a & b).dim == a.dim + b.dim
    assert (a & b) <= a and (a & b) <= b
    q = quotient_basis(a + b, b)
    assert len(q) == (a + b).dim - b.dim
    assert is_direct_sum([Subspace.span(q, n), b], n)


def test_solve_and_image():
    m = [[1, 2], [I, 0]]
    x = solve(m, [3, I], 2)
    assert x == [1, 1]
    assert solve([[1, 1], [1, 1]], [1, 0], 2) is None
    assert image([[1, 0], [0, 0]], 2).dim == 1


def test_conjugate_subspace():
    s = Subspace.span([[1, I]], 2)
    assert s.conjugate() == Subspace.span([[1, -I]], 2)
    swap = [[0, 1], [1, 0]]
    assert Subspace.span([[1, 0]], 2).conjugate(swap) == Subspace.span([[0, 1]], 2)


def test_sum_of_and_rref_drop_zero_rows():
    rows, piv = rref([[0, 0], [2, 4]], 2)
    assert rows == [(1, 2)] and piv == [0]
    assert sum_of([], 3).dim == 0
