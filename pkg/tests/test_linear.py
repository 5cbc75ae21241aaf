from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from kahlerkit.linear import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    cochain_groups,
    gauss,
    invariant_factors,
    kernel_basis,
    mat_mul,
    rank,
    rref,
    smith_normal_form,
    solve,
)

small = st.integers(-6, 6)
fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
gaussians = st.builds(GaussianRational, fractions, fractions)


def to_sympy(M):
    return sp.Matrix([[sp.Rational(x.re.numerator, x.re.denominator) + sp.I * sp.Rational(x.im.numerator, x.im.denominator)
                       for x in row] for row in M])


def test_parse_and_print():
    assert GaussianRational.parse("1/2-3/4i") == GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    assert GaussianRational.parse("i") == I
    assert GaussianRational.parse("-2") == gauss(-2)
    assert str(gauss("2-i")) == "2-i"
    assert I * I == -1


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.norm() == (a * a.conjugate()).re


@given(gaussians)
def test_complex_roundtrip(a):
    z = complex(a)
    assert abs(z - (float(a.re) + 1j * float(a.im))) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_against_sympy(rows):
    assert rank(rows) == sp.Matrix(rows).rank()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.tuples(small, small), min_size=3, max_size=3), min_size=1, max_size=4))
def test_complex_rank_and_kernel(rows):
    M = [[GaussianRational(a, b) for a, b in row] for row in rows]
    assert rank(M) == to_sympy(M).rank()
    K = kernel_basis(M, 3)
    assert len(K) == 3 - rank(M)
    for v in K:
        prod = mat_mul(M, [[x] for x in v])
        assert all(r[0] == 0 for r in prod)


def test_rref_pivots():
    rows, piv = rref([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    assert piv == [0, 1]
    assert rows[0] == [ONE, ZERO, gauss(-1)]


def test_solve_and_inconsistent():
    x = solve([[1, 1], [1, -1]], [3, 1])
    assert x == [gauss(2), gauss(1)]
    with pytest.raises(ValueError):
        solve([[1, 1], [2, 2]], [1, 3])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_smith_form_against_sympy(m, n, data):
    M = data.draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    U, D, V = smith_normal_form(M)
    assert mat_mul(mat_mul(U, M), V) == [[gauss(x) for x in row] for row in D]
    assert abs(sp.Matrix(U).det()) == 1 and abs(sp.Matrix(V).det()) == 1
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    from sympy.matrices.normalforms import invariant_factors as sp_factors

    expected = [abs(int(x)) for x in sp_factors(sp.Matrix(M), domain=sp.ZZ) if x]
    assert invariant_factors(M) == expected


def test_cochain_groups_torsion():
    # Z --2--> Z : H^0 = 0, H^1 = Z/2
    assert cochain_groups([1, 1], [[[2]]]) == [(0, []), (0, [2])]
    assert cochain_groups([1], []) == [(1, [])]
