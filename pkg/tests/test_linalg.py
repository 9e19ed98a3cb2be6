import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from leonardkit.errors import NotMultiplicityFree, ShapeMismatch
from leonardkit.fields import GF, QQ
from leonardkit.linalg import (
    Matrix,
    Subspace,
    inverse,
    kernel_basis,
    lagrange_idempotents,
    rank,
    rank_kernel_inverse,
    rref,
    solve,
    sum_of,
)
from leonardkit.polynomial import Polynomial

small = st.integers(-4, 4)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


def to_sympy(rows):
    return sympy.Matrix(rows)


def as_fractions(M):
    return [[x.value for x in row] for row in M.rows]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_and_rref_match_sympy(rows):
    M = Matrix(QQ, rows)
    S = to_sympy(rows)
    R, pivots = rref(M)
    sR, spivots = S.rref()
    assert rank(M) == S.rank()
    assert list(pivots) == list(spivots)
    assert as_fractions(R) == [[Fraction(int(x.p), int(x.q)) for x in sR.row(i)] for i in range(sR.rows)]


@settings(max_examples=150, deadline=None)
@given(matrices(rows=st.just(3), cols=st.just(3)))
def test_inverse_matches_sympy(rows):
    M = Matrix(QQ, rows)
    S = to_sympy(rows)
    inv = inverse(M)
    if S.det() == 0:
        assert inv is None
    else:
        expected = S.inv()
        assert as_fractions(inv) == [[Fraction(int(x.p), int(x.q)) for x in expected.row(i)] for i in range(3)]
        assert M * inv == Matrix.identity(QQ, 3)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_dimension_and_solutions(rows):
    M = Matrix(QQ, rows)
    ker = kernel_basis(M)
    assert len(ker) == M.ncols - to_sympy(rows).rank()
    for v in ker:
        assert not any(M.apply(v))
    rki = rank_kernel_inverse(M)
    assert rki.rank + rki.kernel.dim == M.ncols


def test_solve_consistent_and_inconsistent():
    A = Matrix(QQ, [[1, 2], [2, 4]])
    assert solve(A, Matrix(QQ, [[1], [3]])) is None
    X = solve(A, Matrix(QQ, [[3], [6]]))
    assert A * X == Matrix(QQ, [[3], [6]])
    with pytest.raises(ShapeMismatch):
        solve(A, Matrix(QQ, [[1]]))


def test_prime_field_rank_differs_from_rational():
    rows = [[1, 1], [1, -1]]
    assert rank(Matrix(QQ, rows)) == 2
    assert rank(Matrix(GF(2), rows)) == 1


def brute_span(F, vectors):
    n = len(vectors[0])
    out = set()
    for coeffs in itertools.product(list(F.elements()), repeat=len(vectors)):
        v = [F.zero] * n
        for c, w in zip(coeffs, vectors):
            v = [a + c * F(b) for a, b in zip(v, w)]
        out.add(tuple(v))
    return out


def test_subspace_operations_against_enumeration():
    """Over GF(3) every subspace can be listed, so sums and intersections are checked by brute force."""
    F = GF(3)
    U = Subspace.span(F, 3, [[1, 0, 1], [0, 1, 1]])
    W = Subspace.span(F, 3, [[1, 1, 0], [0, 0, 1]])
    inter = U & W
    assert set(brute_span(F, inter.vectors())) == brute_span(F, U.vectors()) & brute_span(F, W.vectors())
    assert (U + W).dim == 3
    assert U.contains([1, 1, 2]) and not U.contains([1, 0, 0])
    assert Subspace.span(F, 3, [[2, 0, 2]]) == Subspace.span(F, 3, [[1, 0, 1]])
    assert sum_of([Subspace.span(F, 3, [e]) for e in ([1, 0, 0], [0, 1, 0])], F, 3).dim == 2


def test_image_of_subspace():
    A = Matrix(QQ, [[0, 1], [0, 0]])
    assert Subspace.full(QQ, 2).image(A) == Subspace.span(QQ, 2, [[1, 0]])


def test_lagrange_idempotents():
    A = Matrix(QQ, [[2, 0, 0], [1, 3, 0], [0, 1, 5]])
    E = lagrange_idempotents(A, [QQ(2), QQ(3), QQ(5)])
    I = Matrix.identity(QQ, 3)
    total = Matrix.zeros(QQ, 3, 3)
    for i, Ei in enumerate(E):
        assert Ei * Ei == Ei
        total = total + Ei
        for j, Ej in enumerate(E):
            if i != j:
                assert (Ei * Ej).is_zero()
    assert total == I
    with pytest.raises(NotMultiplicityFree):
        lagrange_idempotents(Matrix.identity(QQ, 2), [QQ(1), QQ(1)])
    with pytest.raises(NotMultiplicityFree):
        lagrange_idempotents(A, [QQ(2), QQ(3), QQ(7)])


@given(st.lists(small, max_size=5), st.lists(small, max_size=5), small)
def test_polynomial_ring_matches_sympy(a, b, x0):
    x = sympy.Symbol("x")
    pa, pb = Polynomial(QQ, a), Polynomial(QQ, b)
    sa = sum(c * x ** i for i, c in enumerate(a))
    sb = sum(c * x ** i for i, c in enumerate(b))
    assert (pa * pb)(QQ(x0)) == int(sympy.expand(sa * sb).subs(x, x0))
    assert (pa - pb)(QQ(x0)) == int(sympy.sympify(sa - sb).subs(x, x0))
    if pb.degree >= 0:
        q, r = pa.divmod(pb)
        assert q * pb + r == pa
        assert r.degree < pb.degree
