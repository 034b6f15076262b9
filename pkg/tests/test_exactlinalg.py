import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fatplane.exactfield import field_make
from fatplane.exactlinalg import (DimensionMismatch, Echelon, ExactMatrix, NoSolution, NotSymmetric,
                                  determinant, gram_schmidt, inverse, is_negative_definite,
                                  kernel_basis, leading_minors, matmul_vec, rank, rref, solve,
                                  subspace_leq)

Q = field_make("Q")

small = st.integers(-4, 4)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity_against_sympy(rows):
    n = len(rows[0])
    r = rank(rows, "Q")
    assert r == sympy.Matrix(rows).rank()
    K = kernel_basis(rows, "Q")
    assert len(K) == n - r
    for v in K:
        assert all(x == 0 for x in matmul_vec(Q, [[Fraction(a) for a in row] for row in rows], v))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(rows):
    red, piv = rref(rows, "Q")
    M, spiv = sympy.Matrix(rows).rref()
    assert piv == list(spiv)
    for i, row in enumerate(red):
        assert [sympy.Rational(x.numerator, x.denominator) for x in row] == list(M.row(i))


@pytest.mark.parametrize("spec", ["F5", "F2[b]/(b^2+b+1)", "Q[z]/(z^2+z+1)"])
def test_kernel_over_other_fields(spec):
    F = field_make(spec)
    rng = random.Random(3)
    for _ in range(30):
        rows = [[F.random(rng) for _ in range(5)] for _ in range(3)]
        K = kernel_basis(ExactMatrix.raw(F, rows, 5))
        assert len(K) == 5 - rank(ExactMatrix.raw(F, rows, 5))
        for v in K:
            assert all(F.is_zero(x) for x in matmul_vec(F, rows, v))


def test_kernel_is_reduced():
    K = kernel_basis([[1, 2, 3, 4]], "Q")
    assert K == rref(K, "Q")[0]
    assert K == [[1, 0, 0, Fraction(-1, 4)], [0, 1, 0, Fraction(-1, 2)], [0, 0, 1, Fraction(-3, 4)]]


def test_echelon_contains_and_stop():
    e = Echelon(Q, 3)
    assert e.add([1, 1, 0]) and e.add([0, 1, 1])
    assert not e.add([1, 2, 1])
    assert e.contains([2, 3, 1]) and not e.contains([0, 0, 1])
    assert e.rank == 2 and not e.full()


def test_solve_and_inverse():
    A = [[2, 1], [1, 3]]
    x = solve(A, [3, 5], "Q")
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    Ai = inverse(Q, [[Fraction(v) for v in r] for r in A])
    assert Ai == [[Fraction(3, 5), Fraction(-1, 5)], [Fraction(-1, 5), Fraction(2, 5)]]
    with pytest.raises(NoSolution):
        solve([[1, 1], [2, 2]], [1, 3], "Q")
    with pytest.raises(DimensionMismatch):
        solve(A, [1], "Q")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_determinant_matches_sympy(rows):
    d = determinant(Q, [[Fraction(v) for v in r] for r in rows])
    assert d == sympy.Matrix(rows).det()


def test_subspace_leq():
    assert subspace_leq([[1, 1, 0]], [[1, 0, 0], [0, 1, 0]], "Q")
    assert not subspace_leq([[0, 0, 1]], [[1, 0, 0], [0, 1, 0]], "Q")


def _random_symmetric(rng, n):
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = rng.randint(-6, 2)
        for j in range(i):
            G[i][j] = G[j][i] = rng.randint(-2, 3)
    return G


def test_negative_definite_against_minors():
    # Sylvester: G is negative definite iff (-1)^k times the k-th leading minor is positive
    rng = random.Random(2024)
    seen = {True: 0, False: 0}
    for _ in range(200):
        n = rng.randint(1, 6)
        G = _random_symmetric(rng, n)
        minors = leading_minors(G)
        oracle = all((-1) ** (k + 1) * m > 0 for k, m in enumerate(minors))
        assert is_negative_definite(G) == oracle
        seen[oracle] += 1
    assert seen[True] > 10 and seen[False] > 10


def test_gram_schmidt_orthogonal():
    G = [[-2, 1, 0], [1, -2, 1], [0, 1, -2]]
    coeffs, squares, fail = gram_schmidt(G)
    assert fail is None
    for i in range(3):
        for j in range(i):
            pair = sum(coeffs[i][a] * G[a][b] * coeffs[j][b] for a in range(3) for b in range(3))
            assert pair == 0
    assert squares == [-2, Fraction(-3, 2), Fraction(-4, 3)]


def test_gram_schmidt_reports_failure_index():
    _, squares, fail = gram_schmidt([[-1, 2], [2, -1]])
    assert fail == 1 and squares[1] >= 0


def test_not_symmetric():
    with pytest.raises(NotSymmetric):
        is_negative_definite([[-1, 1], [0, -1]])
