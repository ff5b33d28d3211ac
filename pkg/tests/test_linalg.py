"""Exact linear algebra: dense elimination and sparse echelon."""

import random
from fractions import Fraction

import pytest

from qhcalc.linalg import (SparseEchelon, SpanSolver, dense_to_sparse,
                           inverse, kernel_basis, mat_mul, mat_vec, rank,
                           rref, solve, span_intersection, sparse_rank)


def _random_matrix(rng, n, m, density=0.7):
    return [[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
             if rng.random() < density else Fraction(0)
             for _ in range(m)] for _ in range(n)]


def test_rref_known():
    m = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    pivots, red = rref(m)
    assert pivots == [0]
    assert red == [[Fraction(1), Fraction(2)]]
    assert rank(m) == 1


def test_solve_and_kernel_random():
    rng = random.Random(17)
    for _ in range(15):
        n, m = rng.randint(2, 5), rng.randint(2, 5)
        A = _random_matrix(rng, n, m)
        x = [Fraction(rng.randint(-3, 3)) for _ in range(m)]
        b = mat_vec(A, x)
        y = solve(A, b)
        assert y is not None
        assert mat_vec(A, y) == b
        for k in kernel_basis(A, m):
            assert all(v == 0 for v in mat_vec(A, k))
        # rank-nullity
        assert rank(A) + len(kernel_basis(A, m)) == m


def test_inconsistent_solve():
    A = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert solve(A, [Fraction(1), Fraction(2)]) is None


def test_inverse():
    rng = random.Random(23)
    A = None
    while A is None or rank(A) < 3:
        A = _random_matrix(rng, 3, 3, density=1.0)
    inv = inverse(A)
    prod = mat_mul(A, inv)
    for i in range(3):
        for j in range(3):
            assert prod[i][j] == (1 if i == j else 0)
    with pytest.raises(ZeroDivisionError):
        inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_sparse_matches_dense_rank():
    rng = random.Random(29)
    for _ in range(10):
        n, m = rng.randint(3, 6), rng.randint(3, 6)
        A = _random_matrix(rng, n, m, density=0.5)
        assert sparse_rank([dense_to_sparse(r) for r in A]) == rank(A)


def test_sparse_echelon_reduce_canonical():
    ech = SparseEchelon()
    ech.insert({0: Fraction(1), 2: Fraction(1)})
    ech.insert({1: Fraction(1), 2: Fraction(2)})
    # pivot is the largest column: both rows pivot on column 2 then 1
    v = ech.reduce({2: Fraction(3)})
    assert not any(c in ech.pivots() for c in v)
    assert ech.contains({0: Fraction(2), 2: Fraction(2)})
    assert not ech.contains({0: Fraction(1)})
    # reduction is idempotent
    w = {0: Fraction(5), 1: Fraction(-1), 2: Fraction(7)}
    assert ech.reduce(ech.reduce(w)) == ech.reduce(w)


def test_span_solver_round_trip():
    basis = [{0: Fraction(1), 1: Fraction(2)}, {1: Fraction(1)}]
    sol = SpanSolver(basis)
    coords = sol.coords({0: Fraction(3), 1: Fraction(4)})
    assert coords == {0: Fraction(3), 1: Fraction(-2)}
    assert sol.coords({2: Fraction(1)}) is None
    with pytest.raises(ValueError):
        SpanSolver([{0: Fraction(1)}, {0: Fraction(2)}])


def test_span_intersection():
    a = [{0: Fraction(1)}, {1: Fraction(1)}]
    b = [{1: Fraction(1)}, {2: Fraction(1)}]
    inter = span_intersection(a, b, 3)
    assert len(inter) == 1
    assert set(inter[0]) == {1}
