import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quantizable.exactmath import QQ, QQq, Polynomial, RationalFunction
from quantizable.linalg import (
    congruence_diagonalize,
    determinant,
    identity,
    inverse,
    is_diagonal,
    mat_mul,
    mat_vec,
    rank,
    solve_linear,
    transpose,
)

small = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def random_symmetric(rng: random.Random, n: int, rank_: int | None = None):
    """Random symmetric matrix, optionally of reduced rank (A^T D A form)."""
    k = n if rank_ is None else rank_
    A = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(k)]
    D = [Fraction(rng.choice([-2, -1, 1, 2])) for _ in range(k)]
    return [[sum(A[t][i] * D[t] * A[t][j] for t in range(k)) for j in range(n)] for i in range(n)]


def check_congruence(G):
    C, d = congruence_diagonalize(G)
    n = len(G)
    D = mat_mul(mat_mul(transpose(C), G), C)
    assert is_diagonal(D)
    assert [D[i][i] for i in range(n)] == list(d)
    assert determinant(C) != 0
    assert sum(1 for x in d if x) == rank(G)


class TestSolve:
    def test_small_system(self):
        A = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(3)]]
        assert solve_linear(A, [Fraction(1), Fraction(3)]) == [0, 1]

    def test_inconsistent(self):
        A = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
        assert solve_linear(A, [Fraction(1), Fraction(3)]) is None

    def test_free_variables_zero(self):
        A = [[Fraction(1), Fraction(1)]]
        assert solve_linear(A, [Fraction(2)]) == [2, 0]

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            solve_linear([[Fraction(1)]], [Fraction(1), Fraction(2)])

    @settings(max_examples=60, deadline=None)
    @given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
    def test_solution_satisfies(self, A, b):
        x = solve_linear(A, b)
        ref = sympy.Matrix(A).row_join(sympy.Matrix(b)).rank() == sympy.Matrix(A).rank()
        assert (x is not None) == ref
        if x is not None:
            assert mat_vec(A, x) == b


class TestDeterminantRank:
    @settings(max_examples=60, deadline=None)
    @given(matrices(4, 4))
    def test_against_sympy(self, A):
        M = sympy.Matrix(A)
        assert determinant(A) == Fraction(str(M.det()))
        assert rank(A) == M.rank()

    def test_inverse(self):
        A = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
        assert mat_mul(A, inverse(A)) == identity(2)
        with pytest.raises(ZeroDivisionError):
            inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])

    def test_over_function_field(self):
        q = RationalFunction.q()
        A = [[q, QQq.one()], [QQq.one(), q]]
        assert determinant(A) == q * q - 1
        x = solve_linear(A, [QQq.one(), QQq.zero()])
        assert mat_vec(A, x) == [1, 0]
        assert x[0] == RationalFunction(Polynomial.q(), Polynomial([-1, 0, 1]))


class TestCongruence:
    def test_hyperbolic_plane(self):
        G = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
        C, d = congruence_diagonalize(G)
        assert C == [[1, Fraction(-1, 2)], [1, Fraction(1, 2)]]
        assert d == [2, Fraction(-1, 2)]

    def test_gram_of_example(self):
        C, d = congruence_diagonalize([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(3)]])
        assert C == [[1, -1], [0, 1]] and d == [1, 2]

    def test_sum_also_isotropic(self):
        # v0, v1 isotropic and v0 + v1 isotropic too: must fall back to v0 - v1
        G = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(-2)]]
        check_congruence(G)

    def test_zero_matrix(self):
        check_congruence([[Fraction(0)] * 3 for _ in range(3)])

    def test_random_including_degenerate(self):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(1, 5)
            check_congruence(random_symmetric(rng, n, rng.randint(0, n)))
