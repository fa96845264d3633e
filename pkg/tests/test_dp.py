"""Tests for DP, its specializations and the linearized form."""

import random
from math import factorial

import pytest
import sympy

from quiverdp.algebra.combinatorics import Multipartition
from quiverdp.algebra.linalg import determinant as numeric_determinant
from quiverdp.algebra.linalg import transpose
from quiverdp.algebra.polynomial import GenericMatrix, SparsePolynomial
from quiverdp.algebra.scalars import QQ, ScalarField
from quiverdp.core.errors import CapExceededError
from quiverdp.engine.dp import (
    classical_pfaffian,
    determinant,
    dp_eval,
    dp_full_sum,
    dp_multilinear,
    dp_property_suite,
    generalized_pfaffian,
    pfaffian_sum,
    single,
)

MERSENNE = ScalarField(2**31 - 1)


def rand_matrix(rng, rows, cols, bound=5):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def skew(Y):
    n = len(Y)
    return [[Y[i][j] - Y[j][i] for j in range(n)] for i in range(n)]


def zeros(n):
    return [[0] * n for _ in range(n)]


# ── Determinant and pfaffians ───────────────────────────────────


class TestDeterminant:
    """det as a DP coset sum."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_sympy(self, n):
        rng = random.Random(n)
        for _ in range(5):
            X = rand_matrix(rng, n, n)
            assert determinant(X).constant_value() == int(sympy.Matrix(X).det())

    def test_generic_two_by_two(self):
        e = GenericMatrix("X", 1, 2, 2).entries(QQ)
        assert determinant(e) == e[0][0] * e[1][1] - e[0][1] * e[1][0]

    def test_modular(self):
        rng = random.Random(2)
        field = ScalarField(13)
        X = rand_matrix(rng, 3, 3)
        assert determinant(X, field).constant_value() == numeric_determinant(X, field)

    def test_is_dp_with_no_pfaffian_part(self):
        rng = random.Random(4)
        X = rand_matrix(rng, 3, 3)
        assert dp_eval(X, zeros(3), [[0] * 3 for _ in range(3)], 3, 0, 0) == determinant(X)


class TestPfaffians:
    """Generalized, classical and summed pfaffians."""

    def test_two_by_two(self):
        assert generalized_pfaffian([[0, 5], [3, 0]]).constant_value() == 2
        assert generalized_pfaffian([[0, 1], [-1, 0]]).constant_value() == 2

    def test_empty(self):
        assert generalized_pfaffian([]).constant_value() == 1

    def test_odd_size_rejected(self):
        with pytest.raises(ValueError, match="even size"):
            generalized_pfaffian([[0, 1, 2]] * 3)

    def test_classical_block_diagonal(self):
        a = 7
        C = [[0, a, 0, 0], [-a, 0, 0, 0], [0, 0, 0, a], [0, 0, -a, 0]]
        assert classical_pfaffian(C) == a * a

    def test_classical_rejects_non_skew(self):
        with pytest.raises(ValueError, match="not skew-symmetric"):
            classical_pfaffian([[0, 1], [1, 0]])

    def test_classical_squares_to_determinant(self):
        rng = random.Random(9)
        for _ in range(10):
            C = skew(rand_matrix(rng, 4, 4))
            assert classical_pfaffian(C) ** 2 == numeric_determinant(C, QQ)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_relation_to_skew_part(self, r):
        """The ordered-pair sum of Y − Yᵀ is (−1)^{r(r−1)/2} r! P(Y)."""
        rng = random.Random(100 + r)
        sign = (-1) ** (r * (r - 1) // 2)
        for _ in range(50):
            Y = rand_matrix(rng, 2 * r, 2 * r)
            C = skew(Y)
            P = generalized_pfaffian(Y).constant_value()
            assert pfaffian_sum(C) == sign * factorial(r) * P
            assert classical_pfaffian(C) == sign * P

    def test_generic_relation(self):
        Y = GenericMatrix("Y", 1, 4, 4).entries(QQ)
        C = [[Y[i][j] - Y[j][i] for j in range(4)] for i in range(4)]
        assert pfaffian_sum(C) == generalized_pfaffian(Y) * -2


# ── DP ──────────────────────────────────────────────────────────


class TestDpEval:
    """The mixture DP_{r,s}."""

    def test_zero_shape_is_zero(self):
        assert dp_eval([], [], [], 0, 0, 0).is_zero()

    def test_pure_pfaffian_shapes(self):
        rng = random.Random(6)
        Y = rand_matrix(rng, 4, 4)
        Z = rand_matrix(rng, 2, 2)
        empty = [[] for _ in range(4)]
        assert dp_eval(empty, Y, [], 0, 2, 0) == generalized_pfaffian(Y)
        assert dp_eval([], [], Z, 0, 0, 1) == generalized_pfaffian(Z)

    def test_shape_errors(self):
        with pytest.raises(ValueError, match="X must be"):
            dp_eval([[1]], zeros(3), zeros(1), 1, 1, 0)

    def test_transpose_of_rowless_x(self):
        rng = random.Random(7)
        Z = rand_matrix(rng, 4, 4)
        X = []
        assert dp_eval(transpose(X, 4), Z, [], 0, 2, 0) == dp_eval(X, [], Z, 0, 0, 2)
        assert dp_eval(X, [], Z, 0, 0, 2) == generalized_pfaffian(Z)

    def test_cap(self):
        X = [[1] * 4 for _ in range(4)]
        with pytest.raises(CapExceededError) as exc:
            dp_eval(X, zeros(4), zeros(4), 4, 0, 0, cap=3)
        assert exc.value.exit_code == 4
        assert exc.value.cap == 3

    def test_pruning_does_not_change_value(self):
        rng = random.Random(8)
        X = rand_matrix(rng, 4, 4)
        X[0] = [0, 0, 0, 0]
        X[2][1] = 0
        Y = rand_matrix(rng, 4, 4)
        Z = rand_matrix(rng, 4, 4)
        assert dp_eval(X, Y, Z, 2, 1, 1, prune=True) == dp_eval(X, Y, Z, 2, 1, 1, prune=False)

    def test_symbolic_entries(self):
        X = GenericMatrix("X", 1, 3, 1).entries(QQ)
        Y = GenericMatrix("Y", 1, 3, 3).entries(QQ)
        value = dp_eval(X, Y, [[0]], 1, 1, 0)
        # alternating in the three row positions: x1(y23−y32) − x2(y13−y31) + x3(y12−y21)
        x = [row[0] for row in X]
        expected = (
            x[0] * (Y[1][2] - Y[2][1]) - x[1] * (Y[0][2] - Y[2][0]) + x[2] * (Y[0][1] - Y[1][0])
        )
        assert value == expected


SHAPES = [
    (t, r, s)
    for t in range(7)
    for r in range(4)
    for s in range(4)
    if t + 2 * r <= 6 and t + 2 * s <= 6 and t + r + s > 0
]


class TestDpIdentities:
    """Transpose symmetry, transpose signs and equivariance."""

    @pytest.mark.parametrize("shape", SHAPES)
    def test_rationals(self, shape):
        report = dp_property_suite(*shape, trials=25, seed=1, field=QQ)
        assert report.passed, [c for c in report.checks if not c.passed]

    @pytest.mark.parametrize("shape", SHAPES)
    def test_large_prime(self, shape):
        report = dp_property_suite(*shape, trials=25, seed=2, field=MERSENNE)
        assert report.passed, [c for c in report.checks if not c.passed]

    def test_zero_shape_report(self):
        report = dp_property_suite(0, 0, 0)
        assert report.passed
        assert len(report.checks) == 1

    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_forms_only_shapes(self, s):
        """X is 0×2s here, so its transpose must keep 2s empty rows."""
        report = dp_property_suite(0, 0, s, trials=3, seed=5)
        assert report.passed
        assert len(report.checks) == 5


LINEARIZED = [
    (Multipartition.of([[1, 1]]), single(0), single(1)),
    (Multipartition.of([[1], [1]]), Multipartition.of([[1]]), single(0)),
    (single(1), Multipartition.of([[1], [1]]), Multipartition.of([[2]])),
    (Multipartition.of([[3]]), single(1), single(0)),
    (Multipartition.of([[2, 1]]), single(0), single(1)),
]


class TestLinearized:
    """DP_{γ,δ,λ} against the normalized full double sum."""

    @pytest.mark.parametrize("gamma,delta,lam", LINEARIZED)
    def test_matches_full_sum(self, gamma, delta, lam):
        rng = random.Random(sum(gamma.flat) * 10 + sum(delta.flat))
        t, r, s = sum(gamma.flat), sum(delta.flat), sum(lam.flat)
        rows, cols = t + 2 * r, t + 2 * s
        xs = [rand_matrix(rng, rows, cols, 3) for _ in gamma.flat]
        ys = [rand_matrix(rng, rows, rows, 3) for _ in delta.flat]
        zs = [rand_matrix(rng, cols, cols, 3) for _ in lam.flat]
        expected = dp_full_sum(xs, ys, zs, gamma, delta, lam)
        assert dp_multilinear(xs, ys, zs, gamma, delta, lam) == expected

    def test_single_parts_agree_with_dp(self):
        rng = random.Random(12)
        X = rand_matrix(rng, 4, 4)
        Y = rand_matrix(rng, 4, 4)
        Z = rand_matrix(rng, 4, 4)
        value = dp_multilinear([X], [Y], [Z], single(2), single(1), single(1))
        assert value == dp_eval(X, Y, Z, 2, 1, 1)

    def test_polarization_of_determinant(self):
        """det(X1 + X2) = det X1 + det X2 + DP_{(1,1)}(X1, X2)."""
        rng = random.Random(13)
        X1 = rand_matrix(rng, 2, 2)
        X2 = rand_matrix(rng, 2, 2)
        total = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(X1, X2)]
        mixed = dp_multilinear([X1, X2], [], [], Multipartition.of([[1, 1]]), single(0), single(0))
        assert determinant(total) == determinant(X1) + determinant(X2) + mixed

    def test_empty_multipartitions_give_zero(self):
        assert dp_multilinear([], [], [], single(0), single(0), single(0)).is_zero()
        assert dp_multilinear([], [], [], Multipartition(()), Multipartition(()), Multipartition(())).is_zero()

    def test_matrix_count_must_match_parts(self):
        with pytest.raises(ValueError, match="X-matrices"):
            dp_multilinear([], [], [], single(1), single(0), single(0))

    def test_symbolic_value_is_polynomial(self):
        X = GenericMatrix("X", 1, 2, 2).entries(QQ)
        value = dp_multilinear([X], [], [], single(2), single(0), single(0))
        assert isinstance(value, SparsePolynomial)
        assert len(value) == 2
