"""Tests for sampled checks, the dimension oracle and the bilinear-forms suite."""

import pytest

from quiverdp.algebra.combinatorics import Distribution
from quiverdp.algebra.polynomial import SparsePolynomial, VarId
from quiverdp.algebra.scalars import QQ, ScalarField
from quiverdp.core.errors import CapExceededError, UnsupportedError
from quiverdp.engine.admissible import MultiDegree
from quiverdp.quiver.model import classify_zigzag
from quiverdp.quiver.samples import bilinear_forms
from quiverdp.verify.bilinear import (
    bilinear_example_suite,
    c_value,
    compositions,
    d_distribution,
    decompose,
    invariant_products,
    p_b,
    psi_transpose,
    trace_word,
    transpose_trace_identities,
    z_det,
    z_matrix,
)
from quiverdp.verify.checks import check_invariance, check_weight
from quiverdp.verify.oracle import oracle_dimension, spanning_check, span_sweep

MERSENNE = ScalarField(2**31 - 1)


def det_x(zq):
    x = zq.matrix(zq.lookup("X", 1)).entries(QQ)
    return x[0][0] * x[1][1] - x[0][1] * x[1][0]


class TestSampledChecks:
    """Invariance and weight under sampled group elements."""

    def test_determinant_is_invariant(self, single_x):
        outcome = check_invariance(det_x(single_x), single_x, samples=10, seed=0, field=QQ)
        assert outcome.passed
        assert "10 SL samples" in outcome.detail

    def test_single_entry_is_not_invariant(self, single_x):
        f = SparsePolynomial.variable(QQ, VarId("X", 1, 1, 1))
        outcome = check_invariance(f, single_x, samples=10, seed=0, field=QQ)
        assert not outcome.passed
        assert outcome.counterexample

    def test_determinant_weight(self, single_x):
        assert check_weight(det_x(single_x), single_x, (1, -1), samples=6, seed=1, field=QQ).passed
        assert not check_weight(det_x(single_x), single_x, (-1, 1), samples=6, seed=1, field=QQ).passed

    def test_weight_mod_p(self, single_x):
        assert check_weight(det_x(single_x), single_x, (1, -1), samples=6, seed=1, field=MERSENNE).passed

    def test_weight_length(self, single_x):
        with pytest.raises(ValueError, match="Weight has 1 entries"):
            check_weight(det_x(single_x), single_x, (1,))

    def test_defaults_come_from_config(self, single_x):
        from quiverdp.core.config import override_config

        override_config(samples=3)
        outcome = check_invariance(det_x(single_x), single_x)
        assert "3 SL samples" in outcome.detail


class TestOracle:
    """Brute-force invariant dimensions."""

    @pytest.mark.parametrize("t,expected", [(1, 0), (2, 1), (3, 0), (4, 1)])
    def test_matrix_invariants(self, single_x, t, expected):
        assert oracle_dimension(single_x, MultiDegree(t=(t,)), "derivations", QQ) == expected

    @pytest.mark.parametrize("s,expected", [(1, 1), (2, 2)])
    def test_bilinear_invariants(self, bilinear, s, expected):
        assert oracle_dimension(bilinear, MultiDegree(s=(s,)), "derivations", QQ) == expected

    def test_methods_agree(self, one_of_each):
        d = MultiDegree(t=(2,), r=(1,), s=(0,))
        by_derivations = oracle_dimension(one_of_each, d, "derivations", QQ)
        by_kernel = oracle_dimension(one_of_each, d, "random-kernel", MERSENNE, seed=3)
        assert by_derivations == by_kernel >= 1

    def test_derivations_need_rationals(self, single_x):
        with pytest.raises(UnsupportedError):
            oracle_dimension(single_x, MultiDegree(t=(2,)), "derivations", ScalarField(101))

    def test_cap(self, single_x):
        with pytest.raises(CapExceededError):
            oracle_dimension(single_x, MultiDegree(t=(2,)), "derivations", QQ, cap=5)


class TestSpanning:
    """Generator rank against the oracle."""

    def test_full_rank(self, bilinear):
        report = spanning_check(bilinear, MultiDegree(s=(2,)), "derivations", QQ, jobs=1)
        assert report.verdict == "full"
        assert report.dimension == report.rank == 2
        assert report.passed

    def test_one_form_cubic(self, bilinear):
        report = spanning_check(bilinear, MultiDegree(s=(3,)), "derivations", QQ, jobs=1)
        assert report.verdict == "full"
        assert report.dimension == report.rank == 2

    def test_two_forms_bilinear_degree(self):
        two_forms = classify_zigzag(bilinear_forms(2))
        report = spanning_check(two_forms, MultiDegree(s=(1, 1)), "derivations", QQ, jobs=1)
        assert report.verdict == "full"
        assert report.dimension == report.rank == 2

    def test_non_admissible_degree(self, single_x):
        report = spanning_check(single_x, MultiDegree(t=(3,)), "derivations", QQ, jobs=1)
        assert not report.admissible
        assert report.dimension == 0 and report.rank == 0
        assert report.verdict == "full"

    def test_truncated(self, single_x):
        report = spanning_check(single_x, MultiDegree(t=(4,)), "derivations", QQ, limit=1, jobs=1)
        assert report.verdict == "budget-truncated"
        assert report.passed

    def test_sweep(self, one_of_each):
        reports = span_sweep(one_of_each, 4, 4, method="derivations", field=QQ, jobs=1)
        assert len(reports) == 18
        assert all(r.verdict == "full" for r in reports)

    def test_sweep_mod_p(self, single_x):
        reports = span_sweep(single_x, 4, 4, method="random-kernel", field=MERSENNE, jobs=1)
        assert [r.dimension for r in reports] == [0, 1, 0, 1]
        assert all(r.passed for r in reports)

    def test_report_dict(self, single_x):
        data = spanning_check(single_x, MultiDegree(t=(2,)), "derivations", QQ, jobs=1).to_dict()
        assert data["degree"] == "t:2;r:;s:"
        assert data["format_version"] == 1
        assert data["quintuples"][0]["A"] == [[1, 2]]


class TestBilinearForms:
    """Closed forms for forms on a plane."""

    def test_skew_part(self):
        z = z_matrix(1)
        B = Distribution.of([[1, 2]])
        assert p_b(B, (1,)) == z[0][1] - z[1][0]
        assert trace_word((1,)) == z[1][0] - z[0][1]

    def test_determinant(self):
        B = Distribution.of([[1, 2], [3, 4]])
        assert c_value(B, (2,)) == 2
        assert p_b(B, (2,)) == z_det(1)
        assert decompose(B, (2,)) is None

    def test_decomposable(self):
        B = Distribution.of([[1, 3], [2, 4]])
        z = z_matrix(1)
        skew = z[0][1] - z[1][0]
        assert c_value(B, (2,)) == 1
        assert p_b(B, (2,)) == skew * skew
        split = decompose(B, (2,))
        assert split is not None
        assert split.first == ((1,), Distribution.of([[1, 2]]))
        assert split.second == ((1,), Distribution.of([[1, 2]]))

    def test_p_b_needs_pairs(self):
        with pytest.raises(ValueError, match="into pairs"):
            p_b(Distribution.of([[1, 2, 3, 4]]), (2,))

    def test_d_distribution(self):
        assert d_distribution(1).blocks == ((1, 2),)
        assert d_distribution(3).blocks == ((1, 6), (2, 4), (3, 5))

    def test_psi_transpose(self):
        z = z_matrix(1)
        assert psi_transpose(z[0][1], (True,)) == z[1][0]
        assert psi_transpose(z[0][1], (False,)) == z[0][1]

    def test_compositions(self):
        assert compositions(2, 2) == [(0, 2), (1, 1), (2, 0)]

    def test_invariant_products(self):
        z = z_matrix(1)
        products = invariant_products((2,))
        assert z_det(1) in products
        assert (z[0][1] - z[1][0]) ** 2 in products or (z[1][0] - z[0][1]) ** 2 in products

    def test_transpose_identities(self):
        report = transpose_trace_identities()
        assert report.passed
        assert len(report.checks) == 3

    def test_suite_one_form(self):
        report = bilinear_example_suite(d=1, max_s=3)
        assert report.passed, [c.name for c in report.checks if not c.passed]

    def test_suite_one_form_to_degree_four(self):
        report = bilinear_example_suite(d=1, max_s=4)
        assert report.passed, [c.name for c in report.checks if not c.passed]

    def test_suite_two_forms(self):
        report = bilinear_example_suite(d=2, max_s=2)
        assert report.passed, [c.name for c in report.checks if not c.passed]
