"""Tests for multidegrees, admissible quintuples and the generator engine."""

import pytest

from quiverdp.algebra.combinatorics import Distribution, Multipartition
from quiverdp.algebra.linalg import in_span
from quiverdp.algebra.polynomial import multidegree
from quiverdp.algebra.scalars import QQ, ScalarField
from quiverdp.core.errors import QuiverParseError, UnsupportedError
from quiverdp.engine.admissible import (
    AdmissibleQuintuple,
    MultiDegree,
    degree_range,
    enumerate_quintuples,
    is_admissible_quintuple,
    maximal_multipartitions,
    parse_degrees,
    solve_admissible,
    vertex_pools,
)
from quiverdp.engine.generator import (
    build_block_matrices,
    build_generator,
    generator_sign,
    generators_for_degree,
    refine,
    refined_generator,
    refinement_factor,
    relative_weight,
)
from quiverdp.engine.hfunction import f_symmetry_check, h_function, normalized_f_sum
from quiverdp.verify.checks import check_invariance, check_weight

EMPTY = Multipartition(())


def only_quintuple(zq, d):
    weight = solve_admissible(zq, d)
    assert weight is not None
    quints = list(enumerate_quintuples(zq, d, weight))
    assert len(quints) == 1
    return quints[0]


def generic(zq, family, index=1):
    return zq.matrix(zq.lookup(family, index)).entries(QQ)


class TestParseDegrees:
    """The t:..;r:..;s:.. text form."""

    def test_full_form(self):
        d = parse_degrees("t:2,1;r:0;s:1")
        assert d == MultiDegree(t=(2, 1), r=(0,), s=(1,))
        assert str(d) == "t:2,1;r:0;s:1"

    def test_omitted_families_are_zero(self):
        d = parse_degrees("s:2", (0, 0, 1))
        assert d == MultiDegree(t=(), r=(), s=(2,))

    def test_empty_group(self):
        assert parse_degrees("t:2;r:;s:", (1, 0, 0)) == MultiDegree(t=(2,))

    def test_unknown_family(self):
        with pytest.raises(QuiverParseError, match="Bad degree group"):
            parse_degrees("x:1")

    def test_non_integer(self):
        with pytest.raises(QuiverParseError, match="Bad degree value"):
            parse_degrees("t:a")

    def test_negative(self):
        with pytest.raises(QuiverParseError, match="Negative degree"):
            parse_degrees("t:-1")

    def test_length_must_match_arrows(self):
        with pytest.raises(QuiverParseError, match="has 2 entries"):
            parse_degrees("t:1,1", (1, 0, 0))


class TestAdmissibility:
    """Pools, weights and quintuples."""

    def test_determinant_degree(self, single_x):
        w = solve_admissible(single_x, MultiDegree(t=(2,)))
        assert (w.p, w.q) == ((1,), (1,))
        assert w.epsilon == (1, -1)

    def test_odd_degree_is_not_admissible(self, single_x):
        assert solve_admissible(single_x, MultiDegree(t=(1,))) is None

    def test_bilinear_pool(self, bilinear):
        d = MultiDegree(s=(2,))
        first, second = vertex_pools(bilinear, d)
        assert first == [] and second == [[1, 2, 3, 4]]
        assert solve_admissible(bilinear, d).q == (2,)

    def test_mixed_pools(self, one_of_each):
        first, second = vertex_pools(one_of_each, MultiDegree(t=(2,), r=(1,), s=(0,)))
        assert first == [[1, 2, 3, 4]]
        assert second == [[1, 2]]

    def test_wrong_arrow_count(self, single_x):
        with pytest.raises(ValueError, match="does not fit"):
            vertex_pools(single_x, MultiDegree(t=(2, 0)))

    def test_quintuple_count(self, single_x):
        d = MultiDegree(t=(4,))
        quints = list(enumerate_quintuples(single_x, d, solve_admissible(single_x, d)))
        assert len(quints) == 9
        assert all(is_admissible_quintuple(single_x, q) for q in quints)
        assert quints[0].A.blocks == ((1, 2), (3, 4))

    def test_bad_block_size_is_rejected(self, single_x):
        d = MultiDegree(t=(4,))
        w = solve_admissible(single_x, d)
        quint = AdmissibleQuintuple(
            d, w, A=Distribution.of([[1, 2, 3], [4]]), B=Distribution.of([[1, 2], [3, 4]])
        )
        assert not is_admissible_quintuple(single_x, quint)

    def test_degree_range(self, single_x, bilinear):
        assert list(degree_range(single_x, 2)) == [MultiDegree(t=(1,)), MultiDegree(t=(2,))]
        assert [d.s for d in degree_range(bilinear, 4)] == [(1,), (2,)]

    def test_degree_range_excludes_zero(self, one_of_each):
        assert all(not d.is_zero() for d in degree_range(one_of_each, 4, 4))


class TestMaximalData:
    """Maximal intersections of a quintuple."""

    def test_single_block(self, single_x):
        data = maximal_multipartitions(only_quintuple(single_x, MultiDegree(t=(2,))))
        assert data.gamma.flat == (2,)
        assert (data.a1, data.b1) == ((1,), (1,))
        assert data.is_consecutive()

    def test_split_pairs(self, bilinear):
        d = MultiDegree(s=(2,))
        w = solve_admissible(bilinear, d)
        quint = AdmissibleQuintuple(
            d, w, A=Distribution(blocks=(), ground=0), B=Distribution.of([[1, 3], [2, 4]])
        )
        data = maximal_multipartitions(quint)
        assert data.lam.flat == (1, 1)
        assert data.lam_parts == ((1,), (2,))

    def test_block_matrices_place_generic_block(self, single_x):
        quint = only_quintuple(single_x, MultiDegree(t=(2,)))
        xs, ys, zs = build_block_matrices(single_x, quint, maximal_multipartitions(quint))
        assert xs == [generic(single_x, "X")]
        assert ys == [] and zs == []


class TestGenerators:
    """DP^{A,B} for small multidegrees."""

    def test_determinant(self, single_x):
        quint = only_quintuple(single_x, MultiDegree(t=(2,)))
        x = generic(single_x, "X")
        assert build_generator(single_x, quint) == x[0][0] * x[1][1] - x[0][1] * x[1][0]
        assert generator_sign(quint) == 1

    def test_skew_part_of_a_form(self, bilinear):
        quint = only_quintuple(bilinear, MultiDegree(s=(1,)))
        z = generic(bilinear, "Z")
        assert build_generator(bilinear, quint) == z[0][1] - z[1][0]

    def test_zero_degree_is_zero(self, single_x):
        quint = AdmissibleQuintuple(
            MultiDegree(t=(0,)),
            solve_admissible(single_x, MultiDegree(t=(0,))),
            A=Distribution(blocks=(), ground=0),
            B=Distribution(blocks=(), ground=0),
        )
        assert build_generator(single_x, quint).is_zero()

    @pytest.mark.parametrize(
        "degree,expected",
        [
            (MultiDegree(t=(2,), r=(1,), s=(0,)), {("X", 1): 2, ("Y", 1): 1}),
            (MultiDegree(t=(2,), r=(0,), s=(1,)), {("X", 1): 2, ("Z", 1): 1}),
        ],
    )
    def test_invariant_with_weight(self, one_of_each, degree, expected):
        batch = generators_for_degree(one_of_each, degree, jobs=1)
        assert batch.results
        for result in batch.results:
            f = result.polynomial
            assert multidegree(f) == expected
            assert check_invariance(f, one_of_each, samples=5, seed=1, field=QQ).passed
            eps = relative_weight(result.quintuple).epsilon
            assert check_weight(f, one_of_each, eps, samples=4, seed=2, field=QQ).passed

    def test_invariant_mod_p(self, single_x):
        field = ScalarField(2**31 - 1)
        batch = generators_for_degree(single_x, MultiDegree(t=(4,)), field=field, jobs=1)
        for f in batch.polynomials:
            assert check_invariance(f, single_x, samples=5, seed=3, field=field).passed

    def test_relative_weight(self, bilinear):
        quint = only_quintuple(bilinear, MultiDegree(s=(1,)))
        assert relative_weight(quint).epsilon == (-1,)

    def test_normalized_f_sum_matches(self, single_x, bilinear, one_of_each):
        cases = [
            (single_x, MultiDegree(t=(4,))),
            (bilinear, MultiDegree(s=(2,))),
            (one_of_each, MultiDegree(t=(2,), r=(1,), s=(0,))),
        ]
        for zq, d in cases:
            for quint in enumerate_quintuples(zq, d, solve_admissible(zq, d)):
                assert normalized_f_sum(quint) == build_generator(zq, quint)

    def test_normalized_f_sum_over_degree_range(self, one_of_each):
        checked = 0
        for d in degree_range(one_of_each, 4, 4):
            weight = solve_admissible(one_of_each, d)
            if weight is None:
                continue
            for quint in enumerate_quintuples(one_of_each, d, weight):
                assert normalized_f_sum(quint) == build_generator(one_of_each, quint), quint
                checked += 1
        assert checked > 0

    def test_normalized_f_sum_needs_rationals(self, single_x):
        quint = only_quintuple(single_x, MultiDegree(t=(2,)))
        with pytest.raises(UnsupportedError):
            normalized_f_sum(quint, ScalarField(7))


class TestRefinement:
    """Refined multipartitions and H."""

    def test_refined_is_a_multiple(self, single_x):
        quint = only_quintuple(single_x, MultiDegree(t=(2,)))
        gamma = Multipartition.of([[1, 1]])
        assert refinement_factor(quint, gamma, EMPTY, EMPTY) == 2
        refined = refined_generator(single_x, quint, gamma, EMPTY, EMPTY)
        assert refined == build_generator(single_x, quint) * 2

    def test_refine_rejects_coarser(self, bilinear):
        d = MultiDegree(s=(2,))
        w = solve_admissible(bilinear, d)
        quint = AdmissibleQuintuple(
            d, w, A=Distribution(blocks=(), ground=0), B=Distribution.of([[1, 3], [2, 4]])
        )
        with pytest.raises(ValueError, match="does not refine"):
            refine(maximal_multipartitions(quint), EMPTY, EMPTY, Multipartition.of([[2]]))

    def test_h_at_maximal_data(self, single_x, bilinear):
        for zq, d in ((single_x, MultiDegree(t=(2,))), (bilinear, MultiDegree(s=(1,)))):
            quint = only_quintuple(zq, d)
            data = maximal_multipartitions(quint)
            assert h_function(quint, data.gamma, data.delta, data.lam) == build_generator(zq, quint)

    def test_h_in_generator_span(self, single_x):
        d = MultiDegree(t=(4,))
        batch = generators_for_degree(single_x, d, jobs=1)
        quint = batch.results[0].quintuple
        h = h_function(quint, Multipartition.of([[2, 2]]), EMPTY, EMPTY)
        assert in_span(h, batch.polynomials, QQ)

    def test_h_needs_rationals(self, single_x):
        quint = only_quintuple(single_x, MultiDegree(t=(2,)))
        with pytest.raises(UnsupportedError):
            h_function(quint, Multipartition.of([[2]]), EMPTY, EMPTY, field=ScalarField(5))

    def test_f_symmetries(self, one_of_each):
        d = MultiDegree(t=(2,), r=(1,), s=(0,))
        for quint in enumerate_quintuples(one_of_each, d, solve_admissible(one_of_each, d)):
            assert f_symmetry_check(quint, trials=10, seed=4).passed


class TestBatches:
    """generators_for_degree bookkeeping."""

    def test_not_admissible(self, single_x):
        batch = generators_for_degree(single_x, MultiDegree(t=(1,)), jobs=1)
        assert not batch.admissible
        assert batch.results == []

    def test_counts(self, single_x):
        batch = generators_for_degree(single_x, MultiDegree(t=(4,)), jobs=1)
        assert batch.quintuples == 9
        assert len(batch.results) + batch.zero_count == 9
        assert not batch.truncated

    def test_limit_truncates(self, single_x):
        batch = generators_for_degree(single_x, MultiDegree(t=(4,)), limit=4, jobs=1)
        assert batch.quintuples == 4
        assert batch.truncated

    def test_limit_from_config(self, single_x):
        from quiverdp.core.config import override_config

        override_config(limit=2)
        batch = generators_for_degree(single_x, MultiDegree(t=(4,)), jobs=1)
        assert batch.quintuples == 2 and batch.truncated

    def test_workers_keep_order(self, single_x):
        d = MultiDegree(t=(4,))
        serial = generators_for_degree(single_x, d, jobs=1)
        parallel = generators_for_degree(single_x, d, jobs=2)
        assert parallel.polynomials == serial.polynomials

    def test_to_dict(self, single_x):
        data = generators_for_degree(single_x, MultiDegree(t=(2,)), jobs=1).to_dict()
        assert data["degree"] == "t:2;r:;s:"
        assert data["admissible"] is True
        record = data["generators"][0]
        assert record["A"] == [[1, 2]]
        assert record["weight"] == [1, -1]
        assert record["sign"] == 1
