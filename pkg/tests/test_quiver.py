"""Tests for mixed quivers: validation, zigzag form, files, the group action and the reduction."""

import random

import pytest

from quiverdp.algebra.polynomial import SparsePolynomial, VarId
from quiverdp.algebra.scalars import QQ, ScalarField
from quiverdp.core.errors import QuiverParseError, QuiverValidationError
from quiverdp.engine.admissible import degree_range
from quiverdp.engine.generator import generators_for_degree
from quiverdp.quiver.action import GroupElement, apply, sample_group_element
from quiverdp.quiver.io import decode_quiver, dump_quiver, load_quiver
from quiverdp.quiver.model import Arrow, MixedQuiver, Vertex, classify_zigzag
from quiverdp.quiver.reduction import phi_substitute, phi_table, reduce
from quiverdp.quiver.samples import bilinear_forms, example_mixed, single_pair
from quiverdp.verify.checks import check_invariance, phi_check


def codes(quiver):
    return {v.code for v in quiver.validate()}


# ── Validation ──────────────────────────────────────────────────


class TestValidation:
    """Mixed-quiver conditions."""

    def test_samples_are_valid(self):
        for q in (example_mixed(), bilinear_forms(2), single_pair(1, 1, 1)):
            assert q.validate() == []

    def test_fixed_vertex_must_be_plain(self):
        q = MixedQuiver(vertices=(Vertex("a", 2, "*"),))
        assert "alpha-fixed" in codes(q)

    def test_pair_dimensions_must_agree(self):
        q = MixedQuiver(vertices=(Vertex("a", 2, "1"), Vertex("b", 3, "*")), phi=(("a", "b"),))
        assert "dimension" in codes(q)

    def test_pair_alphas_must_differ(self):
        q = MixedQuiver(vertices=(Vertex("a", 2, "1"), Vertex("b", 2, "1")), phi=(("a", "b"),))
        assert "alpha-pair" in codes(q)

    def test_positive_dimension(self):
        q = MixedQuiver(vertices=(Vertex("a", 0, "1"),))
        assert "dimension-zero" in codes(q)

    def test_unknown_endpoint(self):
        q = MixedQuiver(vertices=(Vertex("a", 1, "1"),), arrows=(Arrow("x", tail="a", head="b"),))
        assert "unknown-vertex" in codes(q)

    def test_involution_must_square_to_identity(self):
        q = MixedQuiver(
            vertices=(Vertex("a", 1, "1"), Vertex("b", 1, "*"), Vertex("c", 1, "*")),
            phi=(("a", "b"), ("a", "c")),
        )
        assert "involution" in codes(q)

    def test_ensure_valid_carries_violations(self):
        q = MixedQuiver(vertices=(Vertex("a", 2, "*"),))
        with pytest.raises(QuiverValidationError) as exc:
            q.ensure_valid()
        assert exc.value.exit_code == 3
        assert exc.value.violations


class TestZigzag:
    """Classification into the X, Y and Z families."""

    def test_one_of_each(self, one_of_each):
        assert (one_of_each.l1, one_of_each.l2) == (1, 1)
        assert one_of_each.arrow_counts == (1, 1, 1)
        assert one_of_each.group_dims() == (2, 2)

    def test_bilinear_forms_have_only_z(self, bilinear):
        assert (bilinear.l1, bilinear.l2) == (0, 1)
        assert bilinear.arrow_counts == (0, 0, 1)

    def test_example_is_not_zigzag(self):
        with pytest.raises(QuiverValidationError, match="Not a zigzag quiver") as exc:
            classify_zigzag(example_mixed())
        assert any(v.code == "not-bipartite" for v in exc.value.violations)

    def test_fixed_vertex_is_not_zigzag(self):
        q = MixedQuiver(vertices=(Vertex("a", 1, "1"),))
        with pytest.raises(QuiverValidationError):
            classify_zigzag(q)

    def test_generic_matrix_shapes(self):
        zq = classify_zigzag(single_pair(dx=1, dy=1, dz=1, n=2, m=3))
        shapes = {(m.family, m.rows, m.cols) for m in zq.generic_matrices()}
        assert shapes == {("X", 2, 3), ("Y", 2, 2), ("Z", 3, 3)}


# ── Files ───────────────────────────────────────────────────────


class TestQuiverFiles:
    """JSON and TOML quiver files."""

    def test_json_roundtrip(self, tmp_path):
        q = example_mixed()
        path = dump_quiver(q, tmp_path / "q.json")
        assert load_quiver(path) == q

    def test_toml_roundtrip(self, tmp_path):
        q = single_pair(1, 1, 1)
        path = dump_quiver(q, tmp_path / "q.toml")
        assert load_quiver(path) == q

    def test_unknown_field_rejected(self):
        data = b'{"vertices": [{"id": "a", "dim": 1, "color": "red"}]}'
        with pytest.raises(QuiverParseError):
            decode_quiver(data)

    def test_missing_file(self, tmp_path):
        with pytest.raises(QuiverParseError, match="Cannot read"):
            load_quiver(tmp_path / "nope.json")


# ── Group action ────────────────────────────────────────────────


class TestAction:
    """Substitution action of the product of general linear groups."""

    def test_sl_samples_have_determinant_one(self):
        g = sample_group_element((2, 3), QQ, seed=5, mode="SL")
        assert g.determinants() == (1, 1)

    def test_sl_samples_mod_p(self):
        field = ScalarField(101)
        g = sample_group_element((3,), field, seed=1, mode="SL")
        assert g.determinants() == (1,)

    def test_action_is_a_homomorphism(self, one_of_each):
        matrices = one_of_each.generic_matrices()
        x = SparsePolynomial.variable(QQ, VarId("X", 1, 1, 2))
        y = SparsePolynomial.variable(QQ, VarId("Y", 1, 2, 1))
        z = SparsePolynomial.variable(QQ, VarId("Z", 1, 1, 1))
        f = x * y + z * z - x
        rng = random.Random(11)
        g = sample_group_element((2, 2), QQ, rng, mode="GL")
        h = sample_group_element((2, 2), QQ, rng, mode="GL")
        assert apply(g, apply(h, f, matrices), matrices) == apply(g * h, f, matrices)

    def test_identity_acts_trivially(self, one_of_each):
        matrices = one_of_each.generic_matrices()
        f = SparsePolynomial.variable(QQ, VarId("Y", 1, 1, 2))
        assert apply(GroupElement.identity((2, 2), QQ), f, matrices) == f


# ── Reduction ───────────────────────────────────────────────────


class TestReduction:
    """Reduction of the worked example to zigzag form and the map Φ."""

    @pytest.fixture
    def red(self):
        return reduce(example_mixed())

    def test_arrow_types(self, red):
        assert sorted(a.type for a in red.arrows) == [1, 1, 1, 2, 3]
        assert red.provenance("a4").type == 3
        assert red.provenance("b_v").type == 2

    def test_added_vertices(self, red):
        assert red.added == {"v_bar": "v", "w_bar": "w"}

    def test_target_families(self, red):
        assert red.target.arrow_counts == (3, 1, 1)
        assert (red.target.l1, red.target.l2) == (1, 1)

    def test_reversed_arrow_runs_between_plain_partners(self, red):
        a4 = next(a for a in red.target.quiver.arrows if a.id == "a4")
        assert (a4.tail, a4.head) == ("v_bar", "v")

    def test_zigzag_input_is_kept(self):
        red = reduce(single_pair(1, 1, 1))
        assert red.added == {}
        assert all(a.type == 1 for a in red.arrows)

    def test_fixed_vertex_gains_partner(self):
        q = MixedQuiver(
            vertices=(Vertex("a", 2), Vertex("b", 2)),
            arrows=(Arrow("x", tail="b", head="a"),),
        )
        red = reduce(q)
        assert red.added == {"a_dual": "a", "b_dual": "b"}
        assert red.target.arrow_counts == (1, 0, 0)

    def test_phi_sends_added_arrow_to_identity(self, red):
        table = phi_table(red, QQ)
        za = next(a for a in red.target.arrows if a.id == "b_v")
        m = red.target.matrix(za)
        assert table[m.var(1, 1)] == 1
        assert table[m.var(1, 2)].is_zero()

    def test_phi_transposes_reversed_arrow(self, red):
        table = phi_table(red, QQ)
        za = next(a for a in red.target.arrows if a.id == "a4")
        m = red.target.matrix(za)
        pos = red.source.arrow_position("a4")
        assert table[m.var(1, 2)] == SparsePolynomial.variable(QQ, VarId("X", pos, 2, 1))

    def test_phi_images_are_invariant(self, red):
        target = red.target
        generators = []
        for d in degree_range(target, 4, 4):
            if sum(d.totals) <= 3:
                generators.extend(generators_for_degree(target, d, jobs=1).polynomials)
        assert generators
        report = phi_check(red, generators, samples=20, seed=0, field=QQ)
        assert report.passed, [c for c in report.checks if not c.passed]

    def test_phi_image_of_determinant(self, red):
        # det of the added identity block is constant after Φ
        za = next(a for a in red.target.arrows if a.id == "b_v")
        m = red.target.matrix(za)
        e = m.entries(QQ)
        det = e[0][0] * e[1][1] - e[0][1] * e[1][0]
        assert phi_substitute(red, det) == 1
        outcome = check_invariance(phi_substitute(red, det), red.source, samples=3)
        assert outcome.passed
