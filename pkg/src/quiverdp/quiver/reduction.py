"""Reduction of a mixed quiver to zigzag form and the substitution Φ

The reduction runs in three steps:

0. every φ-fixed vertex u gains a dual partner ``u_dual``;
1. every pair (u plain, v dual) that is not yet source/sink shaped is doubled: new
   vertices ``u_bar`` (plain) and ``v_bar`` (dual) take over the outgoing arrows of u
   and v, an arrow ``b_u``: u_bar → u is added, and φ becomes u ↔ v_bar, v ↔ u_bar;
2. every arrow a with both ends dual is reversed onto the plain partners
   (tail φ(head a), head φ(tail a)).

Target arrows have type 1 (kept), 2 (added b_u) or 3 (reversed). Φ sends the target
coordinates of a type 1 arrow to the source coordinates of the same arrow, type 2 to
the identity matrix and type 3 to the transposed source coordinates.
"""

from __future__ import annotations

from typing import Literal

import msgspec

from quiverdp.algebra.polynomial import SparsePolynomial, VarId, substitute_linear
from quiverdp.algebra.scalars import ScalarField
from quiverdp.core.logging import get_logger
from quiverdp.quiver.model import Arrow, MixedQuiver, Vertex, ZigzagQuiver, classify_zigzag

log = get_logger("reduction")

ArrowType = Literal[1, 2, 3]


class TargetArrow(msgspec.Struct, frozen=True):
    """Provenance of one arrow of the reduced quiver"""

    id: str
    type: ArrowType
    source: str | None = None  # source arrow id for types 1 and 3
    pair: tuple[str, str] | None = None  # doubled φ-pair for type 2


class ReductionMap(msgspec.Struct, frozen=True):
    source: MixedQuiver
    target: ZigzagQuiver
    added: dict[str, str]  # new vertex id -> source vertex it copies
    arrows: tuple[TargetArrow, ...]

    def provenance(self, arrow_id: str) -> TargetArrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise ValueError(f"Unknown target arrow: {arrow_id}")

    def to_dict(self, field: ScalarField | None = None) -> dict:
        """Target quiver, provenance and the full Φ table as plain data"""
        table = phi_table(self, field or ScalarField(0))
        return {
            "target": msgspec.to_builtins(self.target.quiver),
            "added_vertices": dict(sorted(self.added.items())),
            "arrows": [msgspec.to_builtins(a) for a in self.arrows],
            "phi": {v.render(): str(p) for v, p in sorted(table.items())},
        }


def _zigzag_shaped(q: MixedQuiver, u: str, v: str) -> bool:
    """(u plain, v dual) already pairs a sink with a source"""
    first = not q.out_arrows(u) and not q.in_arrows(v)
    second = not q.in_arrows(u) and not q.out_arrows(v)
    return first or second


def reduce(q: MixedQuiver) -> ReductionMap:
    """Reduce a valid mixed quiver to an equivalent zigzag quiver"""
    q.ensure_valid()
    vertices = list(q.vertices)
    phi = [tuple(p) for p in q.phi]
    added: dict[str, str] = {}

    # step 0: partners for fixed vertices
    for v in q.vertices:
        if q.partner(v.id) == v.id:
            new_id = f"{v.id}_dual"
            vertices.append(Vertex(new_id, v.dim, "*"))
            phi.append((v.id, new_id))
            added[new_id] = v.id
    q0 = MixedQuiver(vertices=tuple(vertices), arrows=q.arrows, phi=tuple(phi))

    # step 1: doubling
    tails = {a.id: a.tail for a in q0.arrows}
    new_phi: list[tuple[str, str]] = []
    doubled: list[tuple[str, str]] = []
    for u, v in q0.phi:
        if q0.vertex(u).is_dual:
            u, v = v, u
        if _zigzag_shaped(q0, u, v):
            new_phi.append((u, v))
            continue
        u_bar, v_bar = f"{u}_bar", f"{v}_bar"
        dim = q0.vertex(u).dim
        vertices.extend([Vertex(u_bar, dim, "1"), Vertex(v_bar, dim, "*")])
        added[u_bar] = u
        added[v_bar] = v
        for aid, tail in tails.items():
            if tail == u:
                tails[aid] = u_bar
            elif tail == v:
                tails[aid] = v_bar
        new_phi.extend([(u, v_bar), (u_bar, v)])
        doubled.append((u, v))

    q1 = MixedQuiver(
        vertices=tuple(vertices),
        arrows=tuple(Arrow(a.id, tails[a.id], a.head) for a in q0.arrows),
        phi=tuple(new_phi),
    )

    # step 2: reverse dual-to-dual arrows onto the plain side
    arrows: list[Arrow] = []
    provenance: list[TargetArrow] = []
    for a in q1.arrows:
        if q1.vertex(a.tail).is_dual and q1.vertex(a.head).is_dual:
            arrows.append(Arrow(a.id, tail=q1.partner(a.head), head=q1.partner(a.tail)))
            provenance.append(TargetArrow(a.id, 3, source=a.id))
        else:
            arrows.append(a)
            provenance.append(TargetArrow(a.id, 1, source=a.id))
    for u, v in doubled:
        bid = f"b_{u}"
        arrows.append(Arrow(bid, tail=f"{u}_bar", head=u))
        provenance.append(TargetArrow(bid, 2, pair=(u, v)))

    q2 = MixedQuiver(vertices=q1.vertices, arrows=tuple(arrows), phi=q1.phi)
    target = classify_zigzag(q2)
    log.info(
        "Quiver reduced",
        added=len(added),
        doubled=len(doubled),
        type3=sum(1 for p in provenance if p.type == 3),
        families=target.arrow_counts,
    )
    return ReductionMap(source=q, target=target, added=added, arrows=tuple(provenance))


def phi_table(red: ReductionMap, field: ScalarField) -> dict[VarId, SparsePolynomial]:
    """Φ on every target coordinate"""
    table: dict[VarId, SparsePolynomial] = {}
    target = red.target
    for za in target.arrows:
        m = target.matrix(za)
        prov = red.provenance(za.id)
        pos = red.source.arrow_position(prov.source) if prov.source else 0
        for i in range(1, m.rows + 1):
            for j in range(1, m.cols + 1):
                if prov.type == 1:
                    image = SparsePolynomial.variable(field, VarId("X", pos, i, j))
                elif prov.type == 3:
                    image = SparsePolynomial.variable(field, VarId("X", pos, j, i))
                else:
                    image = SparsePolynomial.constant(field, 1 if i == j else 0)
                table[m.var(i, j)] = image
    return table


def phi_substitute(red: ReductionMap, f: SparsePolynomial) -> SparsePolynomial:
    """Φ(f) in the source coordinates"""
    return substitute_linear(f, phi_table(red, f.field))
