"""Mixed quivers, zigzag form and generic-matrix layouts

A mixed quiver carries a dimension and a duality label α ∈ {"1", "*"} on every vertex
and an involution φ given by its 2-cycles. Group factors are indexed by φ-orbits in
declaration order; the layout of a quiver lists one GenericMatrix per arrow with the
factors (and dual flags) acting on its rows and columns.
"""

from __future__ import annotations

from typing import Literal

import msgspec

from quiverdp.algebra.polynomial import GenericMatrix
from quiverdp.core.errors import QuiverValidationError
from quiverdp.core.logging import get_logger

log = get_logger("quiver")

Alpha = Literal["1", "*"]
Family = Literal["X", "Y", "Z"]


class Vertex(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    id: str
    dim: int
    alpha: Alpha = "1"

    @property
    def is_dual(self) -> bool:
        return self.alpha == "*"


class Arrow(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    id: str
    tail: str
    head: str


class Violation(msgspec.Struct, frozen=True):
    """A single broken quiver condition"""

    code: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.subject}: {self.message}"


class MixedQuiver(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    """Vertices with (dim, α), the 2-cycles of φ and the arrows"""

    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...] = ()
    phi: tuple[tuple[str, str], ...] = ()

    # ─── lookups ─────────────────────────────────────────────────────

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise ValueError(f"Unknown vertex: {vid}")

    def partner(self, vid: str) -> str:
        """φ(vid); unlisted vertices are fixed"""
        for u, v in self.phi:
            if u == vid:
                return v
            if v == vid:
                return u
        return vid

    def arrow_position(self, aid: str) -> int:
        for pos, a in enumerate(self.arrows, start=1):
            if a.id == aid:
                return pos
        raise ValueError(f"Unknown arrow: {aid}")

    def in_arrows(self, vid: str) -> list[Arrow]:
        return [a for a in self.arrows if a.head == vid]

    def out_arrows(self, vid: str) -> list[Arrow]:
        return [a for a in self.arrows if a.tail == vid]

    def orbits(self) -> list[tuple[str, ...]]:
        """φ-orbits in declaration order of their first vertex"""
        seen: set[str] = set()
        result = []
        for v in self.vertices:
            if v.id in seen:
                continue
            p = self.partner(v.id)
            orbit = (v.id,) if p == v.id else (v.id, p)
            seen.update(orbit)
            result.append(orbit)
        return result

    def orbit_index(self, vid: str) -> int:
        for idx, orbit in enumerate(self.orbits(), start=1):
            if vid in orbit:
                return idx
        raise ValueError(f"Unknown vertex: {vid}")

    # ─── validation ─────────────────────────────────────────────────

    def validate(self) -> list[Violation]:
        """Every violated mixed-quiver condition (empty when valid)"""
        out: list[Violation] = []
        ids = [v.id for v in self.vertices]
        for vid in sorted({i for i in ids if ids.count(i) > 1}):
            out.append(Violation("duplicate", vid, "vertex id declared more than once"))
        arrow_ids = [a.id for a in self.arrows]
        for aid in sorted({i for i in arrow_ids if arrow_ids.count(i) > 1}):
            out.append(Violation("duplicate", aid, "arrow id declared more than once"))

        known = set(ids)
        for v in self.vertices:
            if v.dim <= 0:
                out.append(Violation("dimension-zero", v.id, f"dimension must be positive, got {v.dim}"))
            if v.alpha not in ("1", "*"):
                out.append(Violation("alpha", v.id, f"alpha must be '1' or '*', got {v.alpha!r}"))
        for a in self.arrows:
            for end in (a.tail, a.head):
                if end not in known:
                    out.append(Violation("unknown-vertex", a.id, f"endpoint {end} is not a vertex"))

        paired: dict[str, int] = {}
        for u, v in self.phi:
            for x in (u, v):
                if x not in known:
                    out.append(Violation("involution", x, "φ lists an unknown vertex"))
                paired[x] = paired.get(x, 0) + 1
            if u == v:
                out.append(Violation("involution", u, "2-cycle of φ pairs a vertex with itself"))
        for x, count in paired.items():
            if count > 1:
                out.append(Violation("involution", x, "vertex appears in several φ-pairs, φ² ≠ id"))
        if any(x.code == "involution" for x in out):
            return out

        vmap = {v.id: v for v in self.vertices}
        for u, v in self.phi:
            if u not in vmap or v not in vmap:
                continue
            a, b = vmap[u], vmap[v]
            if a.dim != b.dim:
                out.append(Violation("dimension", f"{u},{v}", f"φ pairs dimensions {a.dim} and {b.dim}"))
            if a.alpha == b.alpha:
                out.append(Violation("alpha-pair", f"{u},{v}", f"φ pairs two vertices with α={a.alpha}"))
        for v in self.vertices:
            if v.id not in paired and v.is_dual:
                out.append(Violation("alpha-fixed", v.id, "φ-fixed vertex must have α=1"))
        return out

    def ensure_valid(self) -> MixedQuiver:
        violations = self.validate()
        if violations:
            raise QuiverValidationError(
                f"Quiver has {len(violations)} violation(s): " + "; ".join(map(str, violations)),
                violations,
            )
        return self

    # ─── coordinates ─────────────────────────────────────────────────

    def group_dims(self) -> tuple[int, ...]:
        return tuple(self.vertex(orbit[0]).dim for orbit in self.orbits())

    def generic_matrices(self) -> list[GenericMatrix]:
        """One family-X matrix per arrow, numbered by arrow position"""
        result = []
        for pos, a in enumerate(self.arrows, start=1):
            head, tail = self.vertex(a.head), self.vertex(a.tail)
            result.append(
                GenericMatrix(
                    family="X",
                    arrow=pos,
                    rows=head.dim,
                    cols=tail.dim,
                    head=self.orbit_index(a.head),
                    tail=self.orbit_index(a.tail),
                    head_dual=head.is_dual,
                    tail_dual=tail.is_dual,
                )
            )
        return result


# ============================================================================
# Zigzag form
# ============================================================================


class RelativeWeight(msgspec.Struct, frozen=True):
    """Determinant exponents ε̲, one per group factor (φ-orbit)"""

    epsilon: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.epsilon)) + ")"


class VertexPair(msgspec.Struct, frozen=True):
    """A φ-pair (plain vertex, dual vertex) of a zigzag quiver"""

    plain: str
    dual: str
    dim: int


class ZigzagArrow(msgspec.Struct, frozen=True):
    """An arrow in family X, Y or Z

    ``head``/``tail`` are 1-based pair indices within the class that acts on that end:
    first-class pairs for the head of X and both ends of Y, second-class pairs for the
    tail of X and both ends of Z.
    """

    id: str
    family: Family
    index: int
    head: int
    tail: int


class ZigzagQuiver(msgspec.Struct, frozen=True):
    """A mixed quiver in zigzag form

    First-class pairs have a sink as plain vertex (the V1 side), second-class pairs a
    source (the V2 side). Group factors are the first-class pairs followed by the
    second-class pairs.
    """

    quiver: MixedQuiver
    first: tuple[VertexPair, ...]
    second: tuple[VertexPair, ...]
    arrows: tuple[ZigzagArrow, ...]

    @property
    def l1(self) -> int:
        return len(self.first)

    @property
    def l2(self) -> int:
        return len(self.second)

    @property
    def n(self) -> tuple[int, ...]:
        return tuple(p.dim for p in self.first)

    @property
    def m(self) -> tuple[int, ...]:
        return tuple(p.dim for p in self.second)

    def family(self, name: Family) -> tuple[ZigzagArrow, ...]:
        return tuple(a for a in self.arrows if a.family == name)

    @property
    def x_arrows(self) -> tuple[ZigzagArrow, ...]:
        return self.family("X")

    @property
    def y_arrows(self) -> tuple[ZigzagArrow, ...]:
        return self.family("Y")

    @property
    def z_arrows(self) -> tuple[ZigzagArrow, ...]:
        return self.family("Z")

    @property
    def arrow_counts(self) -> tuple[int, int, int]:
        return len(self.x_arrows), len(self.y_arrows), len(self.z_arrows)

    def group_dims(self) -> tuple[int, ...]:
        return self.n + self.m

    def matrix(self, arrow: ZigzagArrow) -> GenericMatrix:
        l1 = self.l1
        if arrow.family == "X":
            return GenericMatrix(
                "X", arrow.index, self.n[arrow.head - 1], self.m[arrow.tail - 1],
                head=arrow.head, tail=l1 + arrow.tail,
            )
        if arrow.family == "Y":
            return GenericMatrix(
                "Y", arrow.index, self.n[arrow.head - 1], self.n[arrow.tail - 1],
                head=arrow.head, tail=arrow.tail, tail_dual=True,
            )
        return GenericMatrix(
            "Z", arrow.index, self.m[arrow.head - 1], self.m[arrow.tail - 1],
            head=l1 + arrow.head, tail=l1 + arrow.tail, head_dual=True,
        )

    def generic_matrices(self) -> list[GenericMatrix]:
        return [self.matrix(a) for fam in ("X", "Y", "Z") for a in self.family(fam)]

    def lookup(self, family: Family, index: int) -> ZigzagArrow:
        for a in self.family(family):
            if a.index == index:
                return a
        raise ValueError(f"No {family}-arrow with index {index}")


def classify_zigzag(q: MixedQuiver) -> ZigzagQuiver:
    """Zigzag form of q, or QuiverValidationError listing every offending vertex/arrow"""
    q.ensure_valid()
    violations: list[Violation] = []
    has_in = {v.id: False for v in q.vertices}
    has_out = {v.id: False for v in q.vertices}
    for a in q.arrows:
        has_out[a.tail] = True
        has_in[a.head] = True
        if q.vertex(a.tail).is_dual and q.vertex(a.head).is_dual:
            violations.append(Violation("dual-arrow", a.id, "both endpoints carry α=*"))
    for v in q.vertices:
        if has_in[v.id] and has_out[v.id]:
            violations.append(Violation("not-bipartite", v.id, "vertex is neither a source nor a sink"))

    first: list[VertexPair] = []
    second: list[VertexPair] = []
    for orbit in q.orbits():
        if len(orbit) == 1:
            violations.append(Violation("fixed-vertex", orbit[0], "zigzag form has no φ-fixed vertex"))
            continue
        u, v = orbit
        if q.vertex(u).is_dual:
            u, v = v, u
        pair = VertexPair(plain=u, dual=v, dim=q.vertex(u).dim)
        first_like = has_in[u] or has_out[v]
        second_like = has_out[u] or has_in[v]
        if first_like and second_like:
            violations.append(
                Violation("pair-shape", f"{u},{v}", "φ must pair a source with a sink")
            )
        elif second_like:
            second.append(pair)
        else:
            first.append(pair)

    if violations:
        raise QuiverValidationError(
            "Not a zigzag quiver: " + "; ".join(map(str, violations)), violations
        )

    first_idx = {p.plain: i for i, p in enumerate(first, start=1)}
    first_idx.update({p.dual: i for i, p in enumerate(first, start=1)})
    second_idx = {p.plain: i for i, p in enumerate(second, start=1)}
    second_idx.update({p.dual: i for i, p in enumerate(second, start=1)})

    counters = {"X": 0, "Y": 0, "Z": 0}
    arrows = []
    for a in q.arrows:
        tail_dual = q.vertex(a.tail).is_dual
        head_dual = q.vertex(a.head).is_dual
        fam: Family = "Y" if tail_dual else ("Z" if head_dual else "X")
        counters[fam] += 1
        if fam == "X":
            head, tail = first_idx[a.head], second_idx[a.tail]
        elif fam == "Y":
            head, tail = first_idx[a.head], first_idx[a.tail]
        else:
            head, tail = second_idx[a.head], second_idx[a.tail]
        arrows.append(ZigzagArrow(a.id, fam, counters[fam], head, tail))

    log.debug(
        "Classified zigzag quiver",
        l1=len(first), l2=len(second), x=counters["X"], y=counters["Y"], z=counters["Z"],
    )
    return ZigzagQuiver(quiver=q, first=tuple(first), second=tuple(second), arrows=tuple(arrows))
