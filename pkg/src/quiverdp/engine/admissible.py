"""Multidegrees, admissible weights and admissible quintuples

For a zigzag quiver and a multidegree (t̲, r̲, s̲) every plain vertex collects an index
pool: in [1, t+2r] for first-class vertices (heads of X, heads and tails of Y) and in
[1, t+2s] for second-class vertices (tails of X, heads and tails of Z). The multidegree
is admissible when each pool size is a multiple of the vertex dimension; an admissible
quintuple splits every pool into blocks of that dimension.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

import msgspec

from quiverdp.algebra.combinatorics import (
    Distribution,
    Multipartition,
    determined_distribution,
    intersect,
    set_partitions_fixed,
    window,
)
from quiverdp.core.errors import QuiverDPError, QuiverParseError
from quiverdp.core.logging import get_logger
from quiverdp.quiver.model import ZigzagQuiver

log = get_logger("admissible")


class MultiDegree(msgspec.Struct, frozen=True):
    """Degrees per X-, Y- and Z-arrow"""

    t: tuple[int, ...] = ()
    r: tuple[int, ...] = ()
    s: tuple[int, ...] = ()

    @property
    def totals(self) -> tuple[int, int, int]:
        return sum(self.t), sum(self.r), sum(self.s)

    @property
    def T(self) -> Distribution:
        return determined_distribution(self.t)

    @property
    def R(self) -> Distribution:
        return determined_distribution(self.r)

    @property
    def S(self) -> Distribution:
        return determined_distribution(self.s)

    def is_zero(self) -> bool:
        return not any(self.t) and not any(self.r) and not any(self.s)

    def matches(self, zq: ZigzagQuiver) -> bool:
        return (len(self.t), len(self.r), len(self.s)) == zq.arrow_counts

    def __str__(self) -> str:
        def fmt(v: tuple[int, ...]) -> str:
            return ",".join(map(str, v))

        return f"t:{fmt(self.t)};r:{fmt(self.r)};s:{fmt(self.s)}"


def parse_degrees(text: str, counts: tuple[int, int, int] | None = None) -> MultiDegree:
    """Parse ``t:2,1;r:0;s:1``; omitted families are zero vectors of the given counts"""
    values: dict[str, tuple[int, ...]] = {}
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        key, sep, body = chunk.partition(":")
        key = key.strip().lower()
        if not sep or key not in ("t", "r", "s") or key in values:
            raise QuiverParseError(f"Bad degree group {chunk!r} (expected t:…;r:…;s:…)")
        try:
            values[key] = tuple(int(x) for x in body.split(",") if x.strip())
        except ValueError as e:
            raise QuiverParseError(f"Bad degree value in {chunk!r}") from e
        if any(x < 0 for x in values[key]):
            raise QuiverParseError(f"Negative degree in {chunk!r}")
    for key, count in zip("trs", counts or (None, None, None)):
        if key not in values:
            values[key] = (0,) * (count or 0)
        elif count is not None and len(values[key]) != count:
            raise QuiverParseError(f"{key} has {len(values[key])} entries, the quiver has {count} arrows")
    return MultiDegree(t=values["t"], r=values["r"], s=values["s"])


class AdmissibleWeight(msgspec.Struct, frozen=True):
    """Block counts p̲ (first-class) and q̲ (second-class)"""

    p: tuple[int, ...]
    q: tuple[int, ...]

    @property
    def P(self) -> Distribution:
        return determined_distribution(self.p)

    @property
    def Q(self) -> Distribution:
        return determined_distribution(self.q)

    @property
    def epsilon(self) -> tuple[int, ...]:
        """The relative weight (p̲, −q̲)"""
        return self.p + tuple(-x for x in self.q)


class AdmissibleQuintuple(msgspec.Struct, frozen=True):
    degree: MultiDegree
    weight: AdmissibleWeight
    A: Distribution
    B: Distribution

    def to_dict(self) -> dict:
        return {
            "degree": str(self.degree),
            "p": list(self.weight.p),
            "q": list(self.weight.q),
            "A": [list(b) for b in self.A.blocks],
            "B": [list(b) for b in self.B.blocks],
        }


# ============================================================================
# Pools and admissibility
# ============================================================================


def vertex_pools(zq: ZigzagQuiver, d: MultiDegree) -> tuple[list[list[int]], list[list[int]]]:
    """Index pools of every first-class and second-class vertex"""
    if not d.matches(zq):
        raise ValueError(f"Multidegree {d} does not fit arrow counts {zq.arrow_counts}")
    t, r, s = d.totals
    T, R, S = d.T, d.R, d.S
    first: list[list[int]] = [[] for _ in range(zq.l1)]
    second: list[list[int]] = [[] for _ in range(zq.l2)]

    def block(dist: Distribution, slot: int) -> tuple[int, ...]:
        for bi in range(1, len(dist.blocks) + 1):
            if dist.slot(bi) == slot:
                return dist.blocks[bi - 1]
        return ()

    for a in zq.x_arrows:
        positions = block(T, a.index)
        first[a.head - 1].extend(positions)
        second[a.tail - 1].extend(positions)
    for a in zq.y_arrows:
        positions = block(R, a.index)
        first[a.head - 1].extend(t + j for j in positions)
        first[a.tail - 1].extend(t + r + j for j in positions)
    for a in zq.z_arrows:
        positions = block(S, a.index)
        second[a.head - 1].extend(t + k for k in positions)
        second[a.tail - 1].extend(t + s + k for k in positions)
    return [sorted(p) for p in first], [sorted(p) for p in second]


def solve_admissible(zq: ZigzagQuiver, d: MultiDegree) -> AdmissibleWeight | None:
    """p̲, q̲ with pool sizes n_i p_i and m_j q_j, or None when some division fails"""
    first, second = vertex_pools(zq, d)
    p, q = [], []
    for pool, n in zip(first, zq.n):
        if len(pool) % n:
            return None
        p.append(len(pool) // n)
    for pool, m in zip(second, zq.m):
        if len(pool) % m:
            return None
        q.append(len(pool) // m)
    return AdmissibleWeight(p=tuple(p), q=tuple(q))


def _distributions(pools: Sequence[list[int]], dims: Sequence[int], counts: Sequence[int], ground: int) -> Iterator[Distribution]:
    per_vertex = []
    for pool, dim, count in zip(pools, dims, counts):
        if len(pool) != dim * count:
            raise QuiverDPError(f"Pool of size {len(pool)} does not split into {count} blocks of {dim}")
        per_vertex.append(tuple(set_partitions_fixed(pool, dim)))
    for choice in product(*per_vertex):
        blocks = tuple(b for vertex_blocks in choice for b in vertex_blocks)
        yield Distribution(blocks=blocks, ground=ground)


def enumerate_quintuples(
    zq: ZigzagQuiver, d: MultiDegree, weight: AdmissibleWeight
) -> Iterator[AdmissibleQuintuple]:
    """Canonical admissible quintuples: blocks by minima within a vertex, vertices in order"""
    t, r, s = d.totals
    first, second = vertex_pools(zq, d)
    b_choices = tuple(_distributions(second, zq.m, weight.q, t + 2 * s))
    for A in _distributions(first, zq.n, weight.p, t + 2 * r):
        for B in b_choices:
            yield AdmissibleQuintuple(degree=d, weight=weight, A=A, B=B)


def is_admissible_quintuple(zq: ZigzagQuiver, quint: AdmissibleQuintuple) -> bool:
    """Block sizes and the per-vertex union constraints"""
    d, w = quint.degree, quint.weight
    first, second = vertex_pools(zq, d)
    if len(quint.A.blocks) != sum(w.p) or len(quint.B.blocks) != sum(w.q):
        return False
    P, Q = w.P, w.Q
    for pools, dist, owner, dims in ((first, quint.A, P, zq.n), (second, quint.B, Q, zq.m)):
        covered: list[set[int]] = [set() for _ in pools]
        for bi, block in enumerate(dist.blocks, start=1):
            vertex = owner.slot_of(bi)
            if len(block) != dims[vertex - 1]:
                return False
            covered[vertex - 1].update(block)
        if any(c != set(pool) for c, pool in zip(covered, pools)):
            return False
    return True


def degree_range(zq: ZigzagQuiver, bound_rows: int, bound_cols: int | None = None) -> Iterator[MultiDegree]:
    """Non-zero multidegrees with t+2r ≤ bound_rows and t+2s ≤ bound_cols

    Ordered by total degree, then lexicographically.
    """
    if bound_cols is None:
        bound_cols = bound_rows
    d1, d2, d3 = zq.arrow_counts
    tmax = min(bound_rows, bound_cols)
    found = []
    for t_vec in product(range(tmax + 1), repeat=d1):
        t = sum(t_vec)
        if t > tmax:
            continue
        for r_vec in product(range((bound_rows - t) // 2 + 1), repeat=d2):
            r = sum(r_vec)
            if t + 2 * r > bound_rows:
                continue
            for s_vec in product(range((bound_cols - t) // 2 + 1), repeat=d3):
                s = sum(s_vec)
                if t + 2 * s > bound_cols or t + r + s == 0:
                    continue
                found.append(MultiDegree(t=t_vec, r=r_vec, s=s_vec))
    found.sort(key=lambda m: (sum(m.totals), m.t, m.r, m.s))
    yield from found


# ============================================================================
# Maximal multipartitions
# ============================================================================


class MaximalData(msgspec.Struct, frozen=True):
    """γ_max, δ_max, λ_max with their components and block placements

    Parts are listed per arrow in order of component minima; ``gamma_parts[k]`` is the
    k-th component, lying in A_{a1[k]} ∩ B_{b1[k]} and belonging to X-arrow
    ``x_arrow[k]``. Likewise t+Δ_k ⊆ A_{a2[k]}, t+r+Δ_k ⊆ A_{a3[k]}, t+Λ_k ⊆ B_{b2[k]},
    t+s+Λ_k ⊆ B_{b3[k]}.
    """

    gamma: Multipartition
    delta: Multipartition
    lam: Multipartition
    gamma_parts: tuple[tuple[int, ...], ...]
    delta_parts: tuple[tuple[int, ...], ...]
    lam_parts: tuple[tuple[int, ...], ...]
    a1: tuple[int, ...]
    b1: tuple[int, ...]
    a2: tuple[int, ...]
    a3: tuple[int, ...]
    b2: tuple[int, ...]
    b3: tuple[int, ...]
    x_arrow: tuple[int, ...]
    y_arrow: tuple[int, ...]
    z_arrow: tuple[int, ...]

    def young_order(self) -> int:
        return self.gamma.young_order() * self.delta.young_order() * self.lam.young_order()

    def is_consecutive(self) -> bool:
        """Components coincide with the intervals determined by the part sizes"""
        return all(
            parts == mp.distribution().blocks
            for parts, mp in (
                (self.gamma_parts, self.gamma),
                (self.delta_parts, self.delta),
                (self.lam_parts, self.lam),
            )
        )


def _group(components: Sequence[tuple[int, ...]], dist: Distribution, arrows: int) -> tuple[Multipartition, tuple[int, ...]]:
    groups: list[list[int]] = [[] for _ in range(arrows)]
    owner = []
    for comp in components:
        arrow = dist.slot_of(comp[0])
        groups[arrow - 1].append(len(comp))
        owner.append(arrow)
    return Multipartition.of(groups, ordered=False), tuple(owner)


def maximal_multipartitions(quint: AdmissibleQuintuple) -> MaximalData:
    d, A, B = quint.degree, quint.A, quint.B
    t, r, s = d.totals
    T, R, S = d.T, d.R, d.S

    gamma_dist = intersect(window(A, 0, t), intersect(window(B, 0, t), T))
    delta_dist = intersect(window(A, t, r), intersect(window(A, t + r, r), R))
    lam_dist = intersect(window(B, t, s), intersect(window(B, t + s, s), S))

    gamma, x_arrow = _group(gamma_dist.blocks, T, len(d.t))
    delta, y_arrow = _group(delta_dist.blocks, R, len(d.r))
    lam, z_arrow = _group(lam_dist.blocks, S, len(d.s))

    return MaximalData(
        gamma=gamma,
        delta=delta,
        lam=lam,
        gamma_parts=gamma_dist.blocks,
        delta_parts=delta_dist.blocks,
        lam_parts=lam_dist.blocks,
        a1=tuple(A.block_of(c[0]) for c in gamma_dist.blocks),
        b1=tuple(B.block_of(c[0]) for c in gamma_dist.blocks),
        a2=tuple(A.block_of(t + c[0]) for c in delta_dist.blocks),
        a3=tuple(A.block_of(t + r + c[0]) for c in delta_dist.blocks),
        b2=tuple(B.block_of(t + c[0]) for c in lam_dist.blocks),
        b3=tuple(B.block_of(t + s + c[0]) for c in lam_dist.blocks),
        x_arrow=x_arrow,
        y_arrow=y_arrow,
        z_arrow=z_arrow,
    )
