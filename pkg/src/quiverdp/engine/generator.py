"""Generating semi-invariants DP^{A,B} of a zigzag quiver

Every admissible quintuple (t̲, r̲, s̲, A, B) yields sparse block matrices with a single
generic block each, placed by the A- and B-blocks containing the components of the
maximal intersections. Partially linearizing DP on them gives the generator. All
generators of one multidegree span the semi-invariants of that multidegree.

The reported sign sgn(π₁π₂) is read off the relabelled quintuple whose maximal
intersections are consecutive intervals (π₁ sends A onto the dimension-sorted
distribution N, keeping the order inside each block). The generator equals
sgn(π₁π₂)/|S_Γ×S_Δ×S_Λ| times the F-sum over S_A×S_B on that quintuple.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from itertools import islice
from typing import Any, Sequence

import msgspec

from quiverdp.algebra.combinatorics import (
    Distribution,
    Multipartition,
    Permutation,
    apply_permutation,
    determined_distribution,
    product_permutation,
)
from quiverdp.algebra.polynomial import SparsePolynomial, render
from quiverdp.algebra.scalars import QQ, ScalarField
from quiverdp.core.config import get_config
from quiverdp.core.logging import get_logger
from quiverdp.engine.admissible import (
    AdmissibleQuintuple,
    AdmissibleWeight,
    MaximalData,
    MultiDegree,
    enumerate_quintuples,
    maximal_multipartitions,
    solve_admissible,
)
from quiverdp.engine.dp import dp_multilinear
from quiverdp.quiver.model import RelativeWeight, ZigzagQuiver

log = get_logger("generator")

BlockMatrix = list[list[Any]]


# ============================================================================
# Block matrices
# ============================================================================


def _place(size: tuple[int, int], rows: tuple[int, ...], cols: tuple[int, ...], block) -> BlockMatrix:
    matrix: BlockMatrix = [[0] * size[1] for _ in range(size[0])]
    if len(block) != len(rows) or (block and len(block[0]) != len(cols)):
        raise ValueError(
            f"A {len(block)}x{len(block[0]) if block else 0} block does not fit "
            f"a {len(rows)}x{len(cols)} slot"
        )
    for i, row in enumerate(rows):
        for j, col in enumerate(cols):
            matrix[row - 1][col - 1] = block[i][j]
    return matrix


def _slot(dist: Distribution, index: int, what: str) -> tuple[int, ...]:
    if not 1 <= index <= len(dist.blocks):
        raise ValueError(f"{what} placement {index} outside 1..{len(dist.blocks)}")
    return dist.blocks[index - 1]


def build_block_matrices(
    zq: ZigzagQuiver,
    quint: AdmissibleQuintuple,
    data: MaximalData,
    field: ScalarField = QQ,
) -> tuple[list[BlockMatrix], list[BlockMatrix], list[BlockMatrix]]:
    """[X]_k, [Y]_k, [Z]_k with one generic block each at the recorded placements"""
    t, r, s = quint.degree.totals
    N = determined_distribution(quint.A.sizes)
    M = determined_distribution(quint.B.sizes)
    rows, cols = t + 2 * r, t + 2 * s

    def generic(family: str, index: int):
        return zq.matrix(zq.lookup(family, index)).entries(field)

    xs = [
        _place((rows, cols), _slot(N, a, "Row"), _slot(M, b, "Column"), generic("X", arrow))
        for arrow, a, b in zip(data.x_arrow, data.a1, data.b1)
    ]
    ys = [
        _place((rows, rows), _slot(N, a, "Row"), _slot(N, b, "Column"), generic("Y", arrow))
        for arrow, a, b in zip(data.y_arrow, data.a2, data.a3)
    ]
    zs = [
        _place((cols, cols), _slot(M, a, "Row"), _slot(M, b, "Column"), generic("Z", arrow))
        for arrow, a, b in zip(data.z_arrow, data.b2, data.b3)
    ]
    return xs, ys, zs


# ============================================================================
# Refinements of the maximal data
# ============================================================================


def _split(
    parts: tuple[tuple[int, ...], ...],
    maximal: Multipartition,
    refined: Multipartition,
    placements: Sequence[tuple[int, ...]],
    owners: tuple[int, ...],
    name: str,
) -> tuple[tuple[tuple[int, ...], ...], list[tuple[int, ...]], tuple[int, ...]]:
    if len(refined.parts_per_group) != len(maximal.parts_per_group):
        raise ValueError(f"{name} has {len(refined.parts_per_group)} groups, expected {len(maximal.parts_per_group)}")
    new_parts: list[tuple[int, ...]] = []
    new_places: list[list[int]] = [[] for _ in placements]
    new_owners: list[int] = []
    k = 0
    for gi, (big, small) in enumerate(zip(maximal.parts_per_group, refined.parts_per_group), start=1):
        queue = list(small)
        for size in big:
            component = parts[k]
            offset = 0
            while offset < size:
                if not queue:
                    raise ValueError(f"{name} does not refine the maximal multipartition")
                piece = queue.pop(0)
                if offset + piece > size:
                    raise ValueError(f"{name} does not refine the maximal multipartition")
                new_parts.append(component[offset:offset + piece])
                for slot, place in zip(new_places, placements):
                    slot.append(place[k])
                new_owners.append(gi)
                offset += piece
            k += 1
        if queue:
            raise ValueError(f"{name} does not refine the maximal multipartition")
    return tuple(new_parts), [tuple(p) for p in new_places], tuple(new_owners)


def refine(data: MaximalData, gamma: Multipartition, delta: Multipartition, lam: Multipartition) -> MaximalData:
    """Octuple data for γ ≤ γ_max, δ ≤ δ_max, λ ≤ λ_max

    Parts of each group split the maximal parts of that group in order; every piece
    inherits the placements of the component it came from.
    """
    g_parts, (a1, b1), x_arrow = _split(data.gamma_parts, data.gamma, gamma, (data.a1, data.b1), data.x_arrow, "γ")
    d_parts, (a2, a3), y_arrow = _split(data.delta_parts, data.delta, delta, (data.a2, data.a3), data.y_arrow, "δ")
    l_parts, (b2, b3), z_arrow = _split(data.lam_parts, data.lam, lam, (data.b2, data.b3), data.z_arrow, "λ")
    return MaximalData(
        gamma=gamma, delta=delta, lam=lam,
        gamma_parts=g_parts, delta_parts=d_parts, lam_parts=l_parts,
        a1=a1, b1=b1, a2=a2, a3=a3, b2=b2, b3=b3,
        x_arrow=x_arrow, y_arrow=y_arrow, z_arrow=z_arrow,
    )


# ============================================================================
# Generators
# ============================================================================


def _evaluate(zq, quint, data, field, cap) -> SparsePolynomial:
    if quint.degree.is_zero():
        return SparsePolynomial.zero(field)
    if cap is None:
        cap = get_config().cap_size
    xs, ys, zs = build_block_matrices(zq, quint, data, field)
    return dp_multilinear(xs, ys, zs, data.gamma, data.delta, data.lam, field=field, cap=cap)


def build_generator(
    zq: ZigzagQuiver,
    quint: AdmissibleQuintuple,
    field: ScalarField = QQ,
    cap: int | None = None,
) -> SparsePolynomial:
    """DP^{A,B}_{t̲,r̲,s̲}: the linearized DP of the block matrices at γ_max, δ_max, λ_max

    No extra sign is applied: the value already equals sgn(π₁π₂)·f_sum/(|S_Γ||S_Δ||S_Λ|),
    which is ``normalized_f_sum``. ``generator_sign`` reports sgn(π₁π₂) as metadata.
    """
    return _evaluate(zq, quint, maximal_multipartitions(quint), field, cap)


def refined_generator(
    zq: ZigzagQuiver,
    quint: AdmissibleQuintuple,
    gamma: Multipartition,
    delta: Multipartition,
    lam: Multipartition,
    field: ScalarField = QQ,
    cap: int | None = None,
) -> SparsePolynomial:
    """DP^{A,B}_{γ,δ,λ} for a refinement of the maximal multipartitions"""
    data = refine(maximal_multipartitions(quint), gamma, delta, lam)
    return _evaluate(zq, quint, data, field, cap)


def refinement_factor(quint: AdmissibleQuintuple, gamma: Multipartition, delta: Multipartition, lam: Multipartition) -> int:
    """|S_Γmax||S_Δmax||S_Λmax| / |S_Γ||S_Δ||S_Λ|"""
    data = maximal_multipartitions(quint)
    refine(data, gamma, delta, lam)
    return data.young_order() // (gamma.young_order() * delta.young_order() * lam.young_order())


def relative_weight(quint: AdmissibleQuintuple) -> RelativeWeight:
    """ε̲ = (p̲, −q̲)"""
    return RelativeWeight(quint.weight.epsilon)


# ============================================================================
# Relabelling and sign
# ============================================================================


class Relabelling(msgspec.Struct, frozen=True):
    """ν_A = ν₁×ν₂×ν₂, ν_B = ν₁×ν₃×ν₃ and the relabelled quintuple (A^{ν_A}, B^{ν_B})"""

    nu_a: Permutation
    nu_b: Permutation
    quintuple: AdmissibleQuintuple

    @property
    def is_identity(self) -> bool:
        return self.nu_a == Permutation.identity(self.nu_a.n) and self.nu_b == Permutation.identity(self.nu_b.n)


def _interval_map(parts: tuple[tuple[int, ...], ...], mp: Multipartition, n: int) -> Permutation:
    images = list(range(1, n + 1))
    for interval, component in zip(mp.distribution().blocks, parts):
        for l, target in zip(interval, component):
            images[l - 1] = target
    return Permutation(tuple(images))


def canonical_relabelling(quint: AdmissibleQuintuple) -> Relabelling:
    """Block-preserving relabelling that makes the maximal intersections consecutive

    ν₁ maps the k-th interval determined by γ_max increasingly onto the k-th component
    of A′∩B′∩T, likewise ν₂ for Δ and ν₃ for Λ. The block matrices, hence the
    generator, are unchanged.
    """
    t, r, s = quint.degree.totals
    data = maximal_multipartitions(quint)
    nu1 = _interval_map(data.gamma_parts, data.gamma, t)
    nu2 = _interval_map(data.delta_parts, data.delta, r)
    nu3 = _interval_map(data.lam_parts, data.lam, s)
    nu_a = product_permutation(nu1, nu2, nu2)
    nu_b = product_permutation(nu1, nu3, nu3)
    relabelled = AdmissibleQuintuple(
        degree=quint.degree,
        weight=quint.weight,
        A=apply_permutation(quint.A, nu_a),
        B=apply_permutation(quint.B, nu_b),
    )
    return Relabelling(nu_a=nu_a, nu_b=nu_b, quintuple=relabelled)


def sorting_permutation(dist: Distribution) -> Permutation:
    """π with π(l) = start of block D|l| of the determined distribution + D⟨l⟩ − 1"""
    target = determined_distribution(dist.sizes)
    return Permutation(
        tuple(
            target.blocks[dist.block_of(l) - 1][0] + dist.pos_in_block(l) - 1
            for l in range(1, dist.ground + 1)
        )
    )


def quintuple_sign(quint: AdmissibleQuintuple) -> int:
    """sgn(π₁π₂) of the quintuple as given"""
    return sorting_permutation(quint.A).sign() * sorting_permutation(quint.B).sign()


def generator_sign(quint: AdmissibleQuintuple) -> int:
    """sgn(π₁π₂) of the relabelled quintuple"""
    return quintuple_sign(canonical_relabelling(quint).quintuple)


# ============================================================================
# Batches
# ============================================================================


class GeneratorRecord(msgspec.Struct):
    """Serializable generator with its metadata header"""

    degree: str
    p: list[int]
    q: list[int]
    A: list[list[int]]
    B: list[list[int]]
    sign: int
    weight: list[int]
    generator: str


class GeneratorResult(msgspec.Struct):
    quintuple: AdmissibleQuintuple
    polynomial: Any
    sign: int

    def record(self) -> GeneratorRecord:
        q = self.quintuple
        return GeneratorRecord(
            degree=str(q.degree),
            p=list(q.weight.p),
            q=list(q.weight.q),
            A=[list(b) for b in q.A.blocks],
            B=[list(b) for b in q.B.blocks],
            sign=self.sign,
            weight=list(q.weight.epsilon),
            generator=render(self.polynomial),
        )


class GeneratorBatch(msgspec.Struct):
    """All non-zero generators of one multidegree"""

    degree: MultiDegree
    weight: AdmissibleWeight | None
    results: list[GeneratorResult] = msgspec.field(default_factory=list)
    quintuples: int = 0
    zero_count: int = 0
    truncated: bool = False

    @property
    def admissible(self) -> bool:
        return self.weight is not None

    @property
    def polynomials(self) -> list[SparsePolynomial]:
        return [r.polynomial for r in self.results]

    def to_dict(self) -> dict[str, Any]:
        return {
            "degree": str(self.degree),
            "admissible": self.admissible,
            "quintuples": self.quintuples,
            "zero": self.zero_count,
            "truncated": self.truncated,
            "generators": [msgspec.to_builtins(r.record()) for r in self.results],
        }


def _generate_one(args: tuple[ZigzagQuiver, AdmissibleQuintuple, ScalarField, int]) -> tuple[SparsePolynomial, int]:
    zq, quint, field, cap = args
    return build_generator(zq, quint, field, cap), generator_sign(quint)


def resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        jobs = get_config().jobs
    return jobs if jobs > 0 else os.cpu_count() or 1


def generators_for_degree(
    zq: ZigzagQuiver,
    d: MultiDegree,
    field: ScalarField = QQ,
    limit: int | None = None,
    jobs: int | None = None,
    cap: int | None = None,
) -> GeneratorBatch:
    """Generators of every canonical quintuple of multidegree d, zero ones dropped

    Results keep the enumeration order whatever the worker count. ``limit`` (0 for
    none) truncates the quintuple stream.
    """
    config = get_config()
    limit = config.limit if limit is None else limit
    cap = config.cap_size if cap is None else cap
    weight = solve_admissible(zq, d)
    if weight is None or d.is_zero():
        log.info("Multidegree not admissible", degree=str(d))
        return GeneratorBatch(degree=d, weight=None)

    stream = enumerate_quintuples(zq, d, weight)
    quints = list(islice(stream, limit + 1)) if limit else list(stream)
    truncated = bool(limit) and len(quints) > limit
    if truncated:
        quints = quints[:limit]

    items = [(zq, q, field, cap) for q in quints]
    workers = min(resolve_jobs(jobs), len(items))
    if workers <= 1:
        outputs = [_generate_one(item) for item in items]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_generate_one, items))

    batch = GeneratorBatch(degree=d, weight=weight, quintuples=len(quints), truncated=truncated)
    for quint, (poly, sign) in zip(quints, outputs):
        if poly.is_zero():
            batch.zero_count += 1
            continue
        batch.results.append(GeneratorResult(quintuple=quint, polynomial=poly, sign=sign))
    log.info(
        "Generators computed",
        degree=str(d),
        quintuples=len(quints),
        nonzero=len(batch.results),
        zero=batch.zero_count,
        truncated=truncated,
        workers=max(workers, 1),
    )
    return batch
