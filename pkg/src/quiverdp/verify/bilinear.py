"""Semi-invariants of several bilinear forms on a plane

For the zigzag quiver V → V* with d arrows (l1 = 0, l2 = 1, m = 2) every generator
DP^{0,B} is ±P^B, where for a distribution B of [1,2s] into pairs

    P^B = (1/c(B,s̲)) Σ_{τ∈S_B} sgn τ ∏_{l≤s} z^{S|l|}_{B⟨τ(l)⟩, B⟨τ(s+l)⟩}.

The suite checks the closed forms for s ≤ 2, the trace identity for the
distribution D, factorization of decomposable B, membership of every generator in
the algebra generated by det(Z_k) and tr(Z_{k1}J⋯Z_{kr}J), and the 2×2 transpose
identities used to reduce Z_kᵀ to Z_k inside traces.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial
from typing import Sequence

import msgspec

from quiverdp.algebra.combinatorics import Distribution, determined_distribution, young_subgroup
from quiverdp.algebra.linalg import in_span, poly_matmul, poly_trace
from quiverdp.algebra.polynomial import (
    GenericMatrix,
    PolynomialAccumulator,
    SparsePolynomial,
    VarId,
    mono_from_vars,
    polynomial_hash_key,
    render,
)
from quiverdp.algebra.scalars import QQ, ScalarField
from quiverdp.core.logging import get_logger
from quiverdp.core.report import CheckReport
from quiverdp.engine.admissible import AdmissibleQuintuple, MultiDegree, enumerate_quintuples, solve_admissible
from quiverdp.engine.generator import build_generator
from quiverdp.quiver.model import ZigzagQuiver, classify_zigzag
from quiverdp.quiver.samples import bilinear_forms

log = get_logger("bilinear")

J = ((0, 1), (-1, 0))


def z_matrix(k: int, field: ScalarField = QQ) -> list[list[SparsePolynomial]]:
    return GenericMatrix("Z", k, 2, 2).entries(field)


def z_var(k: int, i: int, j: int) -> VarId:
    return VarId("Z", k, i, j)


# ============================================================================
# P^B and friends
# ============================================================================


def c_value(B: Distribution, s_vec: Sequence[int]) -> int:
    """∏ over (k,i,j) of #{l : B|l|=i, B|l+s|=j, S|l|=k}!"""
    s = sum(s_vec)
    S = determined_distribution(s_vec)
    counts: dict[tuple[int, int, int], int] = {}
    for l in range(1, s + 1):
        key = (S.slot_of(l), B.block_of(l), B.block_of(l + s))
        counts[key] = counts.get(key, 0) + 1
    result = 1
    for n in counts.values():
        result *= factorial(n)
    return result


def p_b(B: Distribution, s_vec: Sequence[int], field: ScalarField = QQ) -> SparsePolynomial:
    s = sum(s_vec)
    if B.ground != 2 * s or any(size != 2 for size in B.sizes):
        raise ValueError(f"B must split [1,{2 * s}] into pairs, got {B.blocks}")
    S = determined_distribution(s_vec)
    acc = PolynomialAccumulator(field)
    for tau in young_subgroup(B):
        mono = mono_from_vars(
            z_var(S.slot_of(l), B.pos_in_block(tau(l)), B.pos_in_block(tau(s + l)))
            for l in range(1, s + 1)
        )
        acc.add_term(mono, tau.sign())
    return acc.result().scale(Fraction(1, c_value(B, s_vec)))


def d_distribution(s: int) -> Distribution:
    """D₁ = {1, 2s}, D_l = {l, s+l−1} for 2 ≤ l ≤ s"""
    if s < 1:
        raise ValueError("s must be positive")
    blocks = [(1, 2 * s)] + [(l, s + l - 1) for l in range(2, s + 1)]
    return Distribution.of(blocks, ground=2 * s)


class Decomposition(msgspec.Struct, frozen=True):
    """P^B = P^{B₁}_{s̲₁} · P^{B₂}_{s̲₂}"""

    first: tuple[tuple[int, ...], Distribution]
    second: tuple[tuple[int, ...], Distribution]


def _restrict(B: Distribution, s_vec: Sequence[int], positions: list[int]) -> tuple[tuple[int, ...], Distribution]:
    s = sum(s_vec)
    S = determined_distribution(s_vec)
    rank = {l: k for k, l in enumerate(positions, start=1)}
    n = len(positions)
    sub_vec = [0] * len(s_vec)
    for l in positions:
        sub_vec[S.slot_of(l) - 1] += 1

    def relabel(p: int) -> int:
        return rank[p] if p <= s else n + rank[p - s]

    blocks = [
        tuple(sorted(relabel(p) for p in block))
        for block in B.blocks
        if (block[0] if block[0] <= s else block[0] - s) in rank
    ]
    return tuple(sub_vec), Distribution.of(sorted(blocks), ground=2 * n)


def decompose(B: Distribution, s_vec: Sequence[int]) -> Decomposition | None:
    """Split B along a proper set of blocks closed under l ↔ s+l, or None if indecomposable"""
    s = sum(s_vec)
    parent = list(range(len(B.blocks) + 1))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for l in range(1, s + 1):
        a, b = find(B.block_of(l)), find(B.block_of(s + l))
        parent[a] = b
    root = find(1)
    inside = [l for l in range(1, s + 1) if find(B.block_of(l)) == root]
    outside = [l for l in range(1, s + 1) if find(B.block_of(l)) != root]
    if not outside:
        return None
    return Decomposition(first=_restrict(B, s_vec, inside), second=_restrict(B, s_vec, outside))


def psi_transpose(f: SparsePolynomial, beta: Sequence[bool]) -> SparsePolynomial:
    """z^k_{ij} ↦ z^k_{ji} for every arrow k with beta[k-1] set"""
    mapping = {
        v: VarId(v.family, v.arrow, v.col, v.row)
        for v in f.variables()
        if v.family == "Z" and v.arrow <= len(beta) and beta[v.arrow - 1]
    }
    return f.rename(mapping)


def _transpose(m):
    return [list(row) for row in zip(*m)]


def trace_word(word: Sequence[int], transposed: Sequence[bool] = (), field: ScalarField = QQ) -> SparsePolynomial:
    """tr(V_{k₁}J ⋯ V_{k_r}J) with V_k = Z_k, or Z_kᵀ where ``transposed`` is set"""
    result = None
    for pos, k in enumerate(word):
        z = z_matrix(k, field)
        if pos < len(transposed) and transposed[pos]:
            z = _transpose(z)
        factor = poly_matmul(z, J, field)
        result = factor if result is None else poly_matmul(result, factor, field)
    if result is None:
        return SparsePolynomial.constant(field, 2)
    return poly_trace(result, field)


def z_det(k: int, field: ScalarField = QQ) -> SparsePolynomial:
    z = z_matrix(k, field)
    return z[0][0] * z[1][1] - z[0][1] * z[1][0]


# ============================================================================
# Checks
# ============================================================================


def transpose_trace_identities(field: ScalarField = QQ) -> CheckReport:
    """The 2×2 identities tr(HᵀJ) = −tr(HJ) and tr(H₁ᵀJM) = tr(H₁JM) − tr(H₁J)tr(M)

    The variant with tr(H₂) in place of tr(M) on the right is recorded as failing.
    """
    report = CheckReport(title="transpose trace identities")
    h1, m, h2 = z_matrix(1, field), z_matrix(2, field), z_matrix(3, field)
    h1t = _transpose(h1)

    def tr(*factors):
        acc = factors[0]
        for f in factors[1:]:
            acc = poly_matmul(acc, f, field)
        return poly_trace(acc, field)

    lhs = tr(h1t, J)
    rhs = -tr(h1, J)
    report.add("tr(H^T J) = -tr(H J)", lhs == rhs, counterexample=None if lhs == rhs else render(lhs - rhs))

    lhs = tr(h1t, J, m)
    rhs = tr(h1, J, m) - tr(h1, J) * poly_trace(m, field)
    report.add(
        "tr(H1^T J M) = tr(H1 J M) - tr(H1 J) tr(M)",
        lhs == rhs,
        counterexample=None if lhs == rhs else render(lhs - rhs),
    )

    variant = tr(h1, J, m) - tr(h1, J) * poly_trace(h2, field)
    report.add(
        "tr(H1^T J M) = tr(H1 J M) - tr(H1 J) tr(H2) does not hold",
        lhs != variant,
        detail="M and H2 generic and independent",
    )
    return report


def _words(counts: tuple[int, ...]) -> list[tuple[int, ...]]:
    letters = [k for k, c in enumerate(counts, start=1) for _ in range(c)]
    return sorted(set(_permutations(letters)))


def _permutations(letters: list[int]):
    if not letters:
        yield ()
        return
    for i, k in enumerate(letters):
        if k in letters[:i]:
            continue
        for rest in _permutations(letters[:i] + letters[i + 1:]):
            yield (k, *rest)


def invariant_products(s_vec: Sequence[int], field: ScalarField = QQ) -> list[SparsePolynomial]:
    """Products of det(Z_k) and tr(Z-J words) with per-arrow degrees s̲"""
    d = len(s_vec)
    atoms: list[tuple[tuple[int, ...], SparsePolynomial]] = []
    for k in range(1, d + 1):
        if s_vec[k - 1] >= 2:
            deg = tuple(2 if i == k else 0 for i in range(1, d + 1))
            atoms.append((deg, z_det(k, field)))
    for counts in product(*(range(c + 1) for c in s_vec)):
        if sum(counts):
            for word in _words(counts):
                atoms.append((counts, trace_word(word, field=field)))

    results: dict[tuple, SparsePolynomial] = {}

    def extend(start: int, remaining: tuple[int, ...], current: SparsePolynomial) -> None:
        if not any(remaining):
            if not current.is_zero():
                results.setdefault(polynomial_hash_key(current), current)
            return
        for idx in range(start, len(atoms)):
            deg, atom = atoms[idx]
            if all(a <= b for a, b in zip(deg, remaining)):
                extend(idx, tuple(b - a for a, b in zip(deg, remaining)), current * atom)

    extend(0, tuple(s_vec), SparsePolynomial.constant(field, 1))
    return list(results.values())


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """All s̲ ∈ ℕ^parts with sum total"""
    return [c for c in product(range(total + 1), repeat=parts) if sum(c) == total]


def _quintuples(zq: ZigzagQuiver, s_vec: tuple[int, ...]) -> list[AdmissibleQuintuple]:
    d = MultiDegree(t=(), r=(), s=s_vec)
    weight = solve_admissible(zq, d)
    return [] if weight is None else list(enumerate_quintuples(zq, d, weight))


def pair_quintuple(zq: ZigzagQuiver, s_vec: Sequence[int], B: Distribution) -> AdmissibleQuintuple:
    """The quintuple (0, 0, s̲, ∅, B) of the bilinear-forms quiver"""
    degree = MultiDegree(t=(), r=(), s=tuple(s_vec))
    weight = solve_admissible(zq, degree)
    if weight is None:
        raise ValueError(f"{degree} is not admissible")
    return AdmissibleQuintuple(degree, weight, A=Distribution(blocks=(), ground=0), B=B)


def _up_to_sign(a: SparsePolynomial, b: SparsePolynomial) -> bool:
    return a == b or a == -b


def bilinear_example_suite(d: int = 1, max_s: int = 3, field: ScalarField = QQ) -> CheckReport:
    zq = classify_zigzag(bilinear_forms(d))
    report = CheckReport(title=f"bilinear forms d={d} s<={max_s}")
    zero = (0,) * (d - 1)

    # closed forms
    B1 = Distribution.of([(1, 2)], ground=2)
    z = z_matrix(1, field)
    expected = z[0][1] - z[1][0]
    gen = build_generator(zq, pair_quintuple(zq, (1, *zero), B1), field)
    report.add("P^B s=1 is z12 - z21", p_b(B1, (1, *zero), field) == expected)
    report.add("z12 - z21 = -tr(Z1 J)", expected == -trace_word((1,), field=field))
    report.add("generator s=1 is ±(z12 - z21)", _up_to_sign(gen, expected), counterexample=render(gen))
    if max_s >= 2:
        B2 = Distribution.of([(1, 2), (3, 4)], ground=4)
        s_vec = (2, *zero)
        gen = build_generator(zq, pair_quintuple(zq, s_vec, B2), field)
        report.add("c(B, s) = 2 for B = ({1,2},{3,4})", c_value(B2, s_vec) == 2)
        report.add("P^B s=2 is det(Z1)", p_b(B2, s_vec, field) == z_det(1, field))
        report.add("generator s=2 is ±det(Z1)", _up_to_sign(gen, z_det(1, field)), counterexample=render(gen))

    for s in range(1, max_s + 1):
        D = d_distribution(s)
        for s_vec in compositions(s, d):
            S = determined_distribution(s_vec)
            word = tuple(S.slot_of(l) for l in range(1, s + 1))
            lhs = trace_word(word, field=field)
            rhs = p_b(D, s_vec, field).scale((-1) ** s)
            report.add(
                f"tr(U...) = (-1)^s P^D for s={list(s_vec)}",
                lhs == rhs,
                counterexample=None if lhs == rhs else render(lhs - rhs),
            )

            basis = invariant_products(s_vec, field)
            # transposing Z_1 keeps the trace inside the algebra
            twisted = psi_transpose(lhs, (True,))
            report.add(
                f"tr(V...) with V_1 = Z_1^T in trace algebra for s={list(s_vec)}",
                twisted == trace_word(word, [k == 1 for k in word], field)
                and in_span(twisted, basis, field),
            )
            for quint in _quintuples(zq, s_vec):
                B = quint.B
                label = f"s={list(s_vec)} B={[list(b) for b in B.blocks]}"
                pb = p_b(B, s_vec, field)
                gen = build_generator(zq, quint, field)
                matches = _up_to_sign(gen, pb)
                report.add(
                    f"generator is ±P^B for {label}",
                    matches,
                    counterexample=None if matches else render(gen),
                )
                split = decompose(B, s_vec)
                if split is not None:
                    (v1, b1), (v2, b2) = split.first, split.second
                    product_value = p_b(b1, v1, field) * p_b(b2, v2, field)
                    report.add(f"P^B factors for {label}", pb == product_value)
                if not gen.is_zero():
                    report.add(f"generator in trace algebra for {label}", in_span(gen, basis, field))

    report.checks.extend(transpose_trace_identities(field).checks)
    log.info("Bilinear suite finished", d=d, max_s=max_s, checks=len(report.checks), passed=report.passed)
    return report
