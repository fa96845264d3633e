"""The term function F^{A,B} and the rational cross-checks built on it

    F(ρ₁, ρ₂) = sgn(ρ₁ρ₂) ∏_{i≤t} x^{T|i|}_{A⟨ρ₁(i)⟩, B⟨ρ₂(i)⟩}
                          ∏_{j≤r} y^{R|j|}_{A⟨ρ₁(t+j)⟩, A⟨ρ₁(t+r+j)⟩}
                          ∏_{k≤s} z^{S|k|}_{B⟨ρ₂(t+k)⟩, B⟨ρ₂(t+s+k)⟩}

Everything here divides by subgroup orders and is defined over the rationals only.
"""

from __future__ import annotations

import random
from fractions import Fraction

from quiverdp.algebra.combinatorics import (
    Distribution,
    Multipartition,
    Permutation,
    intersect,
    product_permutation,
    young_subgroup,
)
from quiverdp.algebra.polynomial import PolynomialAccumulator, SparsePolynomial, VarId, mono_from_vars
from quiverdp.algebra.scalars import QQ, ScalarField
from quiverdp.core.errors import CapExceededError, UnsupportedError
from quiverdp.core.report import CheckReport
from quiverdp.engine.admissible import AdmissibleQuintuple, maximal_multipartitions
from quiverdp.engine.generator import canonical_relabelling, quintuple_sign

# Bound on the number of F-terms a single sum may visit
TERM_LIMIT = 2_000_000


def _require_rational(field: ScalarField, what: str) -> None:
    if not field.is_rational:
        raise UnsupportedError(f"{what} is only defined over the rationals, not in characteristic {field.characteristic}")


def f_term(quint: AdmissibleQuintuple, rho1: Permutation, rho2: Permutation) -> tuple[int, tuple]:
    """F^{A,B}(ρ₁, ρ₂) as (sign, monomial)"""
    d, A, B = quint.degree, quint.A, quint.B
    t, r, s = d.totals
    T, R, S = d.T, d.R, d.S
    variables = []
    for i in range(1, t + 1):
        variables.append(VarId("X", T.slot_of(i), A.pos_in_block(rho1(i)), B.pos_in_block(rho2(i))))
    for j in range(1, r + 1):
        variables.append(
            VarId("Y", R.slot_of(j), A.pos_in_block(rho1(t + j)), A.pos_in_block(rho1(t + r + j)))
        )
    for k in range(1, s + 1):
        variables.append(
            VarId("Z", S.slot_of(k), B.pos_in_block(rho2(t + k)), B.pos_in_block(rho2(t + s + k)))
        )
    return rho1.sign() * rho2.sign(), mono_from_vars(variables)


def f_polynomial(quint: AdmissibleQuintuple, rho1: Permutation, rho2: Permutation, field: ScalarField = QQ) -> SparsePolynomial:
    sign, mono = f_term(quint, rho1, rho2)
    return SparsePolynomial.monomial(field, mono, sign)


def _guard(count: int) -> None:
    if count > TERM_LIMIT:
        raise CapExceededError("F-sum too large", bound=count, cap=TERM_LIMIT)


def f_sum(quint: AdmissibleQuintuple, field: ScalarField = QQ) -> SparsePolynomial:
    """Σ over S_A × S_B of F^{A,B}"""
    _guard(quint.A.young_order() * quint.B.young_order())
    left = list(young_subgroup(quint.A))
    right = list(young_subgroup(quint.B))
    acc = PolynomialAccumulator(field)
    for rho1 in left:
        for rho2 in right:
            sign, mono = f_term(quint, rho1, rho2)
            acc.add_term(mono, sign)
    return acc.result()


def normalized_f_sum(quint: AdmissibleQuintuple, field: ScalarField = QQ) -> SparsePolynomial:
    """sgn(π₁π₂)/(|S_Γmax||S_Δmax||S_Λmax|) · Σ F on the relabelled quintuple"""
    _require_rational(field, "The normalized F-sum")
    relabelled = canonical_relabelling(quint).quintuple
    order = maximal_multipartitions(relabelled).young_order()
    return f_sum(relabelled, field).scale(Fraction(quintuple_sign(relabelled), order))


def _stacked(first: Distribution, second: Distribution, offset: int, ground: int) -> Distribution:
    """first on [1,t], second shifted by t and by t+len(second)"""
    n = second.ground
    blocks = list(first.blocks)
    blocks += [tuple(offset + l for l in b) for b in second.blocks]
    blocks += [tuple(offset + n + l for l in b) for b in second.blocks]
    return Distribution(blocks=tuple(blocks), ground=ground)


def h_function(
    quint: AdmissibleQuintuple,
    gamma: Multipartition,
    delta: Multipartition,
    lam: Multipartition,
    field: ScalarField = QQ,
) -> SparsePolynomial:
    """H^{A,B}_{γ,δ,λ}

    (1/c) Σ F(τ₁·(id×id×σ₂), τ₂·(σ₁×id×σ₃)) over τ₁ ∈ S_A, τ₂ ∈ S_B, σ₁ ∈ S_Γ,
    σ₂ ∈ S_Δ, σ₃ ∈ S_Λ, with c = |S_A ∩ (S_Γ×S_Δ×S_Δ)|·|S_B ∩ (S_Γ×S_Λ×S_Λ)|.
    """
    _require_rational(field, "H")
    d = quint.degree
    if gamma.totals != d.t or delta.totals != d.r or lam.totals != d.s:
        raise ValueError(f"Multipartitions do not partition {d}")
    t, r, s = d.totals
    G, D, L = gamma.distribution(), delta.distribution(), lam.distribution()
    c = (
        intersect(quint.A, _stacked(G, D, t, t + 2 * r)).young_order()
        * intersect(quint.B, _stacked(G, L, t, t + 2 * s)).young_order()
    )
    _guard(
        quint.A.young_order() * quint.B.young_order()
        * G.young_order() * D.young_order() * L.young_order()
    )

    id_t, id_r, id_s = Permutation.identity(t), Permutation.identity(r), Permutation.identity(s)
    left_twists = [product_permutation(id_t, id_r, s2) for s2 in young_subgroup(D)]
    right_twists = [
        product_permutation(s1, id_s, s3) for s1 in young_subgroup(G) for s3 in young_subgroup(L)
    ]
    left = [tau1 * w for tau1 in young_subgroup(quint.A) for w in left_twists]
    right = [tau2 * w for tau2 in young_subgroup(quint.B) for w in right_twists]

    acc = PolynomialAccumulator(field)
    for rho1 in left:
        for rho2 in right:
            sign, mono = f_term(quint, rho1, rho2)
            acc.add_term(mono, sign)
    return acc.result().scale(Fraction(1, c))


# ============================================================================
# Symmetries of F
# ============================================================================


def _random_young(dist: Distribution, rng: random.Random) -> Permutation:
    images = list(range(1, dist.ground + 1))
    for block in dist.blocks:
        shuffled = list(block)
        rng.shuffle(shuffled)
        for l, img in zip(block, shuffled):
            images[l - 1] = img
    return Permutation(tuple(images))


def _random_perm(n: int, rng: random.Random) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def f_symmetry_check(quint: AdmissibleQuintuple, trials: int = 10, seed: int = 0) -> CheckReport:
    """F(ρ₁·(π×id×id), ρ₂) = F(ρ₁, ρ₂·(π⁻¹×id×id)) for π ∈ S_T, and invariance of F
    under π×π on the Y-copies (π ∈ S_R) and on the Z-copies (π ∈ S_S)

    ρ₁, ρ₂ range over the full symmetric groups; monomials are compared formally.
    """
    rng = random.Random(seed)
    d = quint.degree
    t, r, s = d.totals
    id_t, id_r, id_s = Permutation.identity(t), Permutation.identity(r), Permutation.identity(s)
    report = CheckReport(title=f"F symmetries for {d}")
    failures = {"x-shift": None, "y-pairs": None, "z-pairs": None}

    for trial in range(trials):
        rho1 = _random_perm(t + 2 * r, rng)
        rho2 = _random_perm(t + 2 * s, rng)
        pi = _random_young(d.T, rng)
        lhs = f_term(quint, rho1 * product_permutation(pi, id_r, id_r), rho2)
        rhs = f_term(quint, rho1, rho2 * product_permutation(pi.inverse(), id_s, id_s))
        if lhs != rhs and failures["x-shift"] is None:
            failures["x-shift"] = f"trial {trial}: rho1={rho1} rho2={rho2} pi={pi}"

        pr = _random_young(d.R, rng)
        if f_term(quint, rho1 * product_permutation(id_t, pr, pr), rho2) != f_term(quint, rho1, rho2):
            failures["y-pairs"] = failures["y-pairs"] or f"trial {trial}: rho1={rho1} pi={pr}"

        ps = _random_young(d.S, rng)
        if f_term(quint, rho1, rho2 * product_permutation(id_t, ps, ps)) != f_term(quint, rho1, rho2):
            failures["z-pairs"] = failures["z-pairs"] or f"trial {trial}: rho2={rho2} pi={ps}"

    for name, counterexample in failures.items():
        report.add(name, counterexample is None, detail=f"{trials} trials", counterexample=counterexample)
    return report
