"""Sampled invariance and weight checks

A layout is anything with ``generic_matrices()`` and ``group_dims()``: a ZigzagQuiver
for generators, a MixedQuiver for Φ-images on the source side.
"""

from __future__ import annotations

import random
from typing import Protocol, Sequence

from quiverdp.algebra.polynomial import GenericMatrix, SparsePolynomial, render
from quiverdp.algebra.scalars import ScalarField
from quiverdp.core.config import get_config
from quiverdp.core.logging import get_logger
from quiverdp.core.report import CheckOutcome, CheckReport
from quiverdp.quiver.action import GroupElement, apply, sample_group_element
from quiverdp.quiver.reduction import ReductionMap, phi_substitute

log = get_logger("checks")


class Layout(Protocol):
    def generic_matrices(self) -> list[GenericMatrix]: ...

    def group_dims(self) -> tuple[int, ...]: ...


def _describe(g: GroupElement) -> str:
    field = g.field
    return "; ".join(
        "[" + ", ".join("[" + ", ".join(field.render(c) for c in row) + "]" for row in factor) + "]"
        for factor in g.factors
    )


def _settings(samples, seed, field):
    config = get_config()
    return (
        config.samples if samples is None else samples,
        config.seed if seed is None else seed,
        field or ScalarField(config.characteristic),
    )


def check_invariance(
    f: SparsePolynomial,
    layout: Layout,
    samples: int | None = None,
    seed: int | None = None,
    field: ScalarField | None = None,
    name: str = "invariance",
) -> CheckOutcome:
    """g·f = f for sampled g in the product of special linear groups"""
    samples, seed, field = _settings(samples, seed, field)
    rng = random.Random(seed)
    matrices = layout.generic_matrices()
    target = f.reduce_mod(field)
    for i in range(samples):
        g = sample_group_element(layout.group_dims(), field, rng, mode="SL")
        if apply(g, target, matrices) != target:
            return CheckOutcome(
                name=name,
                passed=False,
                detail=f"not invariant under sample {i} over {field}",
                counterexample=_describe(g),
            )
    return CheckOutcome(name=name, passed=True, detail=f"{samples} SL samples over {field}")


def check_weight(
    f: SparsePolynomial,
    layout: Layout,
    epsilon: Sequence[int],
    samples: int | None = None,
    seed: int | None = None,
    field: ScalarField | None = None,
    name: str = "weight",
) -> CheckOutcome:
    """g·f = ∏ det(g_u)^{−ε_u} f for sampled g in the product of general linear groups

    Every other sample is a torus element. With g·f(v) = f(g⁻¹v), det(X) of an
    arrow V2 → V1 has weight (1, −1).
    """
    samples, seed, field = _settings(samples, seed, field)
    dims = layout.group_dims()
    if len(epsilon) != len(dims):
        raise ValueError(f"Weight has {len(epsilon)} entries, the group has {len(dims)} factors")
    rng = random.Random(seed)
    matrices = layout.generic_matrices()
    target = f.reduce_mod(field)
    for i in range(samples):
        g = sample_group_element(dims, field, rng, mode="GL", diagonal=bool(i % 2))
        factor = field.one
        for det, e in zip(g.determinants(), epsilon):
            factor = field.mul(factor, field.power(det, -e))
        if apply(g, target, matrices) != target.scale(factor):
            return CheckOutcome(
                name=name,
                passed=False,
                detail=f"weight {tuple(epsilon)} fails under sample {i} over {field}",
                counterexample=_describe(g),
            )
    return CheckOutcome(name=name, passed=True, detail=f"{samples} GL samples over {field}")


def phi_check(
    reduction: ReductionMap,
    generators: Sequence[SparsePolynomial],
    samples: int | None = None,
    seed: int | None = None,
    field: ScalarField | None = None,
) -> CheckReport:
    """Φ-images of target semi-invariants are semi-invariants of the source quiver"""
    report = CheckReport(title="phi images")
    for k, f in enumerate(generators, start=1):
        image = phi_substitute(reduction, f)
        outcome = check_invariance(image, reduction.source, samples, seed, field, name=f"phi[{k}]")
        if not outcome.passed and outcome.counterexample:
            outcome.counterexample = f"{render(image)} | {outcome.counterexample}"
        report.checks.append(outcome)
    log.info("Phi images checked", generators=len(generators), passed=report.passed)
    return report
