"""Group elements and their action on coordinate functions

A group element holds one invertible matrix per φ-orbit. On the generic matrix of an
arrow it acts by X ↦ L X R with

    L = g_head⁻¹    (plain head)       L = g_headᵀ       (dual head)
    R = g_tail      (plain tail)       R = (g_tail⁻¹)ᵀ   (dual tail)

which gives g⁻¹Xh, g⁻¹Y(g⁻¹)ᵀ and hᵀZh on the three zigzag families. Substituting
these entries into a polynomial f computes g·f, and apply(g, apply(h, f)) equals
apply(g·h, f).
"""

from __future__ import annotations

import random
from typing import Iterable, Literal, Sequence

import msgspec

from quiverdp.algebra.linalg import Matrix, determinant, identity, inverse, matmul, transpose
from quiverdp.algebra.polynomial import (
    GenericMatrix,
    PolynomialAccumulator,
    SparsePolynomial,
    VarId,
    substitute_linear,
)
from quiverdp.algebra.scalars import Scalar, ScalarField
from quiverdp.core.errors import QuiverDPError

Mode = Literal["SL", "GL"]

MAX_SAMPLE_RETRIES = 50


class GroupElement(msgspec.Struct, frozen=True):
    """One square matrix per φ-orbit (1-based factor index = position + 1)"""

    field: ScalarField
    factors: tuple[Matrix, ...]
    special: bool = False

    @classmethod
    def identity(cls, dims: Sequence[int], field: ScalarField) -> GroupElement:
        return cls(field, tuple(identity(n) for n in dims), special=True)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.factors)

    def factor(self, index: int) -> Matrix:
        return self.factors[index - 1]

    def determinants(self) -> tuple[Scalar, ...]:
        return tuple(determinant(f, self.field) for f in self.factors)

    def compose(self, other: GroupElement) -> GroupElement:
        if self.dims != other.dims:
            raise ValueError(f"Dimension mismatch: {self.dims} vs {other.dims}")
        return GroupElement(
            self.field,
            tuple(matmul(a, b, self.field) for a, b in zip(self.factors, other.factors)),
            special=self.special and other.special,
        )

    __mul__ = compose

    def inverse(self) -> GroupElement:
        return GroupElement(
            self.field, tuple(inverse(f, self.field) for f in self.factors), special=self.special
        )


def _sides(g: GroupElement, m: GenericMatrix) -> tuple[Matrix, Matrix]:
    field = g.field
    head, tail = g.factor(m.head), g.factor(m.tail)
    if len(head) != m.rows or len(tail) != m.cols:
        raise ValueError(
            f"Group factors of sizes {len(head)}, {len(tail)} do not act on "
            f"a {m.rows}x{m.cols} matrix of {m.family}{m.arrow}"
        )
    left = transpose(head) if m.head_dual else inverse(head, field)
    right = transpose(inverse(tail, field)) if m.tail_dual else tail
    return left, right


def act(g: GroupElement, m: GenericMatrix) -> dict[VarId, SparsePolynomial]:
    """Substitution realizing g on the variables of one generic matrix"""
    if m.head > len(g.factors) or m.tail > len(g.factors):
        raise ValueError(f"{m.family}{m.arrow} needs factor {max(m.head, m.tail)}, element has {len(g.factors)}")
    field = g.field
    left, right = _sides(g, m)
    table = {}
    for i in range(m.rows):
        for j in range(m.cols):
            acc = PolynomialAccumulator(field)
            for a in range(m.rows):
                la = left[i][a]
                if la == 0:
                    continue
                for b in range(m.cols):
                    c = la * right[b][j]
                    if c:
                        acc.add_term(((m.var(a + 1, b + 1), 1),), c)
            table[m.var(i + 1, j + 1)] = acc.result()
    return table


def action_table(g: GroupElement, matrices: Iterable[GenericMatrix]) -> dict[VarId, SparsePolynomial]:
    table: dict[VarId, SparsePolynomial] = {}
    for m in matrices:
        table.update(act(g, m))
    return table


def apply(g: GroupElement, f: SparsePolynomial, matrices: Iterable[GenericMatrix]) -> SparsePolynomial:
    """g·f for f in the coordinates of the given matrices"""
    return substitute_linear(f.reduce_mod(g.field), action_table(g, matrices))


# ============================================================================
# Sampling
# ============================================================================


def _random_invertible(n: int, field: ScalarField, rng: random.Random) -> Matrix:
    for _ in range(MAX_SAMPLE_RETRIES):
        m = [[field.random_element(rng) for _ in range(n)] for _ in range(n)]
        if determinant(m, field) != 0:
            return m
    raise QuiverDPError(f"No invertible {n}x{n} sample over {field} after {MAX_SAMPLE_RETRIES} tries")


def _random_diagonal(n: int, field: ScalarField, rng: random.Random) -> Matrix:
    m = identity(n)
    for i in range(n):
        v = 0
        while v == 0:
            v = field.random_element(rng)
        m[i][i] = v
    return m


def _to_special(m: Matrix, field: ScalarField) -> Matrix:
    """Divide the first column by the determinant"""
    inv = field.inv(determinant(m, field))
    return [[field.mul(row[0], inv), *row[1:]] for row in m]


def sample_group_element(
    dims: Sequence[int],
    field: ScalarField,
    seed: int | random.Random = 0,
    mode: Mode = "SL",
    diagonal: bool = False,
) -> GroupElement:
    """Seed-determined random element of ∏ SL(n) or ∏ GL(n)

    ``diagonal`` samples a torus element (in SL mode its first entry is rescaled).
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    factors = []
    for n in dims:
        m = _random_diagonal(n, field, rng) if diagonal else _random_invertible(n, field, rng)
        if mode == "SL":
            m = _to_special(m, field)
        factors.append(m)
    return GroupElement(field, tuple(factors), special=mode == "SL")
