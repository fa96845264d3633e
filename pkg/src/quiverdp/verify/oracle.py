"""Brute-force dimension of the semi-invariants of one multidegree

Two independent methods over the monomial basis of the multidegree component:

* ``derivations`` (rationals): f is SL-invariant iff every trace-zero elementary
  matrix of every group factor annihilates it infinitesimally;
* ``random-kernel`` (any field): kernel of g − 1 for sampled SL elements g, grown
  until the dimension is unchanged for three consecutive samples.

``spanning_check`` compares the result with the rank of the generators.
"""

from __future__ import annotations

import random
from typing import Any, Literal

import msgspec

from quiverdp.algebra.linalg import RowEchelon, span_rank
from quiverdp.algebra.polynomial import (
    GenericMatrix,
    Monomial,
    PolynomialAccumulator,
    SparsePolynomial,
    VarId,
    count_monomials,
    monomial_basis,
)
from quiverdp.algebra.scalars import QQ, ScalarField
from quiverdp.core.config import get_config
from quiverdp.core.errors import CapExceededError, UnsupportedError
from quiverdp.core.logging import get_logger
from quiverdp.core.report import REPORT_FORMAT_VERSION
from quiverdp.engine.admissible import MultiDegree, degree_range, solve_admissible
from quiverdp.engine.generator import generators_for_degree
from quiverdp.quiver.action import action_table, sample_group_element
from quiverdp.quiver.model import ZigzagQuiver

log = get_logger("oracle")

Method = Literal["derivations", "random-kernel"]
Verdict = Literal["full", "deficient", "budget-truncated"]

STABLE_SAMPLES = 3
MAX_KERNEL_SAMPLES = 60


# ============================================================================
# Monomial basis
# ============================================================================


def _arrow_matrices(zq: ZigzagQuiver, d: MultiDegree) -> list[tuple[GenericMatrix, int]]:
    if not d.matches(zq):
        raise ValueError(f"Multidegree {d} does not fit arrow counts {zq.arrow_counts}")
    pairs = []
    for family, degrees in (("X", d.t), ("Y", d.r), ("Z", d.s)):
        for arrow, deg in zip(zq.family(family), degrees):
            pairs.append((zq.matrix(arrow), deg))
    return pairs


def degree_basis(zq: ZigzagQuiver, d: MultiDegree, cap: int | None = None) -> list[Monomial]:
    """All monomials of multidegree d, guarded by the oracle cap"""
    cap = get_config().oracle_cap if cap is None else cap
    pairs = _arrow_matrices(zq, d)
    size = count_monomials([m.rows * m.cols for m, _ in pairs], [deg for _, deg in pairs])
    if size > cap:
        raise CapExceededError(f"Monomial basis of {d} too large for the oracle", bound=size, cap=cap)
    return monomial_basis([m.variables() for m, _ in pairs], [deg for _, deg in pairs])


# ============================================================================
# Operators on the basis
# ============================================================================


def _elementary(n: int) -> list[list[list[int]]]:
    """Basis of sl(n): E_ab (a ≠ b) and E_aa − E_{a+1,a+1}"""
    out = []
    for a in range(n):
        for b in range(n):
            if a != b:
                e = [[0] * n for _ in range(n)]
                e[a][b] = 1
                out.append(e)
    for a in range(n - 1):
        e = [[0] * n for _ in range(n)]
        e[a][a], e[a + 1][a + 1] = 1, -1
        out.append(e)
    return out


def _first_order(m: GenericMatrix, factor: int, e: list[list[int]], field: ScalarField) -> dict[VarId, SparsePolynomial]:
    """δX = L′X + XR′ for g = 1 + εE in the given factor"""
    left = right = None
    if m.head == factor:
        # plain head: −E; dual head: Eᵀ
        left = [[e[b][a] for b in range(m.rows)] for a in range(m.rows)] if m.head_dual else [[-c for c in row] for row in e]
    if m.tail == factor:
        # plain tail: E; dual tail: −Eᵀ
        right = [[-e[b][a] for b in range(m.cols)] for a in range(m.cols)] if m.tail_dual else e
    table = {}
    for i in range(1, m.rows + 1):
        for j in range(1, m.cols + 1):
            acc = PolynomialAccumulator(field)
            if left is not None:
                for a in range(1, m.rows + 1):
                    if left[i - 1][a - 1]:
                        acc.add_term(((m.var(a, j), 1),), left[i - 1][a - 1])
            if right is not None:
                for b in range(1, m.cols + 1):
                    if right[b - 1][j - 1]:
                        acc.add_term(((m.var(i, b), 1),), right[b - 1][j - 1])
            table[m.var(i, j)] = acc.result()
    return table


def _derive(mono: Monomial, table: dict[VarId, SparsePolynomial], field: ScalarField) -> SparsePolynomial:
    acc = PolynomialAccumulator(field)
    for k, (v, e) in enumerate(mono):
        delta = table.get(v)
        if delta is None or delta.is_zero():
            continue
        rest = mono[:k] + (((v, e - 1),) if e > 1 else ()) + mono[k + 1:]
        acc.add(delta * SparsePolynomial.monomial(field, rest), e)
    return acc.result()


def _add_operator(
    echelon: RowEchelon,
    basis: list[Monomial],
    images: list[SparsePolynomial],
) -> None:
    """Add the rows of the operator with column images ``images``"""
    rows: dict[Monomial, dict[int, Any]] = {}
    for col, image in enumerate(images):
        for mono, c in image.terms.items():
            rows.setdefault(mono, {})[col] = c
    for mono in sorted(rows):
        echelon.add(rows[mono])


def _derivation_dimension(zq: ZigzagQuiver, basis: list[Monomial]) -> int:
    field = QQ
    echelon = RowEchelon(field)
    matrices = zq.generic_matrices()
    for factor, n in enumerate(zq.group_dims(), start=1):
        for e in _elementary(n):
            table: dict[VarId, SparsePolynomial] = {}
            for m in matrices:
                if factor in (m.head, m.tail):
                    table.update(_first_order(m, factor, e, field))
            if table:
                _add_operator(echelon, basis, [_derive(mono, table, field) for mono in basis])
    return len(basis) - echelon.rank


def _kernel_dimension(zq: ZigzagQuiver, basis: list[Monomial], field: ScalarField, seed: int) -> int:
    rng = random.Random(seed)
    echelon = RowEchelon(field)
    matrices = zq.generic_matrices()
    dims = zq.group_dims()
    last, stable = len(basis), 0
    for _ in range(MAX_KERNEL_SAMPLES):
        g = sample_group_element(dims, field, rng, mode="SL")
        table = action_table(g, matrices)
        images = []
        for mono in basis:
            poly = SparsePolynomial.monomial(field, mono)
            images.append(poly.substitute(table) - poly)
        _add_operator(echelon, basis, images)
        current = len(basis) - echelon.rank
        stable = stable + 1 if current == last else 0
        last = current
        if stable >= STABLE_SAMPLES or current == 0:
            break
    return last


def oracle_dimension(
    zq: ZigzagQuiver,
    d: MultiDegree,
    method: Method | None = None,
    field: ScalarField | None = None,
    seed: int | None = None,
    cap: int | None = None,
) -> int:
    """dim of the SL-invariants in the multidegree-d component"""
    config = get_config()
    field = field or ScalarField(config.characteristic)
    method = method or ("derivations" if field.is_rational else "random-kernel")
    if method == "derivations" and not field.is_rational:
        raise UnsupportedError("The derivation oracle needs characteristic 0")
    basis = degree_basis(zq, d, cap)
    if method == "derivations":
        dim = _derivation_dimension(zq, basis)
    else:
        dim = _kernel_dimension(zq, basis, field, config.seed if seed is None else seed)
    log.debug("Oracle dimension", degree=str(d), method=method, basis=len(basis), dimension=dim)
    return dim


# ============================================================================
# Spanning
# ============================================================================


class OracleReport(msgspec.Struct):
    degree: str
    admissible: bool
    method: str
    dimension: int
    rank: int
    generators: int
    zero_generators: int
    verdict: Verdict
    quintuples: list[dict] = msgspec.field(default_factory=list)
    format_version: int = REPORT_FORMAT_VERSION

    @property
    def passed(self) -> bool:
        return self.verdict != "deficient"

    def to_dict(self) -> dict[str, Any]:
        return msgspec.to_builtins(self)


def spanning_check(
    zq: ZigzagQuiver,
    d: MultiDegree,
    method: Method | None = None,
    field: ScalarField | None = None,
    limit: int | None = None,
    jobs: int | None = None,
    seed: int | None = None,
) -> OracleReport:
    """Generator rank against oracle dimension for one multidegree"""
    field = field or ScalarField(get_config().characteristic)
    method = method or ("derivations" if field.is_rational else "random-kernel")
    dimension = oracle_dimension(zq, d, method, field, seed)
    admissible = solve_admissible(zq, d) is not None and not d.is_zero()
    batch = generators_for_degree(zq, d, field=field, limit=limit, jobs=jobs)
    rank = span_rank(batch.polynomials, field)
    if batch.truncated:
        verdict: Verdict = "budget-truncated"
    elif rank == dimension:
        verdict = "full"
    else:
        verdict = "deficient"
    report = OracleReport(
        degree=str(d),
        admissible=admissible,
        method=method,
        dimension=dimension,
        rank=rank,
        generators=len(batch.results),
        zero_generators=batch.zero_count,
        verdict=verdict,
        quintuples=[r.quintuple.to_dict() for r in batch.results],
    )
    log.info("Span checked", degree=str(d), dimension=dimension, rank=rank, verdict=verdict)
    return report


def span_sweep(
    zq: ZigzagQuiver,
    bound_rows: int,
    bound_cols: int | None = None,
    method: Method | None = None,
    field: ScalarField | None = None,
    jobs: int | None = None,
) -> list[OracleReport]:
    """spanning_check for every non-zero multidegree with t+2r ≤ bound_rows, t+2s ≤ bound_cols"""
    return [
        spanning_check(zq, d, method=method, field=field, jobs=jobs)
        for d in degree_range(zq, bound_rows, bound_cols)
    ]
