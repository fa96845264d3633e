"""Exact linear algebra over a ScalarField

Sparse Gaussian elimination on row dicts ``{col: coeff}`` for ranks, kernels and span
membership, plus small dense helpers (products, determinants, inverses) for numeric
group elements.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from quiverdp.algebra.polynomial import Monomial, SparsePolynomial
from quiverdp.algebra.scalars import Scalar, ScalarField

Matrix = list[list]


class RowEchelon:
    """Incremental sparse row reduction; pivot rows are normalized to leading 1"""

    def __init__(self, field: ScalarField):
        self.field = field
        self.pivots: dict[int, dict[int, Scalar]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict[int, Scalar]) -> dict[int, Scalar]:
        """Remainder of row modulo the current pivots"""
        f = self.field
        r = {c: v for c, v in row.items() if v != 0}
        for pc in sorted(self.pivots):
            if not r:
                break
            coeff = r.get(pc, 0)
            if coeff == 0:
                continue
            for c, pv in self.pivots[pc].items():
                v = f.normalize(r.get(c, 0) - coeff * pv)
                if v:
                    r[c] = v
                else:
                    r.pop(c, None)
        return r

    def add(self, row: dict[int, Scalar]) -> bool:
        """Insert a row; True when it increased the rank"""
        r = self.reduce(row)
        if not r:
            return False
        f = self.field
        pivot_col = min(r)
        inv = f.inv(r[pivot_col])
        self.pivots[pivot_col] = {c: f.mul(v, inv) for c, v in r.items()}
        return True


def rank_of_rows(rows: Iterable[dict[int, Scalar]], field: ScalarField) -> int:
    echelon = RowEchelon(field)
    for row in rows:
        echelon.add(row)
    return echelon.rank


def kernel_dimension(columns: Sequence[dict], field: ScalarField) -> int:
    """dim ker of the map whose column images are given as sparse vectors"""
    return len(columns) - rank_of_rows(columns, field)


# ============================================================================
# Polynomial spans
# ============================================================================


class MonomialIndex:
    """Assigns column numbers to monomials in first-seen order"""

    def __init__(self):
        self.columns: dict[Monomial, int] = {}

    def __call__(self, mono: Monomial) -> int:
        col = self.columns.get(mono)
        if col is None:
            col = len(self.columns)
            self.columns[mono] = col
        return col

    def row(self, poly: SparsePolynomial) -> dict[int, Scalar]:
        return {self(m): c for m, c in poly.terms.items()}


def span_rank(polys: Sequence[SparsePolynomial], field: ScalarField) -> int:
    """Rank of the coefficient matrix of polys"""
    index = MonomialIndex()
    return rank_of_rows((index.row(p.reduce_mod(field)) for p in polys), field)


def in_span(target: SparsePolynomial, basis: Sequence[SparsePolynomial], field: ScalarField) -> bool:
    index = MonomialIndex()
    echelon = RowEchelon(field)
    for p in basis:
        echelon.add(index.row(p.reduce_mod(field)))
    return not echelon.reduce(index.row(target.reduce_mod(field)))


# ============================================================================
# Dense numeric matrices
# ============================================================================


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m: Matrix, cols: int = 0) -> Matrix:
    """mᵀ; cols is the column count of m when m has no rows"""
    if not m:
        return [[] for _ in range(cols)]
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix, field: ScalarField) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"Shape mismatch: {len(a)}x{len(a[0])} · {len(b)}x{len(b[0])}")
    bt = transpose(b)
    norm = field.normalize
    return [[norm(sum(x * y for x, y in zip(row, col))) for col in bt] for row in a]


def determinant(m: Matrix, field: ScalarField) -> Scalar:
    """Determinant by Gaussian elimination over the field"""
    n = len(m)
    a = [[field.normalize(x) for x in row] for row in m]
    det: Scalar = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = field.neg(det)
        det = field.mul(det, a[col][col])
        inv = field.inv(a[col][col])
        for r in range(col + 1, n):
            factor = field.mul(a[r][col], inv)
            if factor:
                a[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(a[r], a[col])]
    return det


def inverse(m: Matrix, field: ScalarField) -> Matrix:
    """Gauss-Jordan inverse; singular input raises ZeroDivisionError"""
    n = len(m)
    a = [[field.normalize(x) for x in row] + ident for row, ident in zip(m, identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("Singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = field.inv(a[col][col])
        a[col] = [field.mul(x, inv) for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def poly_matmul(a: Sequence[Sequence], b: Sequence[Sequence], field: ScalarField) -> list[list[SparsePolynomial]]:
    """Product of matrices whose entries are polynomials or scalars"""
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = SparsePolynomial.zero(field)
            for k in range(inner):
                x, y = a[i][k], b[k][j]
                if _is_zero(x) or _is_zero(y):
                    continue
                acc = acc + _as_poly(x, field) * y
            row.append(acc)
        out.append(row)
    return out


def poly_trace(m: Sequence[Sequence], field: ScalarField) -> SparsePolynomial:
    acc = SparsePolynomial.zero(field)
    for i in range(len(m)):
        acc = acc + m[i][i]
    return acc


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, SparsePolynomial) else x == 0


def _as_poly(x, field: ScalarField) -> SparsePolynomial:
    return x if isinstance(x, SparsePolynomial) else SparsePolynomial.constant(field, x)
