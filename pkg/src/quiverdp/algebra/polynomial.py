"""Sparse multivariate polynomials in the coordinates of a representation space

A monomial is a tuple of ``(VarId, exponent)`` pairs sorted by VarId; a polynomial is
a dict from monomials to non-zero field elements. Polynomials are treated as immutable
values: every operation returns a new object.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb, prod
from typing import Iterable, Iterator, Literal, Mapping, Sequence

import msgspec

from quiverdp.algebra.scalars import Scalar, ScalarField
from quiverdp.core.errors import QuiverParseError

Family = Literal["X", "Y", "Z"]


class VarId(msgspec.Struct, frozen=True, order=True, array_like=True):
    """Coordinate variable: entry (row, col) of the generic matrix of an arrow"""

    family: str
    arrow: int
    row: int
    col: int

    def render(self) -> str:
        return f"{self.family.lower()}[{self.arrow}][{self.row}][{self.col}]"


Monomial = tuple[tuple[VarId, int], ...]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    """Product of two sorted monomials (linear merge)"""
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_from_vars(variables: Iterable[VarId]) -> Monomial:
    counts: dict[VarId, int] = {}
    for v in variables:
        counts[v] = counts.get(v, 0) + 1
    return tuple(sorted(counts.items()))


class SparsePolynomial:
    """Exact polynomial over a ScalarField"""

    __slots__ = ("field", "terms")

    def __init__(self, field: ScalarField, terms: Mapping[Monomial, Scalar] | None = None):
        self.field = field
        self.terms: dict[Monomial, Scalar] = {}
        if terms:
            for mono, c in terms.items():
                c = field.normalize(c)
                if c != 0:
                    self.terms[mono] = c

    @classmethod
    def _raw(cls, field: ScalarField, terms: dict[Monomial, Scalar]) -> SparsePolynomial:
        # terms already normalized and free of zeros
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, field: ScalarField) -> SparsePolynomial:
        return cls._raw(field, {})

    @classmethod
    def constant(cls, field: ScalarField, c: int | Fraction) -> SparsePolynomial:
        return cls(field, {(): c})

    @classmethod
    def variable(cls, field: ScalarField, var: VarId) -> SparsePolynomial:
        return cls._raw(field, {((var, 1),): 1})

    @classmethod
    def monomial(cls, field: ScalarField, mono: Monomial, c: int | Fraction = 1) -> SparsePolynomial:
        return cls(field, {mono: c})

    # ─── predicates and accessors ────────────────────────────────────

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, mono: Monomial) -> Scalar:
        return self.terms.get(mono, 0)

    def constant_value(self) -> Scalar:
        """Value of a constant polynomial"""
        if any(mono for mono in self.terms):
            raise ValueError("Polynomial is not constant")
        return self.terms.get((), 0)

    def variables(self) -> set[VarId]:
        return {v for mono in self.terms for v, _ in mono}

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    # ─── arithmetic ─────────────────────────────────────────────────

    def _coerce(self, other) -> SparsePolynomial:
        if isinstance(other, SparsePolynomial):
            if other.field != self.field:
                raise ValueError(f"Mixed fields: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial.constant(self.field, other)
        return NotImplemented

    def __add__(self, other) -> SparsePolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        norm = self.field.normalize
        for mono, c in other.terms.items():
            v = norm(terms.get(mono, 0) + c)
            if v:
                terms[mono] = v
            else:
                terms.pop(mono, None)
        return SparsePolynomial._raw(self.field, terms)

    __radd__ = __add__

    def __neg__(self) -> SparsePolynomial:
        norm = self.field.normalize
        return SparsePolynomial._raw(self.field, {m: norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other) -> SparsePolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> SparsePolynomial:
        return (-self) + other

    def scale(self, c: Scalar) -> SparsePolynomial:
        c = self.field.normalize(c)
        if c == 0:
            return SparsePolynomial.zero(self.field)
        norm = self.field.normalize
        return SparsePolynomial._raw(self.field, {m: norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other) -> SparsePolynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.field.normalize
        terms: dict[Monomial, Scalar] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = mono_mul(ma, mb)
                terms[mono] = terms.get(mono, 0) + ca * cb
        return SparsePolynomial._raw(
            self.field, {m: v for m, c in terms.items() if (v := norm(c)) != 0}
        )

    __rmul__ = __mul__

    def __pow__(self, e: int) -> SparsePolynomial:
        if e < 0:
            raise ValueError("Negative powers are not polynomials")
        result = SparsePolynomial.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial.constant(self.field, other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    __hash__ = None

    # ─── transformations ─────────────────────────────────────────────

    def reduce_mod(self, field: ScalarField) -> SparsePolynomial:
        """Map coefficients into another field (integral data reduces mod p)"""
        return SparsePolynomial(field, self.terms)

    def rename(self, mapping: Mapping[VarId, VarId]) -> SparsePolynomial:
        """Rename variables (unlisted variables are kept)"""
        terms: dict[Monomial, Scalar] = {}
        for mono, c in self.terms.items():
            new = mono_from_vars(mapping.get(v, v) for v, e in mono for _ in range(e))
            terms[new] = terms.get(new, 0) + c
        return SparsePolynomial(self.field, terms)

    def substitute(self, table: Mapping[VarId, SparsePolynomial]) -> SparsePolynomial:
        return substitute_linear(self, table)

    def __repr__(self) -> str:
        return f"SparsePolynomial({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


class PolynomialAccumulator:
    """Mutable sum of polynomials, used inside enumeration loops"""

    __slots__ = ("field", "terms")

    def __init__(self, field: ScalarField):
        self.field = field
        self.terms: dict[Monomial, Scalar] = {}

    def add(self, poly: SparsePolynomial, scale: int = 1) -> None:
        terms = self.terms
        for mono, c in poly.terms.items():
            terms[mono] = terms.get(mono, 0) + scale * c

    def add_term(self, mono: Monomial, c: Scalar) -> None:
        self.terms[mono] = self.terms.get(mono, 0) + c

    def result(self) -> SparsePolynomial:
        return SparsePolynomial(self.field, self.terms)


# ============================================================================
# Substitution and degrees
# ============================================================================


def substitute_linear(p: SparsePolynomial, table: Mapping[VarId, SparsePolynomial]) -> SparsePolynomial:
    """Simultaneous substitution of every variable of p"""
    missing = p.variables() - table.keys()
    if missing:
        first = min(missing)
        raise ValueError(f"No substitution for {first.render()}")
    powers: dict[tuple[VarId, int], SparsePolynomial] = {}

    def power(v: VarId, e: int) -> SparsePolynomial:
        key = (v, e)
        if key not in powers:
            powers[key] = table[v] if e == 1 else table[v] ** e
        return powers[key]

    acc = PolynomialAccumulator(p.field)
    one = SparsePolynomial.constant(p.field, 1)
    for mono, c in p.terms.items():
        term = one
        for v, e in mono:
            term = term * power(v, e)
            if term.is_zero():
                break
        acc.add(term, c)
    return acc.result()


def multidegree(p: SparsePolynomial) -> dict[tuple[str, int], int] | None:
    """Per-arrow degrees shared by every monomial, or None when inhomogeneous

    Keys are (family, arrow); arrows of degree zero are omitted.
    """
    result: dict[tuple[str, int], int] | None = None
    for mono in p.terms:
        degrees: dict[tuple[str, int], int] = {}
        for v, e in mono:
            key = (v.family, v.arrow)
            degrees[key] = degrees.get(key, 0) + e
        if result is None:
            result = degrees
        elif degrees != result:
            return None
    return result if result is not None else {}


def monomial_basis(variables_per_arrow: Sequence[Sequence[VarId]], degrees: Sequence[int]) -> list[Monomial]:
    """All monomials with the given degree in each arrow's variables"""
    per_arrow = [
        [mono_from_vars(c) for c in combinations_with_replacement(sorted(vs), d)]
        for vs, d in zip(variables_per_arrow, degrees)
    ]
    basis = []
    for choice in product(*per_arrow):
        mono: Monomial = ()
        for m in choice:
            mono = mono_mul(mono, m)
        basis.append(mono)
    return sorted(basis)


def count_monomials(sizes: Sequence[int], degrees: Sequence[int]) -> int:
    return prod(comb(n + d - 1, d) for n, d in zip(sizes, degrees))


# ============================================================================
# Generic matrices
# ============================================================================


class GenericMatrix(msgspec.Struct, frozen=True):
    """Generic matrix of an arrow together with the group factors acting on it

    ``head``/``tail`` index the group factors (φ-orbits); the dual flags say whether
    the endpoint carries the dual space.
    """

    family: str
    arrow: int
    rows: int
    cols: int
    head: int = 0
    tail: int = 0
    head_dual: bool = False
    tail_dual: bool = False

    def var(self, i: int, j: int) -> VarId:
        return VarId(self.family, self.arrow, i, j)

    def variables(self) -> list[VarId]:
        return [self.var(i, j) for i in range(1, self.rows + 1) for j in range(1, self.cols + 1)]

    def entries(self, field: ScalarField) -> list[list[SparsePolynomial]]:
        return [
            [SparsePolynomial.variable(field, self.var(i, j)) for j in range(1, self.cols + 1)]
            for i in range(1, self.rows + 1)
        ]


# ============================================================================
# Text format
# ============================================================================


def render_monomial(mono: Monomial) -> str:
    return " * ".join(v.render() + (f"^{e}" if e != 1 else "") for v, e in mono)


def render(p: SparsePolynomial) -> str:
    """Canonical text: terms in monomial order, explicit coefficients"""
    field = p.field
    if p.is_zero():
        text = "0"
    else:
        pieces = []
        for i, (mono, c) in enumerate(p.sorted_terms()):
            if field.characteristic == 0 and c < 0:
                sign, c = "-", -c
            else:
                sign = "+"
            coeff = field.render(c)
            body = coeff if not mono else f"{coeff} * {render_monomial(mono)}"
            if i == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        text = " ".join(pieces)
    if field.characteristic:
        text += f" (mod {field.characteristic})"
    return text


_MOD_RE = re.compile(r"\(\s*mod\s+(\d+)\s*\)\s*$")
_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)((?:\s*\*\s*[xyz]\[\d+\]\[\d+\]\[\d+\](?:\^\d+)?)*)")
_VAR_RE = re.compile(r"([xyz])\[(\d+)\]\[(\d+)\]\[(\d+)\](?:\^(\d+))?")


def parse(text: str, field: ScalarField | None = None) -> SparsePolynomial:
    """Inverse of render; the (mod p) suffix selects the field when none is given"""
    text = text.strip()
    match = _MOD_RE.search(text)
    if match:
        p = int(match.group(1))
        text = text[: match.start()].strip()
        if field is None:
            field = ScalarField(p)
        elif field.characteristic != p:
            raise QuiverParseError(f"Polynomial is mod {p}, expected {field}")
    field = field or ScalarField(0)
    if text == "0":
        return SparsePolynomial.zero(field)

    terms: dict[Monomial, Scalar] = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise QuiverParseError(f"Cannot parse polynomial near: {text[pos:pos + 30]!r}")
        sign, coeff, body = m.groups()
        c = Fraction(coeff)
        if sign == "-":
            c = -c
        variables = []
        for vm in _VAR_RE.finditer(body):
            fam, k, i, j, e = vm.groups()
            variables.extend([VarId(fam.upper(), int(k), int(i), int(j))] * int(e or 1))
        mono = mono_from_vars(variables)
        terms[mono] = terms.get(mono, 0) + c
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return SparsePolynomial(field, {m: field.coerce(c) for m, c in terms.items()})


def polynomial_hash_key(p: SparsePolynomial) -> tuple:
    """Hashable canonical form (for dedup in span computations)"""
    return (p.field.characteristic, tuple(p.sorted_terms()))


def variables_of(matrices: Iterable[GenericMatrix]) -> Iterator[VarId]:
    for m in matrices:
        yield from m.variables()
