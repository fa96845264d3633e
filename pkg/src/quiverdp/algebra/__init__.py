"""Exact arithmetic: scalars, permutations, sparse polynomials and linear algebra"""

from quiverdp.algebra.scalars import QQ, ScalarField
from quiverdp.algebra.combinatorics import Distribution, Multipartition, Permutation
from quiverdp.algebra.polynomial import GenericMatrix, SparsePolynomial, VarId, parse, render

__all__ = [
    "QQ",
    "ScalarField",
    "Distribution",
    "Multipartition",
    "Permutation",
    "GenericMatrix",
    "SparsePolynomial",
    "VarId",
    "parse",
    "render",
]
