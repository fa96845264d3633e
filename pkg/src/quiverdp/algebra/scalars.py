"""Exact scalar fields: the rationals and odd prime fields

Elements are plain Python numbers. Over the rationals an element is an ``int`` when
integral and a reduced ``Fraction`` otherwise; over GF(p) it is an ``int`` in [0, p).
The field object carries the characteristic and performs every operation, so hot loops
never pay for wrapper objects.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt

import msgspec

Scalar = int | Fraction

MERSENNE_31 = 2**31 - 1


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (fine for word-sized moduli)"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def inv_modp(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("No inverse for 0 mod p")
    return pow(a, p - 2, p)


class ScalarField(msgspec.Struct, frozen=True):
    """The rationals (characteristic 0) or GF(p) for an odd prime p"""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p == 2 or not is_prime(p)):
            raise ValueError(f"Characteristic must be 0 or an odd prime, got {p}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    # ─── construction ────────────────────────────────────────────────

    def coerce(self, value: int | Fraction | str) -> Scalar:
        """Map an integer, fraction or 'a/b' string into the field"""
        if isinstance(value, str):
            value = Fraction(value.strip())
        p = self.characteristic
        if p == 0:
            if isinstance(value, Fraction):
                return value.numerator if value.denominator == 1 else value
            return int(value)
        if isinstance(value, Fraction):
            return value.numerator * inv_modp(value.denominator, p) % p
        return int(value) % p

    @property
    def zero(self) -> Scalar:
        return 0

    @property
    def one(self) -> Scalar:
        return 1

    # ─── arithmetic ─────────────────────────────────────────────────

    def normalize(self, value: Scalar) -> Scalar:
        """Canonical representative of a result computed with plain Python arithmetic"""
        return self.coerce(value)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self.normalize(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.normalize(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self.normalize(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return self.normalize(-a)

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("Division by zero in scalar field")
        if self.characteristic == 0:
            return self.normalize(Fraction(1) / a)
        return inv_modp(a, self.characteristic)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def power(self, a: Scalar, e: int) -> Scalar:
        if e < 0:
            return self.power(self.inv(a), -e)
        if self.characteristic:
            return pow(a, e, self.characteristic)
        return self.normalize(Fraction(a) ** e)

    def random_element(self, rng: random.Random, bound: int = 9) -> Scalar:
        """Uniform residue in char p; small signed integer over the rationals"""
        if self.characteristic:
            return rng.randrange(self.characteristic)
        return rng.randint(-bound, bound)

    # ─── text ───────────────────────────────────────────────────────

    def render(self, a: Scalar) -> str:
        if isinstance(a, Fraction):
            return f"{a.numerator}/{a.denominator}"
        return str(a)

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = ScalarField(0)
