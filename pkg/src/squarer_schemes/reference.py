"""Direct complex arithmetic and the two square-based product identities.

These are the oracles the verifier compares schemes against. They only use
``+ - * /`` on their arguments, so they work on Fractions as well as on
symbolic :class:`~squarer_schemes.poly.RationalFn` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple


class ComplexPair(NamedTuple):
    re: Any
    im: Any


def _is_zero(x) -> bool:
    num = getattr(x, "num", None)
    if num is not None and hasattr(num, "is_zero"):
        return num.is_zero()
    return x == 0


def complex_square(z: ComplexPair) -> ComplexPair:
    a, b = z
    return ComplexPair(a * a - b * b, 2 * a * b)


def complex_mul(z1: ComplexPair, z2: ComplexPair) -> ComplexPair:
    a1, b1 = z1
    a2, b2 = z2
    return ComplexPair(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2)


@dataclass
class OpCounter:
    """Performs real multiplications/additions and counts them.

    Subtractions are counted as additions.
    """

    muls: int = 0
    adds: int = 0

    def mul(self, x, y):
        self.muls += 1
        return x * y

    def add(self, x, y):
        self.adds += 1
        return x + y

    def sub(self, x, y):
        self.adds += 1
        return x - y


def complex_mul_gauss(z1: ComplexPair, z2: ComplexPair, counter: OpCounter | None = None) -> ComplexPair:
    """Three-multiplication complex product.

    m1 = a2(a1 + b1), m2 = a1(b2 - a2), m3 = b1(a2 + b2);
    re = m1 - m3, im = m1 + m2.
    """
    ops = counter if counter is not None else OpCounter()
    a1, b1 = z1
    a2, b2 = z2
    m1 = ops.mul(a2, ops.add(a1, b1))
    m2 = ops.mul(a1, ops.sub(b2, a2))
    m3 = ops.mul(b1, ops.add(a2, b2))
    return ComplexPair(ops.sub(m1, m3), ops.add(m1, m2))


def complex_div(z1: ComplexPair, z2: ComplexPair) -> ComplexPair:
    """Quotient via the conjugate of the divisor."""
    a1, b1 = z1
    a2, b2 = z2
    den = a2 * a2 + b2 * b2
    if _is_zero(den):
        raise ZeroDivisionError("complex division by zero")
    if isinstance(den, int):
        den = Fraction(den)
    return ComplexPair((a1 * a2 + b1 * b2) / den, (a2 * b1 - a1 * b2) / den)


def logan_product(a, b):
    """ab = ((a + b)^2 - a^2 - b^2) / 2"""
    s = a + b
    return (s * s - a * a - b * b) * Fraction(1, 2)


def quarter_square_product(a, b):
    """ab = ((a + b)^2 - (a - b)^2) / 4"""
    s, d = a + b, a - b
    return (s * s - d * d) * Fraction(1, 4)
