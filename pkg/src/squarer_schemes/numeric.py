"""Exact scalars and small dense matrices over the rationals.

``Rational`` is :class:`fractions.Fraction`: canonical (positive denominator,
reduced) and arbitrary precision, which is all the schemes need.
"""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimals and floats are rejected."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"expected int, Fraction or rational string, got {type(x).__name__}")
    return Fraction(x)


class ConstKind(enum.Enum):
    ZERO = "zero"
    PLUS_MINUS_ONE = "plus_minus_one"
    POWER_OF_TWO = "power_of_two"
    GENERAL = "general"


@dataclass(frozen=True)
class ConstClass:
    kind: ConstKind
    negative: bool = False
    exponent: int | None = None


def _log2_exact(n: int) -> int | None:
    if n > 0 and n & (n - 1) == 0:
        return n.bit_length() - 1
    return None


@functools.lru_cache(maxsize=1024)
def classify_constant(c: RationalLike) -> ConstClass:
    """Classify a coefficient by what it costs in hardware.

    ``PowerOfTwo`` means ``|c| = 2**k`` with ``k != 0`` (negative ``k`` allowed).
    """
    c = as_rational(c)
    if c == 0:
        return ConstClass(ConstKind.ZERO)
    neg = c < 0
    mag = abs(c)
    if mag == 1:
        return ConstClass(ConstKind.PLUS_MINUS_ONE, neg, 0)
    if mag.numerator == 1:
        k = _log2_exact(mag.denominator)
        if k is not None:
            return ConstClass(ConstKind.POWER_OF_TWO, neg, -k)
    elif mag.denominator == 1:
        k = _log2_exact(mag.numerator)
        if k is not None:
            return ConstClass(ConstKind.POWER_OF_TWO, neg, k)
    return ConstClass(ConstKind.GENERAL, neg)


class RMatrix:
    """Immutable dense rational matrix, row-major."""

    __slots__ = ("rows", "cols", "entries", "_terms")

    def __init__(self, rows: int, cols: int, entries: Iterable[RationalLike]):
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix shape must be positive, got {rows}x{cols}")
        ent = tuple(as_rational(e) for e in entries)
        if len(ent) != rows * cols:
            raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(ent)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "_terms", tuple(
            tuple((j, c.numerator if c.denominator == 1 else c)
                  for j, c in enumerate(ent[i * cols:(i + 1) * cols]) if c != 0)
            for i in range(rows)))

    def __setattr__(self, name, value):
        raise AttributeError("RMatrix is immutable")

    def __reduce__(self):
        return (RMatrix, (self.rows, self.cols, self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]]) -> "RMatrix":
        if not rows:
            raise ValueError("matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, (e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def ones_column(cls, n: int) -> "RMatrix":
        return cls(n, 1, [1] * n)

    @classmethod
    def diag(cls, values: Sequence[RationalLike]) -> "RMatrix":
        n = len(values)
        return cls(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def row_terms(self, i: int) -> tuple[tuple[int, Fraction | int], ...]:
        """Nonzero ``(column, coefficient)`` pairs of row ``i``, left to right.

        Integral coefficients come back as plain ints.
        """
        return self._terms[i]

    def apply(self, vec: Sequence):
        """Matrix-vector product over any ring-like values (Fraction, Polynomial...)."""
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != matrix cols {self.cols}")
        out = []
        for i in range(self.rows):
            acc = None
            for j, c in self.row_terms(i):
                term = vec[j] if c == 1 else (-vec[j] if c == -1 else vec[j] * c)
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else 0 * vec[0] if vec else Fraction(0))
        return out

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        return mat_mul(self, other)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"RMatrix({self.rows}x{self.cols}: [{body}])"

    def pretty(self) -> str:
        cells = [[format_rational(x) for x in self.row(i)] for i in range(self.rows)]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def mat_mul(a: RMatrix, b: RMatrix) -> RMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    entries = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            entries.append(sum((arow[k] * b.entries[k * b.cols + j] for k in range(a.cols)), Fraction(0)))
    return RMatrix(a.rows, b.cols, entries)


def kron(a: RMatrix, b: RMatrix) -> RMatrix:
    """Kronecker product: block ``(i, j)`` of the result is ``a[i, j] * b``."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    entries = []
    for i in range(rows):
        ai, bi = divmod(i, b.rows)
        for j in range(cols):
            aj, bj = divmod(j, b.cols)
            entries.append(a[ai, aj] * b[bi, bj])
    return RMatrix(rows, cols, entries)


def block_diag(a: RMatrix, b: RMatrix) -> RMatrix:
    rows = [list(r) + [0] * b.cols for r in a.to_rows()]
    rows += [[0] * a.cols + list(r) for r in b.to_rows()]
    return RMatrix.from_rows(rows)
