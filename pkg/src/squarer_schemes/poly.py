"""Sparse multivariate polynomials over Q and unreduced quotients of them."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .numeric import format_rational


class Polynomial:
    """Immutable polynomial in a fixed, ordered tuple of variables.

    ``terms`` maps exponent tuples to nonzero Fraction coefficients, so two
    equal polynomials always have identical term maps.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Fraction] | None = None):
        vars = tuple(vars)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(vars):
                raise ValueError(f"exponent vector {exps} does not match {len(vars)} variables")
            c = Fraction(c)
            if c:
                clean[exps] = c
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def const(cls, vars: Sequence[str], c) -> "Polynomial":
        return cls(vars, {(0,) * len(vars): Fraction(c)})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "Polynomial":
        vars = tuple(vars)
        exps = tuple(1 if v == name else 0 for v in vars)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} is not one of {vars}")
        return cls(vars, {exps: Fraction(1)})

    # -- predicates --

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- arithmetic --

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Polynomial.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Polynomial.const(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def scalar_ratio(self, other: "Polynomial") -> Fraction | None:
        """Return ``c`` with ``self == c * other`` if one exists, else None."""
        if other.is_zero() or self.terms.keys() != other.terms.keys():
            return None
        it = iter(self.terms)
        e0 = next(it)
        c = self.terms[e0] / other.terms[e0]
        if all(self.terms[e] == c * other.terms[e] for e in it):
            return c
        return None

    def __call__(self, point: Mapping[str, Fraction] | Sequence[Fraction]) -> Fraction:
        if isinstance(point, Mapping):
            vals = [Fraction(point[v]) for v in self.vars]
        else:
            vals = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x ** k
            total += t
        return total

    # -- display --

    def _sorted_terms(self):
        # graded, then lexicographic in variable order
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), [-k for k in ec[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self._sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"


class RationalFn:
    """``num / den`` with no GCD reduction; equality by cross-multiplication.

    A constant denominator is folded into the numerator, so a polynomial value
    always carries ``den == 1``.
    """

    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.const(num.vars, 1)
        if den.is_zero():
            raise ZeroDivisionError("denominator is identically zero")
        if num.vars != den.vars:
            raise ValueError("numerator and denominator use different variables")
        if den.is_constant() and den.constant_value() != 1:
            num = num * (1 / den.constant_value())
            den = Polynomial.const(num.vars, 1)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "RationalFn":
        return cls(Polynomial.var(vars, name))

    @property
    def vars(self):
        return self.num.vars

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def _lift(self, other):
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, Polynomial):
            return RationalFn(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RationalFn(Polynomial.const(self.vars, other))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        return RationalFn(self.num ** n, self.den ** n)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __call__(self, point) -> Fraction:
        d = self.den(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num(point) / d

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFn({self})"
