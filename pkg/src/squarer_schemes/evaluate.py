"""Run a scheme on exact rationals, on symbols, or on fixed-point words."""

from __future__ import annotations

import itertools
import operator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .ir import Copy, Div, Linear, Mul, Scale, Scheme, SchemeError, Square, require_valid
from .numeric import ConstKind, as_rational, classify_constant
from .poly import Polynomial, RationalFn


class ZeroDivisorError(ZeroDivisionError):
    def __init__(self, stage: int, wire: int, detail: str = ""):
        msg = f"zero divisor at stage {stage}, output wire {wire}"
        super().__init__(msg + (f" ({detail})" if detail else ""))
        self.stage = stage
        self.wire = wire


class FixedPointOverflow(ArithmeticError):
    def __init__(self, stage: int, wire: int, value: int, word_bits: int, kind: str):
        super().__init__(f"overflow at stage {stage} ({kind}), output wire {wire}: "
                         f"scaled value {value} does not fit a {word_bits}-bit word")
        self.stage = stage
        self.wire = wire
        self.value = value
        self.kind = kind


class UnrepresentableInput(ValueError):
    pass


def _check_inputs(s: Scheme, inputs: Sequence) -> None:
    require_valid(s)
    if len(inputs) != s.n_inputs:
        raise SchemeError(f"{s.name!r} takes {s.n_inputs} inputs, got {len(inputs)}")


def _exact_div(a, b):
    return Fraction(a) / b


def _run_field(s: Scheme, values: list, div=operator.truediv) -> list:
    """Shared exact/symbolic interpreter: any values supporting + - * /."""
    for si, st in enumerate(s.stages):
        if isinstance(st, Linear):
            values = st.matrix.apply(values)
            continue
        new = []
        for k, op in enumerate(st.ops):
            if isinstance(op, Copy):
                new.append(values[op.src])
            elif isinstance(op, Square):
                new.append(values[op.src] * values[op.src])
            elif isinstance(op, Scale):
                new.append(values[op.src] * op.c)
            elif isinstance(op, Mul):
                new.append(values[op.lhs] * values[op.rhs])
            elif isinstance(op, Div):
                try:
                    new.append(div(values[op.num], values[op.den]))
                except ZeroDivisionError as e:
                    raise ZeroDivisorError(si, k, str(e)) from None
        values = new
    return values


def eval_exact(s: Scheme, inputs: Sequence) -> list[Fraction]:
    _check_inputs(s, inputs)
    return _exact_unchecked(s, inputs)


def _exact_unchecked(s: Scheme, inputs: Sequence) -> list[Fraction]:
    # integral inputs stay ints until a scale or divide needs a Fraction
    vals = []
    for x in inputs:
        x = as_rational(x)
        vals.append(x.numerator if x.denominator == 1 else x)
    return [Fraction(v) for v in _run_field(s, vals, _exact_div)]


def eval_symbolic(s: Scheme) -> list[RationalFn]:
    """Each output as a rational function of the scheme's input labels."""
    require_valid(s)
    vars = s.input_labels
    out = _run_field(s, [RationalFn.var(vars, v) for v in vars])
    return [v if isinstance(v, RationalFn) else RationalFn(Polynomial.const(vars, v)) for v in out]


# --- fixed point ------------------------------------------------------------

@dataclass(frozen=True)
class FixedPointConfig:
    """Two's complement words of ``word_bits`` bits, ``frac_bits`` of them fractional.

    Overflow is always an error; division truncates toward zero.
    """

    word_bits: int
    frac_bits: int
    overflow_policy: str = "error"
    div_rounding: str = "truncate"

    def __post_init__(self):
        if self.word_bits < 2:
            raise ValueError("word_bits must be >= 2")
        if not 0 <= self.frac_bits < self.word_bits:
            raise ValueError("need 0 <= frac_bits < word_bits")
        if self.overflow_policy != "error":
            raise ValueError("only the 'error' overflow policy is supported")
        if self.div_rounding != "truncate":
            raise ValueError("only truncate-toward-zero division is supported")

    @property
    def limit(self) -> int:
        return 1 << (self.word_bits - 1)

    @property
    def scale(self) -> int:
        return 1 << self.frac_bits

    def to_word(self, x) -> int:
        v = as_rational(x) * self.scale
        if v.denominator != 1:
            raise UnrepresentableInput(f"{x} is not a multiple of 2^-{self.frac_bits}")
        v = v.numerator
        if abs(v) >= self.limit:
            raise UnrepresentableInput(f"{x} does not fit Q{self.word_bits - self.frac_bits}.{self.frac_bits}")
        return v

    def from_word(self, v: int) -> Fraction:
        return Fraction(v, self.scale)


@dataclass
class WidthReport:
    """Largest magnitude seen on each wire, in bits of ``|scaled value|``.

    Keys are ``(layer, wire)``: layer 0 holds the inputs, layer ``i + 1`` the
    outputs of ``stages[i]``. A wire needing ``b`` magnitude bits needs a
    ``b + 1``-bit signed word.
    """

    bits: dict = field(default_factory=dict)

    def record(self, layer: int, wire: int, value: int) -> None:
        b = abs(value).bit_length()
        key = (layer, wire)
        if b > self.bits.get(key, -1):
            self.bits[key] = b

    def merge(self, other: "WidthReport") -> "WidthReport":
        out = dict(self.bits)
        for k, b in other.bits.items():
            out[k] = max(out.get(k, b), b)
        return WidthReport(out)

    __or__ = merge

    def max_bits(self) -> int:
        return max(self.bits.values(), default=0)

    def required_word_bits(self) -> int:
        return self.max_bits() + 1

    def by_layer(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for (layer, wire), b in sorted(self.bits.items()):
            out.setdefault(layer, []).append(b)
        return out


def _tdiv(n: int, d: int) -> int:
    q = abs(n) // abs(d)
    return q if (n >= 0) == (d > 0) else -q


def _word_coeff(c: Fraction) -> tuple[int, int, int]:
    """``(num, shl, div)`` so that ``v * c`` becomes ``tdiv((v * num) << shl, div)``."""
    cc = classify_constant(c)
    sign = -1 if cc.negative else 1
    if cc.kind is ConstKind.ZERO:
        return (0, 0, 1)
    if cc.kind is ConstKind.PLUS_MINUS_ONE:
        return (sign, 0, 1)
    if cc.kind is ConstKind.POWER_OF_TWO:
        if cc.exponent > 0:
            return (sign, cc.exponent, 1)
        return (sign, 0, 1 << -cc.exponent)
    return (c.numerator, 0, c.denominator)


def _apply_coeff(v: int, coeff: tuple[int, int, int]) -> int:
    num, shl, div = coeff
    r = (v * num) << shl
    return r if div == 1 else _tdiv(r, div)


def _fixed_plan(s: Scheme) -> list:
    plan = []
    for st in s.stages:
        if isinstance(st, Linear):
            rows = [tuple((j, _word_coeff(c)) for j, c in st.matrix.row_terms(i)) for i in range(st.matrix.rows)]
            plan.append(("linear", rows))
        else:
            ops = []
            for op in st.ops:
                if isinstance(op, Copy):
                    ops.append(("copy", op.src, None))
                elif isinstance(op, Square):
                    ops.append(("squarer", op.src, op.src))
                elif isinstance(op, Scale):
                    ops.append(("scale", op.src, _word_coeff(op.c)))
                elif isinstance(op, Mul):
                    ops.append(("multiplier", op.lhs, op.rhs))
                else:
                    ops.append(("divider", op.num, op.den))
            plan.append(("ops", ops))
    return plan


def eval_fixed(s: Scheme, cfg: FixedPointConfig, inputs: Sequence) -> tuple[list[Fraction], WidthReport]:
    """Evaluate on scaled integers (scale ``2**frac_bits``).

    Products are formed at double width and rescaled by truncation; division
    pre-scales the numerator. Every wire must fit the word or
    :class:`FixedPointOverflow` is raised.
    """
    _check_inputs(s, inputs)
    return _fixed_unchecked(_fixed_plan(s), cfg, inputs)


def _fixed_unchecked(plan: list, cfg: FixedPointConfig, inputs: Sequence) -> tuple[list[Fraction], WidthReport]:
    widths = WidthReport()
    f, lim = cfg.frac_bits, cfg.limit
    words = [cfg.to_word(x) for x in inputs]
    for k, w in enumerate(words):
        widths.record(0, k, w)
    for si, (kind, body) in enumerate(plan):
        if kind == "linear":
            new = [sum(_apply_coeff(words[j], co) for j, co in row) for row in body]
            kinds = None
        else:
            new = []
            for k, (opk, x, y) in enumerate(body):
                if opk == "copy":
                    v = words[x]
                elif opk == "squarer" or opk == "multiplier":
                    v = _tdiv(words[x] * words[y], 1 << f)
                elif opk == "scale":
                    v = _apply_coeff(words[x], y)
                else:
                    d = words[y]
                    if d == 0:
                        raise ZeroDivisorError(si, k)
                    v = _tdiv(words[x] << f, d)
                new.append(v)
            kinds = body
        for k, v in enumerate(new):
            if abs(v) >= lim:
                raise FixedPointOverflow(si, k, v, cfg.word_bits, "adder" if kinds is None else kinds[k][0])
            widths.record(si + 1, k, v)
        words = new
    return [cfg.from_word(w) for w in words], widths


# --- sweeps -----------------------------------------------------------------

@dataclass
class SweepResult:
    points: int = 0
    skipped: int = 0
    overflow_points: list = field(default_factory=list)
    zero_divisor_points: list = field(default_factory=list)
    max_error: Fraction = Fraction(0)
    worst_point: tuple | None = None
    widths: WidthReport = field(default_factory=WidthReport)

    def merge(self, other: "SweepResult") -> "SweepResult":
        """Combine results of consecutive grid chunks (order matters for ties)."""
        out = SweepResult(self.points + other.points, self.skipped + other.skipped,
                          self.overflow_points + other.overflow_points,
                          self.zero_divisor_points + other.zero_divisor_points,
                          self.max_error, self.worst_point, self.widths.merge(other.widths))
        if other.worst_point is not None and (self.worst_point is None or other.max_error > self.max_error):
            out.max_error, out.worst_point = other.max_error, other.worst_point
        return out


def grid(n: int, radius: int) -> Iterable[tuple[int, ...]]:
    """Integer points of ``[-radius, radius]**n`` in lexicographic order."""
    return itertools.product(range(-radius, radius + 1), repeat=n)


def _sweep_points(s: Scheme, cfg: FixedPointConfig, points: Iterable[tuple]) -> SweepResult:
    res = SweepResult()
    plan = _fixed_plan(s)
    for p in points:
        try:
            exact = _exact_unchecked(s, p)
        except ZeroDivisorError:
            res.skipped += 1
            continue
        res.points += 1
        try:
            fixed, w = _fixed_unchecked(plan, cfg, p)
        except FixedPointOverflow as e:
            res.overflow_points.append((p, e.stage, e.wire))
            continue
        except ZeroDivisorError:
            res.zero_divisor_points.append(p)
            continue
        res.widths = res.widths.merge(w)
        err = max(abs(a - b) for a, b in zip(fixed, exact))
        if err > res.max_error or res.worst_point is None:
            res.max_error = max(err, res.max_error)
            res.worst_point = p
    return res


def _sweep_chunk(args):
    s, cfg, first, radius = args
    rest = grid(s.n_inputs - 1, radius)
    return _sweep_points(s, cfg, ((first,) + q for q in rest))


def sweep_fixed(s: Scheme, cfg: FixedPointConfig, radius: int, workers: int = 1) -> SweepResult:
    """Compare fixed-point against exact evaluation on the integer grid.

    Points where the exact scheme divides by zero are skipped. With
    ``workers > 1`` the grid is split on its first coordinate; the merged
    result does not depend on the split.
    """
    require_valid(s)
    if radius < 0:
        raise ValueError("radius must be >= 0")
    cfg.to_word(radius)
    if workers <= 1 or s.n_inputs < 2:
        return _sweep_points(s, cfg, grid(s.n_inputs, radius))
    jobs = [(s, cfg, a, radius) for a in range(-radius, radius + 1)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_sweep_chunk, jobs))
    out = SweepResult()
    for part in parts:
        out = out.merge(part)
    return out
