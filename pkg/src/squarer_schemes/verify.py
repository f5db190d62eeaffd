"""Symbolic and exhaustive equivalence checks against the reference functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import reference as ref
from .evaluate import ZeroDivisorError, _exact_unchecked, eval_symbolic, grid
from .ir import Scheme, SchemeError, require_valid
from .numeric import format_rational
from .poly import Polynomial, RationalFn


def _square(a, b):
    return tuple(ref.complex_square(ref.ComplexPair(a, b)))


def _mul(a1, b1, a2, b2):
    return tuple(ref.complex_mul(ref.ComplexPair(a1, b1), ref.ComplexPair(a2, b2)))


def _div(a1, b1, a2, b2):
    return tuple(ref.complex_div(ref.ComplexPair(a1, b1), ref.ComplexPair(a2, b2)))


def _product(a, b):
    return (a * b,)


@dataclass(frozen=True)
class _RefSpec:
    args: tuple
    n_out: int
    fn: Callable


REFERENCES = {
    "square": _RefSpec(("a1", "b1"), 2, _square),
    "mul": _RefSpec(("a1", "b1", "a2", "b2"), 2, _mul),
    "div": _RefSpec(("a1", "b1", "a2", "b2"), 2, _div),
    "product": _RefSpec(("a", "b"), 1, _product),
}


@dataclass(frozen=True)
class ReferenceId:
    """A reference function plus the scheme input label bound to each argument.

    ``binding[i]`` is the scheme input label fed to reference argument ``i``;
    e.g. ``ReferenceId("div", ("a1", "b1", "a2", "b2"))`` for a scheme whose
    inputs are ordered ``[a1, a2, b1, b2]``.
    """

    kind: str
    binding: tuple

    def __post_init__(self):
        if self.kind not in REFERENCES:
            raise ValueError(f"unknown reference {self.kind!r}; expected one of {sorted(REFERENCES)}")
        object.__setattr__(self, "binding", tuple(self.binding))
        spec = REFERENCES[self.kind]
        if len(self.binding) != len(spec.args) or len(set(self.binding)) != len(self.binding):
            raise ValueError(f"binding {self.binding} is not a bijection onto {spec.args}")

    @property
    def spec(self) -> _RefSpec:
        return REFERENCES[self.kind]

    @classmethod
    def for_scheme(cls, kind: str, s: Scheme) -> "ReferenceId":
        """Bind by label name when the scheme uses the reference's names, else by position."""
        args = REFERENCES[kind].args
        if set(args) == set(s.input_labels):
            return cls(kind, args)
        if len(args) != s.n_inputs:
            raise SchemeError(f"{s.name!r} has {s.n_inputs} inputs; reference {kind!r} takes {len(args)}")
        return cls(kind, s.input_labels)

    def apply(self, s: Scheme, values: Sequence) -> tuple:
        """Evaluate the reference on values given in the scheme's input order."""
        by_label = dict(zip(s.input_labels, values))
        return self.spec.fn(*(by_label[lab] for lab in self.binding))


@dataclass(frozen=True)
class Residual:
    """``scheme - reference`` for one output, as ``numerator / denominator``."""

    numerator: Polynomial
    denominator: Polynomial

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __call__(self, point) -> Fraction:
        return RationalFn(self.numerator, self.denominator)(point)

    def __str__(self):
        if self.denominator.is_constant() and self.denominator.constant_value() == 1:
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"


def residual(got: RationalFn, want: RationalFn) -> Residual:
    """Cross-multiplied difference, no GCD reduction.

    When the two denominators differ only by a constant factor the scheme's
    denominator is kept as the common one, so e.g. ``p/(2q) - r/q`` becomes
    ``(p - 2r) / (2q)``.
    """
    p, q = got.num, got.den
    r, t = want.num, want.den
    c = q.scalar_ratio(t)
    if c is not None:
        return Residual(p - r * c, q)
    c = t.scalar_ratio(q)
    if c is not None:
        return Residual(p * c - r, t)
    return Residual(p * t - r * q, q * t)


@dataclass
class VerifyResult:
    verdict: str  # "PASS" | "FAIL"
    mode: str  # "symbolic" | "exhaustive"
    residuals: list = field(default_factory=list)
    points_tested: int = 0
    points_skipped: int = 0
    counterexample: tuple | None = None
    scheme_value: tuple | None = None
    reference_value: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def describe(self, output_labels: Sequence[str] = ()) -> str:
        lines = [f"{self.verdict} ({self.mode})"]
        if self.mode == "symbolic":
            for k, res in enumerate(self.residuals):
                if not res.is_zero():
                    lab = output_labels[k] if k < len(output_labels) else f"out{k}"
                    lines.append(f"  residual {lab}: {res}")
        else:
            lines.append(f"  points tested: {self.points_tested}, skipped: {self.points_skipped}")
            if self.counterexample is not None:
                fmt = lambda xs: "(" + ", ".join(format_rational(x) for x in xs) + ")"
                lines.append(f"  counterexample {fmt(self.counterexample)}: scheme {fmt(self.scheme_value)}"
                             f" vs reference {fmt(self.reference_value)}")
        return "\n".join(lines)


def _check_arity(s: Scheme, reference: ReferenceId) -> None:
    require_valid(s)
    if s.n_outputs != reference.spec.n_out:
        raise SchemeError(f"{s.name!r} has {s.n_outputs} outputs; reference {reference.kind!r} "
                          f"has {reference.spec.n_out}")
    if s.n_inputs != len(reference.binding):
        raise SchemeError(f"{s.name!r} has {s.n_inputs} inputs; reference {reference.kind!r} "
                          f"takes {len(reference.binding)}")
    missing = set(reference.binding) - set(s.input_labels)
    if missing:
        raise SchemeError(f"binding refers to unknown inputs {sorted(missing)}")


def verify_symbolic(s: Scheme, reference: ReferenceId) -> VerifyResult:
    """Prove or refute equivalence as an identity of rational functions."""
    _check_arity(s, reference)
    got = eval_symbolic(s)
    vars = s.input_labels
    want = reference.apply(s, [RationalFn.var(vars, v) for v in vars])
    want = [w if isinstance(w, RationalFn) else RationalFn(Polynomial.const(vars, w)) for w in want]
    residuals = [residual(g, w) for g, w in zip(got, want)]
    verdict = "PASS" if all(r.is_zero() for r in residuals) else "FAIL"
    return VerifyResult(verdict, "symbolic", residuals)


def verify_exhaustive(s: Scheme, reference: ReferenceId, radius: int) -> VerifyResult:
    """Compare exact evaluation with the reference on every point of ``[-R, R]**n``.

    Points where either side divides by zero are skipped; the reported
    counterexample is the lexicographically first mismatch.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    _check_arity(s, reference)
    res = VerifyResult("PASS", "exhaustive")
    for p in grid(s.n_inputs, radius):
        pt = tuple(Fraction(x) for x in p)
        try:
            got = tuple(_exact_unchecked(s, pt))
            want = tuple(reference.apply(s, pt))
        except (ZeroDivisorError, ZeroDivisionError):
            res.points_skipped += 1
            continue
        res.points_tested += 1
        if got != want and res.counterexample is None:
            res.verdict = "FAIL"
            res.counterexample, res.scheme_value, res.reference_value = pt, got, want
    return res
