import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from squarer_schemes import builtin, list_builtins
from squarer_schemes.evaluate import (
    FixedPointConfig,
    FixedPointOverflow,
    UnrepresentableInput,
    WidthReport,
    ZeroDivisorError,
    _sweep_points,
    eval_exact,
    eval_fixed,
    eval_symbolic,
    grid,
    sweep_fixed,
)
from squarer_schemes.ir import Binary, Copy, Div, Linear, Mul, Scale, Scheme, SchemeError, Square, compose, identity_scheme, linear
from squarer_schemes.poly import Polynomial, RationalFn

F = Fraction
ALL = list_builtins()


def sympy_eval(s: Scheme):
    """Independent interpreter over sympy expressions."""
    xs = list(sympy.symbols(s.input_labels))
    for stage in s.stages:
        if isinstance(stage, Linear):
            m = stage.matrix
            m = sympy.Matrix(m.rows, m.cols, [sympy.Rational(e.numerator, e.denominator) for e in m.entries])
            xs = list(m * sympy.Matrix(xs))
            continue
        new = []
        for op in stage.ops:
            if isinstance(op, Copy):
                new.append(xs[op.src])
            elif isinstance(op, Square):
                new.append(xs[op.src] ** 2)
            elif isinstance(op, Scale):
                new.append(xs[op.src] * sympy.Rational(op.c.numerator, op.c.denominator))
            elif isinstance(op, Mul):
                new.append(xs[op.lhs] * xs[op.rhs])
            else:
                new.append(xs[op.num] / xs[op.den])
        xs = new
    return xs


def to_sympy(r: RationalFn):
    syms = sympy.symbols(r.vars)

    def conv(p):
        return sum((sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*(v ** k for v, k in zip(syms, e)))
                    for e, c in p.terms.items()), sympy.Integer(0))

    return conv(r.num) / conv(r.den)


# --- exact ------------------------------------------------------------------

def test_eval_exact_mul_eq7():
    assert eval_exact(builtin("mul_eq7").scheme, [1, 2, 3, 4]) == [-5, 10]


@pytest.mark.parametrize("a", [F(3), F(-7, 2), F(0)])
def test_eval_exact_square_eq6_real_inputs(a):
    assert eval_exact(builtin("square_eq6_as_printed").scheme, [a, 0]) == [a * a, 0]


def test_eval_exact_zero_divisor_identifies_stage():
    s = builtin("div_eq8_as_printed").scheme
    with pytest.raises(ZeroDivisorError) as exc:
        eval_exact(s, [1, 0, 1, 0])
    assert exc.value.stage == len(s.stages) - 1
    assert exc.value.wire == 0


def test_eval_exact_arity_and_validity():
    with pytest.raises(SchemeError):
        eval_exact(builtin("mul_eq7").scheme, [1, 2])
    with pytest.raises(SchemeError):
        eval_exact(Scheme("bad", ("x",), ("y",), (linear([[1, 1]]),)), [1])


def test_eval_exact_accepts_rational_strings():
    assert eval_exact(builtin("scalar_logan").scheme, ["1/2", "-3"]) == [F(-3, 2)]


# --- symbolic ---------------------------------------------------------------

def test_symbolic_square_eq6_as_printed():
    a1, b1 = (Polynomial.var(("a1", "b1"), v) for v in ("a1", "b1"))
    out = eval_symbolic(builtin("square_eq6_as_printed").scheme)
    assert out[0] == RationalFn(a1 * a1 + b1 * b1)
    assert out[1] == RationalFn(2 * a1 * b1)


def test_symbolic_mul_eq7():
    v = ("a1", "b1", "a2", "b2")
    a1, b1, a2, b2 = (Polynomial.var(v, x) for x in v)
    out = eval_symbolic(builtin("mul_eq7").scheme)
    assert all(o.is_polynomial() for o in out)
    assert out[0].num == a1 * a2 - b1 * b2
    assert out[1].num == a1 * b2 + a2 * b1


def test_symbolic_identity():
    out = eval_symbolic(identity_scheme(3, ("x", "y", "z")))
    assert [o.num for o in out] == [Polynomial.var(("x", "y", "z"), n) for n in "xyz"]


def test_symbolic_identically_zero_divisor():
    s = Scheme("z", ("x",), ("q",), (linear([[1], [0]]), Binary((Div(0, 1),))))
    with pytest.raises(ZeroDivisorError):
        eval_symbolic(s)


@pytest.mark.parametrize("name", ALL)
def test_symbolic_matches_sympy_oracle(name):
    s = builtin(name).scheme
    for ours, theirs in zip(eval_symbolic(s), sympy_eval(s)):
        assert sympy.simplify(to_sympy(ours) - theirs) == 0


@pytest.mark.parametrize("name", ALL)
@given(data=st.data())
def test_symbolic_agrees_with_exact(name, data):
    s = builtin(name).scheme
    pt = data.draw(st.lists(st.builds(F, st.integers(-30, 30), st.integers(1, 6)),
                            min_size=s.n_inputs, max_size=s.n_inputs))
    try:
        exact = eval_exact(s, pt)
    except ZeroDivisorError:
        return
    assert [r(pt) for r in eval_symbolic(s)] == exact


@pytest.mark.parametrize("first,second", [
    ("square_logan_corrected", "square_eq6_as_printed"),
    ("mul_eq7", "square_direct"),
    ("scalar_logan", None),
])
def test_composition_law(first, second):
    f = builtin(first).scheme
    g = builtin(second).scheme if second else Scheme("dbl", ("p",), ("q",), (linear([[2]]),))
    fg = compose(f, g)
    for pt in itertools.islice(grid(f.n_inputs, 2), 0, None, 7):
        assert eval_exact(fg, pt) == eval_exact(g, eval_exact(f, pt))


# --- fixed point ------------------------------------------------------------

def test_fixed_config_checks():
    with pytest.raises(ValueError):
        FixedPointConfig(1, 0)
    with pytest.raises(ValueError):
        FixedPointConfig(8, 8)
    with pytest.raises(ValueError):
        FixedPointConfig(8, 2, overflow_policy="wrap")


def test_fixed_mul_eq7_exact():
    out, widths = eval_fixed(builtin("mul_eq7").scheme, FixedPointConfig(32, 8), [1, 2, 3, 4])
    assert out == [-5, 10]
    assert widths.bits[(0, 2)] == (3 * 256).bit_length()


def test_fixed_division_within_one_ulp():
    cfg = FixedPointConfig(32, 8)
    out, _ = eval_fixed(builtin("div_logan_corrected").scheme, cfg, [5, 3, 10, 4])
    for got, want in zip(out, [F(11, 5), F(2, 5)]):
        assert abs(got - want) <= F(1, 256)


def test_fixed_overflow_at_squarer():
    s = builtin("mul_eq7").scheme
    with pytest.raises(FixedPointOverflow) as exc:
        eval_fixed(s, FixedPointConfig(8, 0), [127, 127, 127, 127])
    with pytest.raises(FixedPointOverflow) as exc:
        eval_fixed(s, FixedPointConfig(8, 0), [12, -12, 12, 12])
    assert exc.value.kind == "squarer"
    assert isinstance(s.stages[exc.value.stage], type(s.stages[2]))


def test_fixed_unrepresentable_input():
    s = builtin("scalar_logan").scheme
    with pytest.raises(UnrepresentableInput):
        eval_fixed(s, FixedPointConfig(16, 2), [F(1, 8), 1])
    with pytest.raises(UnrepresentableInput):
        eval_fixed(s, FixedPointConfig(8, 4), [8, 1])
    # squares of quarter-steps need four fractional bits
    out, _ = eval_fixed(s, FixedPointConfig(16, 4), [F(3, 4), F(-1, 2)])
    assert out == [F(-3, 8)]
    out, _ = eval_fixed(s, FixedPointConfig(16, 2), [F(3, 4), F(-1, 2)])
    assert out == [F(-1, 4)]


def test_fixed_truncates_toward_zero():
    s = Scheme("d", ("x", "y"), ("q",), (Binary((Div(0, 1),)),))
    cfg = FixedPointConfig(16, 0)
    assert eval_fixed(s, cfg, [7, 2])[0] == [3]
    assert eval_fixed(s, cfg, [-7, 2])[0] == [-3]
    assert eval_fixed(s, cfg, [7, -2])[0] == [-3]
    with pytest.raises(ZeroDivisorError):
        eval_fixed(s, cfg, [7, 0])


def test_fixed_general_constant_and_shift():
    s = Scheme("c", ("x",), ("y", "z"), (Linear(linear([[F(3, 5)], [F(-1, 4)]]).matrix),))
    out, _ = eval_fixed(s, FixedPointConfig(16, 0), [10])
    assert out == [6, -2]


NO_DIV = [n for n in ALL if not any(isinstance(op, Div) for stage in builtin(n).scheme.stages
                                    for op in getattr(stage, "ops", ()))]
WITH_DIV = [n for n in ALL if n not in NO_DIV]


@pytest.mark.parametrize("name", NO_DIV)
@given(data=st.data())
def test_fixed_exact_without_division(name, data):
    s = builtin(name).scheme
    pt = data.draw(st.lists(st.integers(-100, 100), min_size=s.n_inputs, max_size=s.n_inputs))
    assert eval_fixed(s, FixedPointConfig(40, 6), pt)[0] == eval_exact(s, pt)


@pytest.mark.parametrize("name", WITH_DIV)
@given(data=st.data())
def test_fixed_division_error_bound(name, data):
    s = builtin(name).scheme
    # inputs on a 1/4 grid keep every pre-division value exact once f >= 6
    f = data.draw(st.integers(6, 16))
    pt = data.draw(st.lists(st.builds(F, st.integers(-200, 200), st.sampled_from([1, 2, 4])),
                            min_size=s.n_inputs, max_size=s.n_inputs))
    try:
        exact = eval_exact(s, pt)
    except ZeroDivisorError:
        return
    fixed, _ = eval_fixed(s, FixedPointConfig(64, f), pt)
    assert all(abs(a - b) <= F(1, 2 ** f) for a, b in zip(fixed, exact))


def test_width_report_merge_is_per_wire_max():
    a = WidthReport({(0, 0): 3, (1, 0): 5})
    b = WidthReport({(0, 0): 4, (2, 1): 1})
    m = a | b
    assert m.bits == {(0, 0): 4, (1, 0): 5, (2, 1): 1}
    assert (b | a).bits == m.bits
    assert m.required_word_bits() == 6


def test_sweep_independent_of_partition():
    s = builtin("div_logan_corrected").scheme
    cfg = FixedPointConfig(24, 4)
    whole = sweep_fixed(s, cfg, 2)
    merged = None
    for first in range(-2, 3):
        part = _sweep_points(s, cfg, ((first,) + q for q in grid(3, 2)))
        merged = part if merged is None else merged.merge(part)
    assert (merged.points, merged.skipped, merged.max_error, merged.worst_point) == \
        (whole.points, whole.skipped, whole.max_error, whole.worst_point)
    assert merged.widths.bits == whole.widths.bits
    assert whole.points + whole.skipped == 5 ** 4
    assert whole.skipped == 25


def test_sweep_with_workers_matches_serial():
    s = builtin("mul_eq7").scheme
    cfg = FixedPointConfig(10, 0)
    serial = sweep_fixed(s, cfg, 3)
    par = sweep_fixed(s, cfg, 3, workers=2)
    assert serial.overflow_points == par.overflow_points
    assert serial.widths.bits == par.widths.bits
    assert serial.points == par.points


def test_sweep_reports_overflows():
    res = sweep_fixed(builtin("mul_eq7").scheme, FixedPointConfig(8, 0), 6)
    assert res.overflow_points
    assert res.points == 13 ** 4
