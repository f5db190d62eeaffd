from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from squarer_schemes.poly import Polynomial, RationalFn

VARS = ("a", "b", "c")


def P(name):
    return Polynomial.var(VARS, name)


def to_sympy(p: Polynomial):
    syms = sympy.symbols(p.vars)
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*(s ** k for s, k in zip(syms, e)))
                for e, c in p.terms.items()), sympy.Integer(0))


coef = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))
exps = st.tuples(*(st.integers(0, 3) for _ in VARS))
polys = st.builds(lambda d: Polynomial(VARS, d), st.dictionaries(exps, coef, max_size=5))


def test_square_of_sum_expands():
    a, b = P("a"), P("b")
    assert (a + b) ** 2 == a * a + 2 * a * b + b * b
    assert str((a + b) ** 2) == "a^2 + 2*a*b + b^2"


def test_no_zero_coefficients_stored():
    a, b = P("a"), P("b")
    p = (a + b) - a - b
    assert p.is_zero()
    assert p.terms == {}
    assert Polynomial(VARS, {(1, 0, 0): 0}).terms == {}


def test_exponent_length_checked():
    with pytest.raises(ValueError):
        Polynomial(VARS, {(1, 0): 1})


def test_var_mismatch():
    with pytest.raises(ValueError):
        P("a") + Polynomial.var(("a",), "a")


@given(polys, polys)
def test_ring_ops_match_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p + q) - to_sympy(p) - to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p - q) - to_sympy(p) + to_sympy(q)) == 0


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p


@given(polys, st.tuples(coef, coef, coef))
def test_evaluation_matches_sympy(p, point):
    syms = sympy.symbols(VARS)
    expected = to_sympy(p).subs(dict(zip(syms, [sympy.Rational(x.numerator, x.denominator) for x in point])))
    got = p(point)
    assert sympy.Rational(got.numerator, got.denominator) == expected


def test_scalar_ratio():
    a, b = P("a"), P("b")
    q = a * a + b * b
    assert (2 * q).scalar_ratio(q) == 2
    assert q.scalar_ratio(q + a) is None
    assert (q + a).scalar_ratio(q) is None


def test_rationalfn_constant_denominator_folds():
    r = RationalFn(P("a"), Polynomial.const(VARS, 4))
    assert r.is_polynomial()
    assert r.den == Polynomial.const(VARS, 1)
    assert r.num == P("a") * Fraction(1, 4)


def test_rationalfn_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RationalFn(P("a"), Polynomial(VARS))
    with pytest.raises(ZeroDivisionError):
        RationalFn(P("a")) / (RationalFn(P("a")) - P("a"))


def test_rationalfn_equality_by_cross_multiplication():
    a, b = RationalFn.var(VARS, "a"), RationalFn.var(VARS, "b")
    lhs = (a * a - b * b) / (a - b)
    assert lhs == a + b
    assert lhs.den != Polynomial.const(VARS, 1)  # never reduced


def test_rationalfn_evaluation():
    a, b = RationalFn.var(VARS, "a"), RationalFn.var(VARS, "b")
    r = (a + 1) / (a * a + b * b)
    assert r((1, 2, 0)) == Fraction(2, 5)
    with pytest.raises(ZeroDivisionError):
        r((0, 0, 0))


@given(polys, polys.filter(lambda q: not q.is_zero()), st.tuples(coef, coef, coef))
def test_rationalfn_division_pointwise(p, q, point):
    if q(point) == 0:
        return
    r = RationalFn(p) / RationalFn(q)
    assert r(point) == p(point) / q(point)
