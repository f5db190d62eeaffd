import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from squarer_schemes import builtin, list_builtins
from squarer_schemes.cost import CostReport, audit, compare_tables
from squarer_schemes.ir import Binary, Copy, Div, Linear, Mul, Scale, Scheme, SchemeError, Square, Unary, compose, linear
from squarer_schemes.numeric import RMatrix

from .strategies import matrices

ALL = list_builtins()


def hand_count(rows):
    """Reference adder count: nonzeros per row minus one."""
    return sum(max(sum(1 for x in r if x != 0) - 1, 0) for r in rows)


def test_published_examples():
    assert audit(builtin("mul_eq7").scheme) == CostReport(adders=14, squarers=6, shifts=2)
    r = audit(builtin("div_eq8_as_printed").scheme)
    assert (r.adders, r.squarers, r.multipliers, r.dividers) == (11, 8, 0, 2)
    r = audit(builtin("square_direct").scheme)
    assert (r.adders, r.squarers, r.multipliers) == (1, 2, 1)


def test_eq7_adder_chain_breakdown():
    # 3 + 6 + 3 + 2 across the four linear stages
    s = builtin("mul_eq7").scheme
    per_stage = [hand_count(st.matrix.to_rows()) for st in s.stages if isinstance(st, Linear)]
    assert per_stage == [3, 6, 3, 2]


@pytest.mark.parametrize("name", ALL)
def test_adders_match_hand_count(name):
    s = builtin(name).scheme
    rows = [r for st in s.stages if isinstance(st, Linear) for r in st.matrix.to_rows()]
    assert audit(s).adders == hand_count(rows)


def test_constant_classification_costs():
    s = Scheme("c", ("x",), ("a", "b", "c", "d", "e"),
               (Linear(RMatrix.from_rows([[1], [-1], [Fraction(-1, 8)], [3], [Fraction(2, 3)]])),))
    assert audit(s) == CostReport(shifts=1, const_multipliers=2)
    s = Scheme("u", ("x", "y"), ("a", "b", "c"),
               (Unary((Scale(0, Fraction(1, 4)), Scale(1, 5), Copy(0))),))
    assert audit(s) == CostReport(shifts=1, const_multipliers=1)


def test_binary_costs():
    s = Scheme("b", ("x", "y"), ("a", "b", "c"), (Binary((Mul(0, 1), Div(0, 1), Copy(1))),))
    assert audit(s) == CostReport(multipliers=1, dividers=1)


def test_d2_counts_as_shifts():
    r = audit(builtin("mul_eq7").scheme)
    assert r.shifts == 2 and r.multipliers == 0 and r.const_multipliers == 0


def test_doubling_counts_as_shift():
    r = audit(builtin("div_logan_corrected").scheme)
    assert r.shifts == 1 and r.multipliers == 0


def test_corrected_variant_costs():
    def main(n):
        r = audit(builtin(n).scheme)
        return r.adders, r.squarers, r.multipliers, r.dividers
    assert main("square_logan_corrected") == (4, 3, 0, 0)
    assert main("div_logan_corrected") == (13, 8, 0, 2)
    assert main("div_via_conjugate_mul") == (15, 8, 0, 2)


def test_audit_rejects_invalid():
    with pytest.raises(SchemeError):
        audit(Scheme("bad", ("x",), ("o",), (linear([[1, 1]]),)))


DOUBLE = Scheme("dbl", ("p",), ("q",), (linear([[2]]),))


@pytest.mark.parametrize("f,g", [
    ("square_logan_corrected", "square_eq6_as_printed"),
    ("mul_eq7", "square_direct"),
    ("mul_gauss", "square_logan_corrected"),
    ("scalar_logan", None),
])
def test_additivity_under_compose(f, g):
    a = builtin(f).scheme
    b = builtin(g).scheme if g else DOUBLE
    assert audit(compose(a, b)) == audit(a) + audit(b)


@given(matrices(rows=3, cols=3), matrices(rows=2, cols=3))
def test_additivity_random_linear(m1, m2):
    a = Scheme("a", ("x", "y", "z"), ("p", "q", "r"), (Linear(m1), Unary((Square(0), Copy(1), Square(2)))))
    b = Scheme("b", ("p", "q", "r"), ("u", "v"), (Linear(m2),))
    assert audit(compose(a, b)) == audit(a) + audit(b)


@given(matrices(), st.randoms(use_true_random=False))
def test_row_permutation_invariance(m, rnd):
    rows = m.to_rows()
    perm = rows[:]
    rnd.shuffle(perm)
    labels = tuple(f"x{i}" for i in range(m.cols))
    outs = tuple(f"y{i}" for i in range(m.rows))
    s1 = Scheme("s", labels, outs, (Linear(m),))
    s2 = Scheme("s", labels, outs, (Linear(RMatrix.from_rows(perm)),))
    assert audit(s1) == audit(s2)


@pytest.mark.parametrize("name", ALL)
def test_op_permutation_invariance(name):
    s = builtin(name).scheme
    stages = tuple(type(st)(tuple(reversed(st.ops))) if isinstance(st, (Unary, Binary)) else st
                   for st in s.stages)
    assert audit(Scheme(s.name, s.input_labels, s.output_labels, stages)) == audit(s)


def test_compare_tables_all_24_match():
    cmp = compare_tables()
    assert len(cmp.cells) == 24
    assert cmp.all_match and cmp.mismatches == []
    # adders/squarers/multipliers/dividers as published
    published = {
        ("table1", "squaring"): (1, 2, 1, 0), ("table1", "multiplication"): (2, 0, 4, 0),
        ("table1", "division"): (3, 2, 4, 2), ("table2", "squaring"): (3, 3, 0, 0),
        ("table2", "multiplication"): (14, 6, 0, 0), ("table2", "division"): (11, 8, 0, 2),
    }
    units = ("adders", "squarers", "multipliers", "dividers")
    for c in cmp.cells:
        assert c.expected == published[(c.table, c.operation)][units.index(c.unit)] == c.actual


def test_compare_tables_reports_corrected_variants():
    extra = dict(compare_tables().extra)
    assert (extra["square_logan_corrected"].adders, extra["square_logan_corrected"].squarers) == (4, 3)
    assert extra["div_logan_corrected"].summary() == "adders=13 squarers=8 dividers=2"


def test_compare_tables_json_roundtrip():
    cmp = compare_tables()
    doc = json.loads(cmp.to_json())
    assert doc == cmp.to_dict()
    assert doc["all_match"] is True
    assert len(doc["cells"]) == 24
    assert "24/24 cells match" in cmp.to_text()
