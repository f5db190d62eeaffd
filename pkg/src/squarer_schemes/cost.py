"""Hardware unit counts for schemes, and the comparison with the published tables."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields

from .ir import Binary, Div, Linear, Mul, Scale, Scheme, Square, Unary, require_valid
from .numeric import ConstKind, classify_constant

UNITS = ("adders", "squarers", "multipliers", "dividers")


@dataclass(frozen=True)
class CostReport:
    adders: int = 0
    squarers: int = 0
    multipliers: int = 0
    dividers: int = 0
    shifts: int = 0
    const_multipliers: int = 0

    def __add__(self, other: "CostReport") -> "CostReport":
        return CostReport(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def as_dict(self) -> dict:
        return asdict(self)

    def summary(self) -> str:
        """Nonzero main units, e.g. ``adders=11 squarers=8 dividers=2``."""
        parts = [f"{u}={getattr(self, u)}" for u in UNITS if getattr(self, u)]
        return " ".join(parts) if parts else "no arithmetic units"


def _const_cost(c) -> CostReport:
    k = classify_constant(c).kind
    if k is ConstKind.POWER_OF_TWO:
        return CostReport(shifts=1)
    if k is ConstKind.GENERAL:
        return CostReport(const_multipliers=1)
    return CostReport()


def audit(s: Scheme) -> CostReport:
    """Count units stage by stage, with no sharing across stages.

    A Linear row with k nonzero entries costs k-1 adders; entries of +-2^j
    cost a shift, other non-unit entries a constant multiplier.
    """
    require_valid(s)
    total = CostReport()
    for st in s.stages:
        if isinstance(st, Linear):
            for i in range(st.matrix.rows):
                terms = st.matrix.row_terms(i)
                total += CostReport(adders=max(len(terms) - 1, 0))
                for _, c in terms:
                    total += _const_cost(c)
        elif isinstance(st, Unary):
            for op in st.ops:
                if isinstance(op, Square):
                    total += CostReport(squarers=1)
                elif isinstance(op, Scale):
                    total += _const_cost(op.c)
        elif isinstance(st, Binary):
            for op in st.ops:
                if isinstance(op, Mul):
                    total += CostReport(multipliers=1)
                elif isinstance(op, Div):
                    total += CostReport(dividers=1)
    return total


# Unit counts as published: Table 1 (direct methods) and Table 2 (squarer schemes).
# Dashes in the published tables are zeros here.
TABLE_1 = {
    "squaring": {"adders": 1, "squarers": 2, "multipliers": 1, "dividers": 0},
    "multiplication": {"adders": 2, "squarers": 0, "multipliers": 4, "dividers": 0},
    "division": {"adders": 3, "squarers": 2, "multipliers": 4, "dividers": 2},
}
TABLE_2 = {
    "squaring": {"adders": 3, "squarers": 3, "multipliers": 0, "dividers": 0},
    "multiplication": {"adders": 14, "squarers": 6, "multipliers": 0, "dividers": 0},
    "division": {"adders": 11, "squarers": 8, "multipliers": 0, "dividers": 2},
}
TABLE_SCHEMES = {
    ("table1", "squaring"): "square_direct",
    ("table1", "multiplication"): "mul_direct",
    ("table1", "division"): "div_direct",
    ("table2", "squaring"): "square_eq6_as_printed",
    ("table2", "multiplication"): "mul_eq7",
    ("table2", "division"): "div_eq8_as_printed",
}
UNTABULATED = ("square_logan_corrected", "mul_gauss", "div_logan_corrected", "div_via_conjugate_mul",
               "scalar_logan", "scalar_quarter_square")


@dataclass(frozen=True)
class Cell:
    table: str
    operation: str
    unit: str
    scheme: str
    expected: int
    actual: int

    @property
    def match(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class TableComparison:
    cells: tuple
    extra: tuple  # (scheme name, CostReport) for schemes with no published column

    @property
    def all_match(self) -> bool:
        return all(c.match for c in self.cells)

    @property
    def mismatches(self) -> list:
        return [c for c in self.cells if not c.match]

    def to_dict(self) -> dict:
        return {
            "all_match": self.all_match,
            "cells": [dict(asdict(c), match=c.match) for c in self.cells],
            "untabulated": {name: rep.as_dict() for name, rep in self.extra},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        out = []
        for table, title in (("table1", "Table 1 (direct methods)"), ("table2", "Table 2 (squarer schemes)")):
            out.append(title)
            ops = ("squaring", "multiplication", "division")
            header = f"  {'unit':<12}" + "".join(f"{op:>18}" for op in ops)
            out.append(header)
            for unit in UNITS:
                row = f"  {unit:<12}"
                for op in ops:
                    c = next(c for c in self.cells if (c.table, c.operation, c.unit) == (table, op, unit))
                    mark = "ok" if c.match else "MISMATCH"
                    row += f"{f'{c.actual}/{c.expected} {mark}':>18}"
                out.append(row)
            out.append("  schemes: " + ", ".join(TABLE_SCHEMES[(table, op)] for op in ops))
            out.append("")
        out.append("Schemes without a published column")
        for name, rep in self.extra:
            out.append(f"  {name:<24} {rep.summary()}")
        n_ok = sum(c.match for c in self.cells)
        out.append("")
        out.append(f"{n_ok}/{len(self.cells)} cells match (actual/published)")
        return "\n".join(out) + "\n"


def compare_tables() -> TableComparison:
    from .library import builtin

    cells = []
    for (table, op), name in TABLE_SCHEMES.items():
        expected = (TABLE_1 if table == "table1" else TABLE_2)[op]
        rep = audit(builtin(name).scheme)
        for unit in UNITS:
            cells.append(Cell(table, op, unit, name, expected[unit], getattr(rep, unit)))
    extra = tuple((name, audit(builtin(name).scheme)) for name in UNTABULATED)
    return TableComparison(tuple(cells), extra)
