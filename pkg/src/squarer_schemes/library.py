"""Built-in schemes: the published factorizations, corrected variants, baselines."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cost import CostReport
from .ir import Binary, Copy, Div, Linear, Mul, Scale, Scheme, Square, Unary, compose, linear, parallel, squares
from .numeric import RMatrix, kron
from .verify import ReferenceId

XY_SQUARE = ("a1", "b1")
XY_MUL = ("a1", "b1", "a2", "b2")
XY_DIV_EQ8 = ("a1", "a2", "b1", "b2")
Y = ("c1", "d1")

# -- matrices exactly as printed -------------------------------------------

T_3x2 = RMatrix.from_rows([[1, 0], [0, 1], [1, 1]])
T_2x3 = RMatrix.from_rows([[1, 1, 0], [0, 0, 1]])
A_2 = RMatrix.from_rows([[1, 0], [-1, 1]])

A_6x4 = RMatrix.from_rows([
    [0, 0, 1, -1],
    [1, 0, 0, 0],
    [0, 0, 1, 1],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [1, -1, 0, 0],
])
H_2 = RMatrix.from_rows([[1, 1], [1, -1]])
H_6 = kron(RMatrix.identity(3), H_2)
A_3x6 = RMatrix.from_rows([
    [1, -1, 0, 0, 0, 0],
    [0, 0, 1, -1, 0, 0],
    [0, 0, 0, 0, 1, -1],
])
A_2x3 = RMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
D_2 = (Fraction(1, 4), Fraction(1, 4))

# the 8x4 shape and the ones-vector force the duplication reading of P
P_8x4 = kron(RMatrix.ones_column(2), RMatrix.identity(4))
A_8 = RMatrix.from_rows([
    [1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0],
    [0, 1, 1, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
])
A_4x8 = RMatrix.from_rows([
    [1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1],
])
A_3x4 = RMatrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]])
A_HAT_2x3 = RMatrix.from_rows([[1, 0, -1], [0, 1, -1]])


@dataclass(frozen=True)
class BuiltinEntry:
    scheme: Scheme
    reference: ReferenceId
    expected_verdict: str  # "PASS" | "FAIL"
    expected_cost: CostReport
    table_cell: str | None = None  # e.g. "table2/multiplication"
    residual_note: str | None = None


def _square_direct() -> Scheme:
    return Scheme(
        "square_direct", XY_SQUARE, Y,
        (
            Binary((Copy(0), Copy(1), Mul(0, 1))),
            Unary((Square(0), Square(1), Copy(2))),
            linear([[1, -1, 0], [0, 0, 2]]),
        ),
        description="a^2 - b^2 and 2ab with two squarers and one multiplier",
    )


def _square_eq6_as_printed() -> Scheme:
    return Scheme(
        "square_eq6_as_printed", XY_SQUARE, Y,
        (Linear(T_3x2), squares(3), Linear(T_2x3), Linear(A_2)),
        known_erratum="printed T2x3 adds a1^2 and b1^2, so the real output is a1^2 + b1^2 "
                      "instead of a1^2 - b1^2",
        description="three-squarer complex square, matrices as printed",
    )


def _square_logan_corrected() -> Scheme:
    return Scheme(
        "square_logan_corrected", XY_SQUARE, Y,
        (linear([[1, 0], [0, 1], [1, 1]]), squares(3), linear([[1, -1, 0], [-1, -1, 1]])),
        description="three-squarer complex square via Logan's identity, corrected",
    )


def _mul_direct() -> Scheme:
    return Scheme(
        "mul_direct", XY_MUL, Y,
        (Binary((Mul(0, 2), Mul(1, 3), Mul(0, 3), Mul(1, 2))), linear([[1, -1, 0, 0], [0, 0, 1, 1]])),
        description="schoolbook complex product, four multipliers",
    )


def _mul_gauss() -> Scheme:
    # wires: a1+b1, b2-a2, a2+b2, a2, a1, b1
    pre = linear([
        [1, 1, 0, 0],
        [0, 0, -1, 1],
        [0, 0, 1, 1],
        [0, 0, 1, 0],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
    ])
    return Scheme(
        "mul_gauss", XY_MUL, Y,
        (pre, Binary((Mul(3, 0), Mul(4, 1), Mul(5, 2))), linear([[1, 0, -1], [1, 1, 0]])),
        description="three-multiplier complex product",
    )


def _mul_eq7() -> Scheme:
    return Scheme(
        "mul_eq7", XY_MUL, Y,
        (Linear(A_6x4), Linear(H_6), squares(6), Linear(A_3x6), Linear(A_2x3),
         Unary((Scale(0, D_2[0]), Scale(1, D_2[1])))),
        description="six-squarer complex product (quarter squares on the three-product form)",
    )


def _div_direct() -> Scheme:
    return Scheme(
        "div_direct", XY_MUL, Y,
        (
            Binary((Mul(0, 2), Mul(1, 3), Mul(2, 1), Mul(0, 3), Copy(2), Copy(3))),
            Unary((Copy(0), Copy(1), Copy(2), Copy(3), Square(4), Square(5))),
            linear([[1, 1, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0], [0, 0, 0, 0, 1, 1]]),
            Binary((Div(0, 2), Div(1, 2))),
        ),
        description="conjugate-method complex quotient with multipliers",
    )


def _div_eq8_as_printed() -> Scheme:
    # the printed A3x4 keeps only v3 + v4; the extra row carries v4 = a2^2 + b2^2
    # forward so the data-dependent divisor 2(a2^2 + b2^2) costs a shift, not adders
    a3x4_pass = linear(A_3x4.to_rows() + [[0, 0, 0, 1]])
    ahat_den = linear([row + [0] for row in A_HAT_2x3.to_rows()] + [[0, 0, 0, 2]])
    return Scheme(
        "div_eq8_as_printed", XY_DIV_EQ8, Y,
        (Linear(P_8x4), Linear(A_8), squares(8), Linear(A_4x8), a3x4_pass, ahat_den,
         Binary((Div(0, 2), Div(1, 2)))),
        known_erratum="the imaginary numerator (a2+b1)^2 - (a1+b2)^2 - (a1^2+b1^2+a2^2+b2^2) "
                      "carries an extra -2(a1^2 + b2^2)",
        description="eight-squarer complex quotient, matrices as printed",
    )


def _div_logan_corrected() -> Scheme:
    # squares s1..s8: (a1+a2)^2, (b1+b2)^2, (a2+b1)^2, (a1+b2)^2, a1^2, b1^2, a2^2, b2^2
    combine = linear([
        [1, 1, 0, 0, 0, 0, 0, 0],   # v1 = s1 + s2
        [0, 0, 1, -1, 0, 0, 0, 0],  # v2 = s3 - s4
        [0, 0, 0, 0, 1, 0, 0, 1],   # e1 = a1^2 + b2^2
        [0, 0, 0, 0, 0, 1, 1, 0],   # e2 = b1^2 + a2^2
        [0, 0, 0, 0, 0, 0, 1, 1],   # den = a2^2 + b2^2
    ])
    finish = linear([[1, 0, -1, -1, 0], [0, 1, 1, -1, 0], [0, 0, 0, 0, 2]])
    return Scheme(
        "div_logan_corrected", XY_DIV_EQ8, Y,
        (Linear(P_8x4), Linear(A_8), squares(8), combine, finish, Binary((Div(0, 2), Div(1, 2)))),
        description="eight-squarer complex quotient, printed front end with corrected combination",
    )


def _div_via_conjugate_mul() -> Scheme:
    split = Scheme("conjugate_split", XY_MUL, ("a1", "b1", "a2", "-b2", "a2", "b2"),
                   (linear([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1],
                            [0, 0, 1, 0], [0, 0, 0, 1]]),))
    eye2 = RMatrix.identity(2)
    # runs beside mul_eq7 stage for stage
    norm = Scheme("norm", ("u", "v"), ("den",),
                  (Linear(eye2), Linear(eye2), squares(2), Linear(eye2), linear([[1, 1]]),
                   Unary((Copy(0),))))
    divide = Scheme("divide", ("re", "im", "den"), Y, (Binary((Div(0, 2), Div(1, 2))),))
    s = compose(compose(split, parallel(_mul_eq7(), norm)), divide, name="div_via_conjugate_mul")
    return Scheme(s.name, s.input_labels, s.output_labels, s.stages,
                  description="z1 * conj(z2) on the six-squarer multiplier, over a2^2 + b2^2")


def _scalar_logan() -> Scheme:
    return Scheme(
        "scalar_logan", ("a", "b"), ("p",),
        (linear([[1, 0], [0, 1], [1, 1]]), squares(3), linear([[-1, -1, 1]]),
         Unary((Scale(0, Fraction(1, 2)),))),
        description="ab = ((a+b)^2 - a^2 - b^2) / 2",
    )


def _scalar_quarter_square() -> Scheme:
    return Scheme(
        "scalar_quarter_square", ("a", "b"), ("p",),
        (linear([[1, 1], [1, -1]]), squares(2), linear([[1, -1]]), Unary((Scale(0, Fraction(1, 4)),))),
        description="ab = ((a+b)^2 - (a-b)^2) / 4",
    )


_CATALOG = {
    "square_direct": (_square_direct, "square", "PASS",
                      CostReport(adders=1, squarers=2, multipliers=1, shifts=1), "table1/squaring", None),
    "square_eq6_as_printed": (_square_eq6_as_printed, "square", "FAIL",
                              CostReport(adders=3, squarers=3), "table2/squaring", "c1 residual 2*b1^2"),
    "square_logan_corrected": (_square_logan_corrected, "square", "PASS",
                               CostReport(adders=4, squarers=3), None, None),
    "mul_direct": (_mul_direct, "mul", "PASS",
                   CostReport(adders=2, multipliers=4), "table1/multiplication", None),
    "mul_gauss": (_mul_gauss, "mul", "PASS", CostReport(adders=5, multipliers=3), None, None),
    "mul_eq7": (_mul_eq7, "mul", "PASS",
                CostReport(adders=14, squarers=6, shifts=2), "table2/multiplication", None),
    "div_direct": (_div_direct, "div", "PASS",
                   CostReport(adders=3, squarers=2, multipliers=4, dividers=2), "table1/division", None),
    "div_eq8_as_printed": (_div_eq8_as_printed, "div", "FAIL",
                           CostReport(adders=11, squarers=8, dividers=2, shifts=1), "table2/division",
                           "d1 residual -2*(a1^2 + b2^2) / (2*(a2^2 + b2^2))"),
    "div_logan_corrected": (_div_logan_corrected, "div", "PASS",
                            CostReport(adders=13, squarers=8, dividers=2, shifts=1), None, None),
    "div_via_conjugate_mul": (_div_via_conjugate_mul, "div", "PASS",
                              CostReport(adders=15, squarers=8, dividers=2, shifts=2), None, None),
    "scalar_logan": (_scalar_logan, "product", "PASS", CostReport(adders=3, squarers=3, shifts=1), None, None),
    "scalar_quarter_square": (_scalar_quarter_square, "product", "PASS",
                              CostReport(adders=3, squarers=2, shifts=1), None, None),
}


def list_builtins() -> list[str]:
    return list(_CATALOG)


@lru_cache(maxsize=None)
def builtin(name: str) -> BuiltinEntry:
    try:
        make, kind, verdict, cost, cell, note = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown scheme {name!r}; known: {', '.join(_CATALOG)}") from None
    s = make()
    return BuiltinEntry(s, ReferenceId.for_scheme(kind, s), verdict, cost, cell, note)
