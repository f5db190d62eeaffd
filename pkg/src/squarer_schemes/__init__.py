"""Squarer-based schemes for complex squaring, multiplication and division.

Schemes are pipelines of linear, unary and binary stages over exact
rationals. They can be evaluated exactly, symbolically or in fixed point,
checked against direct complex arithmetic, and audited for hardware cost.
"""

from .cost import CostReport, TableComparison, audit, compare_tables
from .evaluate import (
    FixedPointConfig,
    FixedPointOverflow,
    SweepResult,
    UnrepresentableInput,
    WidthReport,
    ZeroDivisorError,
    eval_exact,
    eval_fixed,
    eval_symbolic,
    sweep_fixed,
)
from .ir import (
    Binary,
    Copy,
    Div,
    Linear,
    Mul,
    Scale,
    Scheme,
    SchemeError,
    SchemeParseError,
    Square,
    Unary,
    ValidationReport,
    compose,
    export_dot,
    from_json,
    identity_scheme,
    parallel,
    to_json,
    validate,
)
from .library import BuiltinEntry, builtin, list_builtins
from .numeric import RMatrix, Rational, classify_constant, kron, mat_mul, parse_rational
from .poly import Polynomial, RationalFn
from .reference import (
    ComplexPair,
    complex_div,
    complex_mul,
    complex_mul_gauss,
    complex_square,
    logan_product,
    quarter_square_product,
)
from .verify import ReferenceId, VerifyResult, verify_exhaustive, verify_symbolic

__all__ = [
    "CostReport",
    "TableComparison",
    "audit",
    "compare_tables",
    "FixedPointConfig",
    "FixedPointOverflow",
    "SweepResult",
    "UnrepresentableInput",
    "WidthReport",
    "ZeroDivisorError",
    "eval_exact",
    "eval_fixed",
    "eval_symbolic",
    "sweep_fixed",
    "Binary",
    "Copy",
    "Div",
    "Linear",
    "Mul",
    "Scale",
    "Scheme",
    "SchemeError",
    "SchemeParseError",
    "Square",
    "Unary",
    "ValidationReport",
    "compose",
    "export_dot",
    "from_json",
    "identity_scheme",
    "parallel",
    "to_json",
    "validate",
    "BuiltinEntry",
    "builtin",
    "list_builtins",
    "RMatrix",
    "Rational",
    "classify_constant",
    "kron",
    "mat_mul",
    "parse_rational",
    "Polynomial",
    "RationalFn",
    "ComplexPair",
    "complex_div",
    "complex_mul",
    "complex_mul_gauss",
    "complex_square",
    "logan_product",
    "quarter_square_product",
    "ReferenceId",
    "VerifyResult",
    "verify_exhaustive",
    "verify_symbolic",
]

__version__ = "0.1.0"
