"""Dataflow representation of a scheme: a pipeline of Linear/Unary/Binary stages."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence, Union

from .numeric import (
    ConstKind,
    RMatrix,
    block_diag,
    classify_constant,
    format_rational,
    parse_rational,
)


class SchemeError(ValueError):
    """Raised when an operation needs a valid scheme and does not get one."""


class SchemeParseError(SchemeError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


# --- stage operations -------------------------------------------------------

@dataclass(frozen=True)
class Copy:
    src: int


@dataclass(frozen=True)
class Square:
    src: int


@dataclass(frozen=True)
class Scale:
    src: int
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))


@dataclass(frozen=True)
class Mul:
    lhs: int
    rhs: int


@dataclass(frozen=True)
class Div:
    num: int
    den: int


UnaryOp = Union[Copy, Square, Scale]
BinaryOp = Union[Copy, Mul, Div]


def _refs(op) -> tuple[int, ...]:
    if isinstance(op, (Copy, Square, Scale)):
        return (op.src,)
    if isinstance(op, Mul):
        return (op.lhs, op.rhs)
    if isinstance(op, Div):
        return (op.num, op.den)
    raise TypeError(f"unknown op {op!r}")


def _shift(op, k: int):
    if isinstance(op, (Copy, Square, Scale)):
        return replace(op, src=op.src + k)
    if isinstance(op, Mul):
        return Mul(op.lhs + k, op.rhs + k)
    return Div(op.num + k, op.den + k)


# --- stages -----------------------------------------------------------------

@dataclass(frozen=True)
class Linear:
    matrix: RMatrix

    @property
    def in_width(self) -> int:
        return self.matrix.cols

    @property
    def out_width(self) -> int:
        return self.matrix.rows


@dataclass(frozen=True)
class Unary:
    ops: tuple

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))

    @property
    def out_width(self) -> int:
        return len(self.ops)


@dataclass(frozen=True)
class Binary:
    ops: tuple

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))

    @property
    def out_width(self) -> int:
        return len(self.ops)


Stage = Union[Linear, Unary, Binary]

_ALLOWED = {Unary: (Copy, Square, Scale), Binary: (Copy, Mul, Div)}


def linear(rows: Sequence[Sequence]) -> Linear:
    return Linear(RMatrix.from_rows(rows))


def squares(n: int) -> Unary:
    return Unary(tuple(Square(i) for i in range(n)))


@dataclass(frozen=True)
class Scheme:
    name: str
    input_labels: tuple
    output_labels: tuple
    stages: tuple
    known_erratum: str | None = None
    description: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "input_labels", tuple(self.input_labels))
        object.__setattr__(self, "output_labels", tuple(self.output_labels))
        object.__setattr__(self, "stages", tuple(self.stages))

    @property
    def n_inputs(self) -> int:
        return len(self.input_labels)

    @property
    def n_outputs(self) -> int:
        return len(self.output_labels)


# --- validation -------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    stage: int
    kind: str  # "width" | "wire" | "op" | "labels"
    message: str
    expected: int | None = None
    actual: int | None = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(v.message for v in self.violations)


def validate(s: Scheme) -> ValidationReport:
    """Check the width chain and wire references.

    Only the first width-chain break is reported (later widths are meaningless
    after it); every out-of-range wire index is reported.
    """
    out: list[Violation] = []
    if len(set(s.input_labels)) != len(s.input_labels):
        out.append(Violation(-1, "labels", "input labels are not distinct"))
    if not s.stages:
        if s.n_inputs != s.n_outputs:
            out.append(Violation(0, "width", f"empty pipeline maps {s.n_inputs} inputs to {s.n_outputs} outputs",
                                 s.n_outputs, s.n_inputs))
        return ValidationReport(tuple(out))

    width = s.n_inputs
    chain_broken = False
    for i, st in enumerate(s.stages):
        if isinstance(st, Linear):
            if st.in_width != width and not chain_broken:
                out.append(Violation(i, "width", f"stage {i}: expected input width {width}, "
                                                 f"matrix has {st.in_width} columns", width, st.in_width))
                chain_broken = True
        elif isinstance(st, (Unary, Binary)):
            allowed = _ALLOWED[type(st)]
            for k, op in enumerate(st.ops):
                if not isinstance(op, allowed):
                    out.append(Violation(i, "op", f"stage {i} op {k}: {type(op).__name__} "
                                                  f"not allowed in {type(st).__name__}"))
                    continue
                for ref in _refs(op):
                    if not (0 <= ref < width):
                        out.append(Violation(i, "wire", f"stage {i} op {k}: wire {ref} out of range "
                                                        f"for input width {width}", width, ref))
            if not st.ops:
                out.append(Violation(i, "width", f"stage {i}: no ops", None, 0))
        else:
            out.append(Violation(i, "op", f"stage {i}: unknown stage type {type(st).__name__}"))
            return ValidationReport(tuple(out))
        width = st.out_width
    if width != s.n_outputs and not chain_broken:
        out.append(Violation(len(s.stages), "width", f"last stage yields {width} wires, "
                                                     f"{s.n_outputs} output labels", s.n_outputs, width))
    return ValidationReport(tuple(out))


def require_valid(s: Scheme) -> None:
    rep = validate(s)
    if not rep.ok:
        raise SchemeError(f"invalid scheme {s.name!r}: {rep.summary()}")


# --- combinators ------------------------------------------------------------

def identity_scheme(n: int, labels: Sequence[str] | None = None) -> Scheme:
    labels = tuple(labels) if labels else tuple(f"x{i}" for i in range(n))
    return Scheme(f"identity{n}", labels, labels, (Linear(RMatrix.identity(n)),))


def compose(first: Scheme, second: Scheme, name: str | None = None) -> Scheme:
    """Run ``first`` then ``second``; stage lists are concatenated."""
    if first.n_outputs != second.n_inputs:
        raise SchemeError(f"cannot compose: {first.name!r} yields {first.n_outputs} wires, "
                          f"{second.name!r} takes {second.n_inputs}")
    return Scheme(name or f"{first.name}>>{second.name}", first.input_labels, second.output_labels,
                  first.stages + second.stages)


def parallel(top: Scheme, bottom: Scheme, name: str | None = None) -> Scheme:
    """Side-by-side stacking of two schemes with stage-by-stage matching kinds.

    Wires of ``bottom`` follow those of ``top`` at every level.
    """
    if len(top.stages) != len(bottom.stages):
        raise SchemeError("parallel schemes need the same number of stages")
    stages = []
    wt = top.n_inputs
    for i, (a, b) in enumerate(zip(top.stages, bottom.stages)):
        if type(a) is not type(b):
            raise SchemeError(f"stage {i}: cannot stack {type(a).__name__} with {type(b).__name__}")
        if isinstance(a, Linear):
            stages.append(Linear(block_diag(a.matrix, b.matrix)))
        else:
            stages.append(type(a)(a.ops + tuple(_shift(op, wt) for op in b.ops)))
        wt = a.out_width
    return Scheme(name or f"{top.name}||{bottom.name}", top.input_labels + bottom.input_labels,
                  top.output_labels + bottom.output_labels, tuple(stages))


# --- JSON -------------------------------------------------------------------

def _op_to_json(op) -> dict:
    if isinstance(op, Copy):
        return {"op": "copy", "src": op.src}
    if isinstance(op, Square):
        return {"op": "square", "src": op.src}
    if isinstance(op, Scale):
        return {"op": "scale", "src": op.src, "c": format_rational(op.c)}
    if isinstance(op, Mul):
        return {"op": "mul", "lhs": op.lhs, "rhs": op.rhs}
    if isinstance(op, Div):
        return {"op": "div", "num": op.num, "den": op.den}
    raise TypeError(op)


def scheme_to_dict(s: Scheme) -> dict:
    doc: dict = {"name": s.name, "inputs": list(s.input_labels), "outputs": list(s.output_labels)}
    if s.known_erratum:
        doc["erratum"] = s.known_erratum
    stages = []
    for st in s.stages:
        if isinstance(st, Linear):
            m = st.matrix
            stages.append({"kind": "linear", "rows": m.rows, "cols": m.cols,
                           "entries": [[format_rational(x) for x in m.row(i)] for i in range(m.rows)]})
        elif isinstance(st, Unary):
            stages.append({"kind": "unary", "ops": [_op_to_json(op) for op in st.ops]})
        else:
            stages.append({"kind": "binary", "ops": [_op_to_json(op) for op in st.ops]})
    doc["stages"] = stages
    return doc


def to_json(s: Scheme) -> str:
    return json.dumps(scheme_to_dict(s), indent=2)


def _need(d, key, typ, loc):
    if not isinstance(d, dict) or key not in d:
        raise SchemeParseError(loc, f"missing key {key!r}")
    v = d[key]
    if typ is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise SchemeParseError(f"{loc}.{key}", f"expected integer, got {v!r}")
    if typ is not int and not isinstance(v, typ):
        raise SchemeParseError(f"{loc}.{key}", f"expected {typ.__name__}, got {type(v).__name__}")
    return v


def _rat(text, loc) -> Fraction:
    if not isinstance(text, str):
        raise SchemeParseError(loc, f"rational entries must be strings, got {text!r}")
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemeParseError(loc, str(e)) from None


_OP_FIELDS = {
    "copy": (Copy, ("src",)),
    "square": (Square, ("src",)),
    "scale": (Scale, ("src",)),
    "mul": (Mul, ("lhs", "rhs")),
    "div": (Div, ("num", "den")),
}
_STAGE_OPS = {"unary": {"copy", "square", "scale"}, "binary": {"copy", "mul", "div"}}


def scheme_from_dict(doc) -> Scheme:
    if not isinstance(doc, dict):
        raise SchemeParseError("$", "document must be an object")
    name = _need(doc, "name", str, "$")
    inputs = _need(doc, "inputs", list, "$")
    outputs = _need(doc, "outputs", list, "$")
    for key, labels in (("inputs", inputs), ("outputs", outputs)):
        for k, lab in enumerate(labels):
            if not isinstance(lab, str):
                raise SchemeParseError(f"$.{key}[{k}]", "labels must be strings")
    erratum = doc.get("erratum")
    if erratum is not None and not isinstance(erratum, str):
        raise SchemeParseError("$.erratum", "must be a string")
    stages = []
    for i, sd in enumerate(_need(doc, "stages", list, "$")):
        loc = f"$.stages[{i}]"
        kind = _need(sd, "kind", str, loc)
        if kind == "linear":
            rows = _need(sd, "rows", int, loc)
            cols = _need(sd, "cols", int, loc)
            entries = _need(sd, "entries", list, loc)
            if rows < 1 or cols < 1:
                raise SchemeParseError(loc, f"bad shape {rows}x{cols}")
            if len(entries) != rows:
                raise SchemeParseError(f"{loc}.entries", f"expected {rows} rows, got {len(entries)}")
            flat = []
            for r, row in enumerate(entries):
                if not isinstance(row, list) or len(row) != cols:
                    raise SchemeParseError(f"{loc}.entries[{r}]", f"expected a row of {cols} entries")
                flat.extend(_rat(x, f"{loc}.entries[{r}][{c}]") for c, x in enumerate(row))
            stages.append(Linear(RMatrix(rows, cols, flat)))
        elif kind in _STAGE_OPS:
            ops = []
            for k, od in enumerate(_need(sd, "ops", list, loc)):
                oloc = f"{loc}.ops[{k}]"
                opname = _need(od, "op", str, oloc)
                if opname not in _STAGE_OPS[kind]:
                    raise SchemeParseError(f"{oloc}.op", f"op {opname!r} not allowed in {kind} stage")
                cls, fields = _OP_FIELDS[opname]
                args = [_need(od, f, int, oloc) for f in fields]
                if opname == "scale":
                    args.append(_rat(_need(od, "c", str, oloc), f"{oloc}.c"))
                ops.append(cls(*args))
            stages.append((Unary if kind == "unary" else Binary)(tuple(ops)))
        else:
            raise SchemeParseError(f"{loc}.kind", f"unknown stage kind {kind!r}")
    return Scheme(name, tuple(inputs), tuple(outputs), tuple(stages), erratum)


def from_json(text: str) -> Scheme:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemeParseError(f"line {e.lineno} col {e.colno}", e.msg) from None
    return scheme_from_dict(doc)


# --- DOT --------------------------------------------------------------------

def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(s: Scheme) -> str:
    """Render the scheme as a left-to-right Graphviz digraph.

    Node ``class`` attributes name the hardware unit (adder, squarer, shift,
    const_multiplier, multiplier, divider); a row of k nonzero terms becomes a
    chain of k-1 adders. Edge label ``-`` marks a negated operand.
    """
    require_valid(s)
    nodes: list[str] = []
    edges: list[str] = []
    counter = {"n": 0}

    def node(cls: str, label: str, shape: str) -> str:
        nid = f"n{counter['n']}"
        counter["n"] += 1
        nodes.append(f'  {nid} [class="{cls}", label="{_dot_escape(label)}", shape={shape}];')
        return nid

    def edge(src, dst):
        nid, neg = src
        edges.append(f"  {nid} -> {dst}" + (' [label="-"];' if neg else ";"))

    def scaled(src, c: Fraction):
        """Route ``src`` through a constant multiplier node if ``|c| != 1``."""
        cc = classify_constant(c)
        neg = src[1] ^ cc.negative
        if cc.kind is ConstKind.PLUS_MINUS_ONE:
            return (src[0], neg)
        if cc.kind is ConstKind.POWER_OF_TWO:
            nid = node("shift", f"<<{cc.exponent}" if cc.exponent > 0 else f">>{-cc.exponent}", "circle")
        else:
            nid = node("const_multiplier", format_rational(abs(c)), "circle")
        edges.append(f"  {src[0]} -> {nid}" + (' [label="-"];' if src[1] else ";"))
        return (nid, cc.negative)

    zero = None
    wires = [(node("input", lab, "plaintext"), False) for lab in s.input_labels]
    for si, st in enumerate(s.stages):
        new = []
        if isinstance(st, Linear):
            for i in range(st.matrix.rows):
                terms = [scaled(wires[j], c) for j, c in st.matrix.row_terms(i)]
                if not terms:
                    if zero is None:
                        zero = node("zero", "0", "plaintext")
                    new.append((zero, False))
                    continue
                acc = terms[0]
                for t in terms[1:]:
                    a = node("adder", "+", "point")
                    edge(acc, a)
                    edge(t, a)
                    acc = (a, False)
                new.append(acc)
        else:
            for op in st.ops:
                if isinstance(op, Copy):
                    new.append(wires[op.src])
                elif isinstance(op, Square):
                    n = node("squarer", "x²", "square")
                    edge(wires[op.src], n)
                    new.append((n, False))
                elif isinstance(op, Scale):
                    if op.c == 0:
                        if zero is None:
                            zero = node("zero", "0", "plaintext")
                        new.append((zero, False))
                    else:
                        new.append(scaled(wires[op.src], op.c))
                elif isinstance(op, Mul):
                    n = node("multiplier", "×", "box")
                    edge(wires[op.lhs], n)
                    edge(wires[op.rhs], n)
                    new.append((n, False))
                else:
                    n = node("divider", "÷", "box")
                    edges.append(f'  {wires[op.num][0]} -> {n} [label="{"-" if wires[op.num][1] else ""}num"];')
                    edges.append(f'  {wires[op.den][0]} -> {n} [label="{"-" if wires[op.den][1] else ""}den"];')
                    new.append((n, False))
        wires = new
    for lab, w in zip(s.output_labels, wires):
        edge(w, node("output", lab, "plaintext"))
    name = "".join(ch if ch.isalnum() or ch == "_" else "_" for ch in s.name) or "scheme"
    return "\n".join([f"digraph {name} {{", "  rankdir=LR;", *nodes, *edges, "}"]) + "\n"
