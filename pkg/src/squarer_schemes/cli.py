"""Command-line front end.

Exit codes: 0 success / PASS, 1 verification FAIL, 2 usage or input error,
3 runtime error (overflow, zero divisor).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .cost import audit, compare_tables
from .evaluate import (
    FixedPointConfig,
    FixedPointOverflow,
    UnrepresentableInput,
    ZeroDivisorError,
    eval_exact,
    eval_fixed,
    sweep_fixed,
)
from .ir import Linear, Scheme, SchemeError, Unary, export_dot, from_json, to_json, validate
from .library import builtin, list_builtins
from .numeric import format_rational, parse_rational
from .verify import ReferenceId, verify_exhaustive, verify_symbolic

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_scheme(arg: str) -> Scheme:
    if arg.startswith("@"):
        path = Path(arg[1:])
        try:
            text = path.read_text()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
        s = from_json(text)
        rep = validate(s)
        if not rep.ok:
            raise UsageError(f"invalid scheme in {path}: {rep.summary()}")
        return s
    try:
        return builtin(arg).scheme
    except KeyError:
        raise UsageError(f"unknown scheme {arg!r} (see `list`)") from None


def _parse_fixed(text: str) -> FixedPointConfig:
    try:
        w, f = (int(x) for x in text.split(","))
        return FixedPointConfig(w, f)
    except ValueError as e:
        raise UsageError(f"--fixed expects W,f (e.g. 32,8): {e}") from None


def _parse_inputs(text: str, allow_decimal: bool) -> list[Fraction]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(parse_rational(tok))
        except ZeroDivisionError:
            raise UsageError(f"zero denominator in input {tok!r}") from None
        except ValueError:
            if not allow_decimal:
                raise UsageError(f"input {tok!r} is not p/q or an integer "
                                 f"(decimals are only accepted with --fixed)") from None
            try:
                out.append(Fraction(tok))
            except ValueError:
                raise UsageError(f"input {tok!r} is not a number") from None
    return out


def _fmt(xs) -> str:
    return ", ".join(format_rational(x) for x in xs)


_AGAINST = {"square": "square", "mul": "mul", "div": "div", "product": "product"}


def _reference_for(s: Scheme, kind: str) -> ReferenceId:
    for name in list_builtins():
        e = builtin(name)
        if e.scheme == s and e.reference.kind == kind:
            return e.reference
    try:
        return ReferenceId.for_scheme(kind, s)
    except (SchemeError, ValueError) as e:
        raise UsageError(str(e)) from None


def _warn_erratum(s: Scheme, err) -> None:
    if s.known_erratum:
        print(f"warning: {s.name} reproduces a known erratum: {s.known_erratum}", file=err)


def cmd_list(args, out, err):
    for name in list_builtins():
        e = builtin(name)
        flag = " [erratum]" if e.scheme.known_erratum else ""
        print(f"{name:<24} {e.scheme.description}{flag}", file=out)
    return EXIT_OK


def cmd_show(args, out, err):
    s = load_scheme(args.scheme)
    print(f"scheme  {s.name}", file=out)
    print(f"inputs  {', '.join(s.input_labels)}", file=out)
    print(f"outputs {', '.join(s.output_labels)}", file=out)
    if s.known_erratum:
        print(f"erratum {s.known_erratum}", file=out)
    for i, st in enumerate(s.stages):
        if isinstance(st, Linear):
            m = st.matrix
            print(f"stage {i}: linear {m.rows}x{m.cols}", file=out)
            for line in m.pretty().splitlines():
                print(f"  {line}", file=out)
        else:
            kind = "unary" if isinstance(st, Unary) else "binary"
            ops = []
            for op in st.ops:
                name = type(op).__name__.lower()
                fields = [str(v) if not isinstance(v, Fraction) else format_rational(v)
                          for v in vars(op).values()]
                ops.append(f"{name}({', '.join(fields)})")
            print(f"stage {i}: {kind} [{', '.join(ops)}]", file=out)
    return EXIT_OK


def cmd_eval(args, out, err):
    s = load_scheme(args.scheme)
    inputs = _parse_inputs(args.inputs, allow_decimal=args.fixed is not None)
    if len(inputs) != s.n_inputs:
        raise UsageError(f"{s.name} takes {s.n_inputs} inputs ({', '.join(s.input_labels)}), got {len(inputs)}")
    _warn_erratum(s, err)
    if args.fixed is None:
        print(_fmt(eval_exact(s, inputs)), file=out)
        return EXIT_OK
    cfg = _parse_fixed(args.fixed)
    try:
        values, widths = eval_fixed(s, cfg, inputs)
    except UnrepresentableInput as e:
        raise UsageError(str(e)) from None
    print(_fmt(values), file=out)
    for layer, bits in sorted(widths.by_layer().items()):
        print(f"  layer {layer}: magnitude bits {' '.join(map(str, bits))}", file=out)
    print(f"  required word bits: {widths.required_word_bits()}", file=out)
    return EXIT_OK


def cmd_verify(args, out, err):
    s = load_scheme(args.scheme)
    ref = _reference_for(s, _AGAINST[args.against])
    try:
        sym = verify_symbolic(s, ref)
    except SchemeError as e:
        raise UsageError(str(e)) from None
    print(sym.describe(s.output_labels), file=out)
    ok = sym.passed
    if args.exhaustive is not None:
        ex = verify_exhaustive(s, ref, args.exhaustive)
        print(ex.describe(), file=out)
        ok = ok and ex.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_audit(args, out, err):
    s = load_scheme(args.scheme)
    rep = audit(s)
    if args.json:
        print(json.dumps(rep.as_dict(), indent=2), file=out)
    else:
        print(rep.summary(), file=out)
        print(f"  shifts={rep.shifts} const_multipliers={rep.const_multipliers}", file=out)
    return EXIT_OK


def cmd_tables(args, out, err):
    cmp = compare_tables()
    out.write(cmp.to_json() + "\n" if args.json else cmp.to_text())
    return EXIT_OK if cmp.all_match else EXIT_FAIL


def cmd_export(args, out, err):
    s = load_scheme(args.scheme)
    text = export_dot(s) if args.format == "dot" else to_json(s) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_sweep(args, out, err):
    s = load_scheme(args.scheme)
    cfg = _parse_fixed(args.fixed)
    try:
        res = sweep_fixed(s, cfg, args.range, workers=args.workers)
    except UnrepresentableInput as e:
        raise UsageError(str(e)) from None
    if args.json:
        doc = {
            "scheme": s.name,
            "word_bits": cfg.word_bits,
            "frac_bits": cfg.frac_bits,
            "range": args.range,
            "points": res.points,
            "skipped": res.skipped,
            "max_error": format_rational(res.max_error),
            "worst_point": list(res.worst_point) if res.worst_point else None,
            "overflow_points": [{"point": list(p), "stage": st, "wire": w} for p, st, w in res.overflow_points],
            "zero_divisor_points": [list(p) for p in res.zero_divisor_points],
            "widths": {f"{layer}:{wire}": b for (layer, wire), b in sorted(res.widths.bits.items())},
            "required_word_bits": res.widths.required_word_bits(),
        }
        print(json.dumps(doc, indent=2), file=out)
    else:
        print(f"{s.name}: Q{cfg.word_bits - cfg.frac_bits}.{cfg.frac_bits} over [-{args.range}, {args.range}]"
              f"^{s.n_inputs}", file=out)
        print(f"  points {res.points}, skipped {res.skipped} (zero divisor)", file=out)
        print(f"  max |fixed - exact| = {format_rational(res.max_error)}"
              + (f" at ({_fmt(res.worst_point)})" if res.worst_point else ""), file=out)
        for layer, bits in sorted(res.widths.by_layer().items()):
            print(f"  layer {layer}: magnitude bits {' '.join(map(str, bits))}", file=out)
        print(f"  required word bits: {res.widths.required_word_bits()}", file=out)
        print(f"  overflow points: {len(res.overflow_points)}", file=out)
        for p, st, w in res.overflow_points[:10]:
            print(f"    ({_fmt(p)}) at stage {st}, wire {w}", file=out)
        if res.zero_divisor_points:
            print(f"  fixed-point zero divisors: {len(res.zero_divisor_points)}", file=out)
    return EXIT_RUNTIME if res.overflow_points or res.zero_divisor_points else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="squarer-schemes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="list built-in schemes").set_defaults(func=cmd_list)

    sp = sub.add_parser("show", help="print stages, matrices and labels")
    sp.add_argument("scheme", help="built-in name or @file.json")
    sp.set_defaults(func=cmd_show)

    sp = sub.add_parser("eval", help="evaluate a scheme on one input vector")
    sp.add_argument("scheme")
    sp.add_argument("--inputs", required=True, help="comma-separated rationals, e.g. 1,2,3/4,-5")
    sp.add_argument("--fixed", metavar="W,f", help="fixed-point word and fraction bits")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("verify", help="check a scheme against a reference function")
    sp.add_argument("scheme")
    sp.add_argument("--against", required=True, choices=sorted(_AGAINST))
    sp.add_argument("--exhaustive", type=int, metavar="R", help="also test every integer point of [-R, R]^n")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("audit", help="count hardware units")
    sp.add_argument("scheme")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("tables", help="compare audits with the published unit tables")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("export", help="write the scheme as DOT or JSON")
    sp.add_argument("scheme")
    sp.add_argument("--format", choices=("dot", "json"), default="dot")
    sp.add_argument("--out", help="output path (default stdout)")
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("sweep", help="fixed-point vs exact over an integer grid")
    sp.add_argument("scheme")
    sp.add_argument("--fixed", required=True, metavar="W,f")
    sp.add_argument("--range", required=True, type=int, metavar="R")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out, err)
    except UsageError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except SchemeError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except (FixedPointOverflow, ZeroDivisorError) as e:
        print(f"error: {e}", file=err)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
