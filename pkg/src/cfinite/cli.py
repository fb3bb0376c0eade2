"""``cfinite`` command-line front end.

Exit status: 0 success, 1 bad input, 2 mathematical failure (no power
series, ill-conditioned or failed factorisation), 3 internal invariant
violation or a failed ``demo`` check.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from .closedform import InvariantViolation, asymptotic, closed_form, verify
from .demo import run_examples
from .errors import CFiniteError, MathError
from .fields import DEFAULT_PRECISION, FieldElem
from .parse import parse_ratfunc, parse_rational, parse_recurrence
from .poly import RatFunc, series_expand
from .records import (
    OutputRecord,
    asymptotic_record,
    closed_form_record,
    dumps,
    gf_record,
    recurrence_record,
    report_record,
    terms_record,
)
from .recurrence import Recurrence, gf_to_rec, guess_recurrence, nth_term_fast, rec_to_gf, terms
from .transforms import difference, interleave, multisection, partial_sum, scale_arg, xd

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_INVARIANT = 0, 1, 2, 3

_SEQUENCE = re.compile(r"^\s*-?\d+(/\d+)?(\s+-?\d+(/\d+)?)*\s*$")


class UsageError(CFiniteError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input helpers ------------------------------------------------------------------------------


def _text(args) -> str:
    if args.stdin:
        return sys.stdin.read().strip()
    if not args.input:
        raise UsageError("no input given (pass an expression, --gf, or --stdin)")
    return " ".join(args.input)


def _source(args) -> Recurrence | RatFunc:
    """A recurrence or a generating function, depending on what was typed."""
    if getattr(args, "gf", None):
        return parse_ratfunc(args.gf)
    text = _text(args)
    if "a(" in text:
        return parse_recurrence(text)
    return parse_ratfunc(text)


def _as_gf(src) -> RatFunc:
    return rec_to_gf(src) if isinstance(src, Recurrence) else src


def _sequence(text: str) -> list[Fraction]:
    return [parse_rational(tok) for tok in text.split()]


def _guess(values: list[Fraction], max_order: int | None) -> RatFunc:
    if max_order is None:
        max_order = max(1, (len(values) - 2) // 2)
    found = guess_recurrence(values, max_order)
    if found is None:
        raise UsageError(f"no recurrence of order <= {max_order} fits the {len(values)} given terms")
    return found[1]


# -- commands -----------------------------------------------------------------------------------


def cmd_terms(args) -> OutputRecord:
    src = _source(args)
    n = 10 if args.n is None else args.n
    values = terms(src, n) if isinstance(src, Recurrence) else series_expand(src, n)
    return terms_record(values)


def cmd_nth(args) -> OutputRecord:
    if args.n is None:
        raise UsageError("nth needs --n")
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    src = _source(args)
    rec = src if isinstance(src, Recurrence) else gf_to_rec(src)[0]
    return terms_record([nth_term_fast(rec, args.n)], start=args.n)


def cmd_gf(args) -> OutputRecord:
    return gf_record(_as_gf(_source(args)))


def cmd_from_gf(args) -> OutputRecord:
    f = _as_gf(_source(args))
    rec, offset = gf_to_rec(f)
    warnings = []
    if offset.offset:
        warnings.append(
            f"numerator degree >= denominator degree: the homogeneous relation holds from n >= {offset.offset}"
        )
    return recurrence_record(rec, offset.offset, warnings)


def cmd_closed_form(args) -> OutputRecord:
    f = _as_gf(_source(args))
    cf = closed_form(f, args.precision)
    warnings = []
    if not cf.exact:
        report = verify(cf, f, 30)
        if not report.passed:
            raise InvariantViolation(f"closed form disagrees with the series at n = {report.first_mismatch}")
        warnings.append(f"numeric coefficients at {args.precision}-bit precision")
    return closed_form_record(cf, warnings)


def cmd_asymptotics(args) -> OutputRecord:
    est = asymptotic(_as_gf(_source(args)), args.precision)
    return asymptotic_record(est)


def cmd_sum(args) -> OutputRecord:
    return gf_record(partial_sum(_as_gf(_source(args))))


def cmd_diff(args) -> OutputRecord:
    return gf_record(difference(_as_gf(_source(args))))


def cmd_xd(args) -> OutputRecord:
    if args.power < 0:
        raise UsageError("--power must be nonnegative")
    return gf_record(xd(_as_gf(_source(args)), args.power))


def cmd_scale(args) -> OutputRecord:
    return gf_record(scale_arg(_as_gf(_source(args)), parse_rational(args.by)))


def cmd_subseq(args) -> OutputRecord:
    if args.m < 1 or not 0 <= args.r < args.m:
        raise UsageError("subseq needs --m >= 1 and 0 <= --r < --m")
    return gf_record(multisection(_as_gf(_source(args)), args.m, args.r))


def cmd_interleave(args) -> OutputRecord:
    parts = [ln for ln in _text(args).split("\n")] if args.stdin else list(args.input)
    parts = [p.strip() for p in parts if p.strip()]
    if not parts:
        raise UsageError("interleave needs at least one part")
    gfs = []
    for p in parts:
        if _SEQUENCE.match(p):
            gfs.append(_guess(_sequence(p), args.max_order))
        elif "a(" in p:
            gfs.append(rec_to_gf(parse_recurrence(p)))
        else:
            gfs.append(parse_ratfunc(p))
    return gf_record(interleave(gfs))


def cmd_guess(args) -> OutputRecord:
    values = _sequence(_text(args))
    return gf_record(_guess(values, args.max_order))


def cmd_demo(args) -> OutputRecord:
    return report_record(run_examples())


COMMANDS = {
    "terms": (cmd_terms, "first --n terms of a recurrence or generating function"),
    "nth": (cmd_nth, "term a(--n) by fast exponentiation"),
    "gf": (cmd_gf, "generating function of a recurrence"),
    "from-gf": (cmd_from_gf, "recurrence read off a generating function"),
    "closed-form": (cmd_closed_form, "exponential-polynomial closed form"),
    "asymptotics": (cmd_asymptotics, "dominant growth rate"),
    "sum": (cmd_sum, "partial sums"),
    "diff": (cmd_diff, "first differences"),
    "xd": (cmd_xd, "multiply a(n) by n^power"),
    "scale": (cmd_scale, "multiply a(n) by c^n"),
    "subseq": (cmd_subseq, "subsequence a(m n + r)"),
    "interleave": (cmd_interleave, "merge sequences round-robin"),
    "guess": (cmd_guess, "smallest recurrence fitting the given terms"),
    "demo": (cmd_demo, "run the worked examples and check their known answers"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="number of terms, or the index for nth")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="working precision in bits")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--max-order", type=int, default=None, dest="max_order")
    common.add_argument("--gf", default=None, help="generating function input")
    common.add_argument("--stdin", action="store_true", help="read the input from standard input")

    parser = _Parser(prog="cfinite", description="C-finite sequences: recurrences, generating functions, closed forms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "xd":
            p.add_argument("--power", type=int, default=1)
        elif name == "scale":
            p.add_argument("--by", required=True, help="the constant c")
        elif name == "subseq":
            p.add_argument("--m", type=int, required=True)
            p.add_argument("--r", type=int, default=0)
        if name != "demo":
            p.add_argument("input", nargs="*", help="recurrence, generating function or terms")
    return parser


# -- output -------------------------------------------------------------------------------------------


def _scalar_text(v) -> str:
    if isinstance(v, str):
        return str(Fraction(v))
    if "d" in v:
        return str(FieldElem(Fraction(v["a"]), Fraction(v["b"]), v["d"]))
    re_, im = v["re"], v["im"]
    if abs(float(im)) <= float(v["err"]):
        return re_
    sign = "-" if im.startswith("-") else "+"
    return f"({re_}{sign}{im.lstrip('-')}*i)"


def render_text(rec: OutputRecord) -> str:
    """Human-readable form, derived from the same payload as the structured output."""
    p = rec.payload
    if rec.kind == "terms":
        body = " ".join(_scalar_text(v) for v in p["values"])
    elif rec.kind == "closed_form":
        body = "a(n) = " + p["text"]
    elif rec.kind == "report":
        lines = [f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}: {c['detail']}" for c in p["checks"]]
        lines.append(f"{sum(c['passed'] for c in p['checks'])}/{len(p['checks'])} examples passed")
        body = "\n".join(lines)
    else:
        body = p["text"]
    return body


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.precision < 16:
            raise UsageError("--precision must be at least 16 bits")
        handler = COMMANDS[args.command][0]
        rec = handler(args)
    except InvariantViolation as exc:
        print(f"cfinite: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except MathError as exc:
        print(f"cfinite: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (CFiniteError, ValueError) as exc:
        print(f"cfinite: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.format == "structured":
        sys.stdout.write(dumps(rec))
    else:
        print(render_text(rec))
        for w in rec.warnings:
            print(f"warning: {w}", file=sys.stderr)
    if rec.kind == "report" and not rec.payload["passed"]:
        return EXIT_INVARIANT
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


__all__ = ["COMMANDS", "build_parser", "main", "render_text"]
