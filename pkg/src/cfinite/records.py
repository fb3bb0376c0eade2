"""Line-oriented structured output.

A record is a header line ``schema: 1`` followed by one ``key: <json>`` line
per field, ``kind`` first and ``warnings`` last::

    schema: 1
    kind: "gf"
    num: ["2/1", "-1/1"]
    den: ["1/1", "-1/1", "-1/1"]
    text: "(2 - x)/(1 - x - x^2)"
    warnings: []

Exact rationals are ``"p/q"`` strings, quadratic numbers are objects
``{"a", "b", "d"}`` and numeric values are ``{"re", "im", "err"}`` objects
of decimal strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .closedform import AsymptoticEstimate, ClosedForm, ClosedFormTerm, render_closed_form
from .errors import ParseError
from .fields import FieldElem, NumericElem, make_context
from .poly import Poly, RatFunc, render_ratfunc
from .recurrence import Recurrence

SCHEMA = 1
KINDS = ("gf", "recurrence", "terms", "closed_form", "asymptotic", "report")
_RESERVED = ("schema", "kind", "warnings")


@dataclass
class OutputRecord:
    kind: str
    payload: dict
    warnings: list = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown record kind {self.kind!r}")
        clash = set(self.payload) & set(_RESERVED)
        if clash:
            raise ValueError(f"reserved payload keys: {sorted(clash)}")


def dumps(record: OutputRecord) -> str:
    lines = [f"schema: {SCHEMA}", f"kind: {json.dumps(record.kind)}"]
    for key, value in record.payload.items():
        lines.append(f"{key}: {json.dumps(value, ensure_ascii=False)}")
    lines.append(f"warnings: {json.dumps(record.warnings, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> OutputRecord:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != f"schema: {SCHEMA}":
        raise ParseError(f"structured record must start with 'schema: {SCHEMA}'", 0)
    fields: dict = {}
    for ln in lines[1:]:
        key, sep, raw = ln.partition(":")
        if not sep:
            raise ParseError(f"malformed record line {ln!r}")
        try:
            fields[key.strip()] = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad value for {key.strip()!r}: {exc.msg}") from None
    kind = fields.pop("kind", None)
    warnings = fields.pop("warnings", [])
    if kind is None:
        raise ParseError("record has no kind")
    return OutputRecord(kind, fields, warnings)


# -- encoders -------------------------------------------------------------------------------


def enc_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def dec_rational(s: str) -> Fraction:
    return Fraction(s)


def enc_poly(p: Poly) -> list[str]:
    return [enc_rational(c) for c in p.coeffs]


def dec_poly(items) -> Poly:
    return Poly(dec_rational(s) for s in items)


def enc_ratfunc(f: RatFunc) -> dict:
    return {"num": enc_poly(f.num), "den": enc_poly(f.den), "text": render_ratfunc(f)}


def dec_ratfunc(obj: dict) -> RatFunc:
    return RatFunc(dec_poly(obj["num"]), dec_poly(obj["den"]))


def numeric_digits(v: NumericElem) -> int:
    return max(6, int(v.ctx.prec * 0.30103) - 12)


def enc_scalar(v):
    if isinstance(v, NumericElem):
        ctx, digits = v.ctx, numeric_digits(v)
        # the printed digits lose up to one unit in the last place of each part;
        # fold that into err and round err upwards so the bound still holds
        ulp = (abs(v.value.real) + abs(v.value.imag)) * ctx.mpf(10) ** (1 - digits)
        return {
            "re": ctx.nstr(v.value.real, digits),
            "im": ctx.nstr(v.value.imag, digits),
            "err": ctx.nstr((v.err + ulp) * ctx.mpf("1.01"), 3),
        }
    if isinstance(v, FieldElem):
        if v.is_rational:
            return enc_rational(v.a)
        return {"a": enc_rational(v.a), "b": enc_rational(v.b), "d": v.d}
    return enc_rational(v)


def dec_scalar(obj, precision: int = 128):
    if isinstance(obj, str):
        return FieldElem(dec_rational(obj))
    if "d" in obj:
        return FieldElem(dec_rational(obj["a"]), dec_rational(obj["b"]), obj["d"])
    ctx = make_context(precision)
    return NumericElem(ctx.mpc(ctx.mpf(obj["re"]), ctx.mpf(obj["im"])), ctx.mpf(obj["err"]))


# -- record builders ----------------------------------------------------------------------------


def gf_record(f: RatFunc, warnings=()) -> OutputRecord:
    return OutputRecord("gf", enc_ratfunc(f), list(warnings))


def recurrence_record(r: Recurrence, offset: int = 0, warnings=()) -> OutputRecord:
    payload = {
        "order": r.order,
        "coeffs": [enc_rational(c) for c in r.coeffs],
        "initial": [enc_rational(a) for a in r.initial],
        "inhomogeneity": None if r.inhomogeneity is None else enc_ratfunc(r.inhomogeneity),
        "validity_offset": offset,
        "text": str(r),
    }
    return OutputRecord("recurrence", payload, list(warnings))


def terms_record(values, start: int = 0, warnings=()) -> OutputRecord:
    payload = {"start": start, "values": [enc_scalar(v) for v in values]}
    return OutputRecord("terms", payload, list(warnings))


def closed_form_record(cf: ClosedForm, warnings=()) -> OutputRecord:
    payload = {
        "exact": cf.exact,
        "precision": cf.precision,
        "terms": [
            {"coeff": enc_scalar(t.coeff), "power": t.power, "base": enc_scalar(t.base), "group": t.group}
            for t in cf.terms
        ],
        "corrections": [enc_rational(c) for c in cf.corrections],
        "text": render_closed_form(cf),
    }
    return OutputRecord("closed_form", payload, list(warnings))


def dec_closed_form(rec: OutputRecord) -> ClosedForm:
    p = rec.payload
    prec = p["precision"]
    terms = tuple(
        ClosedFormTerm(dec_scalar(t["base"], prec), t["power"], dec_scalar(t["coeff"], prec), t["group"])
        for t in p["terms"]
    )
    return ClosedForm(terms, tuple(dec_rational(c) for c in p["corrections"]), prec)


def asymptotic_record(est: AsymptoticEstimate, warnings=()) -> OutputRecord:
    payload = {
        "growth_modulus": enc_scalar(est.growth_modulus),
        "dominant_bases": [enc_scalar(b) for b in est.dominant_bases],
        "leading_power": est.leading_power,
        "leading_coeff": None if est.leading_coeff is None else enc_scalar(est.leading_coeff),
        "oscillatory": est.oscillatory,
        "text": str(est),
    }
    return OutputRecord("asymptotic", payload, list(warnings))


def report_record(checks, warnings=()) -> OutputRecord:
    """``checks`` is a list of ``(name, passed, detail)``."""
    items = [{"name": n, "passed": bool(ok), "detail": d} for n, ok, d in checks]
    payload = {"passed": all(c["passed"] for c in items), "checks": items}
    return OutputRecord("report", payload, list(warnings))
