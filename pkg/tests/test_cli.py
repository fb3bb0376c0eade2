import io
import re
from fractions import Fraction

import pytest
from conftest import ratfuncs, recurrences
from hypothesis import given, settings

from cfinite import FieldElem, NumericElem, closed_form, eval_closed_form, parse_ratfunc
from cfinite.fields import make_context
from cfinite.cli import main, render_text
from cfinite.records import (
    OutputRecord,
    closed_form_record,
    dec_closed_form,
    dec_ratfunc,
    dec_scalar,
    dumps,
    enc_ratfunc,
    enc_scalar,
    gf_record,
    loads,
    recurrence_record,
)

LUCAS = "a(n+2)=a(n+1)+a(n); a(0)=2; a(1)=1"
PERRIN_GF = "(3-x^2)/(1-x^2-x^3)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_terms(capsys):
    code, out, _ = run(capsys, "terms", "--n", "11", LUCAS)
    assert code == 0
    assert out.strip() == "2 1 3 4 7 11 18 29 47 76 123"


def test_terms_of_gf_default_count(capsys):
    code, out, _ = run(capsys, "terms", "--gf", "1/(1-2*x)")
    assert out.split() == [str(2**k) for k in range(10)]


def test_closed_form_binet(capsys):
    code, out, _ = run(capsys, "closed-form", "--gf", "(2-x)/(1-x-x^2)")
    assert code == 0
    assert out.strip() == "a(n) = 1 * (1/2-1/2*sqrt(5))^n + 1 * (1/2+1/2*sqrt(5))^n"


def test_closed_form_numeric_warns(capsys):
    code, out, err = run(capsys, "closed-form", "--gf", PERRIN_GF)
    assert code == 0
    assert out.startswith("a(n) = 1.0 * 1.3247179572447460")
    assert "128-bit" in err


def test_guess_derived_terms(capsys):
    seq = "1 4 8 16 25 40 56 80 105 140 176 224 273 336".split()
    code, out, _ = run(capsys, "guess", "--max-order", "6", *seq)
    assert code == 0
    assert parse_ratfunc(out.strip()) == parse_ratfunc("(1+2*x-x^2)/((1-x)^4*(1+x)^2)")


def test_guess_without_fit_is_input_error(capsys):
    code, _, err = run(capsys, "guess", "--max-order", "3", "1 1 2 6 24 120 720 5040")
    assert code == 1 and "no recurrence" in err


def test_nth(capsys):
    assert run(capsys, "nth", "--n", "20", "a(n+3)=a(n+1)+a(n); a(0)=3; a(1)=0; a(2)=2")[1].strip() == "277"
    assert run(capsys, "nth", "--n", "9", "--gf", "(x+x^2)/((1-x)*(1-4*x-x^2))")[1].strip() == "158905"
    assert run(capsys, "nth", LUCAS)[0] == 1
    assert run(capsys, "nth", "--n", "-1", LUCAS)[0] == 1


def test_gf_and_from_gf(capsys):
    _, out, _ = run(capsys, "gf", "a(n+2)=4*a(n+1)+a(n)+2; a(0)=0; a(1)=1")
    assert parse_ratfunc(out.strip()) == parse_ratfunc("(x+x^2)/((1-x)*(1-4*x-x^2))")
    _, out, _ = run(capsys, "from-gf", "--gf", "(4+x+2*x^2+x^3)/(1-x^4)")
    assert out.strip() == "a(n+4) = a(n); a(0)=4; a(1)=1; a(2)=2; a(3)=1"
    code, out, err = run(capsys, "from-gf", "--gf", "(1+x^3)/(1-x)")
    assert code == 0 and "n >= 3" in err


def test_asymptotics(capsys):
    _, out, _ = run(capsys, "asymptotics", "a(n+2)=5*a(n+1)-6*a(n); a(0)=2; a(1)=5")
    assert out.strip() == "a(n) ~ 1 * 3^n"


def test_transform_commands(capsys):
    def gf_out(*argv):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        return parse_ratfunc(out.strip())

    assert gf_out("sum", "x*(x^2+4*x+1)/(1-x)^4") == parse_ratfunc("x*(x^2+4*x+1)/(1-x)^5")
    assert gf_out("diff", "1/(1-x)") == parse_ratfunc("1")
    assert gf_out("xd", "--power", "2", "1/(1-x)") == parse_ratfunc("x*(x+1)/(1-x)^3")
    assert gf_out("scale", "--by", "-1", "1/(1-x)") == parse_ratfunc("1/(1+x)")
    assert gf_out("subseq", "--m", "3", "--r", "1", "x/(1-x-x^2)") == parse_ratfunc("(1-x)/(1-4*x-x^2)")
    alt = parse_ratfunc("(1+2*x-2*x^2-8*x^3+x^4)/(1-6*x^2+9*x^4-4*x^6)")
    assert gf_out("interleave", "1/(1-4*x)", "2/(1-x)^2") == alt
    # parts may also be term lists or recurrences
    assert gf_out("interleave", "1 4 16 64 256 1024", "a(n+1)=a(n)+2; a(0)=2") == alt


def test_subseq_bounds(capsys):
    assert run(capsys, "subseq", "--m", "2", "--r", "2", "1/(1-x)")[0] == 1


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(LUCAS + "\n"))
    code, out, _ = run(capsys, "terms", "--n", "5", "--stdin")
    assert code == 0 and out.strip() == "2 1 3 4 7"
    monkeypatch.setattr("sys.stdin", io.StringIO("1/(1-4*x)\n2/(1-x)^2\n"))
    code, out, _ = run(capsys, "interleave", "--stdin")
    assert code == 0 and parse_ratfunc(out.strip()).den.degree == 6


@pytest.mark.parametrize(
    "argv, code",
    [
        (["terms", "a(n+1)=a(n); a(0)=1; a(1)=1"], 1),
        (["terms", "a(n+1)=a(n) +* 2; a(0)=1"], 1),
        (["bogus"], 1),
        ([], 1),
        (["terms"], 1),
        (["terms", "--precision", "8", LUCAS], 1),
        (["terms", "--gf", "1/(x)"], 2),
        (["gf", "--gf", "1/(1-x)/0"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert not out and err.startswith("cfinite:") or code == 1


def test_invariant_violation_exit_code(capsys, monkeypatch):
    import cfinite.cli as cli

    def broken(*_a, **_k):
        raise cli.InvariantViolation("forced")

    monkeypatch.setattr(cli, "closed_form", broken)
    code, _, err = run(capsys, "closed-form", "--gf", PERRIN_GF)
    assert code == 3 and "forced" in err


def test_demo(capsys):
    code, out, _ = run(capsys, "demo")
    assert code == 0
    assert out.strip().endswith("9/9 examples passed")
    assert "FAIL" not in out


def test_demo_failure_exit_code(capsys, monkeypatch):
    import cfinite.cli as cli

    monkeypatch.setattr(cli, "run_examples", lambda: [("fake", False, "wrong")])
    assert run(capsys, "demo")[0] == 3


# -- structured output ----------------------------------------------------------------------------

COMMAND_LINES = [
    ["terms", "--n", "11", LUCAS],
    ["nth", "--n", "30", LUCAS],
    ["gf", LUCAS],
    ["from-gf", "--gf", "(1+x^3)/(1-x)"],
    ["closed-form", "--gf", "(2-x)/(1-x-x^2)"],
    ["closed-form", "--gf", "(4+x+2*x^2+x^3)/(1-x^4)"],
    ["closed-form", "--gf", PERRIN_GF],
    ["closed-form", "--gf", "x*(x^2+4*x+1)/(1-x)^5"],
    ["asymptotics", "--gf", PERRIN_GF],
    ["asymptotics", "--gf", "1/(1+x^2)"],
    ["sum", LUCAS],
    ["demo"],
]

NUMBER = re.compile(r"-?\d+(?:\.\d+)?(?:e-?\d+)?(?:/\d+)?")


@pytest.mark.parametrize("argv", COMMAND_LINES, ids=lambda a: a[0])
def test_structured_matches_text(capsys, argv):
    code_t, text, _ = run(capsys, *argv, "--format", "text")
    code_s, structured, _ = run(capsys, *argv, "--format", "structured")
    assert code_t == code_s == 0
    assert structured.startswith("schema: 1\n")
    rec = loads(structured)
    assert render_text(rec) + "\n" == text
    assert dumps(rec) == structured
    if rec.kind == "report":
        return
    # every number shown to humans is present in the structured record
    struct_numbers = set(NUMBER.findall(structured))
    for tok in NUMBER.findall(text):
        q = Fraction(tok) if "/" in tok or "." not in tok and "e" not in tok else None
        assert tok in struct_numbers or (q is not None and f"{q.numerator}/{q.denominator}" in struct_numbers)


def test_record_validation():
    with pytest.raises(ValueError):
        OutputRecord("pie", {})
    with pytest.raises(ValueError):
        OutputRecord("gf", {"kind": 1})


@given(ratfuncs())
def test_ratfunc_record_roundtrip(f):
    rec = loads(dumps(gf_record(f)))
    assert dec_ratfunc(rec.payload) == f
    assert dec_ratfunc(enc_ratfunc(f)) == f


@settings(max_examples=50)
@given(recurrences())
def test_recurrence_record_roundtrip(r):
    rec = loads(dumps(recurrence_record(r)))
    assert [Fraction(c) for c in rec.payload["coeffs"]] == list(r.coeffs)
    assert [Fraction(c) for c in rec.payload["initial"]] == list(r.initial)


@pytest.mark.parametrize(
    "gf",
    ["(2-x)/(1-x-x^2)", "(4+x+2*x^2+x^3)/(1-x^4)", "(1+x^3)/(1-x)", PERRIN_GF],
)
def test_closed_form_record_roundtrip(gf):
    cf = closed_form(parse_ratfunc(gf))
    back = dec_closed_form(loads(dumps(closed_form_record(cf))))
    assert back.exact == cf.exact and len(back.terms) == len(cf.terms)
    for n in range(12):
        a, b = eval_closed_form(cf, n), eval_closed_form(back, n)
        if cf.exact:
            assert a == b
        else:
            assert abs(a.value - b.value) <= a.err + b.err


def test_scalar_encoding():
    assert enc_scalar(Fraction(3)) == "3/1"
    assert dec_scalar("-7/2") == Fraction(-7, 2)
    q = FieldElem(Fraction(1, 2), Fraction(-3, 4), -7)
    assert dec_scalar(enc_scalar(q)) == q
    ctx = make_context(128)
    v = NumericElem(ctx.mpc(ctx.sqrt(2), -1), ctx.mpf(2) ** -100)
    back = dec_scalar(enc_scalar(v))
    assert abs(back.value - v.value) <= back.err and back.err >= v.err
