from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hypothesis import assume

from cfinite import Poly, RatFunc, Recurrence, factor_denominator

# Fixed seed and a fixed case count for every property suite.
settings.register_profile(
    "cfinite",
    derandomize=True,
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("cfinite")

small_ints = st.integers(min_value=-9, max_value=9)
nonzero_ints = small_ints.filter(bool)
small_fractions = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=4))


@st.composite
def polys(draw, max_degree=5, coeffs=small_fractions):
    return Poly(draw(st.lists(coeffs, max_size=max_degree + 1)))


@st.composite
def gf_denominators(draw, min_degree=1, max_degree=5):
    """``1 + c1 x + ... + ck x^k`` with ``ck != 0``."""
    k = draw(st.integers(min_value=min_degree, max_value=max_degree))
    middle = draw(st.lists(small_ints, min_size=k - 1, max_size=k - 1))
    return Poly([1] + middle + [draw(nonzero_ints)])


@st.composite
def proper_ratfuncs(draw, max_degree=5):
    den = draw(gf_denominators(max_degree=max_degree))
    num = Poly(draw(st.lists(small_ints, min_size=1, max_size=den.degree)))
    return RatFunc(num, den)


@st.composite
def ratfuncs(draw, max_degree=5):
    """Normalised functions, improper ones included."""
    den = draw(gf_denominators(max_degree=max_degree))
    num = Poly(draw(st.lists(small_ints, min_size=1, max_size=max_degree + 2)))
    return RatFunc(num, den)


@st.composite
def homogeneous_recurrences(draw, max_order=5):
    k = draw(st.integers(min_value=1, max_value=max_order))
    coeffs = [draw(nonzero_ints)] + draw(st.lists(small_ints, min_size=k - 1, max_size=k - 1))
    initial = draw(st.lists(small_ints, min_size=k, max_size=k))
    return Recurrence(coeffs, initial)


@st.composite
def recurrences(draw, max_order=5):
    """Homogeneous or with a rational inhomogeneity of small degree."""
    r = draw(homogeneous_recurrences(max_order=max_order))
    if draw(st.booleans()):
        return r
    forcing = draw(proper_ratfuncs(max_degree=2))
    return Recurrence(r.coeffs, r.initial, forcing)


@st.composite
def exact_denominators(draw, max_degree=5):
    """Products of rational linear factors and rational quadratics, degree <= ``max_degree``."""
    den = Poly([1])
    budget = draw(st.integers(min_value=1, max_value=max_degree))
    while den.degree < budget:
        room = budget - den.degree
        if room >= 2 and draw(st.booleans()):
            b, c = draw(small_ints), draw(nonzero_ints)
            den = den * Poly([1, b, c])
        else:
            a = draw(st.builds(Fraction, nonzero_ints, st.integers(min_value=1, max_value=3)))
            den = den * Poly([1, -a])
    return den


@st.composite
def exact_branch_gfs(draw):
    den = draw(exact_denominators())
    num = Poly(draw(st.lists(small_ints, min_size=1, max_size=den.degree)))
    return RatFunc(num, den)


@st.composite
def cubic_factor_gfs(draw):
    """One irreducible cubic factor, optionally times a rational linear factor."""
    cubic = Poly([1] + draw(st.lists(small_ints, min_size=2, max_size=2)) + [draw(nonzero_ints)])
    assume(not factor_denominator(cubic).is_exact)
    den = cubic
    if draw(st.booleans()):
        den = den * Poly([1, draw(nonzero_ints)])
    num = Poly(draw(st.lists(small_ints, min_size=1, max_size=den.degree)))
    f = RatFunc(num, den)
    assume(f.den.degree >= 3 and not factor_denominator(f.den).is_exact)
    return f


# (criterion number, title, passed), filled in by test_acceptance.py
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    grouped: dict = {}
    for number, title, passed in ACCEPTANCE:
        grouped.setdefault(number, []).append((title, passed))
    for number in sorted(grouped):
        runs = grouped[number]
        ok = all(p for _, p in runs)
        title = runs[0][0] if len(runs) == 1 else f"{sum(p for _, p in runs)}/{len(runs)} property suites passed"
        terminalreporter.write_line(f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}")
