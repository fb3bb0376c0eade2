"""Exact arithmetic for C-finite sequences.

Recurrences and rational generating functions convert into each other,
sequence operations become rational-function algebra, and closed forms
come out of a partial-fraction split of the denominator.

>>> from cfinite import parse_recurrence, rec_to_gf, closed_form
>>> f = rec_to_gf(parse_recurrence("a(n+2)=a(n+1)+a(n); a(0)=2; a(1)=1"))
>>> str(f)
'(2 - x)/(1 - x - x^2)'
>>> str(closed_form(f))
'1 * (1/2-1/2*sqrt(5))^n + 1 * (1/2+1/2*sqrt(5))^n'
"""

from .closedform import (
    AsymptoticEstimate,
    ClosedForm,
    ClosedFormTerm,
    InvariantViolation,
    PartialFraction,
    RootResidue,
    VerifyReport,
    asymptotic,
    closed_form,
    eval_closed_form,
    partial_fractions,
    render_closed_form,
    root_residues,
    verify,
)
from .errors import (
    ArityError,
    CFiniteError,
    DivisionByZeroPoly,
    FactorizationFailure,
    IllConditioned,
    IndexRangeError,
    InsufficientTerms,
    MathError,
    NotAPowerSeries,
    ParseError,
)
from .factor import FactorList, certified_roots, factor_denominator, squarefree_decomposition
from .fields import DEFAULT_PRECISION, FieldElem, NumericElem
from .parse import parse_ratfunc, parse_rational, parse_recurrence, render_recurrence
from .poly import (
    Poly,
    RatFunc,
    poly_divrem,
    poly_gcd,
    poly_mul,
    poly_xgcd,
    ratfunc_normalize,
    render_poly,
    render_ratfunc,
    series_expand,
)
from .recurrence import (
    Recurrence,
    ValidityOffset,
    gf_to_rec,
    guess_recurrence,
    homogenize,
    nth_term_fast,
    rec_to_gf,
    terms,
)
from .transforms import (
    affine,
    difference,
    interleave,
    monomial_gf,
    multisection,
    partial_sum,
    scale_arg,
    xd,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
