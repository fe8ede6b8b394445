"""Limits, one-sided limits, limits at infinity and derivatives computed as
standard parts of truncated Puiseux series in a positive infinitesimal."""

from .errors import (
    DivisionByZero,
    DomainError,
    HyperlimError,
    IllegalForm,
    IndeterminateClass,
    IndeterminateDivisor,
    IndeterminateSign,
    InvalidInput,
    InvalidScalar,
    NotFinite,
    NumericalFailure,
    ParseError,
    PrecisionExhausted,
    UndeterminedStandardPart,
)
from .expr import eval_hyper, eval_real, parse, to_text
from .extreal import (
    MINUS_INFINITY,
    PLUS_INFINITY,
    Decomposition,
    ExtendedReal,
    decompose,
    format_ext,
    parse_ext,
    st,
)
from .hyperfield import (
    DEFAULT_WINDOW,
    Envelope,
    Fuzz,
    Hyper,
    NumClass,
    PuiseuxSeries,
    classify,
    compare,
    dx,
    format_hyper,
    from_real,
    from_terms,
    fuzz,
    monomial,
)
from .lift import ElementaryFn, lift, taylor_coefficients
from .limits import (
    DoesNotExist,
    Estimate,
    Indeterminate,
    LimitTarget,
    Value,
    counterexample_poly,
    derivative_at,
    limit,
    numeric_estimate,
    one_sided_limit,
    worked_examples,
    parse_target,
    two_sided_limit,
)

__version__ = "0.1.0"
