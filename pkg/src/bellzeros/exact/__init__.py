"""Exact arithmetic backbone: rationals, polynomials, certified real roots."""

from .poly import (
    Polynomial,
    derivative,
    evaluate,
    gcd,
    square_free_decomposition,
    square_free_part,
)
from .rational import Dyadic, Rational, as_rational, format_rational, parse_rational
from .roots import (
    InsufficientRefinementError,
    InvalidIntervalError,
    IsolatingInterval,
    NotSquareFreeError,
    RootError,
    RootEstimate,
    cauchy_bound,
    count_real_roots,
    interlaces,
    is_square_free,
    isolate_nearest,
    isolate_real_roots,
    real_roots,
    refine_root,
    sturm_chain,
)

__all__ = [
    "Dyadic",
    "InsufficientRefinementError",
    "InvalidIntervalError",
    "IsolatingInterval",
    "NotSquareFreeError",
    "Polynomial",
    "Rational",
    "RootError",
    "RootEstimate",
    "as_rational",
    "cauchy_bound",
    "count_real_roots",
    "derivative",
    "evaluate",
    "format_rational",
    "gcd",
    "interlaces",
    "is_square_free",
    "isolate_nearest",
    "isolate_real_roots",
    "parse_rational",
    "real_roots",
    "refine_root",
    "square_free_decomposition",
    "square_free_part",
    "sturm_chain",
]
