"""Exact intersection numbers on moduli of stable curves.

Pure psi integrals via the Witten-conjecture recursion, Hodge integrals via
Chern-character boundary reduction, and the generating polynomials of double
Hodge integrals with a geometric psi tail — all over exact rationals.
"""

from .algebra import (
    BiPoly,
    Rational,
    TruncatedSeries,
    UniPoly,
    bernoulli,
    double_factorial_odd,
    rational_from_str,
    rational_to_str,
)
from .cache import CACHE_VERSION, CacheIntegrityError, IntegralCache
from .hodge import (
    LambdaMonomial,
    TautMonomial,
    hodge_geometric,
    hodge_integral,
    kappa_reduce,
    lambda_to_ch,
    taut_integral,
)
from .psi import PsiKey, is_stable, psi_genus0, psi_integral, psi_value
from .render import render_json, render_latex, render_text
from .series import (
    ALPHA,
    ALPHA_SHIFTED,
    A_value,
    ConjectureReport,
    F_series,
    PPolynomial,
    SeriesIntegrityError,
    assemble_Pa,
    conjecture_check,
    constant_term,
    dilaton_apply,
    double_hodge_coeff,
    enumerate_index_vectors,
    lambda_product_expansion,
    mumford_specialize,
    shift_convention,
    string_apply,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "ALPHA_SHIFTED",
    "A_value",
    "BiPoly",
    "CACHE_VERSION",
    "CacheIntegrityError",
    "ConjectureReport",
    "F_series",
    "IntegralCache",
    "LambdaMonomial",
    "PPolynomial",
    "PsiKey",
    "Rational",
    "SeriesIntegrityError",
    "TautMonomial",
    "TruncatedSeries",
    "UniPoly",
    "assemble_Pa",
    "bernoulli",
    "conjecture_check",
    "constant_term",
    "dilaton_apply",
    "double_factorial_odd",
    "double_hodge_coeff",
    "enumerate_index_vectors",
    "hodge_geometric",
    "hodge_integral",
    "is_stable",
    "kappa_reduce",
    "lambda_product_expansion",
    "lambda_to_ch",
    "mumford_specialize",
    "psi_genus0",
    "psi_integral",
    "psi_value",
    "rational_from_str",
    "rational_to_str",
    "render_json",
    "render_latex",
    "render_text",
    "shift_convention",
    "string_apply",
    "taut_integral",
]
