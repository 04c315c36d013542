"""Generating polynomials of double Hodge integrals with a geometric tail.

For an index vector ``a = (a_1, ..., a_n)`` the polynomial

    P_a(alpha, t) = prod (2a_i+1)!!(-4)^{a_i}
                    * (sum_g t^g int Lam(1)Lam(alpha)/(1-psi_0) prod psi^{a_i})
                    * exp(t/24)

is monic of degree ``|a|`` in t.  This module assembles P_a exactly, applies
the string/dilaton rules, the alpha = -1 specialization (where the Hodge
factor collapses to a sign), and the closed-form constant term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    BiPoly,
    TruncatedSeries,
    UniPoly,
    double_factorial_odd,
    series_exp,
    series_mul,
)
from .cache import IntegralCache
from .hodge import hodge_integral
from .psi import _shared_cache, is_stable, psi_value

__all__ = [
    "SeriesIntegrityError",
    "ALPHA",
    "ALPHA_SHIFTED",
    "PPolynomial",
    "ConjectureReport",
    "canonical_index",
    "index_prefactor",
    "lambda_product_expansion",
    "double_hodge_coeff",
    "A_value",
    "assemble_Pa",
    "shift_convention",
    "string_apply",
    "dilaton_apply",
    "constant_term",
    "mumford_specialize",
    "F_series",
    "conjecture_check",
    "enumerate_index_vectors",
]

ALPHA = "alpha"
ALPHA_SHIFTED = "alpha_shifted"


class SeriesIntegrityError(RuntimeError):
    """A theorem-backed internal consistency check failed (engine bug)."""


@dataclass(frozen=True)
class PPolynomial:
    """An assembled P polynomial together with its variable convention.

    ``alpha`` stores P_a(alpha, t); ``alpha_shifted`` stores P_a(-alpha-1, t).
    """

    a: Tuple[int, ...]
    convention: str
    poly: BiPoly

    def __post_init__(self) -> None:
        if self.convention not in (ALPHA, ALPHA_SHIFTED):
            raise ValueError(f"unknown convention {self.convention!r}")
        if any(x < 0 for x in self.a):
            raise ValueError("index vector entries must be non-negative")

    def weight(self) -> int:
        return sum(self.a)


@dataclass(frozen=True)
class ConjectureReport:
    """Observed total (t, alpha) degree versus the conjectured bound |a|."""

    a: Tuple[int, ...]
    weight: int
    total_degree: int
    within_bound: bool


def canonical_index(a: Sequence[int]) -> Tuple[int, ...]:
    """Index vectors are symmetric in the markings; sort descending."""
    return tuple(sorted((int(x) for x in a), reverse=True))


def index_prefactor(a: Sequence[int]) -> Fraction:
    """The scaling ``prod (2a_i+1)!! * (-4)^{a_i}``."""
    out = Fraction(1)
    for x in a:
        out *= double_factorial_odd(x) * Fraction(-4) ** x
    return out


def lambda_product_expansion(g: int) -> List[Tuple[int, int, int, int]]:
    """Terms ``(k, j, sign, alpha_power)`` of ``Lam^v_g(1) * Lam^v_g(alpha)``.

    With ``Lam^v_g(alpha) = sum_j (-1)^j alpha^{g-j} lambda_j`` the product is
    ``sum_{k,j} (-1)^{k+j} alpha^{g-j} lambda_k lambda_j``.
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    return [
        (k, j, (-1) ** (k + j), g - j)
        for k in range(g + 1)
        for j in range(g + 1)
    ]


def _forced_integral(
    g: int,
    a: Tuple[int, ...],
    k: int,
    j: int,
    cache: IntegralCache,
) -> Fraction:
    """``int psi_0^e prod psi_i^{a_i} lambda_k lambda_j`` with ``e`` forced.

    The geometric factor 1/(1-psi_0) contributes the single power
    ``e = (3g-2+n) - |a| - k - j``; negative ``e`` means 0.  Unstable genus-0
    targets use the fixed conventions: one marking contributes 1, two
    markings contribute ``(-1)^{a_1}``.
    """
    n = len(a)
    if not is_stable(g, n + 1):
        # only (0,1) and (0,2) are reachable, and only with k = j = 0;
        # the conventions replace the whole geometric series, so the forced
        # psi_0 power is not consulted here
        if n == 0:
            return Fraction(1)
        return Fraction((-1) ** a[0])
    e = (3 * g - 2 + n) - sum(a) - k - j
    if e < 0:
        return Fraction(0)
    lam: Dict[int, int] = {}
    for idx in (k, j):
        if idx > 0:
            lam[idx] = lam.get(idx, 0) + 1
    return hodge_integral(g, n + 1, (e, *a), lam, cache)


def double_hodge_coeff(
    g: int, a: Sequence[int], cache: Optional[IntegralCache] = None
) -> UniPoly:
    """Coefficient of ``t^g``: ``int Lam^v(1)Lam^v(alpha)/(1-psi_0) prod psi^{a_i}``.

    Returned as a polynomial in alpha; the ``(2a_i+1)!!(-4)^{a_i}`` scaling is
    *not* applied here.
    """
    cache = cache if cache is not None else _shared_cache
    a = tuple(int(x) for x in a)
    acc = [Fraction(0)] * (g + 1)
    for k, j, sign, apow in lambda_product_expansion(g):
        value = _forced_integral(g, a, k, j, cache)
        if value:
            acc[apow] += sign * value
    return UniPoly(acc)


def A_value(
    g: int, a: Sequence[int], cache: Optional[IntegralCache] = None
) -> UniPoly:
    """Genus-split pairing of the forced integrals with ``1/(24^{g2} g2!)``.

    Vanishes for ``g > |a|``; at ``g = |a|`` it is the constant
    ``1 / prod((2a_i+1)!!(-4)^{a_i})``.
    """
    cache = cache if cache is not None else _shared_cache
    a = tuple(int(x) for x in a)
    acc = UniPoly.zero()
    for g1 in range(g + 1):
        g2 = g - g1
        weight = Fraction(1, 24**g2 * factorial(g2))
        acc = acc + double_hodge_coeff(g1, a, cache) * weight
    return acc


def assemble_Pa(
    a: Sequence[int], guard: int = 2, cache: Optional[IntegralCache] = None
) -> PPolynomial:
    """Assemble P_a(alpha, t) exactly, in the unshifted convention.

    ``guard`` extra degrees beyond ``|a|`` are computed and asserted to
    vanish identically in alpha; the ``t^{|a|}`` coefficient is asserted to
    be the constant 1.  Either failure raises :class:`SeriesIntegrityError`.
    """
    cache = cache if cache is not None else _shared_cache
    a = tuple(int(x) for x in a)
    if any(x < 0 for x in a):
        raise ValueError("index vector entries must be non-negative")
    if guard < 0:
        raise ValueError("guard must be non-negative")
    weight = sum(a)
    order = weight + guard

    inner = TruncatedSeries(
        order, [double_hodge_coeff(g, a, cache) for g in range(order + 1)]
    )
    total = series_mul(inner, series_exp(Fraction(1, 24), order))
    pref = index_prefactor(a)
    coeffs = [c * pref for c in total.coefficients]

    for g in range(weight + 1, order + 1):
        if not coeffs[g].is_zero():
            raise SeriesIntegrityError(
                f"P_{a}: coefficient of t^{g} should vanish, got {coeffs[g]!r}"
            )
    if coeffs[weight] != UniPoly.const(1):
        raise SeriesIntegrityError(
            f"P_{a}: leading t^{weight} coefficient is {coeffs[weight]!r}, not 1"
        )
    return PPolynomial(a, ALPHA, BiPoly.from_t_coeffs(coeffs[: weight + 1]))


def shift_convention(p: PPolynomial) -> PPolynomial:
    """Substitute ``alpha -> -alpha - 1`` and toggle the stored convention."""
    flipped = ALPHA_SHIFTED if p.convention == ALPHA else ALPHA
    return PPolynomial(p.a, flipped, p.poly.shift_alpha())


def string_apply(
    p: PPolynomial, family: Mapping[Tuple[int, ...], PPolynomial]
) -> PPolynomial:
    """P for ``(a, 0)`` from P_a minus ``sum (8a_i+4) P_{a with a_i - 1}``.

    ``family`` maps canonical (descending) index vectors to their P
    polynomials; entries whose decrement would go below zero contribute 0.
    """
    poly = p.poly
    for i, ai in enumerate(p.a):
        if ai == 0:
            continue
        dec = canonical_index(p.a[:i] + (ai - 1,) + p.a[i + 1 :])
        q = family[dec]
        if q.convention != p.convention:
            raise ValueError("string_apply inputs use mixed conventions")
        poly = poly - q.poly * (8 * ai + 4)
    return PPolynomial(p.a + (0,), p.convention, poly)


def dilaton_apply(p: PPolynomial, n: int) -> PPolynomial:
    """P for ``(a, 1)``: ``(t - 12n + 24) P_a - 24 t P_a'`` (n markings after)."""
    poly = (
        p.poly.mul_t_power(1)
        + p.poly * (24 - 12 * n)
        - p.poly.derivative_t().mul_t_power(1) * 24
    )
    return PPolynomial(p.a + (1,), p.convention, poly)


def constant_term(a: Sequence[int]) -> Fraction:
    """Closed-form ``t^0`` coefficient of P_a.

    For one marking it is ``(-1)^{a_1}`` times the prefactor; for ``n > 1``
    it is the prefactor times ``(n-2)!/(prod a_i! (n-2-|a|)!)``, zero when
    ``|a| > n - 2``.
    """
    a = tuple(int(x) for x in a)
    n = len(a)
    if n < 1:
        raise ValueError("constant_term needs at least one index")
    pref = index_prefactor(a)
    if n == 1:
        return pref * (-1) ** a[0]
    s = sum(a)
    if s > n - 2:
        return Fraction(0)
    value = Fraction(factorial(n - 2), factorial(n - 2 - s))
    for x in a:
        value /= factorial(x)
    return pref * value


def mumford_specialize(
    a: Sequence[int], cache: Optional[IntegralCache] = None
) -> PPolynomial:
    """P_a at ``alpha = -1``, computed from pure psi integrals only.

    The Hodge factor collapses, leaving
    ``prod (2a_i+1)!!(-4)^{a_i} exp(t/24) sum_g (-t)^g
    int prod psi_i^{a_i}/(1-psi_0)``.
    """
    cache = cache if cache is not None else _shared_cache
    a = tuple(int(x) for x in a)
    n = len(a)
    weight = sum(a)
    scalars: List[Fraction] = []
    for g in range(weight + 1):
        if not is_stable(g, n + 1):
            value = Fraction(1) if n == 0 else Fraction((-1) ** a[0])
        else:
            e = (3 * g - 2 + n) - weight
            if e < 0:
                scalars.append(Fraction(0))
                continue
            value = psi_value(g, (e, *a), cache)
        scalars.append(Fraction(-1) ** g * value)
    inner = TruncatedSeries.from_scalars(weight, scalars)
    total = series_mul(inner, series_exp(Fraction(1, 24), weight))
    pref = index_prefactor(a)
    poly = BiPoly.from_t_coeffs([c * pref for c in total.coefficients])
    return PPolynomial(a, ALPHA, poly)


def F_series(order: int, cache: Optional[IntegralCache] = None) -> TruncatedSeries:
    """The one-point series ``1 + sum_g t^{2g} double_hodge_coeff(g, ())``.

    Each coefficient must be alpha-free (the series equals ``exp(-t^2/24)``);
    alpha-dependence raises :class:`SeriesIntegrityError`.
    """
    cache = cache if cache is not None else _shared_cache
    coeffs = [UniPoly.zero() for _ in range(order + 1)]
    coeffs[0] = UniPoly.const(1)
    for g in range(1, order // 2 + 1):
        u = double_hodge_coeff(g, (), cache)
        if not u.is_constant():
            raise SeriesIntegrityError(
                f"one-point t^{2 * g} coefficient depends on alpha: {u!r}"
            )
        coeffs[2 * g] = u
    return TruncatedSeries(order, coeffs)


def conjecture_check(
    a: Sequence[int], cache: Optional[IntegralCache] = None
) -> ConjectureReport:
    """Report the total (t, alpha) degree of P_a against the bound |a|.

    This inspects and reports only; the bound is conjectural and is never
    asserted.
    """
    a = tuple(int(x) for x in a)
    p = assemble_Pa(a, cache=cache)
    degree = p.poly.total_degree()
    return ConjectureReport(a, sum(a), degree, degree <= sum(a))


def enumerate_index_vectors(max_weight: int) -> Iterator[Tuple[int, ...]]:
    """All index multisets with ``|a| <= max_weight``.

    Ordered by weight, then reverse-lexicographically within a weight —
    the table grouping: (), (1), (2), (1,1), (3), (2,1), (1,1,1), ...
    """
    if max_weight < 0:
        raise ValueError("max weight must be non-negative")
    yield ()
    for w in range(1, max_weight + 1):
        yield from _partitions(w, w)


def _partitions(w: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if w == 0:
        yield ()
        return
    for first in range(min(w, largest), 0, -1):
        for rest in _partitions(w - first, first):
            yield (first,) + rest
