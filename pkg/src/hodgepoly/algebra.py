"""Exact scalar, polynomial and truncated power-series arithmetic.

Everything is built on :class:`fractions.Fraction`, so all operations are
exact; no floating point appears anywhere in the package.  Fraction already
keeps rationals in lowest terms with a positive denominator, which is the
canonical form used by the cache files and the JSON output.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from math import comb, factorial, prod
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

Rational = Fraction

__all__ = [
    "Rational",
    "rational_to_str",
    "rational_from_str",
    "double_factorial_odd",
    "bernoulli",
    "multiset_splits",
    "UniPoly",
    "BiPoly",
    "TruncatedSeries",
    "series_exp",
    "series_mul",
]


# ---------------------------------------------------------------------------
# rationals


def rational_to_str(q: Fraction) -> str:
    """Serialize a rational as ``p/q`` (``p`` alone when the denominator is 1)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    """Parse ``p/q`` (or ``p``), rejecting non-canonical input."""
    s = s.strip()
    if "/" in s:
        num_s, den_s = s.split("/", 1)
        num, den = int(num_s), int(den_s)
        if den <= 0:
            raise ValueError(f"non-positive denominator in {s!r}")
        q = Fraction(num, den)
        if q.numerator != num or q.denominator != den:
            raise ValueError(f"rational {s!r} is not in lowest terms")
        return q
    return Fraction(int(s))


def double_factorial_odd(k: int) -> int:
    """Return ``(2k+1)!! = 1*3*5*...*(2k+1)``; the empty product for k < 0 is 1."""
    if k < 0:
        return 1
    return prod(range(1, 2 * k + 2, 2))


_BERNOULLI: List[Fraction] = [Fraction(1), Fraction(-1, 2)]


def bernoulli(m: int) -> Fraction:
    """Bernoulli number ``B_m`` for even ``m >= 2`` (convention ``B_2 = 1/6``).

    Computed from the defining recurrence ``sum_{j<=m} C(m+1, j) B_j = 0``
    with ``B_0 = 1`` and ``B_1 = -1/2``.
    """
    if m < 2 or m % 2:
        raise ValueError(f"bernoulli is only defined for even m >= 2, got {m}")
    while len(_BERNOULLI) <= m:
        k = len(_BERNOULLI)
        if k % 2 and k > 1:
            _BERNOULLI.append(Fraction(0))
            continue
        s = sum(comb(k + 1, j) * _BERNOULLI[j] for j in range(k))
        _BERNOULLI.append(-s / (k + 1))
    return _BERNOULLI[m]


# ---------------------------------------------------------------------------
# multiset combinatorics (used by the DVV and boundary expansions)


def multiset_splits(
    items: Sequence[int],
) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...], int]]:
    """Yield ``(left, right, mult)`` over all splits of a multiset.

    ``mult`` counts how many ways labelled items realize the unordered split
    (a product of binomials), so that summing ``mult * f(left, right)`` over
    the yielded splits equals the sum over all 2^n labelled subsets.
    """
    counts = sorted(Counter(items).items())
    values = [v for v, _ in counts]
    for picks in product(*(range(c + 1) for _, c in counts)):
        mult = 1
        left: List[int] = []
        right: List[int] = []
        for (v, c), k in zip(counts, picks):
            mult *= comb(c, k)
            left.extend([v] * k)
            right.extend([v] * (c - k))
        yield tuple(left), tuple(right), mult


# ---------------------------------------------------------------------------
# univariate polynomials (in the variable alpha)


class UniPoly:
    """Dense univariate polynomial over Fraction; trailing zeros are stripped.

    The zero polynomial has ``degree() == -1``.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Fraction] = ()) -> None:
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c: Tuple[Fraction, ...] = tuple(c)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls()

    @classmethod
    def const(cls, value) -> "UniPoly":
        return cls((Fraction(value),))

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "UniPoly":
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        return cls((0,) * exponent + (Fraction(coeff),))

    def degree(self) -> int:
        return len(self.c) - 1

    def coeff(self, i: int) -> Fraction:
        return self.c[i] if 0 <= i < len(self.c) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.c

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def __bool__(self) -> bool:
        return bool(self.c)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-x for x in self.c))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if not self.c or not other.c:
                return UniPoly()
            out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
            for i, x in enumerate(self.c):
                if x == 0:
                    continue
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
            return UniPoly(out)
        return UniPoly(tuple(x * Fraction(other) for x in self.c))

    __rmul__ = __mul__

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for coeff in reversed(self.c):
            acc = acc * x + coeff
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        if not self.c:
            return "UniPoly(0)"
        terms = " + ".join(
            f"{rational_to_str(q)}*a^{i}" for i, q in enumerate(self.c) if q != 0
        )
        return f"UniPoly({terms})"


# ---------------------------------------------------------------------------
# sparse bivariate polynomials in (t, alpha)


class BiPoly:
    """Sparse polynomial in ``t`` and ``alpha``: ``{(t_exp, a_exp): Fraction}``.

    Zero coefficients are never stored; iteration order is lexicographic in
    ``(t_exp, a_exp)``.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Mapping[Tuple[int, int], Fraction] = ()) -> None:
        data: Dict[Tuple[int, int], Fraction] = {}
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        for (te, ae), q in items:
            q = Fraction(q)
            if q != 0:
                data[(int(te), int(ae))] = data.get((int(te), int(ae)), Fraction(0)) + q
        self.coefficients = {k: v for k, v in data.items() if v != 0}

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def const(cls, value) -> "BiPoly":
        return cls({(0, 0): Fraction(value)})

    @classmethod
    def from_t_coeffs(cls, coeffs: Sequence[UniPoly]) -> "BiPoly":
        """Build from a list of alpha-polynomials indexed by the t-exponent."""
        data = {}
        for te, poly in enumerate(coeffs):
            for ae, q in enumerate(poly.c):
                if q != 0:
                    data[(te, ae)] = q
        return cls(data)

    def items(self) -> List[Tuple[Tuple[int, int], Fraction]]:
        return sorted(self.coefficients.items())

    def coeff(self, t_exp: int, a_exp: int) -> Fraction:
        return self.coefficients.get((t_exp, a_exp), Fraction(0))

    def t_coeff(self, t_exp: int) -> UniPoly:
        if not self.coefficients:
            return UniPoly()
        max_a = max((ae for (te, ae) in self.coefficients if te == t_exp), default=-1)
        return UniPoly(
            [self.coefficients.get((t_exp, ae), Fraction(0)) for ae in range(max_a + 1)]
        )

    def t_degree(self) -> int:
        return max((te for te, _ in self.coefficients), default=-1)

    def total_degree(self) -> int:
        return max((te + ae for te, ae in self.coefficients), default=-1)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "BiPoly") -> "BiPoly":
        data = dict(self.coefficients)
        for k, v in other.coefficients.items():
            data[k] = data.get(k, Fraction(0)) + v
        return BiPoly(data)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            data: Dict[Tuple[int, int], Fraction] = {}
            for (t1, a1), q1 in self.coefficients.items():
                for (t2, a2), q2 in other.coefficients.items():
                    k = (t1 + t2, a1 + a2)
                    data[k] = data.get(k, Fraction(0)) + q1 * q2
            return BiPoly(data)
        q = Fraction(other)
        return BiPoly({k: v * q for k, v in self.coefficients.items()})

    __rmul__ = __mul__

    def mul_t_power(self, k: int) -> "BiPoly":
        return BiPoly({(te + k, ae): v for (te, ae), v in self.coefficients.items()})

    def derivative_t(self) -> "BiPoly":
        return BiPoly(
            {(te - 1, ae): te * v for (te, ae), v in self.coefficients.items() if te > 0}
        )

    def eval_alpha(self, alpha) -> "BiPoly":
        """Substitute a rational value for alpha; the result is alpha-free."""
        alpha = Fraction(alpha)
        data: Dict[Tuple[int, int], Fraction] = {}
        for (te, ae), q in self.coefficients.items():
            data[(te, 0)] = data.get((te, 0), Fraction(0)) + q * alpha**ae
        return BiPoly(data)

    def shift_alpha(self) -> "BiPoly":
        """Substitute ``alpha -> -alpha - 1`` (an involution)."""
        data: Dict[Tuple[int, int], Fraction] = {}
        for (te, ae), q in self.coefficients.items():
            for k in range(ae + 1):
                key = (te, k)
                data[key] = data.get(key, Fraction(0)) + q * comb(ae, k) * (-1) ** ae
        return BiPoly(data)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __repr__(self) -> str:
        if not self.coefficients:
            return "BiPoly(0)"
        parts = [
            f"{rational_to_str(q)}*t^{te}*a^{ae}" for (te, ae), q in self.items()
        ]
        return "BiPoly(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# truncated power series in t with UniPoly (alpha) coefficients


class TruncatedSeries:
    """Power series in ``t`` truncated at an explicit order.

    ``coefficients[g]`` is the alpha-polynomial coefficient of ``t^g``; the
    list always has length ``order + 1``.
    """

    __slots__ = ("order", "coefficients")

    def __init__(self, order: int, coefficients: Sequence[UniPoly]) -> None:
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = list(coefficients)
        if len(coeffs) != order + 1:
            raise ValueError(
                f"expected {order + 1} coefficients for order {order}, got {len(coeffs)}"
            )
        self.order = order
        self.coefficients: Tuple[UniPoly, ...] = tuple(coeffs)

    @classmethod
    def from_scalars(cls, order: int, scalars: Sequence) -> "TruncatedSeries":
        return cls(order, [UniPoly.const(s) for s in scalars])

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, [UniPoly.const(1)] + [UniPoly.zero()] * order)

    def coeff(self, g: int) -> UniPoly:
        return self.coefficients[g]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.order != other.order:
            raise ValueError("series order mismatch")
        return TruncatedSeries(
            self.order, [a + b for a, b in zip(self.coefficients, other.coefficients)]
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.coefficients == other.coefficients
        )

    def __hash__(self) -> int:
        return hash((self.order, self.coefficients))

    def to_bipoly(self) -> BiPoly:
        return BiPoly.from_t_coeffs(self.coefficients)

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, {list(self.coefficients)!r})"


def series_exp(linear_coeff, order: int) -> TruncatedSeries:
    """``exp(c*t)`` truncated at ``order``: coefficient of ``t^g`` is ``c^g/g!``."""
    c = Fraction(linear_coeff)
    return TruncatedSeries.from_scalars(
        order, [c**g / factorial(g) for g in range(order + 1)]
    )


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the (required equal) common order."""
    if a.order != b.order:
        raise ValueError(f"series order mismatch: {a.order} != {b.order}")
    out = []
    for g in range(a.order + 1):
        acc = UniPoly.zero()
        for i in range(g + 1):
            ai = a.coefficients[i]
            bj = b.coefficients[g - i]
            if ai and bj:
                acc = acc + ai * bj
        out.append(acc)
    return TruncatedSeries(a.order, out)
