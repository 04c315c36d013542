"""Pure psi-class intersection numbers on moduli of stable curves.

Genus 0 uses the closed multinomial formula; genus >= 1 uses the DVV
(Witten conjecture) recursion with memoization.  Dimension-mismatched
inputs evaluate to 0; unstable ``(g, n)`` inputs are an error.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence, Tuple

from .algebra import double_factorial_odd, multiset_splits
from .cache import IntegralCache

__all__ = [
    "is_stable",
    "PsiKey",
    "psi_genus0",
    "psi_integral",
    "psi_value",
    "psi_genus0_via_dvv",
]

_HALF = Fraction(1, 2)
_ONE_24 = Fraction(1, 24)


def is_stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


@dataclass(frozen=True)
class PsiKey:
    """Canonical memo key: genus plus the sorted multiset of psi exponents."""

    genus: int
    exponents: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if any(d < 0 for d in self.exponents):
            raise ValueError("psi exponents must be non-negative")
        if not self.exponents:
            raise ValueError("at least one marking is required")
        if not is_stable(self.genus, len(self.exponents)):
            raise ValueError(
                f"unstable space: need 2g-2+n > 0, got g={self.genus}, "
                f"n={len(self.exponents)}"
            )
        object.__setattr__(
            self, "exponents", tuple(sorted(self.exponents, reverse=True))
        )

    def canonical(self) -> str:
        return f"{self.genus}:{','.join(map(str, self.exponents))}"


def psi_genus0(exponents: Sequence[int]) -> Fraction:
    """Closed form ``(n-3)!/prod(d_i!)`` for genus-0 integrals.

    Returns 0 on dimension mismatch; fewer than 3 markings is an error.
    """
    n = len(exponents)
    if n < 3:
        raise ValueError("genus-0 integrals need at least 3 markings")
    if any(d < 0 for d in exponents):
        raise ValueError("psi exponents must be non-negative")
    if sum(exponents) != n - 3:
        return Fraction(0)
    value = Fraction(factorial(n - 3))
    for d in exponents:
        value /= factorial(d)
    return value


_shared_cache = IntegralCache()


def psi_integral(key: PsiKey, cache: Optional[IntegralCache] = None) -> Fraction:
    """Evaluate ``<tau_{d_1}...tau_{d_n}>_g`` exactly."""
    return _psi(key.genus, key.exponents, cache if cache is not None else _shared_cache)


def psi_value(
    g: int, exponents: Sequence[int], cache: Optional[IntegralCache] = None
) -> Fraction:
    """Raw-order convenience entry point; exponents are canonicalized."""
    return psi_integral(PsiKey(g, tuple(exponents)), cache)


def psi_genus0_via_dvv(
    exponents: Sequence[int], cache: Optional[IntegralCache] = None
) -> Fraction:
    """Genus-0 value computed by the DVV recursion instead of the closed form.

    Independent cross-oracle for :func:`psi_genus0`; uses its own transient
    memo table so the closed form never leaks in.
    """
    key = PsiKey(0, tuple(exponents))
    memo = {}

    def rec(g: int, exps: Tuple[int, ...]) -> Fraction:
        if sum(exps) != 3 * g - 3 + len(exps):
            return Fraction(0)
        if g == 0 and len(exps) == 3:
            return Fraction(1)
        if g == 1 and exps == (1,):
            return _ONE_24
        got = memo.get((g, exps))
        if got is None:
            got = _dvv_step(g, exps, rec)
            memo[(g, exps)] = got
        return got

    return rec(0, key.exponents)


def _psi(g: int, exps: Tuple[int, ...], cache: IntegralCache) -> Fraction:
    # exps is sorted descending
    n = len(exps)
    if sum(exps) != 3 * g - 3 + n:
        return Fraction(0)
    if g == 0:
        return psi_genus0(exps)
    if g == 1 and exps == (1,):
        return _ONE_24
    key = f"{g}:{','.join(map(str, exps))}"
    got = cache.get(key)
    if got is not None:
        return got
    value = _dvv_step(g, exps, lambda h, e: _psi(h, e, cache))
    cache.put(key, value)
    return value


def _dvv_step(g: int, exps: Tuple[int, ...], rec) -> Fraction:
    """One application of the DVV recursion on the largest exponent.

    ``rec(g', exps')`` must evaluate sub-integrals (returning 0 on dimension
    mismatch); unstable summands are dropped here before ``rec`` is called.
    """
    d1 = exps[0]
    rest = exps[1:]
    n = len(exps)
    acc = Fraction(0)

    # string-type contraction terms
    for d, count in Counter(rest).items():
        reduced = list(rest)
        reduced.remove(d)
        reduced.append(d1 + d - 1)
        reduced.sort(reverse=True)
        weight = Fraction(
            double_factorial_odd(d1 + d - 1), double_factorial_odd(d - 1)
        )
        acc += count * weight * rec(g, tuple(reduced))

    # boundary terms
    for a in range(d1 - 1):
        b = d1 - 2 - a
        weight = _HALF * double_factorial_odd(a) * double_factorial_odd(b)
        if g >= 1 and is_stable(g - 1, n + 1):
            acc += weight * rec(g - 1, tuple(sorted(rest + (a, b), reverse=True)))
        for g1 in range(g + 1):
            g2 = g - g1
            for left, right, mult in multiset_splits(rest):
                if not is_stable(g1, len(left) + 1) or not is_stable(g2, len(right) + 1):
                    continue
                v1 = rec(g1, tuple(sorted(left + (a,), reverse=True)))
                if v1 == 0:
                    continue
                acc += weight * mult * v1 * rec(g2, tuple(sorted(right + (b,), reverse=True)))

    return acc / double_factorial_odd(d1)
