"""Hodge integrals: psi-classes mixed with Chern classes of the Hodge bundle.

Lambda monomials are rewritten in odd Chern characters (all even Chern
characters of the Hodge bundle vanish), each ch factor is expanded through
Mumford's boundary formula with Bernoulli-number coefficients, kappa classes
are traded for extra markings, and everything bottoms out in pure psi
integrals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import bernoulli, multiset_splits
from .cache import IntegralCache
from .psi import _psi, _shared_cache, is_stable

__all__ = [
    "LambdaMonomial",
    "TautMonomial",
    "BoundaryTerm",
    "lambda_to_ch",
    "grr_expand",
    "kappa_reduce",
    "taut_integral",
    "hodge_integral",
    "hodge_geometric",
]

_HALF = Fraction(1, 2)

ChPoly = Dict[Tuple[int, ...], Fraction]  # multiset of odd ch indices -> coeff


@dataclass(frozen=True)
class LambdaMonomial:
    """Monomial in lambda classes: index j (>= 1) -> multiplicity."""

    exponents: Tuple[Tuple[int, int], ...]

    @classmethod
    def make(cls, exponents: Mapping[int, int]) -> "LambdaMonomial":
        items = tuple(sorted((j, m) for j, m in exponents.items() if m))
        if any(j < 1 or m < 0 for j, m in items):
            raise ValueError(f"invalid lambda monomial {exponents!r}")
        return cls(items)

    def degree(self) -> int:
        return sum(j * m for j, m in self.exponents)

    def indices(self) -> Tuple[int, ...]:
        return tuple(j for j, m in self.exponents for _ in range(m))


@dataclass(frozen=True)
class TautMonomial:
    """A scalar times ``prod psi_i^{a_i} * prod kappa_b * prod ch_{2l-1}``."""

    genus: int
    psi: Tuple[int, ...]  # one exponent per marking
    kappa: Tuple[int, ...]  # multiset of kappa indices
    ch: Tuple[int, ...]  # multiset of odd ch indices
    scalar: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kappa", tuple(sorted(self.kappa)))
        object.__setattr__(self, "ch", tuple(sorted(self.ch)))
        if any(m % 2 == 0 or m < 1 for m in self.ch):
            raise ValueError("even Chern characters vanish and are never stored")
        if any(b < 0 for b in self.kappa):
            raise ValueError("kappa index must be non-negative")
        if not is_stable(self.genus, len(self.psi)):
            raise ValueError(f"unstable space (g={self.genus}, n={len(self.psi)})")

    def codim(self) -> int:
        return sum(self.psi) + sum(self.kappa) + sum(self.ch)

    def dim(self) -> int:
        return 3 * self.genus - 3 + len(self.psi)


@dataclass(frozen=True)
class BoundaryTerm:
    """A pushed-forward boundary contribution.

    One part: the irreducible gluing, evaluated on ``(g-1, n+2)`` with the
    two node branches appended as markings.  Two parts: a separating node;
    the value is the product of the parts' integrals.
    """

    parts: Tuple[TautMonomial, ...]
    scalar: Fraction = Fraction(1)


# ---------------------------------------------------------------------------
# lambda -> ch via Newton's identities


_ELEMENTARY: List[ChPoly] = [{(): Fraction(1)}]


def _ch_mul(p: ChPoly, q: ChPoly) -> ChPoly:
    out: ChPoly = {}
    for k1, c1 in p.items():
        for k2, c2 in q.items():
            key = tuple(sorted(k1 + k2))
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {k: v for k, v in out.items() if v != 0}


def _elementary(j: int) -> ChPoly:
    """e_j of the Chern roots as a polynomial in odd Chern characters.

    Newton: ``j*e_j = sum_{i=1..j} (-1)^{i-1} e_{j-i} p_i`` with the even
    power sums zero and ``p_i = i! * ch_i`` for odd i.
    """
    while len(_ELEMENTARY) <= j:
        k = len(_ELEMENTARY)
        acc: ChPoly = {}
        for i in range(1, k + 1, 2):  # even power sums vanish
            p_i: ChPoly = {(i,): Fraction(factorial(i))}
            term = _ch_mul(_ELEMENTARY[k - i], p_i)
            sign = (-1) ** (i - 1)
            for key, c in term.items():
                acc[key] = acc.get(key, Fraction(0)) + sign * c
        _ELEMENTARY.append({k2: v / k for k2, v in acc.items() if v != 0})
    return _ELEMENTARY[j]


def lambda_to_ch(m: LambdaMonomial, g: int) -> ChPoly:
    """Expand a lambda monomial as a combination of odd-ch multisets."""
    if any(j > g for j, _ in m.exponents):
        raise ValueError(f"lambda index exceeds genus {g}: {m.exponents}")
    out: ChPoly = {(): Fraction(1)}
    for j, mult in m.exponents:
        for _ in range(mult):
            out = _ch_mul(out, _elementary(j))
    return out


# ---------------------------------------------------------------------------
# Mumford / boundary expansion of one ch factor


def _remove_one(items: Tuple[int, ...], value: int) -> Tuple[int, ...]:
    out = list(items)
    out.remove(value)
    return tuple(out)


def grr_expand(
    m: TautMonomial, chosen: int
) -> Tuple[List[TautMonomial], List[BoundaryTerm]]:
    """Expand one ``ch_{2l-1}`` factor of ``m`` through the boundary formula.

    ``chosen`` is the (odd) ch index to expand.  Returns same-space terms and
    boundary terms; unstable boundary sides are dropped.
    """
    if chosen not in m.ch:
        raise ValueError(f"ch_{chosen} not present in {m}")
    twol = chosen + 1
    pref = m.scalar * bernoulli(twol) / factorial(twol)
    rest_ch = _remove_one(m.ch, chosen)
    n = len(m.psi)

    same: List[TautMonomial] = [
        TautMonomial(m.genus, m.psi, m.kappa + (chosen,), rest_ch, pref)
    ]
    for i in range(n):
        psi = m.psi[:i] + (m.psi[i] + chosen,) + m.psi[i + 1 :]
        same.append(TautMonomial(m.genus, psi, m.kappa, rest_ch, -pref))

    boundary: List[BoundaryTerm] = []
    # irreducible gluing: one map, two node branches become markings
    if m.genus >= 1 and is_stable(m.genus - 1, n + 2):
        for i in range(twol - 1):
            j = twol - 2 - i
            part = TautMonomial(m.genus - 1, m.psi + (i, j), m.kappa, rest_ch)
            boundary.append(BoundaryTerm((part,), pref * _HALF * (-1) ** i))
    # separating nodes: ordered pairs (h, S); the 1/2 fixes the double count
    for h in range(m.genus + 1):
        for subset in range(1 << n):
            left_ids = [i for i in range(n) if subset >> i & 1]
            right_ids = [i for i in range(n) if not subset >> i & 1]
            if not is_stable(h, len(left_ids) + 1):
                continue
            if not is_stable(m.genus - h, len(right_ids) + 1):
                continue
            for k_left, k_right, k_mult in multiset_splits(m.kappa):
                for c_left, c_right, c_mult in multiset_splits(rest_ch):
                    for i in range(twol - 1):
                        j = twol - 2 - i
                        left = TautMonomial(
                            h,
                            tuple(m.psi[x] for x in left_ids) + (i,),
                            k_left,
                            c_left,
                        )
                        right = TautMonomial(
                            m.genus - h,
                            tuple(m.psi[x] for x in right_ids) + (j,),
                            k_right,
                            c_right,
                        )
                        boundary.append(
                            BoundaryTerm(
                                (left, right),
                                pref * _HALF * (-1) ** i * k_mult * c_mult,
                            )
                        )
    return same, boundary


def kappa_reduce(m: TautMonomial) -> List[TautMonomial]:
    """Rewrite all kappa factors as extra psi markings.

    One kappa is pushed forward per step: ``kappa_b = pi_*(psi_new^{b+1})``
    and ``pi^* kappa_c = kappa_c - psi_new^c``, so the remaining kappas
    contribute an inclusion-exclusion over the subsets absorbed into the
    new marking.  ``kappa_0`` is the scalar ``2g-2+n``.
    """
    if m.ch:
        raise ValueError("kappa reduction runs after all ch expansions")
    if not m.kappa:
        return [m]
    b = m.kappa[-1]
    rest = m.kappa[:-1]
    if b == 0:
        factor = 2 * m.genus - 2 + len(m.psi)
        return kappa_reduce(
            TautMonomial(m.genus, m.psi, rest, (), m.scalar * factor)
        )
    out: List[TautMonomial] = []
    for absorbed, kept, mult in multiset_splits(rest):
        out.extend(
            kappa_reduce(
                TautMonomial(
                    m.genus,
                    m.psi + (b + 1 + sum(absorbed),),
                    kept,
                    (),
                    m.scalar * mult * (-1) ** len(absorbed),
                )
            )
        )
    return out


# ---------------------------------------------------------------------------
# evaluation


def _taut_value(
    g: int,
    psi: Tuple[int, ...],
    kappa: Tuple[int, ...],
    ch: Tuple[int, ...],
    cache: IntegralCache,
    choose: Optional[Callable[[Tuple[int, ...]], int]],
) -> Fraction:
    n = len(psi)
    if sum(psi) + sum(kappa) + sum(ch) != 3 * g - 3 + n:
        return Fraction(0)
    key = (g, tuple(sorted(psi, reverse=True)), kappa, ch)
    got = cache.transient.get(key)
    if got is not None:
        return got

    if ch:
        value = _expand_ch(g, key[1], kappa, ch, cache, choose)
    elif kappa:
        value = _reduce_kappa(g, key[1], kappa, cache, choose)
    else:
        value = _psi(g, key[1], cache)
    cache.transient[key] = value
    return value


def _expand_ch(g, psi, kappa, ch, cache, choose) -> Fraction:
    chosen = choose(ch) if choose is not None else ch[-1]
    twol = chosen + 1
    pref = bernoulli(twol) / factorial(twol)
    rest_ch = _remove_one(ch, chosen)
    n = len(psi)

    acc = pref * _taut_value(g, psi, kappa + (chosen,), rest_ch, cache, choose)
    # one -psi_i^{2l-1} per marking; equal exponents contribute equally
    for d, count in Counter(psi).items():
        bumped = _remove_one(psi, d) + (d + chosen,)
        acc -= pref * count * _taut_value(g, bumped, kappa, rest_ch, cache, choose)

    if g >= 1 and is_stable(g - 1, n + 2):
        for i in range(twol - 1):
            j = twol - 2 - i
            acc += (
                pref
                * _HALF
                * (-1) ** i
                * _taut_value(g - 1, psi + (i, j), kappa, rest_ch, cache, choose)
            )

    for h in range(g + 1):
        for p_left, p_right, p_mult in multiset_splits(psi):
            if not is_stable(h, len(p_left) + 1):
                continue
            if not is_stable(g - h, len(p_right) + 1):
                continue
            dim_left = 3 * h - 3 + len(p_left) + 1
            for k_left, k_right, k_mult in multiset_splits(kappa):
                for c_left, c_right, c_mult in multiset_splits(rest_ch):
                    base = sum(p_left) + sum(k_left) + sum(c_left)
                    for i in range(twol - 1):
                        if base + i != dim_left:
                            continue
                        j = twol - 2 - i
                        v1 = _taut_value(
                            h, p_left + (i,), k_left, c_left, cache, choose
                        )
                        if v1 == 0:
                            continue
                        v2 = _taut_value(
                            g - h, p_right + (j,), k_right, c_right, cache, choose
                        )
                        acc += (
                            pref
                            * _HALF
                            * (-1) ** i
                            * p_mult
                            * k_mult
                            * c_mult
                            * v1
                            * v2
                        )
    return acc


def _reduce_kappa(g, psi, kappa, cache, choose) -> Fraction:
    b = kappa[-1]
    rest = kappa[:-1]
    if b == 0:
        return (2 * g - 2 + len(psi)) * _taut_value(g, psi, rest, (), cache, choose)
    # pi^* kappa_c = kappa_c - psi_new^c on the space with one extra marking,
    # so the remaining kappas expand by inclusion-exclusion over the subsets
    # absorbed into the new marking's psi power.
    acc = Fraction(0)
    for absorbed, kept, mult in multiset_splits(rest):
        sign = -1 if len(absorbed) % 2 else 1
        acc += (
            sign
            * mult
            * _taut_value(g, psi + (b + 1 + sum(absorbed),), kept, (), cache, choose)
        )
    return acc


def taut_integral(
    m: TautMonomial,
    cache: Optional[IntegralCache] = None,
    choose: Optional[Callable[[Tuple[int, ...]], int]] = None,
) -> Fraction:
    """Integrate a tautological monomial over its moduli space.

    ``choose`` optionally picks which ch factor to expand next (the result
    is independent of the order; tests randomize it).
    """
    cache = cache if cache is not None else _shared_cache
    return m.scalar * _taut_value(m.genus, m.psi, m.kappa, m.ch, cache, choose)


def hodge_integral(
    g: int,
    n: int,
    psi_exponents: Sequence[int],
    lam: Mapping[int, int] | LambdaMonomial,
    cache: Optional[IntegralCache] = None,
) -> Fraction:
    """Exact value of ``int prod psi_i^{a_i} * (lambda monomial)`` on (g, n)."""
    cache = cache if cache is not None else _shared_cache
    if not isinstance(lam, LambdaMonomial):
        lam = LambdaMonomial.make(lam)
    if len(psi_exponents) != n:
        raise ValueError("need one psi exponent per marking")
    if not is_stable(g, n):
        raise ValueError(f"unstable space (g={g}, n={n})")
    if any(j > g for j, _ in lam.exponents):
        raise ValueError(f"lambda index exceeds genus {g}: {lam.exponents}")
    psi = tuple(int(d) for d in psi_exponents)
    if any(d < 0 for d in psi):
        raise ValueError("psi exponents must be non-negative")
    if sum(psi) + lam.degree() != 3 * g - 3 + n:
        return Fraction(0)

    psi_key = ",".join(map(str, sorted(psi, reverse=True)))
    lam_key = ",".join(map(str, lam.indices()))
    key = f"H:{g}:{n}:psi={psi_key}:lam={lam_key}"
    got = cache.get(key)
    if got is not None:
        return got

    value = Fraction(0)
    for ch_multiset, coeff in lambda_to_ch(lam, g).items():
        value += coeff * _taut_value(g, psi, (), ch_multiset, cache, None)
    cache.put(key, value)
    return value


def hodge_geometric(
    g: int,
    psi_exponents: Sequence[int],
    lam: Mapping[int, int] | LambdaMonomial,
    cache: Optional[IntegralCache] = None,
) -> Fraction:
    """``int prod psi_i^{a_i} * lambda / (1 - psi_0)`` on a stable (g, n+1).

    The geometric series collapses to the single power of ``psi_0`` forced
    by the dimension (negative forced power means value 0).
    """
    if not isinstance(lam, LambdaMonomial):
        lam = LambdaMonomial.make(lam)
    n = len(psi_exponents)
    e = (3 * g - 2 + n) - sum(psi_exponents) - lam.degree()
    if e < 0:
        return Fraction(0)
    return hodge_integral(g, n + 1, (e, *psi_exponents), lam, cache)
