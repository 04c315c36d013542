from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgepoly.cache import IntegralCache
from hodgepoly.hodge import (
    LambdaMonomial,
    TautMonomial,
    grr_expand,
    hodge_geometric,
    hodge_integral,
    kappa_reduce,
    lambda_to_ch,
    taut_integral,
)
from hodgepoly.psi import is_stable, psi_value


class TestLambdaToCh:
    def test_lambda1(self):
        assert lambda_to_ch(LambdaMonomial.make({1: 1}), 1) == {(1,): Fraction(1)}

    def test_lambda2(self):
        assert lambda_to_ch(LambdaMonomial.make({2: 1}), 2) == {
            (1, 1): Fraction(1, 2)
        }

    def test_lambda3(self):
        assert lambda_to_ch(LambdaMonomial.make({3: 1}), 3) == {
            (1, 1, 1): Fraction(1, 6),
            (3,): Fraction(2),
        }

    def test_products_multiply(self):
        got = lambda_to_ch(LambdaMonomial.make({1: 2}), 2)
        assert got == {(1, 1): Fraction(1)}

    def test_index_beyond_genus_rejected(self):
        with pytest.raises(ValueError):
            lambda_to_ch(LambdaMonomial.make({2: 1}), 1)


class TestGrrExpand:
    def test_structure_on_one_marking_torus(self):
        m = TautMonomial(1, (0,), (), (1,))
        same, boundary = grr_expand(m, 1)
        # kappa_1 term and one -psi term, both with coefficient B_2/2! = 1/12
        assert [(t.kappa, t.psi, t.scalar) for t in same] == [
            ((1,), (0,), Fraction(1, 12)),
            ((), (1,), Fraction(-1, 12)),
        ]
        # a single irreducible boundary term with node powers (0,0)
        assert len(boundary) == 1
        (term,) = boundary
        assert term.scalar == Fraction(1, 24)
        assert len(term.parts) == 1
        assert term.parts[0].genus == 0 and term.parts[0].psi == (0, 0, 0)

    def test_even_index_never_stored(self):
        with pytest.raises(ValueError):
            TautMonomial(1, (0,), (), (2,))

    def test_missing_factor_rejected(self):
        with pytest.raises(ValueError):
            grr_expand(TautMonomial(1, (0,), (), (1,)), 3)


def kappa_power_oracle(g, n, exponents):
    """Independent iterated-pushforward value of <prod kappa_{b}> using only
    pure psi integrals: each removal turns kappa_b into psi^{b+1} on a new
    marking and expands the remaining kappas by inclusion-exclusion."""

    def rec(extra, remaining):
        if not remaining:
            return psi_value(g, (0,) * n + extra)
        b, rest = remaining[-1], remaining[:-1]
        total = Fraction(0)
        for mask in range(1 << len(rest)):
            absorbed = [rest[i] for i in range(len(rest)) if mask >> i & 1]
            kept = tuple(rest[i] for i in range(len(rest)) if not mask >> i & 1)
            total += (-1) ** len(absorbed) * rec(
                extra + (b + 1 + sum(absorbed),), kept
            )
        return total

    return rec((), tuple(exponents))


class TestKappa:
    def test_single_kappa_on_torus(self):
        assert taut_integral(TautMonomial(1, (0,), (1,), ())) == Fraction(1, 24)

    def test_kappa0_is_scalar(self):
        m = TautMonomial(1, (1,), (0,), ())
        (reduced,) = kappa_reduce(m)
        assert reduced.scalar == 2 * 1 - 2 + 1
        assert taut_integral(m) == Fraction(1, 24)

    def test_kappa_free_passthrough(self):
        m = TautMonomial(1, (1,), (), ())
        assert kappa_reduce(m) == [m]

    def test_negative_kappa_index_rejected(self):
        with pytest.raises(ValueError):
            TautMonomial(1, (0,), (-1,), ())

    @pytest.mark.parametrize(
        "g,n,kappa",
        [
            (0, 5, (1, 1)),
            (0, 6, (1, 1, 1)),
            (0, 6, (2, 1)),
            (0, 7, (1, 1, 1, 1)),
            (0, 7, (2, 2)),
            (0, 7, (3, 1)),
            (1, 2, (1, 1)),
            (1, 3, (1, 1, 1)),
            (1, 3, (2, 1)),
            (1, 4, (1, 1, 1, 1)),
            (2, 2, (2, 2)),
            (2, 3, (2, 2, 2)),
        ],
    )
    def test_pure_kappa_matches_pushforward_oracle(self, g, n, kappa):
        engine = taut_integral(TautMonomial(g, (0,) * n, kappa, ()))
        assert engine == kappa_power_oracle(g, n, kappa)

    def test_frozen_kappa_values(self):
        # frozen from the pushforward oracle
        assert taut_integral(TautMonomial(1, (0, 0, 0), (1, 1, 1), ())) == Fraction(7, 6)
        assert taut_integral(TautMonomial(0, (0,) * 6, (1, 1, 1), ())) == 61
        assert taut_integral(TautMonomial(0, (0,) * 7, (1, 1, 1, 1), ())) == 1379
        assert taut_integral(TautMonomial(1, (0, 0, 0, 0), (1, 1, 1, 1), ())) == Fraction(529, 24)


# anchors frozen from independent derivations (dilaton from the base cases,
# the vanishing lambda_1^2 in genus 1, and the genus-2 values forced by the
# one-point series)
HODGE_ANCHORS = [
    (1, 1, (0,), {1: 1}, Fraction(1, 24)),
    (1, 2, (1, 0), {1: 1}, Fraction(1, 24)),
    (1, 2, (0, 0), {1: 2}, Fraction(0)),
    (1, 3, (0, 0, 0), {1: 3}, Fraction(0)),
    (2, 1, (4,), {}, Fraction(1, 1152)),
    (2, 1, (2,), {2: 1}, Fraction(7, 5760)),
    (2, 1, (1,), {1: 1, 2: 1}, Fraction(1, 2880)),
    (2, 1, (1,), {1: 3}, Fraction(1, 1440)),
    (2, 1, (0,), {2: 2}, Fraction(0)),
    (2, 1, (3,), {1: 1}, Fraction(1, 480)),
]


@pytest.mark.parametrize("g,n,psi,lam,value", HODGE_ANCHORS)
def test_hodge_anchor_values(g, n, psi, lam, value):
    assert hodge_integral(g, n, psi, lam) == value


class TestHodgeIntegral:
    def test_lambda_free_agrees_with_psi_engine(self):
        for g, exps in [(1, (1,)), (2, (4,)), (2, (3, 2)), (3, (7,))]:
            assert hodge_integral(g, len(exps), exps, {}) == psi_value(g, exps)

    def test_dimension_mismatch_is_zero(self):
        assert hodge_integral(2, 1, (1,), {2: 1}) == 0

    def test_unstable_rejected(self):
        with pytest.raises(ValueError):
            hodge_integral(0, 2, (0, 0), {})

    def test_marking_count_mismatch_rejected(self):
        with pytest.raises(ValueError):
            hodge_integral(1, 2, (1,), {})

    def test_persistent_key_namespace(self):
        cache = IntegralCache()
        hodge_integral(1, 1, (0,), {1: 1}, cache)
        assert cache.get("H:1:1:psi=0:lam=1") == Fraction(1, 24)


class TestHodgeGeometric:
    def test_forced_power(self):
        # 1/(1-psi_0) collapses to psi_0^e with e fixed by the dimension
        assert hodge_geometric(1, (), {1: 1}) == hodge_integral(1, 1, (0,), {1: 1})
        assert hodge_geometric(1, (1,), {}) == hodge_integral(1, 2, (1, 1), {})

    def test_negative_forced_power_is_zero(self):
        assert hodge_geometric(0, (3,), {}) == 0


def small_taut_states():
    """Random reduction states of total dimension <= 8."""
    return st.tuples(
        st.integers(min_value=1, max_value=2),
        st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=3),
        st.lists(st.sampled_from([1, 3]), min_size=1, max_size=2),
    ).filter(
        lambda t: 3 * t[0] - 3 + len(t[1]) <= 8
        and sum(t[1]) + sum(t[2]) == 3 * t[0] - 3 + len(t[1])
    )


class TestConfluence:
    @given(small_taut_states(), st.randoms(use_true_random=False))
    @settings(max_examples=25, deadline=None)
    def test_expansion_order_irrelevant(self, state, rnd):
        g, psi, ch = state
        m = TautMonomial(g, tuple(psi), (), tuple(sorted(ch)))
        baseline = taut_integral(m, IntegralCache())
        randomized = taut_integral(m, IntegralCache(), choose=rnd.choice)
        assert randomized == baseline


stable_hodge_instances = st.tuples(
    st.integers(min_value=1, max_value=3),
    st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=3),
    st.integers(min_value=0, max_value=3),
).filter(lambda t: t[2] <= t[0])


class TestHodgeStringDilaton:
    @given(stable_hodge_instances)
    @settings(max_examples=25, deadline=None)
    def test_string(self, inst):
        g, exps, j = inst
        lam = {j: 1} if j else {}
        lhs = hodge_integral(g, len(exps) + 1, tuple(exps) + (0,), lam)
        rhs = Fraction(0)
        for i, d in enumerate(exps):
            if d > 0:
                rhs += hodge_integral(
                    g, len(exps), tuple(exps[:i]) + (d - 1,) + tuple(exps[i + 1 :]), lam
                )
        assert lhs == rhs

    @given(stable_hodge_instances)
    @settings(max_examples=25, deadline=None)
    def test_dilaton(self, inst):
        g, exps, j = inst
        lam = {j: 1} if j else {}
        lhs = hodge_integral(g, len(exps) + 1, tuple(exps) + (1,), lam)
        rhs = (2 * g - 2 + len(exps)) * hodge_integral(g, len(exps), exps, lam)
        assert lhs == rhs


def test_mumford_graded_relation_small():
    # graded pieces of c(E)c(E^*) = 1 on a genus-2 space: for psi-degree
    # dim - c the signed sum over k+j = c vanishes for c > 0
    g, n = 2, 1
    dim = 3 * g - 3 + n
    for c in range(1, 2 * g + 1):
        total = Fraction(0)
        for k in range(g + 1):
            j = c - k
            if not 0 <= j <= g:
                continue
            lam = {}
            for idx in (k, j):
                if idx:
                    lam[idx] = lam.get(idx, 0) + 1
            total += (-1) ** k * hodge_integral(g, n, (dim - c,), lam)
        assert total == 0, f"codegree {c}"
