from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgepoly.algebra import BiPoly, UniPoly
from hodgepoly.series import (
    ALPHA,
    ALPHA_SHIFTED,
    A_value,
    F_series,
    assemble_Pa,
    canonical_index,
    conjecture_check,
    constant_term,
    dilaton_apply,
    double_hodge_coeff,
    enumerate_index_vectors,
    index_prefactor,
    lambda_product_expansion,
    mumford_specialize,
    shift_convention,
    string_apply,
)


def bipoly(d):
    return BiPoly({k: Fraction(v) for k, v in d.items()})


class TestLambdaProductExpansion:
    def test_genus0_single_term(self):
        assert lambda_product_expansion(0) == [(0, 0, 1, 0)]

    def test_genus1_terms(self):
        # (1 - l1)(alpha - l1) = alpha - l1 - alpha*l1 + l1^2
        assert sorted(lambda_product_expansion(1)) == [
            (0, 0, 1, 1),
            (0, 1, -1, 0),
            (1, 0, -1, 1),
            (1, 1, 1, 0),
        ]

    def test_alpha_minus_one_signs_pair_up(self):
        # at alpha = -1 the term signs become (-1)^{g+k}, independent of j
        for g in range(4):
            for k, j, sign, apow in lambda_product_expansion(g):
                assert sign * (-1) ** apow == (-1) ** (g + k)

    def test_negative_genus_rejected(self):
        with pytest.raises(ValueError):
            lambda_product_expansion(-1)


class TestDoubleHodgeCoeff:
    def test_two_marking_convention(self):
        assert double_hodge_coeff(0, (1,)) == UniPoly.const(-1)
        assert double_hodge_coeff(0, (2,)) == UniPoly.const(1)

    def test_one_point_torus(self):
        assert double_hodge_coeff(1, ()) == UniPoly.const(Fraction(-1, 24))

    def test_four_marked_sphere(self):
        assert double_hodge_coeff(0, (0, 0, 0)) == UniPoly.const(1)


class TestAssemble:
    def test_empty_vector(self):
        p = assemble_Pa(())
        assert p.poly == bipoly({(0, 0): 1})
        assert p.convention == ALPHA

    def test_weight_one(self):
        assert assemble_Pa((1,)).poly == bipoly({(1, 0): 1, (0, 0): 12})

    def test_weight_two_shifted(self):
        p = shift_convention(assemble_Pa((2,)))
        assert p.convention == ALPHA_SHIFTED
        assert p.poly == bipoly({(2, 0): 1, (1, 1): -10, (0, 0): 240})

    def test_marking_order_irrelevant(self):
        assert assemble_Pa((2, 1)).poly == assemble_Pa((1, 2)).poly

    def test_negative_entry_rejected(self):
        with pytest.raises(ValueError):
            assemble_Pa((-1,))


class TestShiftConvention:
    def test_involution(self):
        p = assemble_Pa((2,))
        assert shift_convention(shift_convention(p)) == p

    def test_alpha_free_polynomial_unchanged(self):
        p = assemble_Pa((1,))
        assert shift_convention(p).poly == p.poly


class TestAValue:
    def test_vanishes_above_weight(self):
        assert A_value(2, (1,)).is_zero()
        assert A_value(3, (1,)).is_zero()
        assert A_value(1, ()).is_zero()

    def test_top_weight_is_reciprocal_prefactor(self):
        for a in [(1,), (2,), (1, 1), (2, 1)]:
            got = A_value(sum(a), a)
            assert got.is_constant()
            assert got.coeff(0) == 1 / index_prefactor(a)

    def test_empty_vector_point(self):
        assert A_value(0, ()) == UniPoly.const(1)


class TestStringDilaton:
    def test_string_examples(self):
        family = {(0,): assemble_Pa((0,))}
        p10 = string_apply(assemble_Pa((1,)), family)
        assert p10.poly == bipoly({(1, 0): 1})

        p20 = string_apply(assemble_Pa((2,)), {(1,): assemble_Pa((1,))})
        # in the shifted convention: t^2 - 10*alpha*t - 20*t
        assert shift_convention(p20).poly == bipoly(
            {(2, 0): 1, (1, 1): -10, (1, 0): -20}
        )
        # independent oracle
        assert p20.poly == assemble_Pa((2, 0)).poly

    def test_string_with_repeated_entries(self):
        family = {(1, 0): assemble_Pa((1, 0))}
        got = string_apply(assemble_Pa((1, 1)), family)
        assert got.poly == assemble_Pa((1, 1, 0)).poly

    def test_string_two_markings(self):
        # the rule also holds when the result has only two markings
        family = {(0,): assemble_Pa((0,))}
        got = string_apply(assemble_Pa((1,)), family)
        assert got.poly == assemble_Pa((1, 0)).poly

    def test_string_mixed_convention_rejected(self):
        family = {(0,): shift_convention(assemble_Pa((0,)))}
        with pytest.raises(ValueError):
            string_apply(assemble_Pa((1,)), family)

    def test_dilaton_examples(self):
        got = dilaton_apply(assemble_Pa((1,)), 2)
        assert got.poly == bipoly({(2, 0): 1, (1, 0): -12})
        got = dilaton_apply(assemble_Pa((2,)), 2)
        assert got.poly == assemble_Pa((2, 1)).poly
        got = dilaton_apply(assemble_Pa((1, 1)), 3)
        assert got.poly == bipoly({(3, 0): 1, (2, 0): -72, (1, 0): 432})


class TestConstantTerm:
    def test_one_marking(self):
        assert constant_term((1,)) == 12
        assert constant_term((3,)) == 6720

    def test_zero_cases(self):
        assert constant_term((1, 1)) == 0
        assert constant_term((2, 1)) == 0

    def test_multi_marking_nonzero(self):
        assert constant_term((0, 0, 0)) == assemble_Pa((0, 0, 0)).poly.coeff(0, 0)
        assert constant_term((1, 0, 0, 0)) == assemble_Pa((1, 0, 0, 0)).poly.coeff(0, 0)

    def test_needs_a_marking(self):
        with pytest.raises(ValueError):
            constant_term(())

    @pytest.mark.parametrize("a", [(1,), (2,), (1, 1), (2, 1), (1, 1, 1)])
    def test_matches_assembled(self, a):
        got = assemble_Pa(a).poly.t_coeff(0)
        assert got.is_constant() and got.coeff(0) == constant_term(a)


class TestMumfordSpecialize:
    def test_examples(self):
        assert mumford_specialize(()).poly == bipoly({(0, 0): 1})
        assert mumford_specialize((1,)).poly == bipoly({(1, 0): 1, (0, 0): 12})
        assert mumford_specialize((2,)).poly == bipoly({(2, 0): 1, (0, 0): 240})

    @pytest.mark.parametrize("a", [(1,), (2,), (1, 1), (2, 1), (1, 1, 1)])
    def test_matches_assembled_at_minus_one(self, a):
        assert mumford_specialize(a).poly == assemble_Pa(a).poly.eval_alpha(-1)


class TestFSeries:
    def test_matches_gaussian(self):
        series = F_series(8)
        for m in range(9):
            want = Fraction(0)
            if m % 2 == 0:
                g = m // 2
                fact = 1
                for i in range(2, g + 1):
                    fact *= i
                want = Fraction(-1, 24) ** g / fact
            assert series.coeff(m) == UniPoly.const(want) or (
                want == 0 and series.coeff(m).is_zero()
            )


class TestConjectureCheck:
    def test_reports(self):
        assert conjecture_check(()).total_degree == 0
        r = conjecture_check((2, 2))
        assert r.weight == 4 and r.total_degree == 4 and r.within_bound


class TestEnumeration:
    def test_weight_grouping_and_order(self):
        assert list(enumerate_index_vectors(2)) == [(), (1,), (2,), (1, 1)]

    def test_twelve_vectors_at_weight_four(self):
        vectors = list(enumerate_index_vectors(4))
        assert len(vectors) == 12
        assert vectors[4:7] == [(3,), (2, 1), (1, 1, 1)]
        assert vectors[-1] == (1, 1, 1, 1)

    @given(st.lists(st.integers(min_value=0, max_value=5), max_size=5))
    def test_canonical_index_sorts_descending(self, a):
        c = canonical_index(a)
        assert sorted(c, reverse=True) == list(c)
        assert sorted(c) == sorted(a)
