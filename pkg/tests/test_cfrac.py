"""
Test suite for continued fractions
"""
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st
from sympy import Rational
from sympy.ntheory.continued_fraction import continued_fraction_periodic, continued_fraction_reduce

from crepant.cfrac import (DualCase, bezout_min, convergents, dual_expansions, evaluate_negreg,
                           evaluate_regular, lame_bound, negreg_expand, regular_expand, regular_to_negreg,
                           xgcd)
from crepant.errors import InvalidInputError

fractions = st.tuples(st.integers(min_value=2, max_value=2000), st.integers(min_value=1, max_value=1999))


class TestExpansions:
    """Test regular and negative-regular expansions"""

    def test_regular_examples(self):
        """Test known regular expansions"""
        assert regular_expand(7, 4).entries == (1, 1, 3)
        assert regular_expand(12, 7).entries == (1, 1, 2, 2)
        assert regular_expand(11, 5).entries == (2, 5)

    def test_negreg_examples(self):
        """Test known negative-regular expansions"""
        assert negreg_expand(7, 4).entries == (2, 4)
        assert negreg_expand(12, 7).entries == (2, 4, 2)
        assert negreg_expand(7, 3).entries == (3, 2, 2)
        assert negreg_expand(5, 1).entries == (5,)

    def test_invalid_fractions(self):
        """Test rejection of non-reduced or out-of-range fractions"""
        with pytest.raises(InvalidInputError):
            regular_expand(4, 2)
        with pytest.raises(InvalidInputError):
            negreg_expand(3, 3)
        with pytest.raises(InvalidInputError):
            regular_expand(3, 0)

    def test_evaluation(self):
        """Test exact evaluation of both kinds"""
        assert evaluate_regular([1, 1, 3]) == Fraction(7, 4)
        assert evaluate_negreg([2, 4]) == Fraction(7, 4)
        assert negreg_expand(12, 7).value() == Fraction(12, 7)

    @settings(max_examples=300)
    @given(fractions)
    def test_regular_matches_sympy(self, pair):
        """Test regular expansion against sympy"""
        kappa, lam = pair
        assume(lam < kappa and math.gcd(kappa, lam) == 1)
        cf = regular_expand(kappa, lam)
        assert list(cf.entries) == continued_fraction_periodic(kappa, lam)
        assert continued_fraction_reduce(list(cf.entries)) == Rational(kappa, lam)
        assert cf.length < lame_bound(lam)

    def test_negreg_length_bounds(self):
        """Test rho = kappa-1 exactly for all-2 expansions, otherwise rho <= (kappa-1)//2"""
        for kappa in range(2, 301):
            for lam in range(1, kappa):
                if math.gcd(kappa, lam) != 1:
                    continue
                entries = negreg_expand(kappa, lam).entries
                if all(c == 2 for c in entries):
                    assert len(entries) == kappa - 1
                    assert lam == kappa - 1
                else:
                    assert len(entries) <= (kappa - 1) // 2, (kappa, lam)


class TestConversion:
    """Test conversion from regular to negative-regular expansions"""

    def test_examples(self):
        """Test the odd-length and even-length examples"""
        assert regular_to_negreg(regular_expand(7, 4)).entries == (2, 4)
        assert regular_to_negreg(regular_expand(12, 7)).entries == (2, 4, 2)

    def test_exhaustive(self):
        """Test conversion equals direct expansion for all kappa <= 2000"""
        for kappa in range(2, 2001):
            for lam in range(1, kappa):
                if math.gcd(kappa, lam) == 1:
                    assert regular_to_negreg(regular_expand(kappa, lam)) == negreg_expand(kappa, lam)


class TestConvergents:
    """Test convergent tables and determinant identities"""

    def test_negreg_table(self):
        """Test the negative-regular table of 7/4"""
        table = convergents(negreg_expand(7, 4))
        assert table.pair(-1) == (0, -1)
        assert table.pair(0) == (1, 0)
        assert table.final == (7, 4)

    def test_index_out_of_range(self):
        """Test convergent index bounds"""
        table = convergents(regular_expand(7, 4))
        with pytest.raises(IndexError):
            table.pair(-2)

    @settings(max_examples=300)
    @given(fractions)
    def test_determinants(self, pair):
        """Test both determinant identities and the final convergents"""
        kappa, lam = pair
        assume(lam < kappa and math.gcd(kappa, lam) == 1)
        reg = convergents(regular_expand(kappa, lam))
        neg = convergents(negreg_expand(kappa, lam))
        assert reg.final == (kappa, lam)
        assert neg.final == (kappa, lam)
        for i in range(0, reg.last_index + 1):
            assert reg.determinant(i) == (-1) ** i
        for i in range(0, neg.last_index + 1):
            assert neg.determinant(i) == 1

    @settings(max_examples=300)
    @given(fractions)
    def test_convergent_order(self, pair):
        """Test regular convergents interleave around kappa/lam and negative-regular ones strictly decrease"""
        kappa, lam = pair
        assume(lam < kappa and math.gcd(kappa, lam) == 1)
        target = Fraction(kappa, lam)
        reg = convergents(regular_expand(kappa, lam))
        values = [Fraction(*reg.pair(i)) for i in range(1, reg.last_index + 1)]
        odd, even = values[0::2], values[1::2]
        assert all(a < b for a, b in zip(odd, odd[1:]))
        assert all(a > b for a, b in zip(even, even[1:]))
        assert all(v <= target for v in odd)
        assert all(v >= target for v in even)

        neg = convergents(negreg_expand(kappa, lam))
        steps = [Fraction(*neg.pair(i)) for i in range(1, neg.last_index + 1)]
        assert all(a > b for a, b in zip(steps, steps[1:]))
        assert steps[-1] == target

    @settings(max_examples=300)
    @given(fractions)
    def test_convergents_coprime(self, pair):
        """Test every convergent pair from index 1 on is reduced"""
        kappa, lam = pair
        assume(lam < kappa and math.gcd(kappa, lam) == 1)
        for table in (convergents(regular_expand(kappa, lam)), convergents(negreg_expand(kappa, lam))):
            for i in range(1, table.last_index + 1):
                assert math.gcd(*table.pair(i)) == 1


class TestBezout:
    """Test Bezout pairs"""

    def test_xgcd(self):
        """Test extended Euclid"""
        g, x, y = xgcd(240, 46)
        assert g == 2
        assert 240 * x + 46 * y == 2
        assert xgcd(0, 5)[0] == 5

    def test_bezout_min_examples(self):
        """Test the pairs read off the expansions"""
        assert bezout_min(11, 5) == (1, -2)
        assert bezout_min(12, 7) == (3, -5)

    @settings(max_examples=300)
    @given(fractions)
    def test_bezout_identity(self, pair):
        """Test kappa*x0 + lam*x0' = 1 with |x0| <= lam"""
        kappa, lam = pair
        assume(lam < kappa and math.gcd(kappa, lam) == 1)
        x0, x1 = bezout_min(kappa, lam)
        assert kappa * x0 + lam * x1 == 1
        assert abs(x0) <= lam


class TestDualExpansions:
    """Test the relation between q/p and q/(q-p)"""

    def test_deu_case(self):
        """Test a1 = 1"""
        dual = dual_expansions(7, 4)
        assert dual.case is DualCase.DEU
        assert dual.dual.entries == (2, 3)
        assert dual.dual.length == dual.primal.length - 1

    def test_prw_case(self):
        """Test a1 >= 2"""
        dual = dual_expansions(12, 5)
        assert dual.case is DualCase.PRW
        assert dual.dual.entries == (1, 1, 2, 2)
        assert (dual.dual.length, dual.primal.length) == (4, 3)

    def test_q_two(self):
        """Test the [1,1] normalization"""
        dual = dual_expansions(2, 1)
        assert dual.dual.entries == (2,)
        assert dual.relations_hold()

    def test_rejects_p_zero(self):
        """Test p = 0 is rejected"""
        with pytest.raises(InvalidInputError):
            dual_expansions(1, 0)

    def test_relations_exhaustive(self):
        """Test entry relations for all q <= 500"""
        for q in range(2, 501):
            for p in range(1, q):
                if math.gcd(p, q) == 1:
                    assert dual_expansions(q, p).relations_hold()

    def test_length_identity(self):
        """Test sum(b) - rho = sum(c) - t = rho + t - 1 for q/p and q/(q-p), q <= 500"""
        for q in range(2, 501):
            for p in range(1, q):
                if math.gcd(p, q) != 1:
                    continue
                b = negreg_expand(q, p).entries
                c = negreg_expand(q, q - p).entries
                rho, t = len(b), len(c)
                assert sum(b) - rho == sum(c) - t == rho + t - 1, (q, p)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
