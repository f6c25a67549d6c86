"""
Test suite for Ehrhart polynomials and cohomology dimensions
"""
import math
from fractions import Fraction

import pytest

from crepant.criterion import TwoParamType, decide_two_param, one_param_type, two_param_types
from crepant.errors import InvalidInputError, NotResolvableError
from crepant.ehrhart import (DeltaVector, EhrhartPoly, PolygonData, bpoly, closed_form_area,
                             closed_form_boundary, cohomology_dims, cohomology_dims_one_param, delta_from_a,
                             dpoly, ehrhart_junior, pick_polygon, stirling1)
from crepant.fan import build_polygon
from crepant.oracles import direct_count, enumerate_dilated_simplex, join_count
from crepant.quotient import QuotientType, age_histogram

ISOLATED = TwoParamType(4, 11, 3, 6)
CON1 = TwoParamType(4, 8, 2, 4)
P_ZERO = TwoParamType(5, 28, 4, 21)


def counted_ehrhart(t: QuotientType) -> EhrhartPoly:
    return EhrhartPoly.interpolate([direct_count(t, nu) for nu in range(1, t.r + 1)])


class TestEhrhartPoly:
    """Test the polynomial container"""

    def test_interpolate(self):
        """Test exact interpolation of the standard triangle"""
        poly = EhrhartPoly.interpolate([math.comb(nu + 2, 2) for nu in range(1, 4)])
        assert poly.coefficients == (Fraction(1), Fraction(3, 2), Fraction(1, 2))
        assert poly.dimension == 2
        assert poly.leading == Fraction(1, 2)
        assert poly.evaluate(4) == 15

    def test_dict_round_trip(self):
        """Test serialisation keeps exact rationals"""
        poly = EhrhartPoly((Fraction(1), Fraction(5, 3), Fraction(11, 6)))
        assert poly.to_dict()["coefficients"] == ["1/1", "5/3", "11/6"]
        assert EhrhartPoly.from_dict(poly.to_dict()) == poly


class TestDeltaVector:
    """Test δ-vectors"""

    def test_stirling(self):
        """Test signed Stirling numbers"""
        assert stirling1(0, 0) == 1
        assert stirling1(3, 2) == -3
        assert stirling1(4, 1) == -6
        with pytest.raises(InvalidInputError):
            stirling1(2, 3)

    def test_segment(self):
        """Test a segment of length m"""
        for m in range(1, 8):
            assert delta_from_a(EhrhartPoly((Fraction(1), Fraction(m)))).entries == (1, m - 1)

    @pytest.mark.parametrize("d", range(1, 7))
    def test_standard_simplex(self, d):
        """Test the unimodular simplex"""
        poly = EhrhartPoly.interpolate([math.comb(nu + d, d) for nu in range(1, d + 2)])
        assert delta_from_a(poly).entries == (1,) + (0,) * d

    def test_volume(self):
        """Test the normalized volume"""
        assert DeltaVector((1, 3, 4, 3)).volume == 11
        assert DeltaVector((1, 3, 4, 3)).to_list() == [1, 3, 4, 3]


class TestPolygonCounts:
    """Test the polygon-based counting functions"""

    def test_pick(self):
        """Test Pick's polynomial of the μ = 1 polygon"""
        poly = pick_polygon(build_polygon(CON1))
        assert poly.coefficients == (Fraction(1), Fraction(2), Fraction(2))
        assert poly.evaluate(1) == 5
        assert poly.evaluate(2) == 13

    def test_polygon_data(self):
        """Test derived face counts"""
        geom = PolygonData.from_polygon(build_polygon(CON1))
        assert (geom.f0, geom.area, geom.boundary) == (5, Fraction(2), 4)
        assert geom.edges == 8
        assert geom.triangles == 4

    def test_join_counts(self):
        """Test the join with unit vectors against enumeration"""
        geom = PolygonData.from_polygon(build_polygon(CON1))
        assert bpoly(1, 1, geom) == 6
        assert bpoly(1, 2, geom) == 19
        assert join_count(CON1, 1, 1) == 6
        assert join_count(CON1, 1, 2) == 19

    def test_chain_counts(self):
        """Test the chain join at ν = 1"""
        assert dpoly(1, 1, 2) == 5
        assert dpoly(2, 1, 2) == 6

    def test_closed_forms(self):
        """Test area and boundary of the examples"""
        assert (closed_form_area(CON1), closed_form_boundary(CON1)) == (Fraction(2), 4)
        assert (closed_form_area(ISOLATED), closed_form_boundary(ISOLATED)) == (Fraction(2), 4)
        assert (closed_form_area(P_ZERO), closed_form_boundary(P_ZERO)) == (Fraction(9, 2), 5)
        t = TwoParamType(4, 12, 5, 5)
        assert (closed_form_area(t), closed_form_boundary(t)) == (Fraction(5, 2), 3)

    def test_closed_forms_need_resolvable(self):
        """Test non-resolvable types are rejected"""
        with pytest.raises(NotResolvableError):
            closed_form_area(TwoParamType(4, 9, 2, 5))


class TestJuniorEhrhart:
    """Test the junior simplex Ehrhart polynomial"""

    def test_isolated_example(self):
        """Test 1/11(1,1,3,6)"""
        poly = ehrhart_junior(ISOLATED)
        assert poly.evaluate(1) == 7
        assert poly.evaluate(2) == 26
        assert poly.leading == Fraction(11, 6)
        assert cohomology_dims(ISOLATED).entries == (1, 3, 4, 3)

    def test_con1_example(self):
        """Test 1/8(1,1,2,4)"""
        poly = ehrhart_junior(CON1)
        assert (poly.evaluate(1), poly.evaluate(2)) == (7, 25)
        assert cohomology_dims(CON1).entries == (1, 3, 3, 1)

    def test_not_resolvable(self):
        """Test the formula needs a resolvable type"""
        with pytest.raises(NotResolvableError):
            ehrhart_junior(TwoParamType(4, 9, 2, 5))

    @pytest.mark.parametrize("r,lmax", [(4, 40), (5, 40)])
    def test_matches_direct_count(self, r, lmax):
        """Test the polygon formula against direct counting"""
        for t in two_param_types(r, lmax):
            if not decide_two_param(t).resolvable:
                continue
            assert ehrhart_junior(t) == counted_ehrhart(t.quotient()), t.label
            delta = cohomology_dims(t)
            assert delta.volume == t.l
            assert delta.entries[0] == 1 and min(delta.entries) >= 0
            assert delta.entries == age_histogram(t.quotient()), t.label

    def test_direct_count_matches_enumeration(self):
        """Test the composition count against explicit enumeration"""
        t = QuotientType(11, (1, 1, 3, 6))
        for nu in range(1, 4):
            assert direct_count(t, nu) == len(enumerate_dilated_simplex(t, nu))


class TestOneParamCohomology:
    """Test the one-parameter dimensions"""

    def test_examples(self):
        """Test known dimension vectors"""
        assert cohomology_dims_one_param(4, 7).entries == (1, 2, 2, 2)
        assert cohomology_dims_one_param(4, 6).entries == (1, 2, 2, 1)
        assert cohomology_dims_one_param(5, 9).entries == (1, 2, 2, 2, 2)

    def test_not_resolvable(self):
        """Test l mod (r-1) outside {0, 1}"""
        with pytest.raises(NotResolvableError):
            cohomology_dims_one_param(4, 8)

    @pytest.mark.parametrize("r", [4, 5, 6])
    def test_matches_counts(self, r):
        """Test against the δ-vector of the counted Ehrhart polynomial for every l <= 200"""
        for l in range(r, 201):
            if l % (r - 1) not in (0, 1):
                continue
            q = one_param_type(r, l).quotient()
            dims = cohomology_dims_one_param(r, l).entries
            assert delta_from_a(counted_ehrhart(q)).entries == dims, (r, l)
            assert age_histogram(q) == dims, (r, l)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
