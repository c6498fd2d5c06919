import pytest

from knotfold.bracket import jones, kauffman_bracket
from knotfold.diagrams import is_alternating, writhe
from knotfold.errors import NotAKnot
from knotfold.families import (
    double_twist_bracket,
    double_twist_diagram,
    double_twist_is_knot,
    double_twist_members,
    jones_double_twist,
    jones_torus,
    torus_crossing_number,
    torus_diagram,
    torus_members,
)
from knotfold.laurent import LaurentPolynomial


class TestTorusClosedForm:
    def test_2_3_is_trefoil(self, table_polys):
        assert jones_torus(2, 3) == table_polys["3_1"]

    def test_2_5(self, table_polys):
        assert jones_torus(2, 5) == table_polys["5_1"]

    def test_parameter_symmetry(self):
        assert jones_torus(3, 2) == jones_torus(2, 3)
        assert jones_torus(5, 3) == jones_torus(3, 5)

    def test_link_rejected(self):
        with pytest.raises(NotAKnot):
            jones_torus(2, 4)

    def test_small_parameters_rejected(self):
        with pytest.raises(NotAKnot):
            jones_torus(1, 5)

    def test_closed_form_matches_diagrams(self):
        """T(2,n) standard diagram evaluation for n in {3,5,7,9}."""
        for n in (3, 5, 7, 9):
            d = torus_diagram(n)
            assert jones(d) == jones_torus(2, n), n

    def test_integral_exponents(self):
        for m, n in ((2, 3), (3, 4), (3, 5), (4, 5)):
            assert jones_torus(m, n).is_integral()


class TestTorusFamily:
    def test_crossing_number(self):
        assert torus_crossing_number(2, 3) == 3
        assert torus_crossing_number(3, 4) == 8

    def test_limit_7_members(self):
        assert torus_members(7) == [(2, 3), (2, 5), (2, 7)]

    def test_members_sorted_and_coprime(self):
        from math import gcd

        members = torus_members(50)
        assert all(gcd(m, n) == 1 and 2 <= m < n for m, n in members)
        sizes = [torus_crossing_number(m, n) for m, n in members]
        assert sizes == sorted(sizes) and max(sizes) <= 50


class TestDoubleTwist:
    def test_diagram_crossing_count(self):
        for m, n in ((1, 2), (2, 2), (3, 4), (0, 3)):
            assert double_twist_diagram(m, n).n == m + n

    def test_diagrams_alternating(self):
        for m, n in ((1, 2), (2, 2), (2, 3), (3, 3)):
            assert is_alternating(double_twist_diagram(m, n))

    def test_degenerate_regions_give_unknot(self):
        one = LaurentPolynomial.one("q")
        assert jones_double_twist(0, 3) == one
        assert jones_double_twist(2, 0) == one
        assert jones_double_twist(0, 0) == one

    def test_small_knots(self, table_polys):
        assert jones_double_twist(2, 1) == table_polys["3_1"]
        assert jones_double_twist(2, 2) == table_polys["4_1"]
        assert jones_double_twist(2, 3) == table_polys["5_2"]

    def test_bracket_matches_statesum_up_to_10(self):
        for m in range(0, 9):
            for n in range(0, 9):
                if not 0 < m + n <= 10:
                    continue
                d = double_twist_diagram(m, n)
                assert double_twist_bracket(m, n) == \
                    kauffman_bracket(d, "statesum"), (m, n)

    def test_jones_matches_diagram(self):
        for m, n in ((1, 1), (1, 2), (3, 2), (4, 3), (2, 6)):
            d = double_twist_diagram(m, n)
            assert jones_double_twist(m, n) == jones(d), (m, n)

    def test_knot_parity_rule(self):
        assert double_twist_is_knot(1, 2)
        assert double_twist_is_knot(2, 2)
        assert not double_twist_is_knot(1, 1)
        assert not double_twist_is_knot(3, 3)

    def test_members(self):
        assert double_twist_members(5) == [(1, 2), (2, 2), (1, 4), (2, 3)]
        for m, n in double_twist_members(30):
            assert m <= n and (m * n) % 2 == 0 and m + n <= 30

    def test_knot_outputs_integral(self):
        for m, n in double_twist_members(8):
            assert jones_double_twist(m, n).is_integral(), (m, n)
