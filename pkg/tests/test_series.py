"""Tests for exact truncated power-series arithmetic."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cover_census.combinatorics import bell
from cover_census.series import BivariateSeries, PowerSeries

# Small rational coefficients keep hypothesis cases fast while still
# exercising non-integer arithmetic.
fractions = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


def series_of(coeffs, degree):
    return PowerSeries.from_coeffs(list(coeffs), degree)


class TestConstruction:
    def test_from_coeffs_pads(self):
        s = PowerSeries.from_coeffs([1, 2], 4)
        assert s.coeffs == (1, 2, 0, 0, 0)
        assert s.degree == 4

    def test_from_coeffs_truncates(self):
        s = PowerSeries.from_coeffs([1, 2, 3, 4], 2)
        assert s.coeffs == (1, 2, 3)

    def test_from_coeffs_infers_degree(self):
        assert PowerSeries.from_coeffs([5, 6, 7]).degree == 2
        assert PowerSeries.from_coeffs([]).degree == 0

    def test_from_sequence_divides_by_factorials(self):
        s = PowerSeries.from_sequence([1, 2, 6], 4)
        assert s.coeffs == (1, 2, 3, 0, 0)

    def test_sequence_term_round_trip(self):
        values = [3, 1, 4, 1, 5, 9]
        s = PowerSeries.from_sequence(values, 5)
        assert [s.sequence_term(n) for n in range(6)] == values

    def test_constants(self):
        assert PowerSeries.zero(2).coeffs == (0, 0, 0)
        assert PowerSeries.one(2).coeffs == (1, 0, 0)
        assert PowerSeries.x(2).coeffs == (0, 1, 0)

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            PowerSeries(2, (Fraction(1),))

    def test_coefficient_range_checked(self):
        s = PowerSeries.one(3)
        with pytest.raises(ValueError):
            s.coefficient(4)
        with pytest.raises(ValueError):
            s.coefficient(-1)


class TestArithmetic:
    def test_add_sub_neg(self):
        a = series_of([1, 2, 3], 2)
        b = series_of([5, 7, 11], 2)
        assert (a + b).coeffs == (6, 9, 14)
        assert (b - a).coeffs == (4, 5, 8)
        assert (-a).coeffs == (-1, -2, -3)

    def test_mul_matches_convolution(self):
        a = series_of([1, 2, 3], 4)
        b = series_of([4, 5], 4)
        assert (a * b).coeffs == (4, 13, 22, 15, 0)

    def test_mul_truncates(self):
        a = series_of([0, 1, 1], 2)
        assert (a * a).coeffs == (0, 0, 1)

    def test_scalar_mul_both_sides(self):
        a = series_of([1, 2], 3)
        assert (a * 3).coeffs == (3, 6, 0, 0)
        assert (Fraction(1, 2) * a).coeffs == (Fraction(1, 2), 1, 0, 0)

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            series_of([1], 2) + series_of([1], 3)

    def test_geometric_series_inverse(self):
        geometric = series_of([1] * 9, 8)
        one_minus_x = series_of([1, -1], 8)
        assert geometric * one_minus_x == PowerSeries.one(8)

    def test_truncate(self):
        a = series_of([1, 2, 3, 4], 3)
        assert a.truncate(1).coeffs == (1, 2)
        with pytest.raises(ValueError):
            a.truncate(5)

    @given(st.lists(fractions, min_size=1, max_size=7))
    def test_mul_commutes(self, coeffs):
        degree = len(coeffs)
        a = series_of(coeffs, degree)
        b = series_of(list(reversed(coeffs)), degree)
        assert a * b == b * a


class TestExp:
    def test_exp_x(self):
        e = PowerSeries.x(8).exp()
        for k in range(9):
            assert e.coefficient(k) == Fraction(1, math.factorial(k))

    def test_requires_zero_constant(self):
        with pytest.raises(ValueError):
            PowerSeries.one(3).exp()

    def test_exp_of_zero(self):
        assert PowerSeries.zero(4).exp() == PowerSeries.one(4)

    @given(st.lists(fractions, min_size=0, max_size=6))
    def test_exp_inverse_pair(self, tail):
        degree = len(tail) + 1
        a = series_of([0] + tail, degree)
        assert a.exp() * (-a).exp() == PowerSeries.one(degree)

    @given(
        st.lists(fractions, min_size=0, max_size=5),
        st.lists(fractions, min_size=0, max_size=5),
    )
    def test_exp_additive(self, tail_a, tail_b):
        degree = max(len(tail_a), len(tail_b)) + 1
        a = series_of([0] + tail_a, degree)
        b = series_of([0] + tail_b, degree)
        assert (a + b).exp() == a.exp() * b.exp()


class TestCompose:
    def test_bell_generating_function(self):
        # exp(e^x - 1) is the Bell-number EGF, a classical identity that
        # exercises exp and compose together.
        degree = 12
        shifted_exp = PowerSeries.x(degree).exp() - PowerSeries.one(degree)
        composed = shifted_exp.exp()
        for n in range(degree + 1):
            assert composed.sequence_term(n) == bell(n)

    def test_compose_matches_exp_route(self):
        degree = 10
        outer = PowerSeries.x(degree).exp()
        inner = PowerSeries.x(degree).exp() - PowerSeries.one(degree)
        assert outer.compose(inner) == inner.exp()

    def test_inner_constant_must_vanish(self):
        with pytest.raises(ValueError):
            PowerSeries.x(3).compose(PowerSeries.one(3))

    def test_identity_composition(self):
        a = series_of([2, 3, 5, 7], 3)
        assert a.compose(PowerSeries.x(3)) == a

    @given(
        st.lists(fractions, min_size=0, max_size=4),
        st.lists(fractions, min_size=0, max_size=4),
        st.lists(fractions, min_size=0, max_size=4),
    )
    def test_compose_associative(self, outer, mid_tail, inner_tail):
        degree = 8
        a = series_of(outer, degree)
        b = series_of([0] + mid_tail, degree)
        c = series_of([0] + inner_tail, degree)
        assert a.compose(b).compose(c) == a.compose(b.compose(c))


class TestBivariate:
    def test_from_terms_and_coefficient(self):
        s = BivariateSeries.from_terms({(0, 0): 1, (2, 1): Fraction(1, 3)}, 2, 2)
        assert s.coefficient(0, 0) == 1
        assert s.coefficient(2, 1) == Fraction(1, 3)
        assert s.coefficient(1, 1) == 0

    def test_from_terms_range_checked(self):
        with pytest.raises(ValueError):
            BivariateSeries.from_terms({(3, 0): 1}, 2, 2)

    def test_coefficient_range_checked(self):
        s = BivariateSeries.zero(1, 1)
        with pytest.raises(ValueError):
            s.coefficient(2, 0)

    def test_add(self):
        a = BivariateSeries.from_terms({(0, 0): 1, (1, 1): 2}, 2, 2)
        b = BivariateSeries.from_terms({(1, 1): 3}, 2, 2)
        assert (a + b).coefficient(1, 1) == 5

    def test_mul_binomial_square(self):
        one_plus_xy = BivariateSeries.from_terms({(0, 0): 1, (1, 1): 1}, 2, 2)
        square = one_plus_xy * one_plus_xy
        assert square.coefficient(0, 0) == 1
        assert square.coefficient(1, 1) == 2
        assert square.coefficient(2, 2) == 1
        assert square.coefficient(1, 0) == 0

    def test_mul_truncates_both_degrees(self):
        xy = BivariateSeries.from_terms({(1, 1): 1}, 1, 1)
        assert (xy * xy) == BivariateSeries.zero(1, 1)

    def test_exp_of_x_plus_y(self):
        s = BivariateSeries.from_terms({(1, 0): 1, (0, 1): 1}, 5, 5)
        e = s.exp()
        for i in range(6):
            for j in range(6):
                assert e.coefficient(i, j) == Fraction(
                    1, math.factorial(i) * math.factorial(j)
                )

    def test_exp_requires_zero_constant(self):
        with pytest.raises(ValueError):
            BivariateSeries.from_terms({(0, 0): 1}, 1, 1).exp()

    def test_exp_pure_x_matches_univariate(self):
        terms = {(1, 0): Fraction(1, 2), (2, 0): -1, (3, 0): Fraction(2, 3)}
        s = BivariateSeries.from_terms(terms, 6, 2).exp()
        u = PowerSeries.from_coeffs(
            [0, Fraction(1, 2), -1, Fraction(2, 3)], 6
        ).exp()
        for i in range(7):
            assert s.coefficient(i, 0) == u.coefficient(i)
            assert s.coefficient(i, 1) == 0

    def test_exp_pure_y_matches_univariate(self):
        s = BivariateSeries.from_terms({(0, 1): 1, (0, 2): -2}, 2, 6).exp()
        u = PowerSeries.from_coeffs([0, 1, -2], 6).exp()
        for j in range(7):
            assert s.coefficient(0, j) == u.coefficient(j)
            assert s.coefficient(1, j) == 0

    def test_exp_mixed_term_cross_check(self):
        # exp(xy) expanded directly: coefficient of x^i y^j is [i == j] / i!
        s = BivariateSeries.from_terms({(1, 1): 1}, 4, 4).exp()
        for i in range(5):
            for j in range(5):
                expected = Fraction(1, math.factorial(i)) if i == j else 0
                assert s.coefficient(i, j) == expected

    def test_exp_additive(self):
        a = BivariateSeries.from_terms({(1, 0): 1, (1, 2): Fraction(1, 2)}, 4, 4)
        b = BivariateSeries.from_terms({(0, 1): -1, (2, 1): 2}, 4, 4)
        assert (a + b).exp() == a.exp() * b.exp()

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            BivariateSeries.zero(1, 2) + BivariateSeries.zero(2, 1)
