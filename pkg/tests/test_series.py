import math
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gkp_laws import series as ps
from gkp_laws.errors import CompositionOrderError
from gkp_laws.series import Series

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def zero_constant_series(draw, order=8):
    return Series([0] + draw(st.lists(small, min_size=order, max_size=order)))


def sympy_series(expr, z, order):
    poly = sympy.series(expr, z, 0, order + 1).removeO()
    return [F(str(sympy.nsimplify(poly.coeff(z, k)))) for k in range(order + 1)]


class TestArithmetic:
    def test_multiply_and_inverse(self):
        s = Series([1, 1, 0, 0, 0])
        assert (s * s.inverse()).coeffs == (1, 0, 0, 0, 0)
        assert s.inverse().coeffs == (1, -1, 1, -1, 1)

    def test_mixed_orders_truncate(self):
        assert (Series([1, 2, 3]) + Series([1, 1])).order == 1

    def test_inverse_needs_unit(self):
        with pytest.raises(ZeroDivisionError):
            Series([0, 1]).inverse()

    def test_truncate_cannot_extend(self):
        with pytest.raises(ValueError):
            Series([1, 2]).truncate(5)

    def test_egf_coefficients(self):
        assert ps.exp_linear(2, 6).egf_coefficients() == [2**n for n in range(7)]


class TestPrimitives:
    @given(zero_constant_series())
    @settings(max_examples=30, deadline=None)
    def test_exp_log_round_trip(self, s):
        assert ps.log(ps.exp(s)) == s

    @given(zero_constant_series())
    @settings(max_examples=30, deadline=None)
    def test_log_exp_round_trip(self, s):
        u = 1 + s
        assert ps.exp(ps.log(u)) == u

    @given(zero_constant_series(order=6), st.integers(-3, 4))
    @settings(max_examples=30, deadline=None)
    def test_integer_power_matches_repeated_product(self, s, e):
        u = 1 + s
        expected = Series.constant(1, 6)
        base = u if e >= 0 else u.inverse()
        for _ in range(abs(e)):
            expected = expected * base
        assert ps.power(u, e) == expected

    @given(zero_constant_series(order=6), st.fractions(min_value=-3, max_value=3, max_denominator=5),
           st.fractions(min_value=-3, max_value=3, max_denominator=5))
    @settings(max_examples=30, deadline=None)
    def test_power_law(self, s, e1, e2):
        u = 1 + s
        assert ps.power(u, e1) * ps.power(u, e2) == ps.power(u, e1 + e2)

    @given(zero_constant_series(order=6), st.fractions(min_value=-3, max_value=3, max_denominator=5))
    @settings(max_examples=30, deadline=None)
    def test_power_is_exp_of_scaled_log(self, s, e):
        u = 1 + s
        assert ps.power(u, e) == ps.exp(e * ps.log(u))

    def test_power_of_non_unit_integer(self):
        assert ps.power(Series([2, 1, 0]), 2).coeffs == (4, 4, 1)

    def test_binomial_matches_power(self):
        assert ps.binomial(F(-3, 2), F(2, 7), 8) == ps.power(Series([1, F(-3, 2)] + [0] * 7), F(2, 7))

    def test_log1p_linear(self):
        assert ps.log1p_linear(3, 7) == ps.log(Series([1, 3] + [0] * 6))

    @pytest.mark.parametrize("c, e", [(F(-1, 2), F(3, 4)), (2, F(-5, 3)), (F(1, 3), 7)])
    def test_binomial_against_sympy(self, c, e):
        z = sympy.symbols("z")
        expected = sympy_series((1 + sympy.Rational(str(c)) * z) ** sympy.Rational(str(e)), z, 7)
        assert list(ps.binomial(c, e, 7).coeffs) == expected

    def test_compose_exp_of_exp(self):
        # exp(e^z - 1) generates the Bell numbers
        inner = ps.exp_linear(1, 8) - 1
        bell = ps.compose(ps.exp_linear(1, 8), inner).egf_coefficients()
        assert bell == [1, 1, 2, 5, 15, 52, 203, 877, 4140]

    @given(zero_constant_series(order=6))
    @settings(max_examples=20, deadline=None)
    def test_compose_with_exp_matches_exp(self, s):
        assert ps.compose(ps.exp_linear(1, 6), s) == ps.exp(s)


class TestCompositionOrder:
    def test_exp_nonzero_constant(self):
        with pytest.raises(CompositionOrderError):
            ps.exp(Series([1, 1]))

    def test_log_constant_not_one(self):
        with pytest.raises(CompositionOrderError):
            ps.log(Series([2, 1]))

    def test_rational_power_constant_not_one(self):
        with pytest.raises(CompositionOrderError):
            ps.power(Series([2, 1]), F(1, 2))

    def test_compose_inner_constant(self):
        with pytest.raises(CompositionOrderError):
            ps.compose(Series([1, 1, 1]), Series([1, 1, 0]))


def test_exp_z_over_one_minus_z():
    f = ps.exp_linear(1, 5) * Series([1, -1, 0, 0, 0, 0]).inverse()
    assert f.egf_coefficients()[3] == 16
    # n! * sum_{k<=n} 1/k!, the derangement-like "arrangement" numbers
    assert f.egf_coefficients() == [sum(math.factorial(n) // math.factorial(k) for k in range(n + 1))
                                    for n in range(6)]
