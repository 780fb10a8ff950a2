import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import P
from gkp_laws.errors import NoConvergence, WrongRegime
from gkp_laws.saddle import SaddleContext, quasi_power_moments, saddle_solve

POINT = P(1, 1, 0, 0, 0, 1)


def z_residual(ctx, sp):
    """Relative residual of ``z f_z(z,x) = n`` evaluated with the z-form derivative."""
    return abs(sp.r * ctx.f_z(sp.r, sp.x) - sp.n) / sp.n


class TestSolve:
    def test_n1_quadratic_root(self):
        assert saddle_solve(POINT, 1, 1) == pytest.approx((3 - math.sqrt(5)) / 2, abs=1e-14)

    def test_large_n_asymptotics(self):
        r = saddle_solve(POINT, 1, 10**4)
        assert 1 - r == pytest.approx(0.01, rel=0.15)

    @pytest.mark.parametrize("values", [(1, 1, 0, 0, 0, 1), (2, 1, 3, 0, 0, 1), (1, 3, 1, 0, 0, 2),
                                        (3, 1, 0, 0, 0, 5)])
    @pytest.mark.parametrize("n", [1, 10, 1000, 10**6, 10**9])
    @pytest.mark.parametrize("x", [0.5, 1, 2])
    def test_residual_and_range(self, values, n, x):
        ctx = SaddleContext(P(*values))
        sp = ctx.solve(x, n)
        assert sp.residual <= 1e-12
        assert 0 < sp.r < 1 / ctx.alpha
        # recomputing 1 - alpha r from r costs about eps/u in relative accuracy
        assert z_residual(ctx, sp) <= max(1e-12, 50 * 2.2e-16 / sp.u)

    @given(st.floats(1, 1e7), st.floats(1e-9, 10))
    @settings(max_examples=50, deadline=None)
    def test_monotone_in_n(self, n, rel_step):
        lo, hi = n, n * (1 + rel_step)
        ctx = SaddleContext(P(2, 1, 1, 0, 0, 3))
        assert ctx.solve(1, lo).r < ctx.solve(1, hi).r

    def test_strictly_increasing_on_grid(self):
        rs = [saddle_solve(POINT, 1, n) for n in (1, 2, 5, 20, 100, 10**4, 10**6)]
        assert all(a < b for a, b in zip(rs, rs[1:]))

    def test_no_convergence(self):
        with pytest.raises(NoConvergence):
            SaddleContext(POINT).solve(1, 10**5, max_iter=1)

    @pytest.mark.parametrize("values", [(1, 1, 0, 0, 1, 1), (0, 1, 0, 0, 0, 1), (1, 1, 0, 0, 0, 0)])
    def test_wrong_regime(self, values):
        with pytest.raises(WrongRegime):
            SaddleContext(P(*values))

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            saddle_solve(POINT, 0, 10)
        with pytest.raises(ValueError):
            saddle_solve(POINT, 1, 0)


class TestDerivatives:
    @pytest.mark.parametrize("values", [(1, 1, 0, 0, 0, 1), (2, 1, 3, 0, 0, 1)])
    def test_against_finite_differences(self, values):
        ctx = SaddleContext(P(*values))
        z, x, h = 0.2, 1.3, 1e-6
        assert ctx.f_z(z, x) == pytest.approx((ctx.f(z + h, x) - ctx.f(z - h, x)) / (2 * h), rel=1e-7)
        assert ctx.f_x(z, x) == pytest.approx((ctx.f(z, x + h) - ctx.f(z, x - h)) / (2 * h), rel=1e-7)
        assert ctx.f_zz(z, x) == pytest.approx((ctx.f_z(z + h, x) - ctx.f_z(z - h, x)) / (2 * h), rel=1e-7)
        assert ctx.f_zx(z, x) == pytest.approx((ctx.f_z(z, x + h) - ctx.f_z(z, x - h)) / (2 * h), rel=1e-7)
        assert ctx.f_zzx(z, x) == pytest.approx((ctx.f_zz(z, x + h) - ctx.f_zz(z, x - h)) / (2 * h), rel=1e-7)
        assert ctx.f_zzz(z, x) == pytest.approx((ctx.f_zz(z + h, x) - ctx.f_zz(z - h, x)) / (2 * h), rel=1e-7)

    def test_r_prime_matches_finite_difference(self):
        ctx = SaddleContext(POINT)
        n, h = 500.0, 1e-6
        sp = ctx.solve(1, n)
        fd = (ctx.solve(1 + h, n).r - ctx.solve(1 - h, n).r) / (2 * h)
        assert ctx.r_prime(sp) == pytest.approx(fd, rel=1e-5)


class TestQuasiPower:
    def test_mean_and_variance_at_1e4(self):
        n = 10**4
        qp = quasi_power_moments(POINT, n)
        assert qp.h1 / math.sqrt(n) == pytest.approx(1, rel=0.10)
        assert qp.variance / (math.sqrt(n) / 2) == pytest.approx(1, rel=0.15)

    @pytest.mark.parametrize("n", [1, 10, 100, 10**4, 10**7])
    def test_h2_negative(self, n):
        assert quasi_power_moments(POINT, n).h2 < 0

    def test_h2_asymptotic(self):
        # h''_n ~ -(gamma')^(a/(a+b)) (a n)^(b/(a+b)) / (a+b) = -sqrt(n)/2 here
        n = 10**8
        assert quasi_power_moments(POINT, n).h2 / (-math.sqrt(n) / 2) == pytest.approx(1, rel=0.01)
