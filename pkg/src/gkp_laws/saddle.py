"""Saddle point of the stretched-power regime (beta' = 0, alpha, beta > 0).

Works with ``f(z,x) = (g'x/b)((1-a z)^(-b/a) - 1) - (g/a) log(1 - a z)`` and
solves ``z f_z(z,x) = n``.  Internally the unknown is ``u = 1 - a z`` in log
scale: near the singularity ``u`` is tiny and ``z`` itself carries no digits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .classifier import RegimeTag, classify
from .errors import NoConvergence, WrongRegime
from .params import GkpParams, RationalLike

MAX_ITER = 200
TOL = 1e-14


@dataclass(frozen=True)
class SaddlePoint:
    r: float
    u: float  # 1 - alpha*r, kept separately for accuracy
    x: float
    n: float
    residual: float  # |r f_z(r,x) - n| / n
    iterations: int


class SaddleContext:
    """Partial derivatives of ``f`` and the saddle point ``r(x)``."""

    def __init__(self, params: GkpParams):
        if classify(params).tag is not RegimeTag.GAUSSIAN_STRETCHED_POWER:
            raise WrongRegime("saddle analysis needs beta' = 0, alpha, beta > 0, gamma' > 0")
        self.params = params
        self.alpha = float(params.alpha)
        self.beta = float(params.beta)
        self.gamma = float(params.gamma)
        self.gamma_p = float(params.gamma_p)
        self.ratio = self.beta / self.alpha

    # each derivative is written in terms of u = 1 - alpha z
    def _u(self, z: float) -> float:
        return 1.0 - self.alpha * z

    def f(self, z: float, x: float) -> float:
        u = self._u(z)
        return self.gamma_p * x / self.beta * (u ** -self.ratio - 1) - self.gamma / self.alpha * math.log(u)

    def f_x(self, z: float, x: float) -> float:
        return self.f_x_u(self._u(z))

    def f_x_u(self, u: float) -> float:
        # (g'/b) * expm1(-(b/a) log u), accurate for u near 1 as well
        return self.gamma_p / self.beta * math.expm1(-self.ratio * math.log(u))

    def f_z(self, z: float, x: float) -> float:
        return self.f_z_u(self._u(z), x)

    def f_z_u(self, u: float, x: float) -> float:
        return self.gamma_p * x * u ** (-1 - self.ratio) + self.gamma / u

    def f_zx(self, z: float, x: float) -> float:
        return self.f_zx_u(self._u(z))

    def f_zx_u(self, u: float) -> float:
        return self.gamma_p * u ** (-1 - self.ratio)

    def f_zz(self, z: float, x: float) -> float:
        return self.f_zz_u(self._u(z), x)

    def f_zz_u(self, u: float, x: float) -> float:
        a, b = self.alpha, self.beta
        return self.gamma_p * x * (a + b) * u ** (-2 - self.ratio) + self.gamma * a / u**2

    def f_zzx(self, z: float, x: float) -> float:
        a, b = self.alpha, self.beta
        return self.gamma_p * (a + b) * self._u(z) ** (-2 - self.ratio)

    def f_zzz(self, z: float, x: float) -> float:
        a, b = self.alpha, self.beta
        u = self._u(z)
        return (self.gamma_p * x * (a + b) * (2 * a + b) * u ** (-3 - self.ratio)
                + 2 * self.gamma * a * a / u**3)

    # log(z f_z) - log n as a function of s = log u; strictly decreasing in s
    def _phi(self, s: float, x: float, log_n: float) -> tuple[float, float]:
        a, ratio = self.alpha, self.ratio
        u = math.exp(s)
        one_minus_u = -math.expm1(s)
        w = self.gamma * u**ratio
        inner = self.gamma_p * x + w
        value = math.log(one_minus_u / a) + math.log(inner) - (1 + ratio) * s - log_n
        slope = -u / one_minus_u + ratio * w / inner - (1 + ratio)
        return value, slope

    def initial_guess(self, x: float, n: float) -> float:
        """``log u`` from the leading-order asymptotics of the saddle."""
        a, b = self.alpha, self.beta
        u0 = (self.gamma_p * x / (a * n)) ** (a / (a + b))
        return math.log(min(u0, 0.5))

    def solve(self, x: RationalLike = 1, n: float = 1, max_iter: int = MAX_ITER) -> SaddlePoint:
        """Safeguarded Newton in ``log u`` with a maintained bisection bracket."""
        x = float(x)
        if x <= 0:
            raise ValueError("x must be positive")
        if n <= 0:
            raise ValueError("n must be positive")
        log_n = math.log(n)
        s = self.initial_guess(x, n)
        # bracket [lo, hi] with phi(lo) > 0 > phi(hi)
        lo, hi = s, s
        while self._phi(lo, x, log_n)[0] <= 0:
            lo = 2 * lo - 1
        while self._phi(hi, x, log_n)[0] >= 0:
            hi = hi / 2  # phi -> -inf as s -> 0-, so this stops well before underflow
        for it in range(1, max_iter + 1):
            value, slope = self._phi(s, x, log_n)
            if abs(value) <= 2e-16:  # value is the log of the relative residual
                break
            if value > 0:
                lo = s
            else:
                hi = s
            step = s - value / slope
            s_new = step if lo < step < hi else 0.5 * (lo + hi)
            if abs(s_new - s) <= TOL * max(1.0, abs(s)):
                s = s_new
                break
            s = s_new
        else:
            raise NoConvergence(f"saddle point did not converge in {max_iter} iterations")
        u = math.exp(s)
        r = -math.expm1(s) / self.alpha
        residual = abs(math.expm1(self._phi(s, x, log_n)[0]))
        return SaddlePoint(r, u, x, n, residual, it)

    def r_prime(self, sp: SaddlePoint) -> float:
        """Implicit derivative ``r'(x) = -r f_zx / (f_z + r f_zz)``."""
        u, r, x = sp.u, sp.r, sp.x
        return -r * self.f_zx_u(u) / (self.f_z_u(u, x) + r * self.f_zz_u(u, x))


def saddle_solve(params: GkpParams, x: RationalLike, n: float) -> float:
    """The saddle radius ``r`` with ``r f_z(r, x) = n``."""
    return SaddleContext(params).solve(x, n).r


@dataclass(frozen=True)
class QuasiPowerMoments:
    h1: float  # h_n'(1) = f_x(r(1), 1)
    h2: float  # h_n''(1) = r'(1) f_zx(r(1), 1)
    saddle: SaddlePoint

    @property
    def mean(self) -> float:
        return self.h1

    @property
    def variance(self) -> float:
        return self.h1 + self.h2


def quasi_power_moments(params: GkpParams, n: float, context: Optional[SaddleContext] = None) -> QuasiPowerMoments:
    ctx = context or SaddleContext(params)
    sp = ctx.solve(1, n)
    h1 = ctx.f_x_u(sp.u)
    h2 = ctx.r_prime(sp) * ctx.f_zx_u(sp.u)
    return QuasiPowerMoments(h1, h2, sp)
