"""Closed-form bivariate exponential generating functions
``F(z, x) = sum_n P_n(x) z^n / n!`` and exact checks against the triangle.

Closed forms are expanded at a fixed rational ``x`` as univariate rational
series in ``z``.  Limit variants (alpha, beta or beta' equal to zero) are
separate formulas selected by the zero pattern of the parameters; nothing is
obtained by letting a parameter tend to zero numerically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable

from . import series as ps
from .errors import Unclassifiable
from .params import GkpParams, RationalLike, parse_rational
from .series import Series
from .triangle import build_triangle, polynomials


class Variant(str, Enum):
    GENERAL_BETA_P = "GeneralBetaP"          # beta' > 0, alpha > 0, beta > 0
    GENERAL_BETA_ZERO = "GeneralBetaZero"    # beta' > 0, alpha > 0, beta = 0
    ALPHA_ZERO = "AlphaZero"                 # beta' > 0, alpha = 0, beta > 0
    ALPHA_BETA_ZERO = "AlphaBetaZero"        # beta' > 0, alpha = beta = alpha' = 0
    SECTION6 = "Section6"                    # beta' > 0, alpha = beta = 0, alpha' > 0
    BETA_P_ZERO = "BetaPZero"                # beta' = 0, alpha > 0, beta > 0
    ALPHA_ZERO_BETA_POS = "AlphaZeroBetaPos"  # beta' = 0, alpha = 0, beta > 0
    BETA_BETA_P_ZERO = "BetaBetaPZero"       # beta = beta' = 0 (any alpha, alpha')


#: variants of the form F = B(z,x) * C(z,x)**(-kappa) with a movable singularity
SCHEMA_VARIANTS = frozenset({Variant.GENERAL_BETA_P, Variant.GENERAL_BETA_ZERO,
                             Variant.ALPHA_ZERO, Variant.ALPHA_BETA_ZERO})


def select_variant(params: GkpParams) -> Variant:
    if not params.classifiable:
        raise Unclassifiable(f"no closed form for parameters ({params})")
    a, b, g, ap, bp, gp = params.as_tuple()
    if bp > 0 and ap == 0:
        if a > 0:
            return Variant.GENERAL_BETA_P if b > 0 else Variant.GENERAL_BETA_ZERO
        return Variant.ALPHA_ZERO if b > 0 else Variant.ALPHA_BETA_ZERO
    if bp > 0:
        return Variant.SECTION6
    if b > 0:
        return Variant.BETA_P_ZERO if a > 0 else Variant.ALPHA_ZERO_BETA_POS
    return Variant.BETA_BETA_P_ZERO


@dataclass(frozen=True)
class ClosedFormBgf:
    """A closed form of ``F(z, x)`` together with its rational constants.

    ``constants`` holds the exponents that appear in the formula, e.g.
    ``kappa = 1 + gamma'/beta'`` and ``prefactor_exponent = -(gamma+alpha)/alpha``.
    """

    params: GkpParams
    variant: Variant
    constants: dict = field(default_factory=dict)

    # -- schema pieces -----------------------------------------------------
    def components(self, x: RationalLike, order: int) -> tuple[Series, Series, Fraction]:
        """``(B, C, kappa)`` with ``F = B * C**(-kappa)`` for the algebraic-schema variants."""
        if self.variant not in SCHEMA_VARIANTS:
            raise ValueError(f"variant {self.variant.value} has no B*C^-kappa decomposition")
        x = parse_rational(x)
        a, b, g, ap, bp, gp = self.params.as_tuple()
        kappa = self.constants["kappa"]
        if self.variant is Variant.GENERAL_BETA_P:
            B = ps.binomial(-a, self.constants["prefactor_exponent"], order)
            C = 1 + (bp * x / b) * (1 - ps.binomial(-a, -b / a, order))
        elif self.variant is Variant.GENERAL_BETA_ZERO:
            B = ps.binomial(-a, self.constants["prefactor_exponent"], order)
            C = 1 + (bp * x / a) * ps.log1p_linear(-a, order)
        elif self.variant is Variant.ALPHA_ZERO:
            B = ps.exp_linear(g, order)
            C = 1 + (bp * x / b) * (1 - ps.exp_linear(b, order))
        else:
            B = ps.exp_linear(g, order)
            C = 1 - Series.variable(order, bp * x)
        return B, C, kappa

    def series(self, x: RationalLike, order: int) -> Series:
        """``F(z, x)`` as an exact series in ``z`` truncated at ``z**order``."""
        x = parse_rational(x)
        a, b, g, ap, bp, gp = self.params.as_tuple()
        v = self.variant
        if v in SCHEMA_VARIANTS:
            B, C, kappa = self.components(x, order)
            return B * ps.power(C, -kappa)
        if v is Variant.SECTION6:
            if x == 0:
                raise ValueError("the alpha'>0 closed form is singular at x = 0")
            s = ap + bp
            w_pow = ps.binomial(-s * x, bp / s, order)
            expo = ps.exp((g / (bp * x)) * (1 - w_pow))
            return expo * ps.binomial(-s * x, -self.constants["tail_exponent"], order)
        if v is Variant.BETA_P_ZERO:
            inner = (gp * x / b) * (ps.binomial(-a, -b / a, order) - 1)
            return ps.binomial(-a, self.constants["prefactor_exponent"], order) * ps.exp(inner)
        if v is Variant.ALPHA_ZERO_BETA_POS:
            inner = Series.variable(order, g) + (gp * x / b) * (ps.exp_linear(b, order) - 1)
            return ps.exp(inner)
        # beta = beta' = 0
        rate = a + ap * x
        if rate == 0:
            return ps.exp_linear(g + gp * x, order)
        return ps.binomial(-rate, -((ap + gp) * x + a + g) / rate, order)

    def describe(self) -> str:
        return _DESCRIPTIONS[self.variant]


_DESCRIPTIONS = {
    Variant.GENERAL_BETA_P:
        "(1-a z)^(-(g+a)/a) * (1 + (b'x/b)(1-(1-a z)^(-b/a)))^(-(1+g'/b'))",
    Variant.GENERAL_BETA_ZERO:
        "(1-a z)^(-(g+a)/a) * (1 + (b'x/a) log(1-a z))^(-(1+g'/b'))",
    Variant.ALPHA_ZERO: "exp(g z) * (1 + (b'x/b)(1-exp(b z)))^(-(1+g'/b'))",
    Variant.ALPHA_BETA_ZERO: "exp(g z) * (1 - b'x z)^(-(1+g'/b'))",
    Variant.SECTION6:
        "exp((g/(b'x))(1-(1-(a'+b')xz)^(b'/(a'+b')))) * (1-(a'+b')xz)^(-(a'+b'+g')/(a'+b'))",
    Variant.BETA_P_ZERO: "(1-a z)^(-(g+a)/a) * exp((g'x/b)((1-a z)^(-b/a)-1))",
    Variant.ALPHA_ZERO_BETA_POS: "exp(g z + (g'x/b)(exp(b z)-1))",
    Variant.BETA_BETA_P_ZERO:
        "(1-(a+a'x)z)^(-((a'+g')x+a+g)/(a+a'x)), or exp((g+g'x)z) when a=a'=0",
}


def closed_form(params: GkpParams) -> ClosedFormBgf:
    """Select the closed form matching the zero pattern of ``params``."""
    v = select_variant(params)
    a, b, g, ap, bp, gp = params.as_tuple()
    c: dict = {}
    if bp > 0:
        c["kappa"] = 1 + gp / bp
    if a > 0 and ap == 0 and v is not Variant.BETA_BETA_P_ZERO:
        c["prefactor_exponent"] = -(g + a) / a
    if b > 0 and a > 0:
        c["inner_exponent"] = -b / a
    if v is Variant.SECTION6:
        c["tail_exponent"] = (ap + bp + gp) / (ap + bp)
        c["inner_exponent"] = bp / (ap + bp)
    if v is Variant.BETA_BETA_P_ZERO and a > 0 and ap == 0:
        c["prefactor_exponent"] = -(g + a) / a
    return ClosedFormBgf(params, v, c)


@dataclass(frozen=True)
class SeriesAtX:
    """``a_n = n! [z^n] F(z, x)`` for ``n = 0..order``."""

    x: Fraction
    coefficients: tuple
    backend: str = "exact"


def series_coefficients(form: ClosedFormBgf, x: RationalLike, n_max: int) -> SeriesAtX:
    x = parse_rational(x)
    return SeriesAtX(x, tuple(form.series(x, n_max).egf_coefficients()))


@dataclass(frozen=True)
class DiscrepancyReport:
    """Largest absolute difference found; ``per_x`` maps each sample to its maximum."""

    max_discrepancy: Fraction
    per_x: dict
    n_max: int

    @property
    def exact_zero(self) -> bool:
        return self.max_discrepancy == 0


def consistency_check(params: GkpParams, n_max: int, xs: Iterable[RationalLike]) -> DiscrepancyReport:
    """Compare ``n! [z^n] F(z,x)`` with ``P_n(x)`` from the triangle, exactly."""
    form = closed_form(params)
    table = build_triangle(params, n_max)
    per_x = {}
    for x in xs:
        x = parse_rational(x)
        coeffs = series_coefficients(form, x, n_max).coefficients
        per_x[x] = max(abs(coeffs[n] - table.polynomial(n)(x)) for n in range(n_max + 1))
    return DiscrepancyReport(max(per_x.values(), default=Fraction(0)), per_x, n_max)


def pde_residual(params: GkpParams, n_max: int, xs: Iterable[RationalLike]) -> DiscrepancyReport:
    """Apply the first-order PDE operator to the triangle-built truncated BGF.

    The operator is ``(1 - a z - a'x z) F_z - x(b + b'x) F_x - ((a'+b'+g')x + a + g) F``;
    coefficients of ``z^0..z^{n_max-1}`` are compared with zero.  Valid for any
    six rationals, since it only restates the polynomial recurrence.
    """
    a, b, g, ap, bp, gp = params.as_tuple()
    polys = polynomials(params, n_max)
    per_x = {}
    for x in xs:
        x = parse_rational(x)
        fact = 1
        F, Fx = [], []
        for n, p in enumerate(polys):
            if n:
                fact *= n
            F.append(Fraction(p(x)) / fact)
            dp = sum((k * c * x ** (k - 1) for k, c in enumerate(p.coeffs) if k), Fraction(0))
            Fx.append(dp / fact)
        F_s, Fx_s = Series(F), Series(Fx)
        order = n_max - 1
        if order < 0:
            per_x[x] = Fraction(0)
            continue
        Fz = F_s.derivative()
        lhs = (1 - Series.variable(order, a + ap * x)) * Fz \
            - x * (b + bp * x) * Fx_s.truncate(order) \
            - ((ap + bp + gp) * x + a + g) * F_s.truncate(order)
        per_x[x] = max(abs(c) for c in lhs.coeffs)
    return DiscrepancyReport(max(per_x.values(), default=Fraction(0)), per_x, n_max)
