"""Limit-law regimes of the row variables and their asymptotic constants."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Union

from .errors import WrongRegime, ZeroDenominator
from .laws import LimitLaw, binomial_law, conditioned_nb_poisson, law_distribution, poisson_law
from .params import GkpParams
from .triangle import Backend, MomentReport, RowDistribution

Number = Union[Fraction, float]


class RegimeTag(str, Enum):
    DEGENERATE_AT_ZERO = "DegenerateAtZero"
    DEGENERATE_AT_N = "DegenerateAtN"
    BINOMIAL_EXACT = "BinomialExact"
    GAUSSIAN_LINEAR = "GaussianLinear"
    NB_CONDITIONED_POISSON = "NBConditionedPoisson"
    GAUSSIAN_LOG_N = "GaussianLogN"
    GAUSSIAN_N_OVER_LOG_N = "GaussianNOverLogN"
    GAUSSIAN_STRETCHED_POWER = "GaussianStretchedPower"
    POISSON_COMPLEMENT = "PoissonComplement"
    INDICATOR_SUM = "IndicatorSum"
    UNSUPPORTED = "Unsupported"


GAUSSIAN_TAGS = frozenset({RegimeTag.GAUSSIAN_LINEAR, RegimeTag.GAUSSIAN_LOG_N,
                           RegimeTag.GAUSSIAN_N_OVER_LOG_N, RegimeTag.GAUSSIAN_STRETCHED_POWER})
EXACT_TAGS = frozenset({RegimeTag.DEGENERATE_AT_ZERO, RegimeTag.DEGENERATE_AT_N,
                        RegimeTag.BINOMIAL_EXACT, RegimeTag.NB_CONDITIONED_POISSON,
                        RegimeTag.INDICATOR_SUM})


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    case: Optional[str] = None  # "i", "ii" or "iii" for GaussianLinear
    constants: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return f"{self.tag.value}.{self.case}" if self.case else self.tag.value

    @property
    def is_gaussian(self) -> bool:
        return self.tag in GAUSSIAN_TAGS

    @property
    def is_exact(self) -> bool:
        return self.tag in EXACT_TAGS


def classify(params: GkpParams) -> Regime:
    """Map a parameter point to its regime (first matching rule wins)."""
    if not params.classifiable:
        return Regime(RegimeTag.UNSUPPORTED)
    a, b, g, ap, bp, gp = params.as_tuple()
    if ap == 0:
        if bp > 0:
            if a > 0 and b > 0:
                return Regime(RegimeTag.GAUSSIAN_LINEAR, "i")
            if a == 0 and b > 0:
                return Regime(RegimeTag.GAUSSIAN_LINEAR, "ii")
            if a > 0 and b == 0:
                return Regime(RegimeTag.GAUSSIAN_LINEAR, "iii")
            if g > 0:
                return Regime(RegimeTag.NB_CONDITIONED_POISSON, constants={
                    "r": 1 + gp / bp, "p": g / (bp + g), "lambda": g / (bp + g)})
            return Regime(RegimeTag.DEGENERATE_AT_N)
        if gp == 0:
            return Regime(RegimeTag.DEGENERATE_AT_ZERO)
        if b == 0 and a == 0:
            return Regime(RegimeTag.BINOMIAL_EXACT, constants={"p": gp / (g + gp)})
        if b == 0:
            return Regime(RegimeTag.GAUSSIAN_LOG_N, constants={"rate": gp / a})
        if a == 0:
            return Regime(RegimeTag.GAUSSIAN_N_OVER_LOG_N)
        return Regime(RegimeTag.GAUSSIAN_STRETCHED_POWER)
    if a == 0 and b == 0 and bp > 0:
        if g > 0:
            return Regime(RegimeTag.POISSON_COMPLEMENT, constants={"lambda": g / bp})
        return Regime(RegimeTag.DEGENERATE_AT_N)
    if b == 0 and bp == 0:
        return Regime(RegimeTag.INDICATOR_SUM)
    return Regime(RegimeTag.UNSUPPORTED)  # pragma: no cover - excluded by classifiable


# ---------------------------------------------------------------------------
# singularity data for the linear Gaussian regimes


def mean_functional(f: Callable[[float], float], h: float = 1e-4) -> float:
    """``f'(1)/f(1)`` by central differences."""
    return (f(1 + h) - f(1 - h)) / (2 * h) / f(1)


def variance_functional(f: Callable[[float], float], h: float = 1e-4) -> float:
    """``f''(1)/f(1) + f'(1)/f(1) - (f'(1)/f(1))**2`` by central differences."""
    f0 = f(1)
    d1 = (f(1 + h) - f(1 - h)) / (2 * h) / f0
    d2 = (f(1 + h) - 2 * f0 + f(1 - h)) / (h * h) / f0
    return d2 + d1 - d1 * d1


@dataclass(frozen=True)
class SingularityData:
    """Dominant singularity ``rho(x)`` and the derived mean/variance constants.

    ``m`` and ``v`` are the mean and variance functionals of ``rho`` at ``x = 1``;
    the row mean grows like ``-m n`` and the variance like ``-v n``.
    ``variability_witness`` is the variance functional of ``rho(1)/rho(x)``
    computed by finite differences, independently of the closed form of ``v``.
    """

    case: str
    rho1: Number
    m: Number
    v: Number
    kappa: Fraction
    rho: Callable[[float], float] = field(repr=False)
    variability_witness: float = 0.0
    mean_witness: float = 0.0


def _exact_pow(base: Fraction, expo: Fraction) -> Optional[Fraction]:
    if expo.denominator == 1:
        return base ** int(expo)
    return None


def linear_constants(alpha: float, beta: float, beta_p: float) -> tuple[float, float, float]:
    """``(rho(1), m, v)`` in floating point for alpha, beta > 0.

    ``1 - (1+u)**(-s)`` is evaluated with ``expm1``/``log1p`` so that tiny
    ``alpha`` does not cancel.
    """
    u = beta / beta_p
    s = alpha / beta
    one_minus = -math.expm1(-s * math.log1p(u))
    rho1 = one_minus / alpha
    m = -alpha * math.exp((-1 - s) * math.log1p(u)) / (beta_p * one_minus)
    v = math.exp((-2 - s) * math.log1p(u)) / (rho1 * beta_p) ** 2 * (beta_p / alpha * one_minus - 1)
    return rho1, m, v


def linear_constants_alpha_zero(beta: float, beta_p: float) -> tuple[float, float, float]:
    lg = math.log1p(beta / beta_p)
    rho1 = lg / beta
    m = -beta / ((beta_p + beta) * lg)
    v = (beta_p / beta * lg - 1) / (rho1 * (beta_p + beta)) ** 2
    return rho1, m, v


def linear_constants_beta_zero(alpha: float, beta_p: float) -> tuple[float, float, float]:
    e = math.exp(-alpha / beta_p)
    one_minus = -math.expm1(-alpha / beta_p)
    rho1 = one_minus / alpha
    m = alpha * e / (beta_p * (e - 1))
    v = e / (rho1 * beta_p) ** 2 * (beta_p / alpha * one_minus - 1)
    return rho1, m, v


def singularity_data(params: GkpParams) -> SingularityData:
    regime = classify(params)
    if regime.tag is not RegimeTag.GAUSSIAN_LINEAR:
        raise WrongRegime(f"singularity data needs a GaussianLinear point, got {regime.label}")
    a, b, g, ap, bp, gp = params.as_tuple()
    af, bf, bpf = float(a), float(b), float(bp)
    kappa = 1 + gp / bp
    if regime.case == "i":
        rho1, m, v = linear_constants(af, bf, bpf)

        def rho(x: float) -> float:
            return -math.expm1(-(af / bf) * math.log1p(bf / (bpf * x))) / af

        # exact rationals when the exponent alpha/beta is an integer
        P = _exact_pow(1 + b / bp, -a / b)
        if P is not None:
            rho1 = (1 - P) / a
            m = -a * P / (1 + b / bp) / (bp * (1 - P))
            v = P / (1 + b / bp) ** 2 / (rho1 * bp) ** 2 * (bp / a * (1 - P) - 1)
    elif regime.case == "ii":
        rho1, m, v = linear_constants_alpha_zero(bf, bpf)

        def rho(x: float) -> float:
            return math.log1p(bf / (bpf * x)) / bf
    else:
        rho1, m, v = linear_constants_beta_zero(af, bpf)

        def rho(x: float) -> float:
            return -math.expm1(-af / (bpf * x)) / af

    r1 = rho(1.0)
    witness = variance_functional(lambda x: r1 / rho(x))
    mean_w = mean_functional(lambda x: r1 / rho(x))
    return SingularityData(regime.case, rho1, m, v, kappa, rho, witness, mean_w)


# ---------------------------------------------------------------------------
# asymptotic laws


@dataclass(frozen=True)
class AsymptoticLaw:
    """``(X_n - a_n) / b_n`` converges to ``limit`` (or the law is exact).

    ``exact_law(n)`` gives the exact row distribution for the exact regimes;
    for ``PoissonComplement`` the limit describes ``n - X_n``.
    """

    regime: Regime
    centering: Callable[[int], float] = field(repr=False)
    scaling: Callable[[int], float] = field(repr=False)
    limit: LimitLaw
    centering_formula: str
    scaling_formula: str
    n0: Optional[int]
    exact: bool = False
    exact_law: Optional[Callable[[int], RowDistribution]] = field(default=None, repr=False)
    complement: bool = False


STD_NORMAL = LimitLaw("StdNormal")


def _fmt(v) -> str:
    return str(v) if isinstance(v, Fraction) else repr(float(v))


def asymptotic_law(params: GkpParams) -> AsymptoticLaw:
    regime = classify(params)
    a, b, g, ap, bp, gp = params.as_tuple()
    tag = regime.tag
    if tag is RegimeTag.UNSUPPORTED:
        raise WrongRegime(f"no limit law known for ({params})")
    if tag is RegimeTag.GAUSSIAN_LINEAR:
        sd = singularity_data(params)
        m, v = float(sd.m), float(sd.v)
        return AsymptoticLaw(regime, lambda n: -m * n, lambda n: math.sqrt(-v * n), STD_NORMAL,
                             f"{_fmt(-sd.m)}*n", f"sqrt({_fmt(-sd.v)}*n)", 1)
    if tag is RegimeTag.NB_CONDITIONED_POISSON:
        c = regime.constants
        shift = g / bp
        return AsymptoticLaw(
            regime, lambda n: n - float(shift), lambda n: math.sqrt(float(shift)),
            LimitLaw("ConditionedNBPoisson", n=0, r=c["r"], p=c["p"], lam=c["lambda"]),
            f"n - {shift}", f"sqrt({shift})", 1, exact=True,
            exact_law=lambda n: conditioned_nb_poisson(c["r"], c["p"], c["lambda"], n))
    if tag is RegimeTag.GAUSSIAN_LOG_N:
        rate = float(gp / a)
        return AsymptoticLaw(regime, lambda n: rate * math.log(n), lambda n: math.sqrt(rate * math.log(n)),
                             STD_NORMAL, f"{gp / a}*log(n)", f"sqrt({gp / a}*log(n))", 2)
    if tag is RegimeTag.GAUSSIAN_N_OVER_LOG_N:
        return AsymptoticLaw(regime, lambda n: n / math.log(n), lambda n: math.sqrt(n) / math.log(n),
                             STD_NORMAL, "n/log(n)", "sqrt(n)/log(n)", 2)
    if tag is RegimeTag.GAUSSIAN_STRETCHED_POWER:
        af, bf, gpf = float(a), float(b), float(gp)
        e = af / (af + bf)
        f = bf / (af + bf)
        lead = gpf**e

        def centering(n: int) -> float:
            return lead * (af * n) ** f / bf

        def scaling(n: int) -> float:
            return math.sqrt(lead * af * (af * n) ** f / (bf * (af + bf)))

        return AsymptoticLaw(regime, centering, scaling, STD_NORMAL,
                             f"{_fmt(lead / bf)}*({a}*n)^({b / (a + b)})",
                             f"sqrt({_fmt(lead * af / (bf * (af + bf)))}*({a}*n)^({b / (a + b)}))", 1)
    if tag is RegimeTag.POISSON_COMPLEMENT:
        lam = regime.constants["lambda"]
        return AsymptoticLaw(regime, lambda n: n - float(lam), lambda n: math.sqrt(float(lam)),
                             poisson_law(lam), f"n - {lam}", f"sqrt({lam})", 1, complement=True)
    if tag is RegimeTag.BINOMIAL_EXACT:
        p = regime.constants["p"]
        pf = float(p)
        return AsymptoticLaw(
            regime, lambda n: n * pf, lambda n: math.sqrt(n * pf * (1 - pf)),
            LimitLaw("Binomial", n=0, p=p), f"{p}*n", f"sqrt({p * (1 - p)}*n)",
            1 if 0 < p < 1 else None, exact=True,
            exact_law=lambda n: law_distribution(binomial_law(n, p), n))
    if tag is RegimeTag.DEGENERATE_AT_ZERO:
        return AsymptoticLaw(regime, lambda n: 0.0, lambda n: 0.0, LimitLaw("Degenerate", c=0),
                             "0", "0", None, exact=True,
                             exact_law=lambda n: _degenerate(n, 0))
    if tag is RegimeTag.DEGENERATE_AT_N:
        return AsymptoticLaw(regime, lambda n: float(n), lambda n: 0.0, LimitLaw("Degenerate", c=-1),
                             "n", "0", None, exact=True,
                             exact_law=lambda n: _degenerate(n, n))
    # indicator sum: exact moments of the Bernoulli product
    def centering(n: int) -> float:
        return float(sum(indicator_probabilities(params, n)))

    def scaling(n: int) -> float:
        return math.sqrt(float(sum(p * (1 - p) for p in indicator_probabilities(params, n))))

    return AsymptoticLaw(regime, centering, scaling, STD_NORMAL,
                         "sum_k p_k", "sqrt(sum_k p_k(1-p_k))", _indicator_n0(params), exact=True,
                         exact_law=lambda n: indicator_distribution(params, n))


def _degenerate(n: int, atom: int) -> RowDistribution:
    return RowDistribution(n, tuple(Fraction(int(k == atom)) for k in range(n + 1)), Backend.EXACT)


def _indicator_n0(params: GkpParams, horizon: int = 64) -> Optional[int]:
    probs = indicator_probabilities(params, horizon)
    for k, p in enumerate(probs, start=1):
        if 0 < p < 1:
            return k
    return None


# ---------------------------------------------------------------------------
# alpha = beta = 0, beta' > 0, gamma > 0: negative binomial conditioned on a Poisson sum


def _require_nb(params: GkpParams) -> None:
    a, b, g, ap, bp, gp = params.as_tuple()
    if not (a == 0 and b == 0 and bp > 0 and g > 0):
        raise WrongRegime("needs alpha = beta = 0, beta' > 0, gamma > 0")


def nb_s_sequence(params: GkpParams, n_max: int) -> list[Fraction]:
    """``S_0..S_{n_max}`` divided by the common factor ``Gamma(1 + gamma'/beta')``.

    ``S_n = sum_k q^k [Gamma(k+1+c)/(k! Gamma(1+c))] p^(n-k)/(n-k)!`` with
    ``q = beta'/(beta'+gamma)``, ``p = gamma/(beta'+gamma)``, ``c = gamma'/beta'``.
    """
    _require_nb(params)
    _, _, g, _, bp, gp = params.as_tuple()
    q, p, c = bp / (bp + g), g / (bp + g), gp / bp
    nb_part = [Fraction(1)]
    pois_part = [Fraction(1)]
    for k in range(1, n_max + 1):
        nb_part.append(nb_part[-1] * q * (c + k) / k)
        pois_part.append(pois_part[-1] * p / k)
    return [sum((nb_part[k] * pois_part[n - k] for k in range(n + 1)), Fraction(0))
            for n in range(n_max + 1)]


def nb_exact_moments(params: GkpParams, n: int, s_seq: Optional[list] = None) -> MomentReport:
    """Exact mean and variance of ``X_n`` from ratios of consecutive ``S_n``."""
    _require_nb(params)
    if n < 2:
        raise ValueError("the S-ratio moment formulas need n >= 2")
    _, _, g, _, bp, _ = params.as_tuple()
    p = g / (bp + g)
    S = s_seq if s_seq is not None and len(s_seq) > n else nb_s_sequence(params, n)
    r1 = S[n - 1] / S[n]
    r2 = S[n - 2] / S[n - 1]
    mean = n - p * r1
    var = p * r1 * (1 + p * (r2 - r1))
    return MomentReport(mean, var, True)


# ---------------------------------------------------------------------------
# beta = beta' = 0: sum of independent indicators


def _require_indicator(params: GkpParams) -> None:
    if params.beta != 0 or params.beta_p != 0:
        raise WrongRegime("indicator decomposition needs beta = beta' = 0")


def indicator_probabilities(params: GkpParams, n: int) -> tuple[Fraction, ...]:
    """``P(I_k = 1) = (a'k + g') / ((a'+a)k + g' + g)`` for ``k = 1..n``."""
    _require_indicator(params)
    a, _, g, ap, _, gp = params.as_tuple()
    out = []
    for k in range(1, n + 1):
        den = (ap + a) * k + gp + g
        if den == 0:
            raise ZeroDenominator(f"indicator {k} has a zero denominator")
        out.append((ap * k + gp) / den)
    return tuple(out)


def indicator_distribution(params: GkpParams, n: int) -> RowDistribution:
    """Exact convolution of the independent indicators."""
    dist = [Fraction(1)]
    for p in indicator_probabilities(params, n):
        nxt = [Fraction(0)] * (len(dist) + 1)
        for k, w in enumerate(dist):
            nxt[k] += w * (1 - p)
            nxt[k + 1] += w * p
        dist = nxt
    return RowDistribution(n, tuple(dist), Backend.EXACT)


def indicator_moment_expansion(params: GkpParams, n: int) -> tuple[float, float]:
    """Two-term growth of mean and variance (linear plus log term, O(1) dropped)."""
    _require_indicator(params)
    a, _, g, ap, _, gp = params.as_tuple()
    s = a + ap
    if s <= 0:
        raise WrongRegime("the expansion needs alpha + alpha' > 0")
    ln = math.log(n)
    mean = float(ap / s) * n + float((gp * a - g * ap) / s**2) * ln
    var = float(a * ap / s**2) * n + float((ap**2 * g + a**2 * gp - a * ap * (g + gp)) / s**3) * ln
    return mean, var
