"""Reference distributions with exact pmfs where the parameters are rational."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import InvalidParameters
from .params import RationalLike, parse_rational
from .triangle import Backend, RowDistribution

Number = Union[Fraction, float]


@dataclass(frozen=True)
class LimitLaw:
    """A reference law.

    ``kind`` is one of ``StdNormal``, ``Binomial``, ``Poisson``, ``NegBinomial``,
    ``ConditionedNBPoisson`` or ``Degenerate``.  The name negative binomial is
    used for every real ``r > 0``.
    """

    kind: str
    n: Optional[int] = None
    p: Optional[Fraction] = None
    r: Optional[Fraction] = None
    lam: Optional[Fraction] = None
    c: Optional[int] = None

    def __post_init__(self) -> None:
        k = self.kind
        if k == "Binomial":
            if self.n is None or self.n < 0 or not 0 <= self.p <= 1:
                raise InvalidParameters(f"Binomial needs n >= 0 and p in [0,1], got {self.n}, {self.p}")
        elif k == "Poisson":
            if self.lam is None or self.lam < 0:
                raise InvalidParameters("Poisson needs lambda >= 0")
        elif k in ("NegBinomial", "ConditionedNBPoisson"):
            if self.r is None or self.r <= 0 or not 0 < self.p < 1:
                raise InvalidParameters(f"{k} needs r > 0 and 0 < p < 1")
            if k == "ConditionedNBPoisson" and (self.lam is None or self.lam <= 0 or self.n is None or self.n < 0):
                raise InvalidParameters("ConditionedNBPoisson needs lambda > 0 and n >= 0")
        elif k == "Degenerate":
            if self.c is None:
                raise InvalidParameters("Degenerate needs its atom c")
        elif k != "StdNormal":
            raise InvalidParameters(f"unknown law {k!r}")

    def describe(self) -> str:
        args = {"StdNormal": "", "Binomial": f"{self.n},{self.p}", "Poisson": f"{self.lam}",
                "NegBinomial": f"{self.r},{self.p}",
                "ConditionedNBPoisson": f"{self.r},{self.p},{self.lam},{self.n}",
                "Degenerate": f"{self.c}"}[self.kind]
        return f"{self.kind}({args})"


def binomial_law(n: int, p: RationalLike) -> LimitLaw:
    return LimitLaw("Binomial", n=n, p=parse_rational(p))


def poisson_law(lam: RationalLike) -> LimitLaw:
    return LimitLaw("Poisson", lam=parse_rational(lam))


def negbinomial_law(r: RationalLike, p: RationalLike) -> LimitLaw:
    return LimitLaw("NegBinomial", r=parse_rational(r), p=parse_rational(p))


def rising_over_factorial(r: Fraction, k: int) -> Fraction:
    """``Gamma(k + r) / (k! Gamma(r)) = prod_{i<k} (r + i)/(i + 1)``."""
    out = Fraction(1)
    for i in range(k):
        out *= (r + i) / (i + 1)
    return out


def poisson_coefficient(lam: Fraction, k: int) -> Fraction:
    """``lam**k / k!``; the Poisson pmf is this times ``exp(-lam)``."""
    return Fraction(lam) ** k / math.factorial(k)


def law_pmf(law: LimitLaw, k: int) -> Number:
    """Point mass at ``k``.

    Exact ``Fraction`` for Binomial, Degenerate, and NegBinomial with integer
    ``r`` (``p**r`` is irrational otherwise); Poisson returns a float, use
    :func:`poisson_coefficient` for the exact part.
    """
    if law.kind == "StdNormal":
        raise ValueError("the standard normal law is continuous; use normal_cdf")
    if k < 0:
        return Fraction(0)
    if law.kind == "Binomial":
        if k > law.n:
            return Fraction(0)
        return math.comb(law.n, k) * law.p**k * (1 - law.p) ** (law.n - k)
    if law.kind == "Poisson":
        return math.exp(k * math.log(float(law.lam)) - float(law.lam) - math.lgamma(k + 1)) \
            if law.lam > 0 else float(k == 0)
    if law.kind == "NegBinomial":
        head = rising_over_factorial(law.r, k) * (1 - law.p) ** k
        if law.r.denominator == 1:
            return head * law.p ** int(law.r)
        return float(head) * float(law.p) ** float(law.r)
    if law.kind == "Degenerate":
        return Fraction(int(k == law.c))
    if law.kind == "ConditionedNBPoisson":
        dist = conditioned_nb_poisson(law.r, law.p, law.lam, law.n)
        return dist[k] if k <= law.n else Fraction(0)
    raise ValueError(law.kind)


def conditioned_nb_poisson(r: RationalLike, p: RationalLike, lam: RationalLike, n: int) -> RowDistribution:
    """Law of ``Y`` given ``Y + Z = n`` with ``Y ~ NB(r,p)`` and ``Z ~ Pois(lam)`` independent.

    The factors ``p**r`` and ``exp(-lam)`` cancel, so the result is exact.
    """
    r, p, lam = parse_rational(r), parse_rational(p), parse_rational(lam)
    LimitLaw("ConditionedNBPoisson", n=n, p=p, r=r, lam=lam)  # validation
    weights = [rising_over_factorial(r, k) * (1 - p) ** k * poisson_coefficient(lam, n - k)
               for k in range(n + 1)]
    return RowDistribution.from_weights(n, weights, Backend.EXACT)


def law_distribution(law: LimitLaw, support: int, backend=Backend.EXACT) -> RowDistribution:
    """Pmf of ``law`` on ``0..support`` packaged like a triangle row.

    Infinite-support laws are truncated, not renormalized.
    """
    backend = Backend.coerce(backend)
    if law.kind == "ConditionedNBPoisson":
        return conditioned_nb_poisson(law.r, law.p, law.lam, law.n)
    probs = [law_pmf(law, k) for k in range(support + 1)]
    if backend is Backend.EXACT and all(isinstance(v, Fraction) for v in probs):
        return RowDistribution(support, tuple(probs), Backend.EXACT)
    import numpy as np

    arr = np.array([float(v) for v in probs])
    arr.flags.writeable = False
    return RowDistribution(support, arr, Backend.FLOAT)


def normal_cdf(t: float) -> float:
    """Standard normal cdf via ``erfc``, accurate in both tails."""
    return 0.5 * math.erfc(-t / math.sqrt(2.0))
