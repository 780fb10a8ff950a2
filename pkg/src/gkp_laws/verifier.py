"""Distances between exact row laws and their limits, and convergence tables."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .classifier import AsymptoticLaw, Regime, RegimeTag, asymptotic_law, classify
from .errors import Unclassifiable
from .laws import law_pmf, normal_cdf
from .params import GkpParams
from .sturm import RealRootReport, real_rooted  # noqa: F401  (re-exported)
from .triangle import Backend, RowDistribution, build_triangle, exact_moments, pmf_at

Number = Union[Fraction, float]

#: largest grid value for which convergence_report defaults to exact rows
EXACT_BACKEND_LIMIT = 60


def kolmogorov_to_normal(dist: RowDistribution, a: float, b: float) -> float:
    """``max_k |P(X <= k) - Phi((k - a)/b)|`` over integers ``k``.

    No continuity correction.  Integers below the support and above ``n`` are
    covered by ``k = -1`` and ``k = n``.
    """
    if not b > 0:
        raise ValueError("scale b must be positive")
    cdf = np.cumsum(dist.as_float())
    worst = normal_cdf((-1 - a) / b)
    for k, F in enumerate(cdf):
        worst = max(worst, abs(float(F) - normal_cdf((k - a) / b)))
    return min(worst, 1.0)


def tv_distance(d1: RowDistribution, d2: RowDistribution) -> Number:
    """Half the l1 distance, padding the shorter pmf with zeros."""
    p, q = list(d1.probabilities), list(d2.probabilities)
    size = max(len(p), len(q))
    p += [0] * (size - len(p))
    q += [0] * (size - len(q))
    if d1.exact and d2.exact:
        return sum((abs(Fraction(x) - Fraction(y)) for x, y in zip(p, q)), Fraction(0)) / 2
    return 0.5 * float(sum(abs(float(x) - float(y)) for x, y in zip(p, q)))


def tv_to_poisson(dist: RowDistribution, law) -> float:
    """Total variation to an infinite-support law, counting its mass beyond the row."""
    head = [float(law_pmf(law, k)) for k in range(len(dist))]
    body = sum(abs(float(p) - q) for p, q in zip(dist.probabilities, head))
    tail = max(0.0, 1.0 - sum(head))
    return 0.5 * (body + tail)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    mean: Number
    variance: Number
    predicted_mean: Optional[float]
    predicted_variance: Optional[float]
    ks: Optional[float] = None
    tv: Optional[Number] = None

    @property
    def mean_ratio(self) -> Optional[float]:
        if not self.predicted_mean:
            return None
        return float(self.mean) / self.predicted_mean


@dataclass(frozen=True)
class ConvergenceReport:
    params: GkpParams
    regime: Regime
    rows: tuple
    backend: Backend
    metadata: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]


def _predicted(law: AsymptoticLaw, n: int) -> tuple[Optional[float], Optional[float]]:
    if law.n0 is None and not law.exact:
        return None, None
    if law.n0 is not None and n < law.n0:
        return None, None
    try:
        return law.centering(n), law.scaling(n) ** 2
    except (ValueError, ZeroDivisionError):
        return None, None


def convergence_report(params: GkpParams, n_grid: Sequence[int],
                       backend: Optional[Union[str, Backend]] = None) -> ConvergenceReport:
    """Exact moments, predicted constants and distances along ``n_grid``.

    Gaussian regimes are standardized by the exact moments; exact regimes are
    compared with their exact law by total variation; for the Poisson-complement
    regime ``n - X_n`` is compared with the Poisson limit.
    """
    grid = list(n_grid)
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] < 0:
        raise ValueError("n_grid must be a nonempty strictly increasing list of n >= 0")
    regime = classify(params)
    if regime.tag is RegimeTag.UNSUPPORTED:
        raise Unclassifiable(f"no limit law known for ({params})")
    law = asymptotic_law(params)
    if backend is None:
        backend = Backend.EXACT if grid[-1] <= EXACT_BACKEND_LIMIT else Backend.FLOAT
    backend = Backend.coerce(backend)
    table = build_triangle(params, grid[-1], backend, keep=grid)
    rows = []
    for n in grid:
        dist = pmf_at(table, n)
        mom = exact_moments(dist)
        a_n, b2_n = _predicted(law, n)
        ks = tv = None
        if regime.is_gaussian and mom.variance > 0:
            ks = kolmogorov_to_normal(dist, float(mom.mean), math.sqrt(float(mom.variance)))
        elif law.exact:
            ref = law.exact_law(n)
            tv = tv_distance(dist, ref)
        elif regime.tag is RegimeTag.POISSON_COMPLEMENT:
            tv = tv_to_poisson(dist.complement(), law.limit)
        rows.append(ConvergenceRow(n, mom.mean, mom.variance, a_n, b2_n, ks, tv))
    meta = {"exact_backend_limit": EXACT_BACKEND_LIMIT,
            "standardization": "exact moments" if regime.is_gaussian else None}
    return ConvergenceReport(params, regime, tuple(rows), backend, meta)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _strictly_decreasing(values: list) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def check_report(report: ConvergenceReport, ks_tol: float = 0.1, tv_tol: float = 1e-12) -> list[CheckResult]:
    """Pass/fail checks matching the regime of a :class:`ConvergenceReport`."""
    checks = []
    reg = report.regime
    if reg.is_exact:
        tvs = report.column("tv")
        exact = report.backend is Backend.EXACT
        ok = all(t == 0 for t in tvs) if exact else all(float(t) <= tv_tol for t in tvs)
        checks.append(CheckResult("exact_law_tv_zero", ok, f"tv={[str(t) for t in tvs]}"))
    elif reg.is_gaussian:
        ks = report.column("ks")
        if len(ks) > 1:
            checks.append(CheckResult("ks_decreasing", _strictly_decreasing(ks), f"ks={ks}"))
        checks.append(CheckResult("ks_final_within_tol", ks[-1] is not None and ks[-1] <= ks_tol,
                                  f"ks={ks[-1]} tol={ks_tol}"))
        ratios = [r.mean_ratio for r in report.rows]
        if len(ratios) > 1 and None not in ratios:
            gaps = [abs(r - 1) for r in ratios]
            checks.append(CheckResult("mean_ratio_trend", _strictly_decreasing(gaps),
                                      f"mean/a_n={ratios}"))
    elif reg.tag is RegimeTag.POISSON_COMPLEMENT:
        tvs = [float(t) for t in report.column("tv")]
        if len(tvs) > 1:
            checks.append(CheckResult("tv_decreasing", _strictly_decreasing(tvs), f"tv={tvs}"))
        checks.append(CheckResult("tv_final_within_tol", tvs[-1] <= ks_tol, f"tv={tvs[-1]} tol={ks_tol}"))
    return checks
