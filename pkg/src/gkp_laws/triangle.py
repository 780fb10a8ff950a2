"""Exact and scaled-float construction of the triangle, its rows as
probability laws, and the generating polynomials."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .errors import ResourceLimitError, ZeroRowSum
from .params import GkpParams, RationalLike, parse_rational

Exact = Union[int, Fraction]

# Default ceiling on the total size of stored exact rows: 1 GiB of numerator bits.
DEFAULT_BIT_BUDGET = 8 * 2**30


class Backend(str, Enum):
    EXACT = "exact"
    FLOAT = "float"

    @classmethod
    def coerce(cls, value: Union[str, "Backend"]) -> "Backend":
        if isinstance(value, Backend):
            return value
        aliases = {"exact": cls.EXACT, "exactrational": cls.EXACT,
                   "float": cls.FLOAT, "scaledfloat": cls.FLOAT}
        try:
            return aliases[str(value).lower().replace("_", "").replace("-", "")]
        except KeyError:
            raise ValueError(f"unknown backend {value!r}") from None


@dataclass(frozen=True)
class TriangleTable:
    """Rows ``0..n_max`` of the triangle (or the subset requested via ``keep``).

    In the float backend a stored row ``v`` represents ``v * 2**log2_scale[n]``;
    its largest magnitude lies in ``[1, 2)``.
    """

    params: GkpParams
    n_max: int
    backend: Backend
    _rows: dict = field(repr=False)
    _log2_scale: dict = field(default_factory=dict, repr=False)

    @property
    def indices(self) -> list[int]:
        return sorted(self._rows)

    @property
    def rows(self) -> list:
        return [self._rows[n] for n in self.indices]

    def row(self, n: int):
        try:
            return self._rows[n]
        except KeyError:
            raise KeyError(f"row {n} was not kept (kept: {self.indices[:5]}...)") from None

    __getitem__ = row

    def log2_scale(self, n: int) -> int:
        return self._log2_scale.get(n, 0)

    def log_scale(self, n: int) -> float:
        """Natural-log offset of row ``n`` (zero for the exact backend)."""
        return self.log2_scale(n) * math.log(2.0)

    def polynomial(self, n: int) -> "GenPolynomial":
        if self.backend is not Backend.EXACT:
            raise TypeError("generating polynomials need the exact backend")
        return GenPolynomial(n, tuple(self.row(n)))


def _common_denominator(params: GkpParams) -> int:
    d = 1
    for v in params.as_tuple():
        d = d * v.denominator // math.gcd(d, v.denominator)
    return d


def _exact_rows(params: GkpParams, n_max: int) -> Iterator[tuple[int, list[int], int]]:
    """Yield ``(n, T_n, D**n)`` where ``T_n = D**n * row_n`` is all-integer."""
    d = _common_denominator(params)
    a, b, g, ap, bp, gp = (int(v * d) for v in params.as_tuple())
    prev = [1]
    scale = 1
    yield 0, prev, scale
    for n in range(1, n_max + 1):
        row = [0] * (n + 1)
        base0 = a * n + g
        base1 = ap * n + gp
        for k in range(n):
            row[k] = (base0 + b * k) * prev[k]
        for k in range(1, n + 1):
            row[k] += (base1 + bp * k) * prev[k - 1]
        scale *= d
        prev = row
        yield n, row, scale


def _float_rows(params: GkpParams, n_max: int) -> Iterator[tuple[int, np.ndarray, int]]:
    a, b, g, ap, bp, gp = (float(v) for v in params.as_tuple())
    prev = np.ones(1)
    offset = 0
    yield 0, prev, 0
    for n in range(1, n_max + 1):
        k = np.arange(n + 1, dtype=float)
        row = np.zeros(n + 1)
        row[:n] = (a * n + b * k[:n] + g) * prev
        row[1:] += (ap * n + bp * k[1:] + gp) * prev
        peak = np.max(np.abs(row))
        if peak > 0:
            # power-of-two rescaling is exact, so no rounding is introduced here
            shift = math.frexp(peak)[1] - 1
            row = np.ldexp(row, -shift)
            offset += shift
        prev = row
        yield n, row, offset


def iter_rows(params: GkpParams, n_max: int, backend: Union[str, Backend] = Backend.EXACT):
    """Stream ``(n, row, log2_scale)`` without retaining earlier rows.

    Exact rows are lists of ``int`` / ``Fraction``; float rows are numpy arrays.
    """
    backend = Backend.coerce(backend)
    if backend is Backend.EXACT:
        for n, ints, scale in _exact_rows(params, n_max):
            if scale == 1:
                yield n, ints, 0
            else:
                yield n, [Fraction(v, scale) for v in ints], 0
    else:
        yield from _float_rows(params, n_max)


def build_triangle(
    params: GkpParams,
    n_max: int,
    backend: Union[str, Backend] = Backend.EXACT,
    keep: Optional[Iterable[int]] = None,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> TriangleTable:
    """Build rows ``0..n_max``; ``keep`` restricts which rows are retained."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    backend = Backend.coerce(backend)
    wanted = None if keep is None else set(keep)
    rows: dict = {}
    scales: dict = {}
    if backend is Backend.EXACT:
        used = 0
        for n, ints, scale in _exact_rows(params, n_max):
            if wanted is not None and n not in wanted:
                continue
            used += sum(v.bit_length() for v in ints) + len(ints) * scale.bit_length()
            if used > bit_budget:
                raise ResourceLimitError(
                    f"exact rows exceed the bit budget of {bit_budget} bits at n={n}; "
                    "use the float backend or raise the budget")
            rows[n] = tuple(ints) if scale == 1 else tuple(Fraction(v, scale) for v in ints)
    else:
        for n, row, offset in _float_rows(params, n_max):
            if wanted is not None and n not in wanted:
                continue
            row = row.copy()
            row.flags.writeable = False
            rows[n] = row
            scales[n] = offset
    return TriangleTable(params, n_max, backend, rows, scales)


@dataclass(frozen=True)
class GenPolynomial:
    """``P_n(x) = sum_k T(n,k) x^k`` with exact coefficients (index = power)."""

    n: int
    coeffs: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def degree(self) -> int:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k] != 0:
                return k
        return -1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative_coeffs(self) -> list:
        return [k * c for k, c in enumerate(self.coeffs)][1:]


def polynomial_step(params: GkpParams, prev: GenPolynomial) -> GenPolynomial:
    """One step of the polynomial recurrence, ``P_{n-1} -> P_n``:

    ``P_n = ((a'x + a)n + (b' + g')x + g) P_{n-1} + x(b + b'x) P'_{n-1}``.
    """
    a, b, g, ap, bp, gp = params.as_tuple()
    n = prev.n + 1
    p = list(prev.coeffs) + [0] * max(0, n - len(prev.coeffs))
    dp = prev.derivative_coeffs()
    out = [Fraction(0)] * (n + 1)
    # linear multiplier (c0 + c1 x)
    c0 = a * n + g
    c1 = ap * n + bp + gp
    for k, c in enumerate(p):
        if c:
            out[k] += c0 * c
            if k + 1 <= n:
                out[k + 1] += c1 * c
    # x(b + b'x) P'
    for j, c in enumerate(dp):
        if c:
            out[j + 1] += b * c
            if j + 2 <= n:
                out[j + 2] += bp * c
    return GenPolynomial(n, tuple(_tidy(v) for v in out))


def _tidy(v: Fraction) -> Exact:
    return int(v) if isinstance(v, Fraction) and v.denominator == 1 else v


def polynomials(params: GkpParams, n_max: int) -> list[GenPolynomial]:
    """``P_0..P_{n_max}`` by iterating :func:`polynomial_step` from ``P_0 = 1``."""
    out = [GenPolynomial(0, (1,))]
    for _ in range(n_max):
        out.append(polynomial_step(params, out[-1]))
    return out


@dataclass(frozen=True)
class RowDistribution:
    """Law of ``X_n``: ``probabilities[k] = P(X_n = k)``."""

    n: int
    probabilities: Sequence
    backend: Backend

    @property
    def exact(self) -> bool:
        return self.backend is Backend.EXACT

    def __len__(self) -> int:
        return len(self.probabilities)

    def __getitem__(self, k: int):
        return self.probabilities[k]

    def as_float(self) -> np.ndarray:
        return np.array([float(p) for p in self.probabilities], dtype=float)

    def complement(self) -> "RowDistribution":
        """Law of ``n - X_n``."""
        probs = self.probabilities[::-1]
        if not self.exact:
            probs = np.array(probs)
            probs.flags.writeable = False
        else:
            probs = tuple(probs)
        return RowDistribution(self.n, probs, self.backend)

    @classmethod
    def from_weights(cls, n: int, weights: Sequence, backend=Backend.EXACT) -> "RowDistribution":
        backend = Backend.coerce(backend)
        if backend is Backend.EXACT:
            total = sum(weights)
            if total == 0:
                raise ZeroRowSum(f"row {n} sums to zero")
            return cls(n, tuple(Fraction(w) / total for w in weights), backend)
        w = np.asarray(weights, dtype=float)
        total = w.sum()
        if total == 0:
            raise ZeroRowSum(f"row {n} sums to zero")
        p = w / total
        p.flags.writeable = False
        return cls(n, p, backend)


def pmf_at(table: TriangleTable, n: int) -> RowDistribution:
    """Normalize row ``n``; :class:`ZeroRowSum` if it vanishes identically."""
    return RowDistribution.from_weights(n, table.row(n), table.backend)


def row_distribution(params: GkpParams, n: int, backend=Backend.EXACT) -> RowDistribution:
    """Shortcut: build only what is needed for row ``n`` and normalize it."""
    return pmf_at(build_triangle(params, n, backend, keep=[n]), n)


def pgf_eval(dist: RowDistribution, x: RationalLike):
    """``E x^{X_n}``; exact when the distribution is exact and ``x`` rational."""
    if dist.exact and not isinstance(x, float):
        x = parse_rational(x)
        acc = Fraction(0)
    else:
        x = float(x)
        acc = 0.0
    for p in reversed(list(dist.probabilities)):
        acc = acc * x + p
    return acc


@dataclass(frozen=True)
class MomentReport:
    mean: Union[Fraction, float]
    variance: Union[Fraction, float]
    exact: bool

    @property
    def mean_f64(self) -> float:
        return float(self.mean)

    @property
    def variance_f64(self) -> float:
        return float(self.variance)


def exact_moments(dist: RowDistribution) -> MomentReport:
    """Mean and variance of the row law (exact rationals for exact rows)."""
    if dist.exact:
        mean = sum((k * p for k, p in enumerate(dist.probabilities)), Fraction(0))
        second = sum((k * k * p for k, p in enumerate(dist.probabilities)), Fraction(0))
        return MomentReport(mean, second - mean * mean, True)
    p = np.asarray(dist.probabilities, dtype=float)
    k = np.arange(len(p), dtype=float)
    mean = float(np.dot(k, p))
    # central form avoids cancellation when the mean is large
    var = float(np.dot((k - mean) ** 2, p))
    return MomentReport(mean, var, False)
