"""Truncated univariate power series over the rationals.

A :class:`Series` holds coefficients ``c_0..c_N`` of ``sum c_k z^k`` modulo
``z^{N+1}``.  Every operation keeps the truncation order explicit; mixing
orders truncates to the smaller one.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .errors import CompositionOrderError

Scalar = Union[int, Fraction]


class Series:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar]):
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @property
    def order(self) -> int:
        """Index of the last retained coefficient."""
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c: Scalar, order: int) -> "Series":
        return cls([c] + [0] * order)

    @classmethod
    def variable(cls, order: int, scale: Scalar = 1) -> "Series":
        """``scale * z``."""
        coeffs = [Fraction(0)] * (order + 1)
        if order >= 1:
            coeffs[1] = Fraction(scale)
        return cls(coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Series) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"Series([{head}{', ...' if len(self) > 6 else ''}], order={self.order})"

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return Series(self.coeffs[: order + 1])

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series.constant(other, self.order)

    def __add__(self, other) -> "Series":
        other = self._coerce(other)
        m = min(self.order, other.order)
        return Series([a + b for a, b in zip(self.coeffs[: m + 1], other.coeffs[: m + 1])])

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs])

    def __sub__(self, other) -> "Series":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Series":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            c = Fraction(other)
            return Series([c * a for a in self.coeffs])
        m = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(m + 1):
            out.append(sum((a[k] * b[n - k] for k in range(n + 1) if a[k] and b[n - k]), Fraction(0)))
        return Series(out)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, len(a)):
            s = sum((a[k] * out[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
            out.append(-s * inv0)
        return Series(out)

    def __truediv__(self, other) -> "Series":
        if not isinstance(other, Series):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Series":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: Scalar) -> "Series":
        return power(self, exponent)

    def derivative(self) -> "Series":
        """Formal derivative; the result has order one less."""
        if self.order == 0:
            return Series([0])
        return Series([k * c for k, c in enumerate(self.coeffs)][1:])

    def egf_coefficients(self) -> list[Fraction]:
        """``n! * c_n`` for every retained ``n``."""
        out, fact = [], 1
        for n, c in enumerate(self.coeffs):
            if n:
                fact *= n
            out.append(c * fact)
        return out


def exp(s: Series) -> Series:
    """``exp(s)``; needs ``s(0) = 0`` so that the result stays rational."""
    a = s.coeffs
    if a[0] != 0:
        raise CompositionOrderError("exp needs a series with zero constant term")
    out = [Fraction(1)]
    for n in range(1, len(a)):
        acc = sum((k * a[k] * out[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
        out.append(acc / n)
    return Series(out)


def log(s: Series) -> Series:
    """``log(s)``; needs ``s(0) = 1``."""
    a = s.coeffs
    if a[0] != 1:
        raise CompositionOrderError("log needs a series with constant term 1")
    out = [Fraction(0)]
    for n in range(1, len(a)):
        acc = sum((k * out[k] * a[n - k] for k in range(1, n) if a[n - k]), Fraction(0))
        out.append(a[n] - acc / n)
    return Series(out)


def power(s: Series, exponent: Scalar) -> Series:
    """``s ** exponent`` for rational exponents.

    Non-integer exponents need ``s(0) = 1``.  Uses the recurrence obtained from
    ``s * (s^e)' = e * s' * s^e``.
    """
    e = Fraction(exponent)
    a = s.coeffs
    if e.denominator == 1 and a[0] != 1:
        if a[0] == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of a series without constant term")
            result = Series.constant(1, s.order)
            for _ in range(int(e)):
                result = result * s
            return result
        # integer power of a unit: normalize the constant to 1 then rescale
        c = a[0]
        return power(s * (1 / c), e) * (c ** int(e))
    if a[0] != 1:
        raise CompositionOrderError("rational power needs a series with constant term 1")
    out = [Fraction(1)]
    for n in range(1, len(a)):
        acc = sum(((e * k - (n - k)) * a[k] * out[n - k] for k in range(1, n + 1) if a[k]),
                  Fraction(0))
        out.append(acc / n)
    return Series(out)


def compose(outer: Series, inner: Series) -> Series:
    """``outer(inner(z))``; needs ``inner(0) = 0``."""
    if inner.coeffs[0] != 0:
        raise CompositionOrderError("composition needs an inner series with zero constant term")
    order = min(outer.order, inner.order)
    result = Series.constant(outer.coeffs[order], order)
    inner = inner.truncate(order)
    for c in reversed(outer.coeffs[:order]):
        result = result * inner + c
    return result


def binomial(c: Scalar, exponent: Scalar, order: int) -> Series:
    """``(1 + c z) ** exponent`` directly from the binomial series."""
    c, e = Fraction(c), Fraction(exponent)
    out = [Fraction(1)]
    for k in range(1, order + 1):
        out.append(out[-1] * (e - k + 1) / k * c)
    return Series(out)


def exp_linear(c: Scalar, order: int) -> Series:
    """``exp(c z)``."""
    c = Fraction(c)
    out = [Fraction(1)]
    for k in range(1, order + 1):
        out.append(out[-1] * c / k)
    return Series(out)


def log1p_linear(c: Scalar, order: int) -> Series:
    """``log(1 + c z)``."""
    c = Fraction(c)
    out = [Fraction(0)]
    for k in range(1, order + 1):
        out.append(Fraction((-1) ** (k + 1)) * c**k / k)
    return Series(out)
