"""Exact real-root counting for rational polynomials via Sturm sequences.

Polynomials are coefficient lists, lowest degree first.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Poly = list  # list[Fraction], low -> high


def trim(p: Sequence) -> Poly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Poly) -> int:
    return len(p) - 1


def derivative(p: Poly) -> Poly:
    return trim([k * c for k, c in enumerate(p)][1:])


def poly_divmod(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    num, den = trim(num), trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [], num
    rem = list(num)
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = rem[shift + len(den) - 1] / lead
        quot[shift] = c
        if c:
            for i, d in enumerate(den):
                rem[shift + i] -= c * d
    return trim(quot), trim(rem[: len(den) - 1])


def monic(p: Poly) -> Poly:
    return [c / p[-1] for c in p] if p else p


def gcd(p: Poly, q: Poly) -> Poly:
    p, q = trim(p), trim(q)
    while q:
        p, q = q, poly_divmod(p, q)[1]
    return monic(p)


def square_free(p: Poly) -> Poly:
    """``p / gcd(p, p')``: same distinct roots, all simple."""
    p = trim(p)
    if degree(p) < 1:
        return p
    return poly_divmod(p, gcd(p, derivative(p)))[0]


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [trim(p), derivative(p)]
    while seq[-1]:
        rem = poly_divmod(seq[-2], seq[-1])[1]
        if not rem:
            break
        seq.append([-c for c in rem])
    return [s for s in seq if s]


def _variations(signs: list[int]) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def count_real_roots(p: Poly) -> int:
    """Number of distinct real roots, from sign changes at -inf and +inf."""
    p = trim(p)
    if degree(p) < 1:
        return 0
    seq = sturm_sequence(p)
    at_pos = [_sign(s[-1]) for s in seq]
    at_neg = [_sign(s[-1]) * (-1) ** degree(s) for s in seq]
    return _variations(at_neg) - _variations(at_pos)


@dataclass(frozen=True)
class RealRootReport:
    is_real_rooted: bool
    distinct_root_count: int
    zero_multiplicity: int


def real_rooted(coeffs: Sequence) -> RealRootReport:
    """Whether every complex root of the polynomial is real.

    Accepts a coefficient sequence or anything with a ``coeffs`` attribute.
    """
    p = trim(getattr(coeffs, "coeffs", coeffs))
    if not p:
        raise ValueError("the zero polynomial has no well-defined roots")
    m = 0
    while p[m] == 0:
        m += 1
    q = p[m:]
    sqf = square_free(q)
    count = count_real_roots(sqf)
    return RealRootReport(count == degree(sqf), count + (1 if m else 0), m)
