"""Recurrence parameters and exact rational parsing."""
from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, str, Fraction]

PARAM_NAMES = ("alpha", "beta", "gamma", "alpha_p", "beta_p", "gamma_p")


def parse_rational(value: RationalLike) -> Fraction:
    """Parse ``"p/q"``, an integer, or a terminating decimal string exactly.

    Floats are rejected: they would smuggle binary rounding into exact work.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a string or Fraction")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    text = str(value).strip()
    if not text:
        raise ValueError("empty rational")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {value!r}") from exc


@dataclass(frozen=True)
class GkpParams:
    """The six parameters of the triangle recurrence.

    ``T(n,k) = (alpha*n + beta*k + gamma) T(n-1,k)
             + (alpha_p*n + beta_p*k + gamma_p) T(n-1,k-1) + [n=k=0]``
    """

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    alpha_p: Fraction
    beta_p: Fraction
    gamma_p: Fraction

    def __post_init__(self) -> None:
        for f in fields(self):
            object.__setattr__(self, f.name, parse_rational(getattr(self, f.name)))

    @classmethod
    def of(cls, *values: RationalLike) -> "GkpParams":
        if len(values) != 6:
            raise ValueError(f"expected 6 parameters, got {len(values)}")
        return cls(*values)  # type: ignore[arg-type]

    @classmethod
    def parse(cls, text: str) -> "GkpParams":
        """Parse ``"a,b,g,ap,bp,gp"`` (order alpha, beta, gamma, alpha', beta', gamma')."""
        parts = [p for p in text.split(",")]
        if len(parts) != 6:
            raise ValueError(f"--params needs six comma-separated rationals, got {text!r}")
        return cls(*(parse_rational(p) for p in parts))

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.alpha, self.beta, self.gamma, self.alpha_p, self.beta_p, self.gamma_p)

    def __iter__(self) -> Iterable[Fraction]:
        return iter(self.as_tuple())

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.as_tuple())

    @property
    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.as_tuple())

    @property
    def classifiable(self) -> bool:
        """True on the parameter region where a limit law is known."""
        a, b, g, ap, bp, gp = self.as_tuple()
        if ap == 0 and a >= 0 and b >= 0 and g >= 0 and bp >= 0 and gp >= 0:
            return True
        if a == 0 and b == 0 and ap >= 0 and bp > 0 and g >= 0 and gp >= 0:
            return True
        if b == 0 and bp == 0 and a >= 0 and ap >= 0 and g >= 0 and gp >= 0:
            return True
        return False

    def to_json(self) -> dict[str, str]:
        return {name: str(v) for name, v in zip(PARAM_NAMES, self.as_tuple())}

    @classmethod
    def from_json(cls, doc: dict[str, str]) -> "GkpParams":
        return cls(*(parse_rational(doc[name]) for name in PARAM_NAMES))


PASCAL = GkpParams.of(0, 0, 1, 0, 0, 1)
STIRLING2 = GkpParams.of(0, 1, 0, 0, 0, 1)
EULERIAN = GkpParams.of(0, 1, 1, 1, -1, 0)
