"""Exact and certified-enclosure real points.

Expansion maps consume a ``RealPoint``: either an exact rational, or a real
known only through an interval enclosure that can be refined on demand below
any positive width.  Algebraic numbers are represented as isolated roots of
integer polynomials and refined by exact bisection, so every enclosure is
certified.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DomainError


class RealPoint:
    """Interface: ``enclosure(width)`` returns rational lo <= x <= hi with
    hi - lo <= width; ``exact()`` returns the rational value or None."""

    def enclosure(self, width: Fraction) -> tuple[Fraction, Fraction]:
        raise NotImplementedError

    def exact(self) -> Fraction | None:
        return None

    def approx(self, width: Fraction = Fraction(1, 10**12)) -> float:
        lo, hi = self.enclosure(width)
        return float((lo + hi) / 2)


class RationalPoint(RealPoint):
    def __init__(self, value):
        self.value = Fraction(value)

    def enclosure(self, width):
        return (self.value, self.value)

    def exact(self):
        return self.value

    def __repr__(self):
        return f"RationalPoint({self.value})"


class AlgebraicPoint(RealPoint):
    """A real root of an integer polynomial, isolated in [lo, hi].

    The polynomial must change sign over the isolating interval; bisection
    with exact rational evaluation then refines the enclosure arbitrarily.
    """

    def __init__(self, coeffs: Sequence[int], lo, hi, label: str = ""):
        self.coeffs = tuple(Fraction(c) for c in coeffs)  # c0 + c1 x + ...
        if len(self.coeffs) < 2:
            raise DomainError("polynomial must have degree >= 1")
        self._lo = Fraction(lo)
        self._hi = Fraction(hi)
        self.label = label
        slo = self._sign_at(self._lo)
        shi = self._sign_at(self._hi)
        if slo == 0:
            self._hi = self._lo
        elif shi == 0:
            self._lo = self._hi
        elif slo == shi:
            raise DomainError("no sign change over the isolating interval")

    def eval_poly(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _sign_at(self, x: Fraction) -> int:
        v = self.eval_poly(x)
        return (v > 0) - (v < 0)

    def enclosure(self, width):
        width = Fraction(width)
        if width <= 0:
            raise DomainError("width must be positive")
        lo, hi = self._lo, self._hi
        if lo == hi:
            return (lo, hi)
        slo = self._sign_at(lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            sm = self._sign_at(mid)
            if sm == 0:
                lo = hi = mid
                break
            if sm == slo:
                lo = mid
            else:
                hi = mid
        self._lo, self._hi = lo, hi
        return (lo, hi)

    def exact(self):
        return self._lo if self._lo == self._hi else None

    def __repr__(self):
        return f"AlgebraicPoint({self.label or self.coeffs})"


def golden_ratio() -> AlgebraicPoint:
    """Positive root of x^2 - x - 1."""
    return AlgebraicPoint([-1, -1, 1], 1, 2, label="golden")


def tribonacci_constant() -> AlgebraicPoint:
    """Real root of x^3 - x^2 - x - 1 (a cubic Pisot number, ~1.8393)."""
    return AlgebraicPoint([-1, -1, -1, 1], 1, 2, label="tribonacci")


def sqrt2_minus_1() -> AlgebraicPoint:
    """Positive root of x^2 + 2x - 1."""
    return AlgebraicPoint([-1, 2, 1], 0, 1, label="sqrt2-1")


def as_real_point(value) -> RealPoint:
    if isinstance(value, RealPoint):
        return value
    return RationalPoint(value)


def parse_point(text: str) -> RealPoint:
    """Point spec: a rational like ``1/3`` or ``0.25``, or one of the named
    constants ``golden``, ``sqrt2-1``, ``tribonacci``."""
    text = text.strip()
    named = {
        "golden": golden_ratio,
        "sqrt2-1": sqrt2_minus_1,
        "tribonacci": tribonacci_constant,
    }
    if text in named:
        return named[text]()
    try:
        return RationalPoint(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad point spec {text!r}") from exc
