"""Generalized interval-partition (GLS) expansions.

A system is a family of pairwise-disjoint half-open subintervals of [0,1]
with total length one, an orientation bit per interval, and the induced
piecewise-linear map: positive slope onto [0,1) on orientation-0 intervals,
negative slope onto (0,1] on orientation-1 intervals, and identically 0 on
the uncovered set.  Digits are interval indices; points in the uncovered set
get the INF sentinel and the orbit continues from 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .blocks import INF, Alphabet
from .errors import DomainError, UndecidedError
from .realnum import RealPoint, as_real_point

_REFINE_WIDTHS = [Fraction(1, 2**p) for p in (64, 128, 256, 512, 1024, 2048)]


class GlsSystem:
    """Common interface for finite and rule-based countable systems."""

    label: str = "gls"
    alphabet: Alphabet

    def digits(self) -> Iterator[int]:
        raise NotImplementedError

    def interval(self, d: int) -> tuple[Fraction, Fraction]:
        raise NotImplementedError

    def eps(self, d: int) -> int:
        raise NotImplementedError

    def s(self, d: int) -> Fraction:
        lo, hi = self.interval(d)
        return 1 / (hi - lo)

    def h(self, d: int) -> Fraction:
        lo, hi = self.interval(d)
        return lo / (hi - lo)

    def locate_exact(self, x: Fraction):
        """Digit of the interval containing x, or INF."""
        raise NotImplementedError

    def locate_interval(self, lo: Fraction, hi: Fraction):
        """Digit whose interval certainly contains [lo, hi], INF if the
        enclosure is a point of the uncovered set, else None (undecided)."""
        if lo == hi:
            return self.locate_exact(lo)
        d = self.locate_exact(lo)
        if d is INF:
            return None
        l, r = self.interval(d)
        if l <= lo and hi < r:
            return d
        return None

    def step_exact(self, d, x: Fraction) -> Fraction:
        if d is INF:
            return Fraction(0)
        if self.eps(d) == 0:
            return self.s(d) * x - self.h(d)
        return self.h(d) + 1 - self.s(d) * x

    def step_interval(self, d, lo: Fraction, hi: Fraction):
        if d is INF:
            return (Fraction(0), Fraction(0))
        if self.eps(d) == 0:
            return (self.s(d) * lo - self.h(d), self.s(d) * hi - self.h(d))
        return (self.h(d) + 1 - self.s(d) * hi, self.h(d) + 1 - self.s(d) * lo)


class FiniteGlsSystem(GlsSystem):
    def __init__(self, intervals: Sequence[tuple], label: str = "gls"):
        """``intervals``: (digit, left, right, orientation) with exact
        rational endpoints.  Intervals must be disjoint with total length 1."""
        entries = []
        for d, lo, hi, e in intervals:
            lo, hi = Fraction(lo), Fraction(hi)
            if not (0 <= lo < hi <= 1):
                raise DomainError(f"bad interval [{lo}, {hi}) for digit {d}")
            if e not in (0, 1):
                raise DomainError("orientation must be 0 or 1")
            entries.append((d, lo, hi, e))
        if len({d for d, *_ in entries}) != len(entries):
            raise DomainError("duplicate digits")
        by_pos = sorted(entries, key=lambda t: t[1])
        for (_, _, r1, _), (_, l2, _, _) in zip(by_pos, by_pos[1:]):
            if r1 > l2:
                raise DomainError("intervals overlap")
        if sum(hi - lo for _, lo, hi, _ in entries) != 1:
            raise DomainError("interval lengths must sum to 1")
        self._by_digit = {d: (lo, hi, e) for d, lo, hi, e in entries}
        self._by_pos = by_pos
        self.alphabet = Alphabet.finite(max(self._by_digit) + 1)
        self.label = label

    def digits(self):
        return iter(sorted(self._by_digit))

    def interval(self, d):
        if d not in self._by_digit:
            raise DomainError(f"digit {d} not in the system")
        lo, hi, _ = self._by_digit[d]
        return (lo, hi)

    def eps(self, d):
        if d not in self._by_digit:
            raise DomainError(f"digit {d} not in the system")
        return self._by_digit[d][2]

    def locate_exact(self, x):
        for d, lo, hi, _ in self._by_pos:
            if lo <= x < hi:
                return d
        return INF


class LurothSystem(GlsSystem):
    """Digit n >= 1 on [1/(n+1), 1/n); the uncovered set is {0, 1}."""

    label = "luroth"

    def __init__(self):
        self.alphabet = Alphabet.countable(start=1)

    def digits(self):
        n = 1
        while True:
            yield n
            n += 1

    def interval(self, d):
        if d < 1:
            raise DomainError("Luroth digits start at 1")
        return (Fraction(1, d + 1), Fraction(1, d))

    def eps(self, d):
        return 0

    def s(self, d):
        return Fraction(d * (d + 1))

    def h(self, d):
        return Fraction(d)

    def locate_exact(self, x):
        if x == 0 or x == 1:
            return INF
        n = int(Fraction(1) / x)
        if x == Fraction(1, n):
            n -= 1
        return n


def tent_system() -> FiniteGlsSystem:
    return FiniteGlsSystem(
        [(0, 0, Fraction(1, 2), 0), (1, Fraction(1, 2), 1, 1)], label="tent"
    )


def base_r_system(r: int) -> FiniteGlsSystem:
    if r < 2:
        raise DomainError("base must be >= 2")
    return FiniteGlsSystem(
        [(d, Fraction(d, r), Fraction(d + 1, r), 0) for d in range(r)],
        label=f"base{r}",
    )


def luroth_system() -> LurothSystem:
    return LurothSystem()


def gls_make(intervals, label: str = "gls") -> FiniteGlsSystem:
    return FiniteGlsSystem(intervals, label=label)


def gls_itinerary(sys: GlsSystem, x, k: int) -> list:
    """First k itinerary digits of x (integer digits, possibly INF).

    Rational points iterate exactly; other points iterate on enclosures,
    refining until each digit is certified or raising UndecidedError.
    """
    x = as_real_point(x)
    if k < 0:
        raise DomainError("k must be >= 0")
    exact = x.exact()
    if exact is not None:
        if not 0 <= exact <= 1:
            raise DomainError("point outside [0,1]")
        cur = exact
        out = []
        for _ in range(k):
            d = sys.locate_exact(cur)
            out.append(d)
            cur = sys.step_exact(d, cur)
        return out
    last_undecided = None
    for width in _REFINE_WIDTHS:
        lo, hi = x.enclosure(width)
        if hi < 0 or lo > 1:
            raise DomainError("point outside [0,1]")
        out = []
        ok = True
        for i in range(k):
            d = sys.locate_interval(lo, hi)
            if d is None:
                last_undecided = i
                ok = False
                break
            out.append(d)
            lo, hi = sys.step_interval(d, lo, hi)
        if ok:
            return out
    raise UndecidedError(
        f"itinerary digit {last_undecided} not certified at maximum precision",
        index=last_undecided,
    )


@dataclass
class FundamentalInterval:
    """The set of points whose itinerary starts with a given digit word:
    [value, value + width) when the last orientation is 0, else
    (value - width, value]-style half-open on the left: [value - width, value)."""

    lo: Fraction
    hi: Fraction
    anchor: Fraction  # the partial sum d_k of the evaluation series
    width: Fraction  # t_k = 1 / (s(a_1) ... s(a_k))

    def contains(self, x) -> bool:
        return self.lo <= x < self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def gls_evaluate(sys: GlsSystem, digits) -> FundamentalInterval:
    """Fundamental interval of a nonempty digit word: the evaluation-series
    partial sum plus the oriented width 1/(s(a_1)...s(a_k))."""
    digits = list(digits)
    if not digits:
        raise DomainError("digit word must be nonempty")
    sign = 1
    denom = Fraction(1)
    anchor = Fraction(0)
    for a in digits:
        e = sys.eps(a)
        denom *= sys.s(a)
        anchor += sign * (sys.h(a) + e) / denom
        sign *= -1 if e == 1 else 1
    width = 1 / denom
    # the cumulative reflection parity decides which side of the anchor
    # the word's points occupy
    if sign == 1:
        return FundamentalInterval(anchor, anchor + width, anchor, width)
    return FundamentalInterval(anchor - width, anchor, anchor, width)


def parse_gls_spec(text: str) -> FiniteGlsSystem:
    """System spec file: first line ``gls``, then lines
    ``interval <digit> <left> <right> <orientation>`` with rational endpoints."""
    lines = [
        ln.split("#", 1)[0].strip()
        for ln in text.splitlines()
        if ln.split("#", 1)[0].strip()
    ]
    if not lines or lines[0] != "gls":
        raise DomainError("GLS spec must start with a 'gls' line")
    intervals = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 5 or parts[0] != "interval":
            raise DomainError(f"bad GLS spec line {ln!r}")
        intervals.append(
            (int(parts[1]), Fraction(parts[2]), Fraction(parts[3]), int(parts[4]))
        )
    return FiniteGlsSystem(intervals)
