"""Regular continued fractions and the Gauss measure.

Digits come from the Gauss map x -> 1/x mod 1 on (0,1); rationals terminate
and are handled by the integer Euclidean algorithm, so their digit words are
exact.  Cylinder sets are the fundamental intervals with endpoints built from
the convergents, and the Gauss measure of an interval [a,b) is
log2((1+b)/(1+a)).
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import log2
from typing import Sequence

from .blocks import Alphabet, Block, as_block
from .errors import DomainError, UndecidedError
from .measures import MeasureOracle
from .realnum import RealPoint, as_real_point

_REFINE_BITS = (96, 192, 384, 768, 1536, 3072)


def cf_expand(x, k: int) -> tuple[list[int], bool]:
    """First k continued-fraction digits of x in (0,1).

    Returns (digits, exhausted): ``exhausted`` is True when x is rational
    and its finite expansion has fewer than k digits, in which case all of
    the digits are returned.
    """
    x = as_real_point(x)
    if k < 0:
        raise DomainError("k must be >= 0")
    exact = x.exact()
    if exact is not None:
        if not 0 < exact < 1:
            raise DomainError("point must lie in (0,1)")
        # euclid on x = p/q: digit = floor(q/p), then (p,q) <- (q mod p, p)
        p, q = exact.numerator, exact.denominator
        digits: list[int] = []
        while p and len(digits) < k:
            digits.append(q // p)
            p, q = q % p, p
        return digits, p == 0
    last_undecided = None
    for bits in _REFINE_BITS:
        lo, hi = x.enclosure(Fraction(1, 2**bits))
        if lo <= 0 or hi >= 1:
            raise DomainError("point must lie in (0,1)")
        digits = []
        ok = True
        for i in range(k):
            if lo <= 0:
                ok = False
                last_undecided = i
                break
            ilo, ihi = 1 / hi, 1 / lo
            dlo = ilo.numerator // ilo.denominator
            dhi = ihi.numerator // ihi.denominator
            if dlo != dhi:
                ok = False
                last_undecided = i
                break
            digits.append(dlo)
            lo, hi = ilo - dlo, ihi - dlo
        if ok:
            return digits, False
    raise UndecidedError(
        f"continued-fraction digit {last_undecided} not certified",
        index=last_undecided,
    )


def cf_convergents(digits: Sequence[int]) -> list[tuple[int, int]]:
    """Convergents p_k/q_k of [0; d_1, d_2, ...] as (p, q) pairs."""
    p0, p1 = 1, 0  # p_{-1}, p_0
    q0, q1 = 0, 1
    out = []
    for d in digits:
        if not isinstance(d, int) or d < 1:
            raise DomainError(f"continued-fraction digits are integers >= 1, got {d!r}")
        p0, p1 = p1, d * p1 + p0
        q0, q1 = q1, d * q1 + q0
        out.append((p1, q1))
    return out


def cf_fundamental_interval(digits: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Closure of the set of points whose expansion starts with the given
    digits, as an interval [lo, hi] with lo < hi.

    The endpoints are p_k/q_k and (p_k + p_{k-1})/(q_k + q_{k-1}); which one
    is the left endpoint alternates with the parity of k.
    """
    digits = list(digits)
    if not digits:
        raise DomainError("digit word must be nonempty")
    convs = cf_convergents(digits)
    pk, qk = convs[-1]
    pk1, qk1 = convs[-2] if len(convs) >= 2 else (0, 1)
    a = Fraction(pk, qk)
    b = Fraction(pk + pk1, qk + qk1)
    return (a, b) if a < b else (b, a)


class GaussOracle(MeasureOracle):
    """Gauss-measure masses of continued-fraction cylinders.

    mass([d_1..d_k]) = log2((1+b)/(1+a)) over the fundamental interval; the
    measure is shift-invariant and equivalent to Lebesgue.
    """

    def __init__(self):
        self.alphabet = Alphabet.countable(start=1)
        self.label = "gauss"

    def mass(self, w) -> float:
        w = as_block(w)
        if not w:
            raise DomainError("digit word must be nonempty")
        for d in w:
            if d < 1:
                raise DomainError("continued-fraction digits are >= 1")
        a, b = cf_fundamental_interval(w)
        return log2(float((1 + b) / (1 + a)))

    def mass_bounds(self, w):
        # float log2 of an exact rational argument: a handful of ulps of slack
        m = self.mass(w)
        pad = Fraction(1, 10**13)
        m = Fraction(m).limit_denominator(10**15)
        return (max(Fraction(0), m - pad), min(Fraction(1), m + pad))


def gauss_oracle() -> GaussOracle:
    return GaussOracle()


def cf_digit_block(length: int, seed: int, entropy_bits: int = 4096) -> Block:
    """Digits sampled from Gauss-random points, by running Euclid on random
    rationals with ``entropy_bits`` bits of numerator and denominator.

    Each random rational yields about 0.83 digits per 3 bits before the
    expansion is abandoned (well short of exhaustion, to avoid endgame bias).
    """
    if length < 1:
        raise DomainError("length must be >= 1")
    rng = random.Random(seed)
    # ~3.43 bits of denominator per digit on average; keep a wide margin
    usable = max(8, int(entropy_bits / 8))
    out: list[int] = []
    while len(out) < length:
        q = rng.getrandbits(entropy_bits) | (1 << entropy_bits)
        p = rng.randrange(1, q)
        digits: list[int] = []
        while p and len(digits) < usable:
            digits.append(q // p)
            p, q = q % p, p
        if p == 0:
            digits = digits[: len(digits) // 2]  # rational endgame, keep the head
        out.extend(digits)
    return Block(out[:length])
