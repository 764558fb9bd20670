"""Greedy beta-expansions, admissibility, the digit automaton, and the
Parry measure oracle.

Digits come from the greedy map x -> beta*x mod 1.  Admissibility of digit
words is governed lexicographically by the quasi-greedy expansion of 1, or
equivalently by paths in a labelled graph whose vertices track how far the
current suffix runs along that expansion.

Arithmetic discipline: when beta is rational or an isolated root of a monic
integer polynomial, all iterates live in the number field Q(beta) and every
digit and zero-test is exact.  A plain enclosure beta falls back to certified
dyadic interval iteration and fails loudly with UndecidedError on boundaries.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import sqrt as _fsqrt
from typing import Sequence

from .blocks import Alphabet, Block, as_block, block_frequencies
from .errors import ContractViolation, DomainError, UndecidedError
from .measures import MeasureOracle
from .realnum import AlgebraicPoint, RationalPoint, RealPoint, as_real_point

_MAX_REFINE_BITS = 4096


# --- exact arithmetic in Q(beta) -------------------------------------------

class _NumberField:
    """Q(beta) for beta a root of a monic polynomial with rational
    coefficients, with a certified enclosure for beta itself."""

    def __init__(self, minpoly: Sequence[Fraction], beta_point: RealPoint):
        lead = Fraction(minpoly[-1])
        self.minpoly = tuple(Fraction(c) / lead for c in minpoly)  # monic
        self.degree = len(self.minpoly) - 1
        self.point = beta_point

    def element(self, coeffs) -> "FieldElement":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            raise DomainError("coefficient vector too long")
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def zero(self):
        return self.element([0])

    def one(self):
        return self.element([1])

    def rational(self, q):
        return self.element([Fraction(q)])

    def beta(self):
        if self.degree == 1:
            return self.rational(-self.minpoly[0])
        return self.element([0, 1])

    def beta_enclosure(self, width: Fraction):
        return self.point.enclosure(width)


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: _NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(
            self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(
            self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        deg = self.field.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        # reduce by the monic minimal polynomial
        mp = self.field.minpoly
        for k in range(len(prod) - 1, deg - 1, -1):
            c = prod[k]
            if c == 0:
                continue
            prod[k] = Fraction(0)
            for j in range(deg):
                prod[k - deg + j] -= c * mp[j]
        return FieldElement(self.field, tuple(prod[:deg]))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        return self.field.rational(other)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DomainError("division by zero in Q(beta)")
        if self.is_rational():
            return self.field.rational(1 / self.coeffs[0])
        # extended euclid of the coefficient polynomial with the minpoly
        a = list(self.field.minpoly)
        b = list(self.coeffs)
        sa, sb = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in b):
            q, r = _poly_divmod(a, b)
            a, b = b, r
            sa, sb = sb, _poly_sub(sa, _poly_mul(q, sb))
        # a is now the gcd, a nonzero constant for an irreducible minpoly
        a = _poly_trim(a)
        if len(a) != 1:
            raise DomainError("minimal polynomial is not irreducible")
        inv = [c / a[0] for c in sa]
        return self.field.element(_poly_mod_tail(inv, self.field))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def enclosure(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Certified rational enclosure of the real value, of width <= width."""
        if self.is_rational():
            v = self.coeffs[0]
            return (v, v)
        bits = 64
        while True:
            blo, bhi = self.field.beta_enclosure(Fraction(1, 2**bits))
            lo, hi = _interval_horner(self.coeffs, blo, bhi)
            if hi - lo <= width:
                return (lo, hi)
            bits *= 2
            if bits > _MAX_REFINE_BITS:
                raise UndecidedError("field element enclosure did not converge")

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            v = self.coeffs[0]
            return (v > 0) - (v < 0)
        width = Fraction(1, 2**32)
        while True:
            lo, hi = self.enclosure(width)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            width /= 2**32
            if width < Fraction(1, 2**_MAX_REFINE_BITS):
                raise UndecidedError("sign of a nonzero field element not certified")

    def compare(self, other) -> int:
        return (self - other).sign()

    def floor(self) -> int:
        if self.is_rational():
            v = self.coeffs[0]
            return v.numerator // v.denominator
        width = Fraction(1, 2**32)
        while True:
            lo, hi = self.enclosure(width)
            flo = lo.numerator // lo.denominator
            fhi = hi.numerator // hi.denominator
            if flo == fhi:
                return flo
            # enclosure straddles the integer fhi: decide by an exact test
            if (self - fhi).is_zero():
                return fhi
            width /= 2**32
            if width < Fraction(1, 2**_MAX_REFINE_BITS):
                raise UndecidedError("floor of field element not certified")

    def approx(self) -> float:
        lo, hi = self.enclosure(Fraction(1, 2**80))
        return float((lo + hi) / 2)


def _poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return list(p)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and any(c != 0 for c in r):
        c = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = c
        for j in range(len(b)):
            r[k + j] -= c * b[j]
        r = _poly_trim(r)
    return _poly_trim(q), r


def _poly_mod_tail(p, field):
    """Reduce a polynomial modulo the minpoly and return degree-limited coeffs."""
    p = list(p)
    mp = field.minpoly
    deg = field.degree
    for k in range(len(p) - 1, deg - 1, -1):
        c = p[k]
        if c == 0:
            continue
        p[k] = Fraction(0)
        for j in range(deg):
            p[k - deg + j] -= c * mp[j]
    p = p[:deg]
    p += [Fraction(0)] * (deg - len(p))
    return p


def _interval_horner(coeffs, xlo, xhi):
    lo, hi = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        cands_l = (lo * xlo, lo * xhi, hi * xlo, hi * xhi)
        lo, hi = min(cands_l) + c, max(cands_l) + c
    return lo, hi


# --- the expansion system ---------------------------------------------------

class BetaSystem:
    """Greedy expansion system for a fixed real beta > 1."""

    def __init__(self, beta):
        beta = as_real_point(beta)
        self.beta_point = beta
        exact = beta.exact()
        if exact is not None:
            if exact <= 1:
                raise DomainError("beta must be > 1")
            self.field = _NumberField([-exact, Fraction(1)], beta)
        elif isinstance(beta, AlgebraicPoint):
            lo, hi = beta.enclosure(Fraction(1, 2**16))
            if hi <= 1:
                raise DomainError("beta must be > 1")
            self.field = _NumberField(beta.coeffs, beta)
        else:
            self.field = None
        if self.field is not None:
            self._beta_el = self.field.beta()
            floor_b = self._beta_el.floor()
            top = floor_b - 1 if self._is_integer() else floor_b
        else:
            lo, hi = beta.enclosure(Fraction(1, 2**24))
            if lo.numerator // lo.denominator != hi.numerator // hi.denominator:
                raise UndecidedError("floor(beta) not certified")
            top = lo.numerator // lo.denominator
        self.digit_top = top  # largest digit of points in [0,1)
        self.alphabet = Alphabet.finite(top + 1)
        self._one_beta: list[int] = []  # greedy digits of 1, as computed so far
        self._one_beta_orbit = None
        self._one_beta_terminated = False
        self._e_prefix: list[int] = []
        self._e_period: tuple | None = None
        self.label = f"beta({beta!r})"

    def _is_integer(self) -> bool:
        exact = self.beta_point.exact()
        return exact is not None and exact.denominator == 1

    # -- greedy digits -------------------------------------------------------

    def expand(self, x, k: int) -> list[int]:
        """First k greedy digits of x in [0,1]."""
        x = as_real_point(x)
        if k < 0:
            raise DomainError("k must be >= 0")
        exact = x.exact()
        if self.field is not None and exact is not None:
            if not 0 <= exact <= 1:
                raise DomainError("point outside [0,1]")
            cur = self.field.rational(exact)
            beta = self._beta_el
            out = []
            for _ in range(k):
                scaled = beta * cur
                d = scaled.floor()
                out.append(d)
                cur = scaled - d
            return out
        return self._expand_dyadic(x, k)

    def _expand_dyadic(self, x: RealPoint, k: int) -> list[int]:
        for wbits in (96, 192, 384, 768, 1536):
            blo, bhi = self.beta_point.enclosure(Fraction(1, 2**wbits))
            xlo, xhi = x.enclosure(Fraction(1, 2**wbits))
            if xhi < 0 or xlo > 1:
                raise DomainError("point outside [0,1]")
            out = []
            undecided_at = None
            for i in range(k):
                plo = min(xlo * blo, xlo * bhi, xhi * blo, xhi * bhi)
                phi = max(xlo * blo, xlo * bhi, xhi * blo, xhi * bhi)
                dlo = plo.numerator // plo.denominator
                dhi = phi.numerator // phi.denominator
                if dlo != dhi:
                    undecided_at = i
                    break
                out.append(dlo)
                xlo, xhi = plo - dlo, phi - dlo
            if undecided_at is None:
                return out
        raise UndecidedError(
            f"beta digit {undecided_at} not certified at maximum precision",
            index=undecided_at,
        )

    def one_expansion(self, k: int) -> list[int]:
        """First k greedy digits of 1 (the same digit formula applied to 1;
        the leading digit may exceed digit_top when beta is an integer)."""
        if self.field is None:
            return self._expand_dyadic(RationalPoint(1), k)
        if self._one_beta_orbit is None:
            self._one_beta_orbit = self.field.one()
        beta = self._beta_el
        while len(self._one_beta) < k and not self._one_beta_terminated:
            scaled = beta * self._one_beta_orbit
            d = scaled.floor()
            self._one_beta.append(d)
            self._one_beta_orbit = scaled - d
            if self._one_beta_orbit.is_zero():
                self._one_beta_terminated = True
        if self._one_beta_terminated:
            pad = k - len(self._one_beta)
            return self._one_beta + [0] * max(0, pad)
        return self._one_beta[:k]

    # -- the e-sequence ------------------------------------------------------

    def e_digit(self, i: int) -> int:
        """e_i (1-based) of the quasi-greedy expansion of 1."""
        if i < 1:
            raise DomainError("e-sequence indices start at 1")
        self._ensure_e(i)
        if self._e_period is not None:
            return self._e_period[(i - 1) % len(self._e_period)]
        return self._e_prefix[i - 1]

    def _ensure_e(self, k: int) -> None:
        if self._e_period is not None or len(self._e_prefix) >= k:
            return
        digits = self.one_expansion(max(k, 8))
        if self._one_beta_terminated:
            d = list(self._one_beta)
            while d and d[-1] == 0:
                d.pop()
            if not d:
                raise ContractViolation("greedy expansion of 1 is all zeros")
            period = d[:-1] + [d[-1] - 1]
            self._e_period = tuple(period)
        else:
            if self.field is None and len(digits) < k:
                raise UndecidedError(
                    "finiteness of the expansion of 1 not certified",
                    index=len(digits),
                )
            self._e_prefix = digits

    def e_sequence(self, k: int) -> Block:
        """First k symbols of the lexicographic bound sequence."""
        return Block(self.e_digit(i) for i in range(1, k + 1))

    @property
    def e_periodic(self) -> bool:
        self._ensure_e(1)
        return self._e_period is not None

    # -- admissibility -------------------------------------------------------

    def is_admissible(self, w, mode: str = "admissible") -> bool:
        """mode 'admissible': every suffix of w is <=_lex the bound sequence
        on the available window (equivalently, w extends by zeros to a point
        of the shift).  mode 'proper': strictly <_lex on every window."""
        if mode not in ("admissible", "proper"):
            raise DomainError(f"unknown admissibility mode {mode!r}")
        w = as_block(w)
        for d in w:
            if d not in self.alphabet:
                raise DomainError(f"digit {d} outside the beta alphabet")
        n = len(w)
        for i in range(n):
            strict_drop = False
            for j in range(n - i):
                a = w[i + j]
                b = self.e_digit(j + 1)
                if a < b:
                    strict_drop = True
                    break
                if a > b:
                    return False
            if mode == "proper" and not strict_drop:
                return False
        return True


# --- the digit automaton ----------------------------------------------------

class BetaAutomaton:
    """Finite-depth unrolling of the admissibility graph.

    Vertex i carries the spine edge i -> i+1 labelled e_{i+1}, and when
    e_{i+1} > 0 the return edges i -> 0 labelled 0 .. e_{i+1}-1.  Words over
    the digit alphabet are accepted iff they label a path from vertex 0.
    """

    def __init__(self, e_prefix: Sequence[int], depth: int):
        if depth < 1:
            raise DomainError("depth must be >= 1")
        if len(e_prefix) < depth:
            raise DomainError("need e_1..e_depth to build the automaton")
        self.depth = depth
        self.e = tuple(e_prefix[:depth])

    def step(self, state: int, digit: int) -> int | None:
        if not 0 <= state < self.depth:
            raise DomainError(f"state {state} outside automaton depth {self.depth}")
        spine = self.e[state]
        if digit == spine:
            return state + 1
        if digit < spine:
            return 0
        return None

    def run(self, w) -> int | None:
        """Final vertex of the unique path from 0 labelled w, or None."""
        w = as_block(w)
        if len(w) > self.depth:
            raise DomainError(
                f"word of length {len(w)} exceeds automaton depth {self.depth}"
            )
        state = 0
        for d in w:
            state = self.step(state, d)
            if state is None:
                return None
        return state

    def accepts(self, w) -> bool:
        return self.run(w) is not None

    def is_closed(self, w) -> bool:
        """Does w label a closed path at vertex 0?"""
        return self.run(w) == 0


def beta_automaton(sys: BetaSystem, depth: int) -> BetaAutomaton:
    return BetaAutomaton([sys.e_digit(i) for i in range(1, depth + 1)], depth)


def beta_repair(sys_or_automaton, u, v) -> Block:
    """Lower one symbol of v so that u followed by the result labels a
    closed path at vertex 0.

    u must already be closed at 0 and v must be in the language.  The symbol
    changed is the last nonzero one, so the Hamming distance is at most 1/|v|.
    """
    u = as_block(u)
    v = as_block(v)
    if isinstance(sys_or_automaton, BetaAutomaton):
        auto = sys_or_automaton
    else:
        auto = beta_automaton(sys_or_automaton, max(len(u) + len(v), 1))
    if len(u) and not auto.is_closed(u):
        raise DomainError("u does not label a closed path at vertex 0")
    if not auto.accepts(v):
        raise DomainError("v is not in the language")
    last = max((i for i, d in enumerate(v) if d != 0), default=None)
    if last is None:
        return v
    repaired = Block(v[:last] + (0,) + v[last + 1 :])
    if not auto.is_closed(u + repaired):
        raise ContractViolation("repair failed to close the path at vertex 0")
    return repaired


# --- fast certified orbit sampling -----------------------------------------

def beta_orbit_block(
    sys: BetaSystem, length: int, seed: int, work_bits: int = 256
) -> Block:
    """An admissible digit block sampled from Lebesgue-random orbits.

    Iterates x -> beta*x - d on dyadic enclosures; when a digit can no longer
    be certified (or the enclosure degrades) the segment ends, its last
    nonzero digit is lowered to keep the concatenation admissible, and a
    fresh random point is drawn.  Every emitted block is admissible by
    construction and double-checkable with the automaton.
    """
    if length < 1:
        raise DomainError("length must be >= 1")
    rng = random.Random(seed)
    W = work_bits
    scale = 1 << W
    blo_f, bhi_f = sys.beta_point.enclosure(Fraction(1, scale))
    blo = (blo_f.numerator * scale) // blo_f.denominator
    bhi = -((-bhi_f.numerator * scale) // bhi_f.denominator)
    out: list[int] = []

    def end_segment(segment):
        # lower the last nonzero digit so the path returns to vertex 0
        for i in range(len(segment) - 1, -1, -1):
            if segment[i] != 0:
                segment[i] = 0
                break
        out.extend(segment)

    while len(out) < length:
        xlo = rng.randrange(scale)
        xhi = xlo
        segment: list[int] = []
        while len(out) + len(segment) < length + 1:
            plo = (xlo * blo) >> W
            phi = -((-xhi * bhi) >> W)
            dlo, dhi = plo >> W, phi >> W
            if dlo != dhi or dlo > sys.digit_top or dlo < 0:
                break
            segment.append(dlo)
            xlo, xhi = plo - (dlo << W), phi - (dlo << W)
            if xlo < 0:
                xlo = 0
            if xhi > scale:
                xhi = scale
        if segment:
            end_segment(segment)
    return Block(out[:length])


# --- the Parry oracle -------------------------------------------------------

class ParryOracle(MeasureOracle):
    """Cylinder masses of the invariant measure equivalent to Lebesgue.

    method 'density': integrates the piecewise-constant invariant density
    (value at x proportional to the sum of beta^-n over the orbit points
    T^n(1) above x) over the fundamental interval of the digit word; exact
    in Q(beta) when the orbit of 1 is finite, truncated with an explicit
    tail bound otherwise.

    method 'birkhoff': visit frequencies of fundamental intervals along
    Lebesgue-random orbits, i.e. block frequencies of sampled digit streams.
    """

    _ORBIT_TRUNCATION = 64

    def __init__(self, sys: BetaSystem, method: str = "density", samples: int = 10**5, seed: int = 0):
        if sys.field is None and method == "density":
            raise DomainError("density method needs an exact beta representation")
        self.system = sys
        self.method = method
        self.alphabet = sys.alphabet
        self.label = f"parry({sys.label},{method})"
        if method == "density":
            self._build_density()
        elif method == "birkhoff":
            if samples < 100:
                raise DomainError("birkhoff method needs at least 100 samples")
            self._sample = beta_orbit_block(sys, samples, seed)
            self._sample_tol = 4.0 / _fsqrt(samples)
            self._freq_cache: dict = {}
        else:
            raise DomainError(f"unknown parry method {method!r}")

    # -- density path --------------------------------------------------------

    def _build_density(self):
        sys = self.system
        field = sys.field
        beta = sys._beta_el
        inv_beta = beta.inverse()
        # orbit of 1 under the greedy map, with the matching beta^-n weights
        sys.one_expansion(self._ORBIT_TRUNCATION)
        orbit = [field.one()]
        cur = field.one()
        weight = field.one()
        weights = [field.one()]
        for d in sys._one_beta[: self._ORBIT_TRUNCATION]:
            cur = beta * cur - d
            if cur.is_zero():
                break
            orbit.append(cur)
            weight = weight * inv_beta
            weights.append(weight)
            if len(orbit) >= self._ORBIT_TRUNCATION:
                break
        self._orbit = orbit
        self._weights = weights
        self._truncated = not sys._one_beta_terminated and len(orbit) >= self._ORBIT_TRUNCATION
        # unnormalised total mass  Z = sum_n weight_n * t_n
        z = field.zero()
        for t, wgt in zip(orbit, weights):
            z = z + wgt * t
        self._z = z
        self._gamma_cache: dict[int, FieldElement] = {}
        self._auto_cache: BetaAutomaton | None = None

    def _gamma(self, state: int) -> FieldElement:
        """Value of the tail of the bound sequence from a given vertex:
        the width scale of the follower interval."""
        sys = self.system
        field = sys.field
        if state in self._gamma_cache:
            return self._gamma_cache[state]
        inv_beta = sys._beta_el.inverse()
        if sys.e_periodic:
            period = sys._e_period
            p = len(period)
            j = state % p
            # gamma_j = sum_{i=1..p} e_{j+i} beta^-i / (1 - beta^-p)
            num = field.zero()
            pw = field.one()
            for i in range(p):
                pw = pw * inv_beta
                num = num + pw * period[(j + i) % p]
            denom = field.one() - _field_pow(inv_beta, p)
            val = num / denom
        else:
            # truncated tail sum; the truncation error is absorbed into the
            # mass_bounds slack
            num = field.zero()
            pw = field.one()
            for i in range(1, self._ORBIT_TRUNCATION + 1):
                pw = pw * inv_beta
                num = num + pw * sys.e_digit(state + i)
            val = num
        self._gamma_cache[state] = val
        return val

    def _automaton(self, depth: int) -> BetaAutomaton:
        if self._auto_cache is None or self._auto_cache.depth < depth:
            self._auto_cache = beta_automaton(self.system, max(depth, 16))
        return self._auto_cache

    def fundamental_interval(self, w) -> tuple[FieldElement, FieldElement] | None:
        """Endpoints (lo, hi) of the set of points whose greedy digits start
        with w, as field elements; None when w is not admissible."""
        w = as_block(w)
        if not w:
            raise DomainError("digit word must be nonempty")
        sys = self.system
        state = self._automaton(len(w) + 1).run(w)
        if state is None:
            return None
        field = sys.field
        inv_beta = sys._beta_el.inverse()
        lo = field.zero()
        pw = field.one()
        for d in w:
            pw = pw * inv_beta
            lo = lo + pw * d
        hi = lo + pw * self._gamma(state)
        return (lo, hi)

    def _mass_density(self, w) -> tuple[Fraction, Fraction]:
        span = self.fundamental_interval(w)
        if span is None:
            return (Fraction(0), Fraction(0))
        a, b = span
        field = self.system.field
        acc = field.zero()
        for t, wgt in zip(self._orbit, self._weights):
            # contribution wgt * |[a,b) ∩ [0,t)|
            upper = b if b.compare(t) <= 0 else t
            if upper.compare(a) > 0:
                acc = acc + wgt * (upper - a)
        mass = acc / self._z
        lo, hi = mass.enclosure(Fraction(1, 2**80))
        if self._truncated:
            # the ignored orbit tail carries weight < beta^-N / (1 - 1/beta)
            blo, _ = self.system.beta_point.enclosure(Fraction(1, 2**32))
            slack = Fraction(2) / (blo - 1) / blo ** (self._ORBIT_TRUNCATION - 1)
            lo, hi = lo - slack, hi + slack
        return (max(Fraction(0), lo), min(Fraction(1), hi))

    # -- shared oracle interface --------------------------------------------

    def mass(self, w):
        lo, hi = self.mass_bounds(w)
        return (lo + hi) / 2

    def mass_bounds(self, w):
        w = as_block(w)
        if self.method == "density":
            return self._mass_density(w)
        if w not in self._freq_cache:
            n = len(self._sample) - len(w) + 1
            if n < 1:
                raise DomainError("block longer than the birkhoff sample")
            freq = block_frequencies(self._sample, [w], denominator=n)[w]
            self._freq_cache[w] = freq
        est = self._freq_cache[w]
        tol = Fraction(self._sample_tol).limit_denominator(10**9)
        return (max(Fraction(0), est - tol), min(Fraction(1), est + tol))


def _field_pow(el: FieldElement, n: int) -> FieldElement:
    out = el.field.one()
    base = el
    while n:
        if n & 1:
            out = out * base
        base = base * base
        n >>= 1
    return out


def parry_oracle(beta, method: str = "density", samples: int = 10**5, seed: int = 0) -> ParryOracle:
    sys = beta if isinstance(beta, BetaSystem) else BetaSystem(beta)
    return ParryOracle(sys, method=method, samples=samples, seed=seed)
