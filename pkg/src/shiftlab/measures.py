"""Cylinder-measure oracles and genericity statistics.

A ``MeasureOracle`` maps a finite block w to the measure of its cylinder [w];
all goodness and convergence diagnostics are computed against this single
abstraction.  Exact oracles (Bernoulli, Dirac, mixtures) report rational
masses; numeric oracles report an enclosure, and goodness verdicts are
certified by outward rounding or flagged indeterminate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .blocks import (
    Alphabet,
    Block,
    DigitStream,
    as_block,
    block_frequencies,
    count_in_block,
    count_in_stream,
    enumerate_blocks,
)
from .errors import DomainError


class MeasureOracle:
    """Interface: ``mass(w)`` and the enclosure ``mass_bounds(w)``."""

    alphabet: Alphabet
    label: str = ""

    def mass(self, w) -> Fraction | float:
        raise NotImplementedError

    def mass_bounds(self, w) -> tuple:
        m = self.mass(w)
        return (m, m)

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


class BernoulliOracle(MeasureOracle):
    """Product measure with the given weights on a finite alphabet."""

    def __init__(self, weights: Sequence):
        ws = [Fraction(w) for w in weights]
        if not ws or any(w < 0 for w in ws):
            raise DomainError("weights must be nonnegative")
        if sum(ws) != 1:
            raise DomainError("weights must sum to 1")
        self.weights = ws
        self.alphabet = Alphabet.finite(len(ws))
        self.label = "bernoulli(%s)" % ",".join(str(w) for w in ws)

    def mass(self, w):
        out = Fraction(1)
        for d in as_block(w):
            if d not in self.alphabet:
                raise DomainError(f"digit {d} outside alphabet")
            out *= self.weights[d]
        return out


class DiracZeroOracle(MeasureOracle):
    """Point mass on the all-zeros sequence."""

    def __init__(self, alphabet_size: int = 2):
        self.alphabet = Alphabet.finite(alphabet_size)
        self.label = "dirac0"

    def mass(self, w):
        return Fraction(1) if all(d == 0 for d in as_block(w)) else Fraction(0)


class MixOracle(MeasureOracle):
    """Cylinder-wise convex combination (1-t)*mu + t*nu."""

    def __init__(self, mu: MeasureOracle, nu: MeasureOracle, t):
        if mu.alphabet != nu.alphabet:
            raise DomainError("mixed oracles must share an alphabet")
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise DomainError("mixing weight must lie in [0,1]")
        self.mu = mu
        self.nu = nu
        self.t = t
        self.alphabet = mu.alphabet
        self.label = f"mix({t}; {mu.label}, {nu.label})"

    def mass(self, w):
        return (1 - self.t) * self.mu.mass(w) + self.t * self.nu.mass(w)

    def mass_bounds(self, w):
        alo, ahi = self.mu.mass_bounds(w)
        blo, bhi = self.nu.mass_bounds(w)
        return ((1 - self.t) * alo + self.t * blo, (1 - self.t) * ahi + self.t * bhi)


def bernoulli_oracle(weights) -> BernoulliOracle:
    return BernoulliOracle(weights)


def dirac_zero_oracle(alphabet_size: int = 2) -> DiracZeroOracle:
    return DiracZeroOracle(alphabet_size)


def mix_oracles(mu, nu, t) -> MixOracle:
    return MixOracle(mu, nu, t)


# --- goodness --------------------------------------------------------------

@dataclass
class GoodnessReport:
    """Per-block verdicts for the first m enumerated blocks.

    A verdict is True (certified within the strict two-sided bound), False
    (certified outside), or None when the oracle's mass enclosure is too wide
    to decide.  ``overall`` requires every verdict to be certified True.
    """

    m: int
    eps: Fraction
    length: int
    verdicts: dict = field(repr=False)
    frequencies: dict = field(repr=False)

    @property
    def overall(self) -> bool:
        return all(v is True for v in self.verdicts.values())

    @property
    def indeterminate(self) -> bool:
        return any(v is None for v in self.verdicts.values())

    def failing_blocks(self) -> list:
        return [w for w, v in self.verdicts.items() if v is not True]


def is_good(u, oracle: MeasureOracle, m: int, eps) -> GoodnessReport:
    """Check the strict bounds mu([w_j]) - eps < e'(w_j, u)/|u| < mu([w_j]) + eps
    for the first m blocks of the canonical enumeration.

    The denominator is |u| exactly (not |u| - |w| + 1).
    """
    u = as_block(u)
    if len(u) < 1:
        raise DomainError("goodness is undefined for the empty word")
    if m < 1:
        raise DomainError("m must be >= 1")
    eps = Fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    ws = enumerate_blocks(oracle.alphabet, m)
    freqs = block_frequencies(u, ws)
    verdicts = {}
    for w in ws:
        f = freqs[w]
        lo, hi = oracle.mass_bounds(w)
        if f > hi - eps and f < lo + eps:
            verdicts[w] = True
        elif f <= lo - eps or f >= hi + eps:
            verdicts[w] = False
        else:
            verdicts[w] = None
    return GoodnessReport(m=m, eps=eps, length=len(u), verdicts=verdicts, frequencies=freqs)


def robustness_delta(m: int, eps, alphabet: Alphabet) -> Fraction:
    """Corruption tolerance: any block (m, eps/2)-good stays (m, eps)-good
    under Hamming perturbation below this threshold."""
    maxlen = max(len(w) for w in enumerate_blocks(alphabet, m))
    return Fraction(eps) / (2 * maxlen)


# --- empirical measures ----------------------------------------------------

class EmpiricalMeasure:
    """Block frequencies of a source block, with the |u| - |w| + 1 denominator."""

    def __init__(self, u, cap: int, alphabet: Alphabet | None = None):
        u = as_block(u)
        if not 1 <= cap <= len(u):
            raise DomainError("cap must satisfy 1 <= cap <= |u|")
        self.source = u
        self.cap = cap
        if alphabet is None:
            alphabet = Alphabet.finite(max(u) + 1)
        self.alphabet = alphabet

    def frequency(self, w) -> Fraction:
        w = as_block(w)
        if not 1 <= len(w) <= self.cap:
            raise DomainError("block length must lie in [1, cap]")
        return Fraction(count_in_block(w, self.source), len(self.source) - len(w) + 1)

    def table(self) -> dict:
        if not self.alphabet.is_finite:
            raise DomainError("cannot tabulate a countable alphabet")
        out = {}
        queue = [Block((d,)) for d in self.alphabet.digits()]
        while queue:
            w = queue.pop(0)
            out[w] = self.frequency(w)
            if len(w) < self.cap:
                queue.extend(w + Block((d,)) for d in self.alphabet.digits())
        return out


def empirical(u, cap: int, alphabet: Alphabet | None = None) -> EmpiricalMeasure:
    return EmpiricalMeasure(u, cap, alphabet)


# --- convergence diagnostics ----------------------------------------------

@dataclass
class ConvergenceReport:
    checkpoints: list
    goodness: list  # GoodnessReport per checkpoint
    ratio_min: dict  # per block: min over checkpoints of e(w,x,N)/N
    ratio_max: dict

    def oscillation_gap(self, w) -> Fraction:
        w = as_block(w)
        return self.ratio_max[w] - self.ratio_min[w]

    @property
    def all_good(self) -> bool:
        return all(g.overall for g in self.goodness)


def convergence_diagnostic(
    x: DigitStream, oracle: MeasureOracle, m: int, eps, checkpoints: Sequence[int]
) -> ConvergenceReport:
    """Goodness of x-prefixes at each checkpoint, plus the running min/max of
    the position-count ratios e(w,x,N)/N (the finite-depth oscillation proxy)."""
    checkpoints = sorted(checkpoints)
    if not checkpoints:
        raise DomainError("checkpoints must be nonempty")
    ws = enumerate_blocks(oracle.alphabet, m)
    reports = []
    rmin: dict = {}
    rmax: dict = {}
    for N in checkpoints:
        reports.append(is_good(x.prefix_block(N), oracle, m, eps))
        for w in ws:
            r = Fraction(count_in_stream(w, x, N), N)
            rmin[w] = r if w not in rmin else min(rmin[w], r)
            rmax[w] = r if w not in rmax else max(rmax[w], r)
    return ConvergenceReport(list(checkpoints), reports, rmin, rmax)


# --- consistency checking --------------------------------------------------

def check_oracle_consistency(
    oracle: MeasureOracle, max_len: int = 4, tol=Fraction(1, 10**9), digit_cap: int = 20
) -> Fraction | float:
    """Largest deviation found in the Kolmogorov-consistency and
    shift-invariance sums over blocks of length <= max_len.

    For a countable alphabet the sums are truncated at ``digit_cap`` digits
    and only checked from below (partial sums must not exceed the target).
    """
    alpha = oracle.alphabet
    finite = alpha.is_finite
    digits = list(alpha.digits()) if finite else [
        alpha.start + i for i in range(digit_cap)
    ]
    worst = Fraction(0)

    def note(dev):
        nonlocal worst
        worst = max(worst, dev)

    level = [Block(())]
    for _ in range(max_len):
        nxt = []
        for w in level:
            right = sum(oracle.mass(w + Block((d,))) for d in digits)
            left = sum(oracle.mass(Block((d,)) + w) for d in digits)
            target = oracle.mass(w) if len(w) else 1
            if finite:
                note(abs(right - target))
                note(abs(left - target))
            else:
                note(max(0, right - target))
                note(max(0, left - target))
            nxt.extend(w + Block((d,)) for d in digits if len(w) + 1 < max_len + 1)
        level = [w for w in nxt if len(w) < max_len]
        if not level:
            break
    if worst > tol:
        raise DomainError(f"oracle {oracle.label} inconsistent: deviation {worst}")
    return worst


# --- oracle spec files ------------------------------------------------------

def parse_oracle_spec(text: str) -> MeasureOracle:
    """Oracle spec grammar:

    ``bernoulli p0 p1 ...`` | ``dirac0`` | ``gauss`` |
    ``parry <beta> density`` | ``parry <beta> birkhoff <samples> <seed>`` |
    ``mix <t> <specA> <specB>`` (composite sub-specs in parentheses).
    """
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    oracle, rest = _parse_oracle_tokens(tokens)
    if rest:
        raise DomainError(f"trailing tokens in oracle spec: {' '.join(rest)}")
    return oracle


def _parse_oracle_tokens(tokens):
    if not tokens:
        raise DomainError("empty oracle spec")
    head, rest = tokens[0], tokens[1:]
    if head == "(":
        oracle, rest = _parse_oracle_tokens(rest)
        if not rest or rest[0] != ")":
            raise DomainError("unbalanced parentheses in oracle spec")
        return oracle, rest[1:]
    if head == "bernoulli":
        ws = []
        while rest and rest[0] not in ("(", ")"):
            try:
                ws.append(Fraction(rest[0]))
            except ValueError:
                break
            rest = rest[1:]
        return BernoulliOracle(ws), rest
    if head == "dirac0":
        return DiracZeroOracle(), rest
    if head == "gauss":
        from .cf import GaussOracle

        return GaussOracle(), rest
    if head == "parry":
        from .beta import BetaSystem, ParryOracle
        from .realnum import parse_point

        if not rest:
            raise DomainError("parry spec needs a beta")
        beta, rest = parse_point(rest[0]), rest[1:]
        method = rest[0] if rest else "density"
        rest = rest[1:]
        if method == "density":
            return ParryOracle(BetaSystem(beta), method="density"), rest
        if method == "birkhoff":
            if len(rest) < 2:
                raise DomainError("birkhoff spec needs <samples> <seed>")
            samples, seed = int(rest[0]), int(rest[1])
            return (
                ParryOracle(BetaSystem(beta), method="birkhoff", samples=samples, seed=seed),
                rest[2:],
            )
        raise DomainError(f"unknown parry method {method!r}")
    if head == "mix":
        if not rest:
            raise DomainError("mix spec needs a weight")
        t, rest = Fraction(rest[0]), rest[1:]
        a, rest = _parse_oracle_tokens(rest)
        b, rest = _parse_oracle_tokens(rest)
        # spec order: mix t A B means (1-t)*A + t*B
        return MixOracle(a, b, t), rest
    raise DomainError(f"unknown oracle spec head {head!r}")
