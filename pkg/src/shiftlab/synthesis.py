"""Building generic points by gluing sampled good blocks.

The construction runs in stages n = 1, 2, ...: stage n rejection-samples a
block of scheduled length L_n whose first n canonical block frequencies are
within eps_n/2 of the target masses, then appends it through a gluer that
keeps the growing word inside the constraint language, changing at most a
vanishing density of symbols.  The stage lengths dominate everything before
them, so late stages control every sufficiently long prefix and the assembled
stream has the target frequencies in the limit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .beta import BetaAutomaton, BetaSystem, ParryOracle, beta_automaton, beta_orbit_block, beta_repair
from .blocks import Block, DigitStream, as_block
from .cf import GaussOracle, cf_digit_block
from .errors import ContractViolation, DomainError, RetryBudgetExceeded
from .measures import (
    BernoulliOracle,
    DiracZeroOracle,
    GoodnessReport,
    MeasureOracle,
    MixOracle,
    is_good,
)


# --- gluers -----------------------------------------------------------------

class Gluer:
    """Concatenation manager for a constraint language closed under the
    glue operation.

    ``glue(u, v)`` returns (connector, corrected) with u + connector +
    corrected back in the language; ``min_length(eps)`` is the block length
    above which the correction cost is below eps.
    """

    label: str = "gluer"

    def min_length(self, eps: Fraction) -> int:
        raise NotImplementedError

    def accepts(self, w) -> bool:
        """Membership in the good set itself."""
        raise NotImplementedError

    def admissible(self, w) -> bool:
        """Membership in the ambient language (candidates for gluing)."""
        raise NotImplementedError

    def glue(self, u: Block, v: Block) -> tuple[Block, Block]:
        raise NotImplementedError

    def seed_word(self) -> Block:
        """Shortest word of the good set, used to prime constructions that
        need a nonempty context."""
        raise NotImplementedError

    def session(self) -> "GluerSession":
        return GluerSession(self)


class GluerSession:
    """Incremental gluing: tracks the accumulated word so repeated appends
    cost O(|v|) each instead of rescanning the whole history."""

    def __init__(self, gluer: "Gluer"):
        self.gluer = gluer
        self.length = 0

    def append(self, v) -> tuple[Block, Block]:
        v = as_block(v)
        connector, fixed = self._glue(v)
        self.length += len(connector) + len(fixed)
        return connector, fixed

    def _glue(self, v):
        raise NotImplementedError


class FullShiftGluer(Gluer):
    """No constraints: every word is in the language and gluing is free."""

    label = "full-shift"

    def min_length(self, eps):
        return 1

    def accepts(self, w):
        return True

    def admissible(self, w):
        return True

    def glue(self, u, v):
        return (Block(), as_block(v))

    def seed_word(self):
        return Block()

    def session(self):
        sess = GluerSession(self)
        sess._glue = lambda v: (Block(), v)
        return sess


class BetaGluer(Gluer):
    """Language of closed paths at vertex 0 of the digit automaton.

    Gluing lowers at most one symbol of the appended block (its last nonzero
    one), so a block of length >= 1/eps is corrected by less than eps in
    normalised Hamming distance.
    """

    def __init__(self, system: BetaSystem):
        self.system = system
        self.label = f"beta({system.label})"
        self._auto: BetaAutomaton | None = None

    def _automaton(self, depth: int) -> BetaAutomaton:
        if self._auto is None or self._auto.depth < depth:
            self._auto = beta_automaton(self.system, max(depth, 64))
        return self._auto

    def min_length(self, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise DomainError("eps must be positive")
        return -((-eps.denominator) // eps.numerator)  # ceil(1/eps)

    def accepts(self, w):
        w = as_block(w)
        return self._automaton(max(len(w), 1)).is_closed(w)

    def admissible(self, w):
        w = as_block(w)
        return self._automaton(max(len(w), 1)).accepts(w)

    def glue(self, u, v):
        u, v = as_block(u), as_block(v)
        auto = self._automaton(len(u) + len(v))
        return (Block(), beta_repair(auto, u, v))

    def session(self):
        # the accumulated word is closed at vertex 0 after every append, so
        # each glue only has to run the automaton over the new block
        sess = GluerSession(self)

        def _glue(v):
            auto = self._automaton(len(v))
            return (Block(), beta_repair(auto, Block(), v))

        sess._glue = _glue
        return sess

    def seed_word(self):
        if self.system.e_digit(1) < 1:
            raise ContractViolation("digit 0 should always return to vertex 0")
        return Block([0])


# --- sampling blocks with prescribed statistics -----------------------------

class GoodBlockSampler:
    """Draws blocks from a measure and rejection-filters them for goodness.

    The raw draw depends on the oracle: product measures are sampled iid,
    the point mass at 0^inf deterministically, mixtures by proportional
    segments, and the dynamical measures (Gauss, Parry) by certified orbit
    sampling.
    """

    def __init__(self, oracle: MeasureOracle, seed: int):
        self.oracle = oracle
        self.rng = random.Random(seed)

    def raw_block(self, length: int) -> Block:
        if length < 1:
            raise DomainError("length must be >= 1")
        return Block(self._raw(self.oracle, length))

    def _raw(self, oracle, length: int) -> list[int]:
        if isinstance(oracle, BernoulliOracle):
            digits = list(oracle.alphabet.digits())
            weights = [float(w) for w in oracle.weights]
            return self.rng.choices(digits, weights=weights, k=length)
        if isinstance(oracle, DiracZeroOracle):
            return [0] * length
        if isinstance(oracle, MixOracle):
            cut = round(length * float(1 - oracle.t))
            head = self._raw(oracle.mu, cut) if cut else []
            tail = self._raw(oracle.nu, length - cut) if length > cut else []
            return head + tail
        if isinstance(oracle, ParryOracle):
            seed = self.rng.getrandbits(64)
            return list(beta_orbit_block(oracle.system, length, seed, work_bits=512))
        if isinstance(oracle, GaussOracle):
            return list(cf_digit_block(length, self.rng.getrandbits(64)))
        raise DomainError(f"no block sampler for oracle {oracle.label!r}")

    def good_block(
        self,
        length: int,
        m: int,
        eps: Fraction,
        budget: int = 1000,
        accepts=None,
    ) -> tuple[Block, int]:
        """A block of the given length that is (m, eps)-good, with the number
        of draws spent.  Raises RetryBudgetExceeded after ``budget`` draws."""
        for tries in range(1, budget + 1):
            cand = self.raw_block(length)
            if accepts is not None and not accepts(cand):
                continue
            report = is_good(cand, self.oracle, m, eps)
            if report.overall:
                return cand, tries
        raise RetryBudgetExceeded(
            f"no ({m}, {eps})-good block of length {length} in {budget} draws"
        )


# --- the staged construction ------------------------------------------------

@dataclass
class SynthesisStage:
    index: int
    m: int
    eps: Fraction
    length: int
    tries: int
    start: int  # global position of the stage block
    end: int
    corrections: tuple = ()  # global positions changed by the gluer


@dataclass
class SynthesisResult:
    symbols: Block
    stages: list
    oracle_label: str
    gluer_label: str
    seed: int

    @property
    def corrections(self) -> list:
        out = []
        for st in self.stages:
            out.extend(st.corrections)
        return out

    def correction_density(self, n: int | None = None) -> Fraction:
        n = len(self.symbols) if n is None else n
        if n < 1:
            raise DomainError("prefix length must be >= 1")
        return Fraction(sum(1 for p in self.corrections if p < n), n)

    @property
    def boundaries(self) -> list:
        return [st.end for st in self.stages]

    def stream(self) -> DigitStream:
        return DigitStream.from_symbols(self.symbols, label="synthesized")


def synthesize_generic(
    oracle: MeasureOracle,
    gluer: Gluer,
    length: int,
    seed: int,
    initial_length: int = 64,
    budget: int = 1000,
) -> SynthesisResult:
    """Assemble a prefix of a generic point for the oracle's measure inside
    the gluer's language.

    Stage n uses m_n = n, eps_n = 2^-n, and a block length that is at least
    (n+1) times everything emitted so far (and at least the gluer's
    min_length for eps_n), sampled until (n, eps_n/2)-good.  The halved
    tolerance leaves room for the gluer's corrections.
    """
    if length < 1:
        raise DomainError("length must be >= 1")
    sampler = GoodBlockSampler(oracle, seed)
    word = Block()
    stages: list[SynthesisStage] = []
    n = 0
    while len(word) < length:
        n += 1
        eps = Fraction(1, 2**n)
        ln = max(initial_length, (n + 1) * len(word), gluer.min_length(eps))
        accepts = gluer.admissible if not isinstance(gluer, FullShiftGluer) else None
        cand, tries = sampler.good_block(ln, n, eps / 2, budget=budget, accepts=accepts)
        connector, fixed = gluer.glue(word, cand)
        start = len(word) + len(connector)
        corrections = tuple(
            start + i for i, (a, b) in enumerate(zip(cand, fixed)) if a != b
        )
        word = word + connector + fixed
        stages.append(
            SynthesisStage(
                index=n,
                m=n,
                eps=eps,
                length=ln,
                tries=tries,
                start=start,
                end=len(word),
                corrections=corrections,
            )
        )
    return SynthesisResult(
        symbols=word,
        stages=stages,
        oracle_label=oracle.label,
        gluer_label=gluer.label,
        seed=seed,
    )
