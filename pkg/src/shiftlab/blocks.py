"""Alphabets, finite blocks, digit streams and occurrence statistics.

This is the combinatorial substrate for everything else: the canonical
enumeration of nonempty blocks (all blocks precede their proper extensions),
the two occurrence counters for a pattern in a stream prefix and in a finite
block, the normalised Hamming distance, and running densities.
"""

from __future__ import annotations

import re
from bisect import bisect_left
from fractions import Fraction
from itertools import islice, product
from typing import Iterable, Iterator, Sequence

from .errors import DomainError


class _InfDigit:
    """Sentinel digit for points that fall in the uncovered part of a GLS
    partition.  Compares greater than every integer digit."""

    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is INF

    def __gt__(self, other):
        return other is not INF

    def __ge__(self, other):
        return True


INF = _InfDigit()


def is_int_digit(d) -> bool:
    return isinstance(d, int) and not isinstance(d, bool) and d >= 0


class Block(tuple):
    """A finite word of integer digits.  Length 0 is the unique empty word.

    The INF sentinel is rejected here: blocks fed to counting operations are
    always over the integer part of the alphabet.
    """

    def __new__(cls, symbols: Iterable[int] = ()):
        syms = tuple(symbols)
        for d in syms:
            if not is_int_digit(d):
                raise DomainError(f"block symbol {d!r} is not a nonnegative integer")
        return super().__new__(cls, syms)

    def __repr__(self):
        return "Block(%s)" % (" ".join(map(str, self)) or "empty")

    def __add__(self, other):
        return Block(tuple(self) + tuple(other))

    @classmethod
    def from_text(cls, text: str) -> "Block":
        return cls(int(tok) for tok in text.split())


def as_block(w) -> Block:
    return w if isinstance(w, Block) else Block(w)


class Alphabet:
    """Descriptor of a digit alphabet: ``size`` digits starting at ``start``,
    or countably infinite when ``size`` is None."""

    __slots__ = ("size", "start")

    def __init__(self, size: int | None, start: int = 0):
        if size is not None and size < 1:
            raise DomainError("alphabet must contain at least one digit")
        self.size = size
        self.start = start

    @classmethod
    def finite(cls, size: int, start: int = 0) -> "Alphabet":
        return cls(size, start)

    @classmethod
    def countable(cls, start: int = 0) -> "Alphabet":
        return cls(None, start)

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def digits(self) -> Iterator[int]:
        if self.size is None:
            d = self.start
            while True:
                yield d
                d += 1
        else:
            yield from range(self.start, self.start + self.size)

    def __contains__(self, d) -> bool:
        if not is_int_digit(d):
            return False
        if d < self.start:
            return False
        return self.size is None or d < self.start + self.size

    def __eq__(self, other):
        return (
            isinstance(other, Alphabet)
            and self.size == other.size
            and self.start == other.start
        )

    def __hash__(self):
        return hash((self.size, self.start))

    def __repr__(self):
        if self.size is None:
            return f"Alphabet(countable from {self.start})"
        return f"Alphabet({self.size} digits from {self.start})"


def _enumerate_finite(alphabet: Alphabet) -> Iterator[Block]:
    digits = list(alphabet.digits())
    length = 1
    while True:
        for word in product(digits, repeat=length):
            yield Block(word)
        length += 1


def _enumerate_countable(alphabet: Alphabet) -> Iterator[Block]:
    # Stage t emits, in length-major lex order, the blocks of length <= t
    # over the first t digits that no earlier stage has emitted.
    start = alphabet.start
    stage = 1
    while True:
        top = start + stage  # exclusive digit bound for this stage
        for length in range(1, stage + 1):
            for word in product(range(start, top), repeat=length):
                if length <= stage - 1 and max(word) < top - 1:
                    continue  # already emitted at an earlier stage
                yield Block(word)
        stage += 1


def iter_blocks(alphabet: Alphabet) -> Iterator[Block]:
    """The canonical enumeration: every block appears before each of its
    proper extensions, and the n-th block has length at most n."""
    if alphabet.is_finite:
        return _enumerate_finite(alphabet)
    return _enumerate_countable(alphabet)


def enumerate_blocks(alphabet: Alphabet, count: int) -> list[Block]:
    """First ``count`` entries of the canonical enumeration."""
    if count < 1:
        raise DomainError("count must be >= 1")
    return list(islice(iter_blocks(alphabet), count))


class DigitStream:
    """A deterministic, lazily-extended infinite digit sequence.

    A stream is single-consumer: concurrent analyses should each build their
    own stream from the same seed or specification.  ``prefix(n)`` always
    returns the same symbols for the same n.
    """

    def __init__(self, generate, label: str = ""):
        self._generate = generate
        self._iter = None
        self._cache: list = []
        self.label = label

    def prefix(self, n: int) -> tuple:
        if n < 0:
            raise DomainError("prefix length must be >= 0")
        if self._iter is None:
            self._iter = iter(self._generate())
        while len(self._cache) < n:
            self._cache.append(next(self._iter))
        return tuple(self._cache[:n])

    def prefix_block(self, n: int) -> Block:
        return Block(self.prefix(n))

    def clone(self) -> "DigitStream":
        return DigitStream(self._generate, self.label)

    @classmethod
    def periodic(cls, block: Sequence[int], label: str = "") -> "DigitStream":
        block = tuple(block)
        if not block:
            raise DomainError("periodic stream needs a nonempty period")

        def gen():
            while True:
                yield from block

        return cls(gen, label or f"periodic{block}")

    @classmethod
    def constant(cls, digit: int, label: str = "") -> "DigitStream":
        return cls.periodic((digit,), label or f"constant {digit}")

    @classmethod
    def from_symbols(cls, symbols: Sequence, pad_digit: int = 0, label: str = "") -> "DigitStream":
        """Stream playing back ``symbols`` and padding with ``pad_digit``."""
        symbols = tuple(symbols)

        def gen():
            yield from symbols
            while True:
                yield pad_digit

        return cls(gen, label)


# --- occurrence counters ---------------------------------------------------

def _as_token_string(symbols: Sequence[int]) -> str:
    return "," + ",".join(map(str, symbols)) + "," if symbols else ",,"


def count_in_block(w, u) -> int:
    """e'(w, u): occurrences of w as a subblock of u, overlaps included.

    The empty word never counts as a subblock.
    """
    w = tuple(w)
    u = tuple(u)
    if not w:
        raise DomainError("the empty word never appears as a subblock")
    if len(w) > len(u):
        return 0
    if len(u) < 256:
        k = len(w)
        return sum(1 for i in range(len(u) - k + 1) if u[i : i + k] == w)
    # regex lookahead on a comma-delimited encoding counts overlapping hits
    hay = _as_token_string(u)
    pat = "(?=" + re.escape(_as_token_string(w)) + ")"
    return len(re.findall(pat, hay))


def count_in_stream(w, x: DigitStream, N: int) -> int:
    """e(w, x, N): occurrences of w in x starting at positions 0 <= l < N.

    Reads the prefix of length N + |w| - 1, since an occurrence at position
    l < N may extend past N.
    """
    w = tuple(w)
    if not w:
        raise DomainError("the empty word never appears in a stream")
    if N < 1:
        raise DomainError("N must be >= 1")
    u = x.prefix(N + len(w) - 1)
    k = len(w)
    if len(u) < 4096:
        return sum(1 for i in range(N) if u[i : i + k] == w)
    hay = _as_token_string(u)
    pat = "(?=" + re.escape(_as_token_string(w)) + ")"
    return len(re.findall(pat, hay))


def block_frequencies(u, blocks: Sequence, denominator: int | None = None) -> dict:
    """Exact e'(w, u) / denominator for each w, as Fractions.

    ``denominator`` defaults to |u| (the goodness convention).
    """
    u = tuple(u)
    den = len(u) if denominator is None else denominator
    if den < 1:
        raise DomainError("denominator must be positive")
    out = {}
    if len(blocks) >= 64:
        # one sweep per distinct pattern length beats per-pattern scans
        lengths = sorted({len(w) for w in blocks if len(w) <= len(u)})
        counts: dict = {}
        for k in lengths:
            for i in range(len(u) - k + 1):
                seg = u[i : i + k]
                counts[seg] = counts.get(seg, 0) + 1
        for w in blocks:
            w = as_block(w)
            out[w] = Fraction(counts.get(tuple(w), 0), den)
        return out
    if blocks and len(u) >= 512:
        hay = _as_token_string(u)
        for w in blocks:
            w = as_block(w)
            pat = "(?=" + re.escape(_as_token_string(w)) + ")"
            out[w] = Fraction(len(re.findall(pat, hay)), den)
    else:
        for w in blocks:
            w = as_block(w)
            out[w] = Fraction(count_in_block(w, u), den)
    return out


def hamming(u, v) -> Fraction:
    """Normalised Hamming distance between equal-length nonempty blocks."""
    u = tuple(u)
    v = tuple(v)
    if len(u) != len(v):
        raise DomainError("hamming distance needs equal lengths")
    if not u:
        raise DomainError("hamming distance is undefined for empty blocks")
    diff = sum(1 for a, b in zip(u, v) if a != b)
    return Fraction(diff, len(u))


def running_density(positions: Sequence[int], N: int) -> Fraction:
    """|A ∩ [0, N)| / N for a sorted sequence of nonnegative positions."""
    if N < 1:
        raise DomainError("N must be >= 1")
    positions = sorted(positions) if not _is_sorted(positions) else positions
    return Fraction(bisect_left(positions, N), N)


def _is_sorted(seq) -> bool:
    return all(a <= b for a, b in zip(seq, islice(iter(seq), 1, None)))


# --- the digit-stream text format ------------------------------------------

def parse_stream_text(text: str) -> list:
    """One digit token per whitespace-separated field; ``inf`` for the INF
    sentinel; ``#`` begins a comment line."""
    symbols = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for tok in line.split():
            if tok == "inf":
                symbols.append(INF)
            else:
                try:
                    value = int(tok)
                except ValueError as exc:
                    raise DomainError(f"bad digit token {tok!r}") from exc
                if value < 0:
                    raise DomainError(f"negative digit token {tok!r}")
                symbols.append(value)
    return symbols


def format_stream(symbols: Iterable, per_line: int = 40) -> str:
    toks = ["inf" if s is INF else str(s) for s in symbols]
    lines = [" ".join(toks[i : i + per_line]) for i in range(0, len(toks), per_line)]
    return "\n".join(lines) + ("\n" if lines else "")
