"""Stream transducers that turn an integer sequence into a digit stream
whose statistical behaviour encodes whether the sequence tends to infinity.

Two constructions:

* ``pi_feeble`` interleaves long runs of prefixes of two generic streams
  (one for mu, one for nu), with run lengths scheduled so that when the
  driving sequence alpha tends to infinity the mu-blocks dominate and the
  output is generic for mu, while a bounded alpha locks in a persistent
  oscillation between mu and a fixed mix of mu and nu.

* ``pi_safe_symbol`` zeroes a scheduled fraction of the occurrences of a
  marked digit inside sparse windows, so the output's window frequencies
  oscillate persistently iff alpha stays bounded.

Both are prefix-deterministic: any finite output prefix depends on finitely
many alpha entries, and the dependency bound is reported in the trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .blocks import Block, DigitStream, as_block, block_frequencies, enumerate_blocks
from .errors import ContractViolation, DomainError
from .measures import MeasureOracle, MixOracle, is_good
from .synthesis import FullShiftGluer, Gluer

_CERT_GROWTH = (1, 2)  # multipliers of c_n at which stream goodness is certified


def make_alpha(spec) -> Callable[[int], int]:
    """An alpha producer from a spec: a callable, an int K (constant), the
    string 'identity', or an explicit sequence (1-indexed, repeated-last
    beyond its end)."""
    if callable(spec):
        return spec
    if isinstance(spec, int):
        if spec < 1:
            raise DomainError("constant alpha must be >= 1")
        return lambda n: spec
    if spec == "identity":
        return lambda n: n
    if isinstance(spec, (list, tuple)):
        entries = [int(v) for v in spec]
        if not entries or any(v < 1 for v in entries):
            raise DomainError("alpha entries must be positive")
        return lambda n: entries[min(n, len(entries)) - 1]
    raise DomainError(f"bad alpha spec {spec!r}")


class ReductionSchedule:
    """Lazily computed run-length schedule a_n, b_n, c_n, B_n.

    Each value is the least one satisfying its conditions given the earlier
    values (deterministic).  ``mode`` selects the condition scale F(n):
    paper-exact 2^(2n), or the NON-PAPER demonstration scale config*2^n.
    Every computed value is re-asserted against the raw inequalities.
    """

    def __init__(
        self,
        alpha,
        x: DigitStream,
        z: DigitStream,
        mu: MeasureOracle,
        nu: MeasureOracle,
        gluer: Gluer | None = None,
        mode: str = "paper",
        config: int = 16,
        max_cert_m: int = 1 << 14,
    ):
        if mode not in ("paper", "scaled"):
            raise DomainError(f"unknown schedule mode {mode!r}")
        self.alpha = make_alpha(alpha)
        self.x = x
        self.z = z
        self.mu = mu
        self.nu = nu
        self.gluer = gluer or FullShiftGluer()
        self.mode = mode
        self.config = config
        self.max_cert_m = max_cert_m
        self._c: dict[int, int] = {}
        self._b: dict[int, int] = {}
        self.certified: list[tuple] = []  # (stream label, n, m, eps) that passed

    @property
    def mode_label(self) -> str:
        if self.mode == "paper":
            return "paper-exact"
        return f"scaled(config={self.config}) NON-PAPER"

    def F(self, n: int) -> int:
        if self.mode == "paper":
            return 1 << (2 * n)
        return self.config * (1 << n)

    def alpha_prime(self, n: int) -> int:
        a = self.alpha(n)
        if not isinstance(a, int) or a < 1:
            raise DomainError(f"alpha({n}) must be a positive integer")
        return min(n, a)

    def c(self, n: int) -> int:
        if n not in self._c:
            self._c[n] = self._compute_c(n)
        return self._c[n]

    def a(self, n: int) -> int:
        return self.alpha_prime(n) * self.c(n)

    def b(self, n: int) -> int:
        if n not in self._b:
            self._b[n] = self._compute_b(n)
        return self._b[n]

    def B(self, k: int) -> int:
        if k < 0:
            raise DomainError("B is indexed from 0")
        return 2 * sum(self.b(i) for i in range(1, k + 1))

    def _compute_c(self, n: int) -> int:
        F = self.F(n)
        cand = max(n * F + 1, self.gluer.min_length(Fraction(1, F)) + 1)
        eps = Fraction(1, 2 ** (n + 1))
        guard = 0
        while not self._certify(n, cand, eps):
            cand += max(1, cand // 8)
            guard += 1
            if guard > 64:
                raise ContractViolation(
                    f"stream goodness certification stalled at n={n}, c={cand}"
                )
        return cand

    def _certify(self, n: int, c: int, eps: Fraction) -> bool:
        """Sampled finite-horizon check of the goodness conditions on the
        input streams: for a few m >= c, the length-m prefixes must be
        (m, eps)-good.  The full condition quantifies over all m and is
        recorded only up to this horizon."""
        for mult in _CERT_GROWTH:
            m = min(c * mult, self.max_cert_m)
            for stream, oracle, tag in ((self.x, self.mu, "x"), (self.z, self.nu, "z")):
                if not is_good(stream.prefix_block(m), oracle, m, eps).overall:
                    return False
                self.certified.append((tag, n, m, eps))
        return True

    def _compute_b(self, n: int) -> int:
        F = self.F(n)
        a_n = self.a(n)
        a_next = self.a(n + 1)
        prior = sum((self.a(i) + self.c(i)) * self.b(i) for i in range(1, n))
        return max(F + 1, (F * a_next) // a_n + 1, (F * prior) // a_n + 1)

    def assert_conditions(self, n: int) -> None:
        """Hard assertions of all seven inequality conditions at index n."""
        F = self.F(n)
        a_n, b_n, c_n = self.a(n), self.b(n), self.c(n)
        if a_n != self.alpha_prime(n) * c_n:
            raise ContractViolation(f"a_{n} != alpha'({n}) * c_{n}")
        if not c_n > n * F:
            raise ContractViolation(f"c_{n}/{n} > F({n}) fails: {c_n}")
        if not c_n > self.gluer.min_length(Fraction(1, F)):
            raise ContractViolation(f"c_{n} > N(1/F({n})) fails: {c_n}")
        eps = Fraction(1, 2 ** (n + 1))
        certified = {(tag, i) for tag, i, _, _ in self.certified}
        if ("x", n) not in certified or ("z", n) not in certified:
            raise ContractViolation(f"stream goodness never certified at n={n}")
        if not b_n > F:
            raise ContractViolation(f"b_{n} > F({n}) fails: {b_n}")
        if not a_n * b_n > F * self.a(n + 1):
            raise ContractViolation(f"a_{n} b_{n} > F({n}) a_{n+1} fails")
        prior = sum((self.a(i) + self.c(i)) * self.b(i) for i in range(1, n))
        if not a_n * b_n > F * prior:
            raise ContractViolation(f"a_{n} b_{n} > F({n}) * prior-mass fails")


# --- the feeble-specification transducer ------------------------------------

@dataclass
class BandRecord:
    n: int
    a: int
    b: int
    c: int
    alpha_prime: int
    start: int  # output position where the band begins
    prime_end: int  # output position after the b_n mu-blocks (the U'_n boundary)
    end: int  # output position after the whole band (the U''_n boundary)
    corrections: tuple = ()
    connector_lengths: tuple = ()


@dataclass
class ReductionTrace:
    mode_label: str
    bands: list
    dependency_bound: int  # output depends on alpha(1..dependency_bound)
    dropped_prefix: int  # |v_0|
    requested_length: int

    @property
    def corrections(self) -> list:
        out = []
        for band in self.bands:
            out.extend(band.corrections)
        return out

    def correction_density(self, n: int) -> Fraction:
        if n < 1:
            raise DomainError("prefix length must be >= 1")
        return Fraction(sum(1 for p in self.corrections if p < n), n)


def pi_feeble(
    alpha,
    x: DigitStream,
    z: DigitStream,
    gluer: Gluer,
    length: int,
    mu: MeasureOracle,
    nu: MeasureOracle,
    mode: str = "paper",
    config: int = 16,
) -> tuple[Block, ReductionTrace, ReductionSchedule]:
    """Output prefix of the reduction stream for the given alpha.

    Band n consists of b_n glued copies of x_[0,a_n) followed by b_n glued
    copies of z_[0,c_n); the leading seed word v_0 is dropped from the
    output.  Glue budgets (connector length and Hamming correction relative
    to 1/F(n)) are asserted on every glue event.  Bands are emitted whole:
    the output runs to the first band boundary at or past the requested
    length, so every started band contributes both of its checkpoints.
    """
    if length < 1:
        raise DomainError("length must be >= 1")
    schedule = ReductionSchedule(alpha, x, z, mu, nu, gluer, mode=mode, config=config)
    v0 = gluer.seed_word()
    sess = gluer.session()
    if len(v0):
        conn, fixed = sess.append(v0)
        if len(conn) or fixed != v0:
            raise ContractViolation("seed word should glue to itself")
    drop = len(v0)
    out: list[int] = []
    bands: list[BandRecord] = []
    fast = isinstance(gluer, FullShiftGluer)
    n = 0
    prev_len = drop  # |u_i| of the most recent glued block, for the s budget
    while len(out) < length:
        n += 1
        schedule.assert_conditions(n)
        a_n, b_n, c_n = schedule.a(n), schedule.b(n), schedule.c(n)
        budget = Fraction(1, schedule.F(n))
        start = len(out)
        corrections: list[int] = []
        conn_lengths: list[int] = []
        for block, copies in ((x.prefix_block(a_n), b_n), (z.prefix_block(c_n), b_n)):
            if fast:
                out.extend(tuple(block) * copies)
                conn_lengths.extend([0] * copies)
                prev_len = len(block)
            else:
                for _ in range(copies):
                    conn, fixed = sess.append(block)
                    if prev_len and len(conn) > budget * prev_len:
                        raise ContractViolation("connector exceeds the glue budget")
                    dist = Fraction(
                        sum(1 for p, q in zip(block, fixed) if p != q), len(block)
                    )
                    if dist >= budget:
                        raise ContractViolation("glue correction exceeds the budget")
                    base = len(out) + len(conn)
                    corrections.extend(
                        base + i for i, (p, q) in enumerate(zip(block, fixed)) if p != q
                    )
                    conn_lengths.append(len(conn))
                    out.extend(conn)
                    out.extend(fixed)
                    prev_len = len(block)
        prime_end = start + b_n * a_n + sum(conn_lengths[:b_n])
        bands.append(
            BandRecord(
                n=n,
                a=a_n,
                b=b_n,
                c=c_n,
                alpha_prime=schedule.alpha_prime(n),
                start=start,
                prime_end=prime_end,
                end=len(out),
                corrections=tuple(corrections),
                connector_lengths=tuple(conn_lengths),
            )
        )
    trace = ReductionTrace(
        mode_label=schedule.mode_label,
        bands=bands,
        dependency_bound=n + 1,  # b_n needs a_{n+1}, hence alpha(n+1)
        dropped_prefix=drop,
        requested_length=length,
    )
    return Block(out), trace, schedule


# --- dichotomy verification -------------------------------------------------

@dataclass
class CheckpointStat:
    n: int
    kind: str  # "prime" (U'_n) or "double" (U''_n)
    position: int
    frequencies: dict
    deviation_mu: Fraction  # max |freq - mu| over the checked blocks
    deviation_mix: Fraction  # same against the band's mix (1/(k+1))nu + (k/(k+1))mu


@dataclass
class DichotomyReport:
    checkpoints: list
    correction_densities: list  # (position, density)
    dominating_ratios: list  # (n, prior mass / band-n mu-run mass)
    verdict: str
    gap: Fraction  # |freq_1(U') - freq_1(U'')| at the last full band

    @property
    def double_deviations(self) -> list:
        return [s.deviation_mu for s in self.checkpoints if s.kind == "double"]

    @property
    def monotone_improving(self) -> bool:
        devs = self.double_deviations
        return all(a > b for a, b in zip(devs, devs[1:]))


def verify_reduction(
    output: Block,
    trace: ReductionTrace,
    mu: MeasureOracle,
    nu: MeasureOracle,
    m: int = 2,
    eps=Fraction(5, 100),
    min_band: int = 2,
) -> DichotomyReport:
    """Frequency trajectories at the U'/U'' boundaries of a recorded run.

    Early bands are dominated by sampling noise of the very short stream
    prefixes they repeat, so the verdict uses bands >= min_band.  The
    dichotomy: deviations from mu at successive U'' boundaries shrink
    (consistent with a generic output), or a persistent gap separates the
    U' statistics (mu-like) from the U'' statistics (mix-like).
    """
    eps = Fraction(eps)
    ws = enumerate_blocks(mu.alphabet, m)
    stats: list[CheckpointStat] = []
    one = Block([1])
    gaps = []
    for band in trace.bands:
        k = band.alpha_prime
        mix = MixOracle(mu, nu, Fraction(1, k + 1))
        pair = {}
        for kind, pos in (("prime", band.prime_end), ("double", band.end)):
            if pos > len(output):
                continue
            freqs = block_frequencies(output[:pos], ws)
            dev_mu = max(abs(freqs[w] - Fraction(mu.mass(w))) for w in ws)
            dev_mix = max(abs(freqs[w] - Fraction(mix.mass(w))) for w in ws)
            stats.append(
                CheckpointStat(
                    n=band.n,
                    kind=kind,
                    position=pos,
                    frequencies=freqs,
                    deviation_mu=dev_mu,
                    deviation_mix=dev_mix,
                )
            )
            if one in freqs:
                pair[kind] = freqs[one]
        if len(pair) == 2 and band.n >= min_band:
            gaps.append(abs(pair["prime"] - pair["double"]))
    densities = [
        (band.end, trace.correction_density(band.end))
        for band in trace.bands
        if band.end <= len(output)
    ]
    ratios = []
    for band in trace.bands:
        prior = band.start
        if prior:
            ratios.append((band.n, Fraction(prior, band.b * band.a)))
    doubles = [s.deviation_mu for s in stats if s.kind == "double"]
    gap = gaps[-1] if gaps else Fraction(0)
    improving = all(a > b for a, b in zip(doubles, doubles[1:])) and bool(doubles)
    # a stalled alpha' (alpha'_n < n) pins the band mix away from mu forever;
    # while alpha' = n the run is still indistinguishable from a generic one
    stalled = any(band.alpha_prime < band.n for band in trace.bands)
    if stalled and gap >= eps:
        verdict = "oscillation detected"
    elif not stalled and improving:
        verdict = "consistent with generic"
    elif gap >= eps:
        verdict = "oscillation detected"
    elif improving or (doubles and doubles[-1] < eps):
        verdict = "consistent with generic"
    else:
        verdict = "inconclusive"
    return DichotomyReport(
        checkpoints=stats,
        correction_densities=densities,
        dominating_ratios=ratios,
        verdict=verdict,
        gap=gap,
    )


# --- the safe-symbol transducer ---------------------------------------------

@dataclass
class WindowRecord:
    index: int  # pair index n
    start: int  # b_{2n-1}
    end: int  # b_{2n}
    q: int  # occurrences of the marked digit in the input window
    p: int  # first zeroed occurrence rank (1-based), q - floor(q/alpha) + 1
    zeroed: int
    alpha: int


@dataclass
class SafeSymbolTrace:
    branch: str  # "standard" (mu != dirac0) or "dirac" (mu == dirac0)
    gamma: int
    boundaries: list  # b_1 < b_2 < ... (window endpoints, b_0 = 0 implicit)
    windows: list  # WindowRecord per pair
    stalled: list  # pair indices where the frequency scan gave up

    def zeroed_positions(self, length: int) -> set:
        raise NotImplementedError  # filled in by the transducer


def _window_boundaries(length: int, first: int, growth_denom: int = 24) -> list[int]:
    """Super-geometric boundary ladder: b_{k+1} ~ b_k * (1 + k/growth_denom),
    so consecutive ratios b_k/b_{k+1} tend to zero while many windows still
    fit below the requested depth."""
    bounds = [first]
    k = 1
    while bounds[-1] < length:
        k += 1
        nxt = bounds[-1] + max(2, (bounds[-1] * k) // growth_denom)
        bounds.append(min(nxt, length))
    if len(bounds) % 2:
        bounds.pop()  # windows come in pairs; drop an unmatched boundary
    return bounds


def pi_safe_symbol(
    alpha,
    x: DigitStream,
    gamma: int,
    length: int,
    branch: str = "standard",
    first_window: int = 40,
    scan_budget: int = 64,
    freq_tol=Fraction(1, 10),
) -> tuple[Block, SafeSymbolTrace]:
    """Zero a scheduled fraction of the gamma-occurrences of x.

    Window pair n covers [b_{2n-1}, b_{2n}); inside it the occurrences of
    gamma at positions i_1 < ... < i_q are located and the tail ranks
    p..q with p = q - floor(q/alpha(n)) + 1 are zeroed.  The 'standard'
    branch keeps x elsewhere; the 'dirac' branch keeps x only on the zeroed
    ranks and outputs 0 everywhere else.  Boundaries are nudged forward (up
    to scan_budget) so each window's input gamma-frequency stays within
    freq_tol of the running global frequency; failures are recorded as
    stalls, not errors.
    """
    if branch not in ("standard", "dirac"):
        raise DomainError(f"unknown branch {branch!r}")
    if length < first_window * 4:
        raise DomainError("depth too small for the window schedule")
    alpha_fn = make_alpha(alpha)
    symbols = list(x.prefix(length))
    if gamma not in symbols:
        raise DomainError(f"marked digit {gamma} never occurs in the scanned prefix")
    global_freq = Fraction(symbols.count(gamma), length)
    freq_tol = Fraction(freq_tol)

    bounds = _window_boundaries(length, first_window)
    # nudge each boundary so the window it closes has a stable input frequency
    stalled: list[int] = []
    adjusted = [bounds[0]]
    for k in range(1, len(bounds)):
        lo = adjusted[-1]
        best = None
        for cand in range(bounds[k], min(bounds[k] + scan_budget, length) + 1):
            if cand <= lo + 1:
                continue
            f = Fraction(symbols[lo:cand].count(gamma), cand - lo)
            dev = abs(f - global_freq)
            if best is None or dev < best[0]:
                best = (dev, cand)
            if dev <= freq_tol:
                break
        if best is None:
            best = (Fraction(1), min(bounds[k] + scan_budget, length))
        if best[0] > freq_tol:
            stalled.append(k)
        adjusted.append(best[1])
    bounds = adjusted

    windows: list[WindowRecord] = []
    zeroed: set[int] = set()
    for n in range(1, len(bounds) // 2 + 1):
        start, end = bounds[2 * n - 2], bounds[2 * n - 1]
        occ = [i for i in range(start, end) if symbols[i] == gamma]
        q = len(occ)
        a = alpha_fn(n)
        if not isinstance(a, int) or a < 1:
            raise DomainError(f"alpha({n}) must be a positive integer")
        if q:
            p = q - q // a + 1
            tail = occ[p - 1 :]
        else:
            p = 1
            tail = []
        zeroed.update(tail)
        windows.append(
            WindowRecord(
                index=n, start=start, end=end, q=q, p=p, zeroed=len(tail), alpha=a
            )
        )
    if branch == "standard":
        out = [0 if i in zeroed else s for i, s in enumerate(symbols)]
    else:
        out = [s if i in zeroed else 0 for i, s in enumerate(symbols)]
    trace = SafeSymbolTrace(
        branch=branch,
        gamma=gamma,
        boundaries=bounds,
        windows=windows,
        stalled=stalled,
    )
    trace.zeroed_positions = lambda n: {i for i in zeroed if i < n}
    return Block(out), trace


@dataclass
class WindowStats:
    """Per-window gamma frequencies of a safe-symbol run's output."""

    zeroed_windows: list  # (pair index, boundary position, frequency)
    kept_windows: list
    gap: Fraction  # |last kept - last zeroed| window frequency

    @property
    def final_zeroed(self) -> Fraction:
        return self.zeroed_windows[-1][2]

    @property
    def final_kept(self) -> Fraction:
        return self.kept_windows[-1][2]


def safe_symbol_window_stats(output: Block, trace: SafeSymbolTrace) -> WindowStats:
    """Frequencies of the marked digit within each schedule window of the
    output: the windows that were zeroed versus the untouched gaps between
    them.  The oscillation gap compares the last window of each kind."""
    gamma = trace.gamma
    zeroed_rows = []
    kept_rows = []
    prev = 0
    for k, b in enumerate(trace.boundaries, start=1):
        seg = output[prev:b]
        if len(seg):
            f = Fraction(sum(1 for s in seg if s == gamma), len(seg))
            # even boundaries close the zeroed windows [b_{2n-1}, b_{2n})
            if k % 2 == 0:
                zeroed_rows.append((k // 2, b, f))
            else:
                kept_rows.append(((k + 1) // 2, b, f))
        prev = b
    if not zeroed_rows or not kept_rows:
        raise DomainError("run too short for window statistics")
    gap = abs(kept_rows[-1][2] - zeroed_rows[-1][2])
    return WindowStats(zeroed_windows=zeroed_rows, kept_windows=kept_rows, gap=gap)
