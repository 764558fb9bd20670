import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftlab.blocks import Block, DigitStream
from shiftlab.errors import DomainError
from shiftlab.measures import (
    BernoulliOracle,
    DiracZeroOracle,
    MixOracle,
    check_oracle_consistency,
    convergence_diagnostic,
    empirical,
    is_good,
    parse_oracle_spec,
    robustness_delta,
)


def test_bernoulli_masses():
    uni = BernoulliOracle([Fraction(1, 2), Fraction(1, 2)])
    assert uni.mass(Block([0, 1])) == Fraction(1, 4)
    skew = BernoulliOracle([Fraction(3, 4), Fraction(1, 4)])
    assert skew.mass(Block([0, 0])) == Fraction(9, 16)
    degenerate = BernoulliOracle([1, 0])
    assert degenerate.mass(Block([0, 0, 0])) == 1
    assert degenerate.mass(Block([0, 1])) == 0
    with pytest.raises(DomainError):
        BernoulliOracle([Fraction(1, 2), Fraction(1, 3)])


def test_dirac_masses():
    d = DiracZeroOracle()
    assert d.mass(Block([0, 0, 0])) == 1
    assert d.mass(Block([0, 1, 0])) == 0


def test_mix_masses():
    uni = BernoulliOracle([Fraction(1, 2), Fraction(1, 2)])
    d = DiracZeroOracle()
    assert MixOracle(uni, d, 0).mass(Block([0, 1])) == uni.mass(Block([0, 1]))
    assert MixOracle(uni, d, 1).mass(Block([0])) == 1
    assert MixOracle(uni, d, Fraction(1, 2)).mass(Block([0])) == Fraction(3, 4)


def test_oracle_consistency_exact_oracles():
    for oracle in (
        BernoulliOracle([Fraction(1, 2), Fraction(1, 2)]),
        BernoulliOracle([Fraction(3, 4), Fraction(1, 4)]),
        DiracZeroOracle(),
        MixOracle(
            BernoulliOracle([Fraction(1, 2), Fraction(1, 2)]),
            DiracZeroOracle(),
            Fraction(1, 3),
        ),
    ):
        assert check_oracle_consistency(oracle, max_len=4) == 0


def test_is_good_examples():
    uni = BernoulliOracle([Fraction(1, 2), Fraction(1, 2)])
    u = Block((0, 1) * 50)
    assert is_good(u, uni, 2, Fraction(2, 100)).overall
    zeros = Block([0] * 100)
    assert not is_good(zeros, uni, 1, Fraction(1, 10)).overall
    assert is_good(zeros, uni, 1, Fraction(11, 10)).overall  # vacuous bound


def test_is_good_strictness():
    uni = BernoulliOracle([Fraction(1, 2), Fraction(1, 2)])
    u = Block([0, 1, 0, 1])
    # freq of "0" is exactly 1/2; eps must keep the bound strict
    rep = is_good(u, uni, 1, Fraction(1, 100))
    assert rep.overall
    # a block at exactly mass + eps violates the strict upper bound
    v = Block([0, 0, 0, 1])  # freq 3/4 = 1/2 + 1/4
    assert not is_good(v, uni, 1, Fraction(1, 4)).overall


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_is_good_monotone_in_eps(seed, m):
    rng = random.Random(seed)
    uni = BernoulliOracle([Fraction(1, 2), Fraction(1, 2)])
    u = Block(rng.randrange(2) for _ in range(rng.randrange(8, 60)))
    eps = Fraction(rng.randrange(1, 50), 100)
    if is_good(u, uni, m, eps).overall:
        assert is_good(u, uni, m, 2 * eps).overall


def test_robustness_delta_value():
    from shiftlab.blocks import Alphabet

    # first 4 binary blocks have max length 2
    assert robustness_delta(4, Fraction(1, 10), Alphabet.finite(2)) == Fraction(1, 40)


def test_empirical_measure():
    e = empirical(Block([0, 1, 0, 1]), 2)
    assert e.frequency(Block([0])) == Fraction(1, 2)
    assert e.frequency(Block([0, 1])) == Fraction(2, 3)
    assert e.frequency(Block([1, 0])) == Fraction(1, 3)
    assert e.frequency(Block([0, 0])) == 0
    ones = empirical(Block([1] * 20), 1)
    assert ones.frequency(Block([1])) == 1
    table = empirical(Block([0, 1, 1, 0, 1]), 1).table()
    assert sum(table[w] for w in table if len(w) == 1) == 1


def test_convergence_diagnostic_periodic():
    uni = BernoulliOracle([Fraction(1, 2), Fraction(1, 2)])
    alt = DigitStream.periodic((0, 1))
    rep = convergence_diagnostic(alt, uni, 2, Fraction(5, 100), [100, 1000, 10000])
    assert rep.all_good
    d = DiracZeroOracle()
    zeros = DigitStream.constant(0)
    # freq of 00 in 0^N is (N-1)/N, so eps must clear (|w|-1)/N
    rep = convergence_diagnostic(zeros, d, 3, Fraction(5, 100), [100, 1000])
    assert rep.all_good


def test_convergence_oscillation_gap():
    # runs of 0s and 1s with lengths growing tenfold
    def gen():
        digit, run = 0, 10
        while True:
            for _ in range(run):
                yield digit
            digit, run = 1 - digit, run * 10

    x = DigitStream(gen)
    uni = BernoulliOracle([Fraction(1, 2), Fraction(1, 2)])
    checkpoints = [10**k for k in range(1, 7)]
    rep = convergence_diagnostic(x, uni, 1, Fraction(5, 100), checkpoints)
    assert rep.oscillation_gap(Block([0])) > Fraction(1, 2)


def test_parse_oracle_spec():
    uni = parse_oracle_spec("bernoulli 1/2 1/2")
    assert uni.mass(Block([0])) == Fraction(1, 2)
    assert parse_oracle_spec("dirac0").mass(Block([0])) == 1
    mixed = parse_oracle_spec("mix 1/2 (bernoulli 1/2 1/2) dirac0")
    assert mixed.mass(Block([0])) == Fraction(3, 4)
    gauss = parse_oracle_spec("gauss")
    assert abs(gauss.mass(Block([1])) - 0.415037) < 1e-5
    with pytest.raises(DomainError):
        parse_oracle_spec("nonsense 1 2")
