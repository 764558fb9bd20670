import itertools
import math
import random
from fractions import Fraction

import pytest

from shiftlab.beta import (
    BetaSystem,
    beta_automaton,
    beta_orbit_block,
    beta_repair,
    parry_oracle,
)
from shiftlab.blocks import Block, enumerate_blocks
from shiftlab.errors import DomainError
from shiftlab.measures import BernoulliOracle
from shiftlab.realnum import golden_ratio, sqrt2_minus_1, tribonacci_constant


def test_replacement_sequences():
    g = BetaSystem(golden_ratio())
    assert g.e_sequence(8) == Block([1, 0] * 4)
    tri = BetaSystem(tribonacci_constant())
    assert tri.e_sequence(9) == Block([1, 1, 0] * 3)
    two = BetaSystem(2)
    assert two.e_sequence(5) == Block([1] * 5)
    assert two.digit_top == 1
    three = BetaSystem(3)
    assert three.e_sequence(4) == Block([2] * 4)


def test_greedy_expansion_examples():
    g = BetaSystem(golden_ratio())
    # 1/phi + 1/phi^2 = 1 exactly
    assert g.expand(1, 5) == [1, 1, 0, 0, 0]
    assert g.expand(0, 4) == [0, 0, 0, 0]
    two = BetaSystem(2)
    assert two.expand(Fraction(1, 3), 6) == [0, 1, 0, 1, 0, 1]
    with pytest.raises(DomainError):
        g.expand(Fraction(3, 2), 1)
    with pytest.raises(DomainError):
        BetaSystem(Fraction(1, 2))


def test_expansion_of_certified_enclosure_point():
    two = BetaSystem(2)
    # sqrt2 - 1 ~ 0.41421: binary digits via the dyadic fallback
    assert two.expand(sqrt2_minus_1(), 6) == [0, 1, 1, 0, 1, 0]


def test_replacement_word_is_admissible():
    for beta in (golden_ratio(), tribonacci_constant(), 2):
        sys = BetaSystem(beta)
        assert sys.is_admissible(sys.e_sequence(20))


def test_admissibility_matches_automaton_exhaustively():
    for beta in (golden_ratio(), tribonacci_constant(), 2):
        sys = BetaSystem(beta)
        auto = beta_automaton(sys, 12)
        digits = range(sys.digit_top + 1)
        for n in range(1, 9):
            for w in itertools.product(digits, repeat=n):
                assert sys.is_admissible(w) == auto.accepts(w), w


def test_proper_mode_is_stricter():
    g = BetaSystem(golden_ratio())
    assert g.is_admissible((1, 0)) and not g.is_admissible((1, 0), "proper")
    assert g.is_admissible((0, 0), "proper")
    # proper implies admissible on all short binary words
    for n in range(1, 7):
        for w in itertools.product(range(2), repeat=n):
            if g.is_admissible(w, "proper"):
                assert g.is_admissible(w)


def test_automaton_paths():
    g = BetaSystem(golden_ratio())
    auto = beta_automaton(g, 6)
    assert auto.run(()) == 0
    assert auto.run((1,)) == 1
    # the replacement word 1010... keeps the spine alive through "10";
    # a return edge to vertex 0 needs the next 0
    assert auto.run((1, 0)) == 2
    assert auto.run((1, 0, 0)) == 0
    assert auto.run((1, 1)) is None
    assert auto.is_closed((1, 0, 0)) and not auto.is_closed((1, 0))
    with pytest.raises(DomainError):
        auto.run((0,) * 7)


def test_repair_examples():
    g = BetaSystem(golden_ratio())
    assert beta_repair(g, (0,), (1, 0, 1, 0, 0, 0)) == Block([1, 0, 0, 0, 0, 0])
    # already closed words are returned with only their last 1 lowered
    assert beta_repair(g, (), (0, 0, 0)) == Block([0, 0, 0])
    fixed = beta_repair(g, (1, 0, 0), (0, 1, 0))
    auto = beta_automaton(g, 6)
    assert auto.is_closed(Block([1, 0, 0]) + fixed)
    with pytest.raises(DomainError):
        beta_repair(g, (1,), (0,))  # u not closed
    with pytest.raises(DomainError):
        beta_repair(g, (), (1, 1))  # v outside the language


def test_repair_changes_at_most_one_symbol():
    g = BetaSystem(golden_ratio())
    auto = beta_automaton(g, 16)
    rng = random.Random(9)
    for _ in range(200):
        v = beta_orbit_block(g, 8, rng.getrandbits(32))
        fixed = beta_repair(auto, (), v)
        assert sum(1 for a, b in zip(v, fixed) if a != b) <= 1
        assert auto.is_closed(fixed)


def test_orbit_block_is_admissible():
    for beta in (golden_ratio(), tribonacci_constant()):
        sys = BetaSystem(beta)
        w = beta_orbit_block(sys, 2000, seed=5)
        assert len(w) == 2000
        assert sys.is_admissible(w)
    assert beta_orbit_block(BetaSystem(golden_ratio()), 50, seed=5) == beta_orbit_block(
        BetaSystem(golden_ratio()), 50, seed=5
    )


def test_parry_integer_base_is_product_measure():
    oracle = parry_oracle(2)
    uni = BernoulliOracle([Fraction(1, 2), Fraction(1, 2)])
    for w in enumerate_blocks(oracle.alphabet, 126):
        assert abs(oracle.mass(w) - uni.mass(w)) < 1e-9


def test_parry_golden_cylinder_masses():
    oracle = parry_oracle(golden_ratio())
    # invariant density gives mass (5 + sqrt5)/10 to the 0-cylinder
    expected = (5 + math.sqrt(5)) / 10
    assert abs(float(oracle.mass(Block([0]))) - expected) < 1e-12
    assert abs(float(oracle.mass(Block([0])) + oracle.mass(Block([1]))) - 1) < 1e-12
    lo, hi = oracle.mass_bounds(Block([0, 0]))
    assert lo <= (lo + hi) / 2 <= hi


def test_parry_density_agrees_with_orbit_frequencies():
    g = BetaSystem(golden_ratio())
    density = parry_oracle(g)
    birkhoff = parry_oracle(g, method="birkhoff", samples=20000, seed=3)
    for w in [Block([0]), Block([1]), Block([0, 0]), Block([1, 0])]:
        assert abs(float(density.mass(w)) - float(birkhoff.mass(w))) < 1e-2


def test_parry_rejects_bad_arguments():
    with pytest.raises(DomainError):
        parry_oracle(golden_ratio(), method="nonsense")
    with pytest.raises(DomainError):
        parry_oracle(golden_ratio(), method="birkhoff", samples=10)
