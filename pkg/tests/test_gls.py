import random
from fractions import Fraction

import pytest

from shiftlab.blocks import INF
from shiftlab.errors import DomainError
from shiftlab.gls import (
    FiniteGlsSystem,
    base_r_system,
    gls_evaluate,
    gls_itinerary,
    gls_make,
    luroth_system,
    parse_gls_spec,
    tent_system,
)
from shiftlab.realnum import golden_ratio, sqrt2_minus_1


def test_base2_coefficients():
    sys = base_r_system(2)
    assert sys.s(0) == 2 and sys.s(1) == 2
    assert sys.h(0) == 0 and sys.h(1) == 1
    assert sys.eps(0) == 0 and sys.eps(1) == 0


def test_tent_coefficients():
    sys = tent_system()
    assert sys.eps(0) == 0 and sys.eps(1) == 1
    assert sys.s(0) == 2 and sys.s(1) == 2
    assert sys.h(1) == 1


def test_luroth_telescoping_and_location():
    sys = luroth_system()
    total = sum(
        sys.interval(n)[1] - sys.interval(n)[0] for n in range(1, 101)
    )
    assert total == 1 - Fraction(1, 101)
    assert sys.locate_exact(Fraction(1, 3)) == 2
    assert sys.locate_exact(Fraction(2, 5)) == 2
    assert sys.locate_exact(Fraction(0)) is INF
    assert sys.locate_exact(Fraction(1)) is INF
    assert sys.s(3) == 12 and sys.h(3) == 3


def test_bad_partitions_rejected():
    with pytest.raises(DomainError):
        gls_make([(0, 0, Fraction(1, 2), 0)])  # mass 1/2
    with pytest.raises(DomainError):
        gls_make(
            [(0, 0, Fraction(2, 3), 0), (1, Fraction(1, 2), 1, 0)]
        )  # overlap


def test_itinerary_examples():
    assert gls_itinerary(tent_system(), Fraction(1, 3), 5) == [0, 1, 1, 1, 1]
    assert gls_itinerary(base_r_system(2), Fraction(1, 2), 3) == [1, 0, 0]
    assert gls_itinerary(base_r_system(2), 0, 4) == [0, 0, 0, 0]
    with pytest.raises(DomainError):
        gls_itinerary(tent_system(), Fraction(3, 2), 1)


def test_itinerary_through_uncovered_set():
    # Luroth sends 1/3 to 6*(1/3) - 2 = 0, which sits outside every interval
    digits = gls_itinerary(luroth_system(), Fraction(1, 3), 4)
    assert digits[0] == 2
    assert digits[1] is INF
    assert digits[2] is INF


def test_itinerary_certified_enclosure_input():
    # sqrt2 - 1 ~ 0.4142: base-2 digits from a non-rational certified point
    digits = gls_itinerary(base_r_system(2), sqrt2_minus_1(), 8)
    assert digits[:4] == [0, 1, 1, 0]


def test_evaluate_examples():
    iv = gls_evaluate(tent_system(), [0, 1, 1, 1, 1, 1])
    assert iv.width == Fraction(1, 64)
    assert iv.contains(Fraction(1, 3))
    iv = gls_evaluate(base_r_system(2), [1])
    assert (iv.lo, iv.hi) == (Fraction(1, 2), Fraction(1, 1))
    iv = gls_evaluate(base_r_system(3), [2, 0, 1])
    assert iv.width == Fraction(1, 27)


def _random_system_corpus():
    custom = gls_make(
        [
            (0, 0, Fraction(1, 4), 0),
            (1, Fraction(1, 4), Fraction(1, 2), 1),
            (2, Fraction(1, 2), 1, 0),
        ],
        label="threepiece",
    )
    return [tent_system(), base_r_system(2), base_r_system(3), custom]


def test_round_trip_random_rationals():
    rng = random.Random(42)
    for sys in _random_system_corpus():
        for _ in range(50):
            x = Fraction(rng.randrange(1, 997), 997)
            digits = gls_itinerary(sys, x, 8)
            if any(d is INF for d in digits):
                continue
            iv = gls_evaluate(sys, digits)
            assert iv.contains(x)
            widths = Fraction(1)
            for d in digits:
                widths /= sys.s(d)
            assert iv.width == widths


def test_shift_conjugacy_containment():
    rng = random.Random(43)
    for sys in _random_system_corpus():
        for _ in range(25):
            x = Fraction(rng.randrange(1, 499), 499)
            digits = gls_itinerary(sys, x, 6)
            if any(d is INF for d in digits):
                continue
            # applying the map sends the point into the shifted digit word's set
            tx = sys.step_exact(digits[0], x)
            shifted = gls_evaluate(sys, digits[1:])
            assert shifted.contains(tx)
            # and the interval itself maps inside the shifted interval
            lo, hi = sys.step_interval(digits[0], *_half_open(sys, digits))
            assert shifted.lo <= lo and hi <= shifted.hi


def _half_open(sys, digits):
    iv = gls_evaluate(sys, digits)
    return iv.lo, iv.hi


def test_parse_gls_spec_roundtrip():
    text = """gls
    # tent map
    interval 0 0 1/2 0
    interval 1 1/2 1 1
    """
    sys = parse_gls_spec(text)
    assert gls_itinerary(sys, Fraction(1, 3), 5) == [0, 1, 1, 1, 1]
    with pytest.raises(DomainError):
        parse_gls_spec("interval 0 0 1 0")
