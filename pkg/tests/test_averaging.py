"""Weighted ergodic averages against closed-form oracles."""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from ergolab.averaging import (
    CharacterWeight,
    Constant,
    ConvergenceReport,
    LevelSetIndicator,
    PointwiseProduct,
    QMultWeight,
    average_prefix,
    cesaro_limit,
    csum,
    ergodic_average,
    l2_product_average,
    mean_and_stderr,
    multiple_average,
    sample_product_averages,
)
from ergolab.folner import Boxes, Custom, Intervals
from ergolab.frequency import GOLDEN, ONE, SQRT2, SQRT3, Frequency
from ergolab.qmult import THUE_MORSE
from ergolab.systems import (
    Character,
    FiniteElem,
    FiniteRotation,
    TorusPoint,
    TorusRotation,
)


def e(t):
    return cmath.exp(2j * cmath.pi * t)


def geometric_average(alpha_val, n):
    """(1/N) sum_{k=1}^{N} e(k alpha), the exact finite sum."""
    z = e(alpha_val)
    return z * (z**n - 1) / (z - 1) / n


INTERVALS = Intervals()
ONES = Constant(1)


def test_constant_average_is_one():
    sys = TorusRotation((SQRT2,))
    got = ergodic_average(sys, Character((0,)), TorusPoint((0.3,)), ONES, INTERVALS, 1000)
    assert got == 1


def test_geometric_series_oracle():
    sys = TorusRotation((SQRT2,))
    for n in (10, 1000, 2**15):
        got = ergodic_average(sys, Character((1,)), TorusPoint((0.0,)), ONES, INTERVALS, n)
        want = geometric_average(math.sqrt(2), n)
        assert abs(got - want) < 1e-9


def test_full_cycle_cancellation_exact():
    sys = FiniteRotation((4,), (1,))
    got = ergodic_average(
        sys, Character((1,)), FiniteElem((0,), (4,)), ONES, INTERVALS, 4
    )
    assert abs(got) <= 1e-15


def test_rational_rotation_period_exact():
    third = Frequency({ONE: Fraction(1, 3)})
    sys = TorusRotation((third,))
    got = ergodic_average(
        sys, Character((1,)), TorusPoint((Fraction(0),)), ONES, INTERVALS, 3000
    )
    assert abs(got) < 1e-12


def test_linearity_in_weight():
    sys = TorusRotation((SQRT2,))
    obs = Character((1,))
    p = TorusPoint((0.4,))
    w = CharacterWeight(SQRT3)
    a1 = ergodic_average(sys, obs, p, w, INTERVALS, 500)
    a2 = ergodic_average(sys, obs, p, Constant(2), INTERVALS, 500)
    a3 = ergodic_average(sys, obs, p, ONES, INTERVALS, 500)
    assert abs(a2 - 2 * a3) < 1e-12
    # character weight shifts the frequency: e(n sqrt3) e(n sqrt2 + x)
    want = e(0.4) * geometric_average(math.sqrt(2) + math.sqrt(3), 500)
    assert abs(a1 - want) < 1e-9


def test_character_weight_values_match_scalar():
    w = CharacterWeight(SQRT2)
    ns = np.arange(1, 50)
    arr = w.values(ns)
    for i in (0, 10, 48):
        assert abs(arr[i] - w.value(int(ns[i]))) < 1e-12


def test_qmult_weight_bound_and_values():
    w = QMultWeight(THUE_MORSE)
    assert w.bound() == 1
    ns = np.arange(16)
    assert list(w.values(ns)) == [THUE_MORSE.value(n) for n in range(16)]


def test_level_set_indicator():
    # target index 0 selects the value +1, index 1 the value -1
    w = LevelSetIndicator(THUE_MORSE, 0)
    vals = [w.value(n) for n in range(8)]
    assert vals == [1, 0, 0, 1, 0, 1, 1, 0]
    w_minus = LevelSetIndicator(THUE_MORSE, 1)
    assert [w.value(n) + w_minus.value(n) for n in range(8)] == [1] * 8
    assert w.bound() == 1


def test_pointwise_product_weight():
    w = PointwiseProduct((QMultWeight(THUE_MORSE), Constant(2)))
    assert w.value(3) == 2 * THUE_MORSE.value(3)
    assert w.bound() == 2


def test_box_average_reduces_to_interval_for_d1():
    sys = TorusRotation((SQRT2,))
    obs = Character((1,))
    p = TorusPoint((0.1,))
    a = ergodic_average(sys, obs, p, ONES, INTERVALS, 256)
    b = ergodic_average(sys, obs, p, ONES, Boxes(1), 256)
    assert abs(a - b) < 1e-12


def test_box_average_2d_factorizes():
    # over a box, the average of e(m a + n b) is a product of 1-d averages
    sys = TorusRotation((SQRT2, SQRT3))
    obs = Character((1, 1))
    p = TorusPoint((0.0, 0.0))
    n = 64
    got = ergodic_average(sys, obs, p, ONES, Boxes(2), n)
    want = geometric_average(math.sqrt(2), n) * geometric_average(math.sqrt(3), n)
    assert abs(got - want) < 1e-9


def test_custom_folner_average():
    sys = FiniteRotation((4,), (1,))
    obs = Character((1,))
    p = FiniteElem((0,), (4,))
    f = Custom(({1}, {1, 2, 3, 4}))
    got = ergodic_average(sys, obs, p, ONES, f, 2)
    assert abs(got) <= 1e-15


def test_average_prefix_matches_individual_averages():
    sys = TorusRotation((GOLDEN,))
    obs = Character((1,))
    p = TorusPoint((0.2,))
    pref = average_prefix(sys, obs, p, ONES, 512)
    for n in (1, 7, 100, 512):
        got = pref[n - 1]
        want = ergodic_average(sys, obs, p, ONES, INTERVALS, n)
        assert abs(got - want) < 1e-10


def test_multiple_average_exponent_addition():
    # product over i of e(i n a + x) = e(k x + C(k+1,2) n a)
    sys = TorusRotation((SQRT2,))
    obs = [Character((1,)), Character((1,))]
    x = 0.15
    n = 4096
    got = multiple_average(sys, obs, TorusPoint((x,)), ONES, n)
    want = e(2 * x) * geometric_average(3 * math.sqrt(2), n)
    assert abs(got - want) < 1e-9


def test_multiple_average_k1_is_ergodic_average():
    sys = TorusRotation((SQRT2,))
    obs = Character((1,))
    p = TorusPoint((0.6,))
    a = multiple_average(sys, [obs], p, ONES, 1000)
    b = ergodic_average(sys, obs, p, ONES, INTERVALS, 1000)
    assert abs(a - b) < 1e-12


def test_tm_weighted_rotation_average_small():
    sys = TorusRotation((SQRT2,))
    w = QMultWeight(THUE_MORSE)
    got = multiple_average(sys, [Character((1,))], TorusPoint((0.0,)), w, 2**16)
    assert abs(got) < 0.05


def test_csum_deterministic_and_accurate():
    vals = np.array([1e16, 1.0, -1e16, 1.0], dtype=complex)
    assert csum(vals) == 2.0


def test_l2_product_constant_is_exact():
    x = TorusRotation((SQRT2,))
    y = TorusRotation((SQRT3,))
    mean, err = l2_product_average(x, y, [Character((0,))], [Character((0,))], 8, 100, 7)
    assert mean == 1
    assert err == 0


def test_sample_product_averages_seed_reproducible():
    x = TorusRotation((SQRT2,))
    y = TorusRotation((SQRT3,))
    a = sample_product_averages(x, y, [Character((1,))], [Character((1,))], 6, 500, 99)
    b = sample_product_averages(x, y, [Character((1,))], [Character((1,))], 6, 500, 99)
    c = sample_product_averages(x, y, [Character((1,))], [Character((1,))], 6, 500, 100)
    assert a == b
    assert a != c


def test_mean_and_stderr():
    mean, err = mean_and_stderr([1 + 0j, 3 + 0j])
    assert mean == 2
    assert err == pytest.approx(1.0)
    _, zero = mean_and_stderr([5 + 0j])
    assert zero == 0


class TestCesaroLimit:
    def test_constant_function(self):
        rep = cesaro_limit(lambda n: 0.5 + 0j, 16, 1e-6)
        assert rep.extrapolated_limit == 0.5
        assert rep.cauchy_gap == 0

    def test_golden_rotation_average_converges_to_zero(self):
        def avg(n):
            return geometric_average((math.sqrt(5) + 1) / 2, n)

        rep = cesaro_limit(avg, 64, 1e-3)
        assert rep.extrapolated_limit is not None
        assert abs(rep.extrapolated_limit) < 1e-3 * 10

    def test_tm_average_is_zero_at_powers_of_two(self):
        for k in range(1, 12):
            n = 2**k
            total = sum(THUE_MORSE.value(m) for m in range(n))
            assert total == 0

    def test_no_limit_when_oscillating(self):
        rep = cesaro_limit(lambda n: complex(n.bit_length() % 2), 16, 1e-6, max_doublings=5)
        assert rep.extrapolated_limit is None
        assert rep.cauchy_gap >= 1.0

    def test_values_at_increasing(self):
        rep = cesaro_limit(lambda n: 1 / n + 0j, 8, 1e-4)
        ns = [n for n, _ in rep.values_at]
        assert ns == sorted(ns)
        assert len(set(ns)) == len(ns)
