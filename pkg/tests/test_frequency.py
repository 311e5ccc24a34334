"""Exact frequency arithmetic and the fractional-part engine."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergolab.frequency import (
    GOLDEN,
    ONE,
    SQRT2,
    SQRT3,
    ZERO,
    Frequency,
    format_frequency,
    frac,
    parse_frequency,
)


def test_basis_values():
    assert abs(SQRT2.value() - math.sqrt(2)) < 1e-15
    assert abs(SQRT3.value() - math.sqrt(3)) < 1e-15
    assert abs(GOLDEN.value() - (math.sqrt(5) + 1) / 2) < 1e-15


def test_rational_detection():
    assert Frequency({ONE: Fraction(2, 7)}).is_rational
    assert not SQRT2.is_rational
    assert ZERO.is_zero
    assert (SQRT2 - SQRT2).is_zero


def test_arithmetic_is_exact():
    a = SQRT2 + SQRT2
    assert a == SQRT2 * 2
    assert (a - SQRT2) == SQRT2
    b = SQRT2 + Frequency({ONE: Fraction(1, 3)})
    assert b.rational_part == Fraction(1, 3)
    assert dict(b.irrational_items()) == {"SQRT2": Fraction(1)}


def test_hash_consistency():
    assert hash(SQRT2 + SQRT3) == hash(SQRT3 + SQRT2)
    assert len({SQRT2, SQRT2 + ZERO, SQRT2 * 1}) == 1


def test_frac_matches_math_for_small_n():
    alpha = SQRT2
    for n in range(1, 500):
        expected = math.fmod(n * math.sqrt(2), 1.0)
        got = alpha.frac_times(n)
        assert abs(got - expected) < 1e-9 or abs(got - expected - 1) < 1e-9


def test_frac_times_large_n_precision():
    # near n^2 * alpha the plain float product loses the fractional part;
    # the high-precision path must not.
    alpha = SQRT2
    n = 2**40
    got = alpha.frac_times(n)
    import mpmath

    with mpmath.workprec(200):
        expected = float(mpmath.frac(n * mpmath.sqrt(2)))
    assert abs(got - expected) < 1e-9


def test_frac_rational_exact():
    alpha = Frequency({ONE: Fraction(3, 7)})
    for n in range(1, 100):
        assert alpha.frac_times(n) == pytest.approx(float(Fraction(3 * n, 7) % 1), abs=0)


def test_frac_times_array_matches_scalar():
    import numpy as np

    alpha = SQRT2 + Frequency({ONE: Fraction(1, 5)})
    ns = np.arange(1, 2000)
    arr = alpha.frac_times_array(ns)
    for i in (0, 17, 333, 1998):
        assert abs(arr[i] - alpha.frac_times(int(ns[i]))) < 1e-10


def test_snap_to_zero():
    # a value within 1e-12 of 1.0 must come back as 0.0
    alpha = Frequency({ONE: Fraction(1, 3)})
    assert alpha.frac_times(3) == 0.0
    assert alpha.frac_times(6) == 0.0


def test_parse_and_format_roundtrip():
    for text in ("SQRT2", "2*SQRT2 + 1/3", "-1/2*GOLDEN", "1/3", "0"):
        f = parse_frequency(text)
        assert parse_frequency(format_frequency(f)) == f


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_frequency("SQRT5")


@given(
    p=st.integers(-50, 50),
    q=st.integers(1, 50),
    n=st.integers(0, 10**6),
)
@settings(max_examples=200)
def test_rational_frac_is_exact_mod(p, q, n):
    alpha = Frequency({ONE: Fraction(p, q)})
    expected = Fraction(p, q) * n % 1
    assert alpha.frac_times(n) == pytest.approx(float(expected), abs=1e-12)


@given(m=st.integers(0, 10**4), n=st.integers(0, 10**4))
@settings(max_examples=100)
def test_frac_additivity(m, n):
    # {(m+n)a} == {{ma} + {na}} up to float rounding
    alpha = SQRT3
    lhs = alpha.frac_times(m + n)
    rhs = math.fmod(alpha.frac_times(m) + alpha.frac_times(n), 1.0)
    diff = abs(lhs - rhs)
    assert min(diff, abs(diff - 1.0)) < 1e-9


def test_frac_helper():
    assert frac(1.25) == 0.25
    assert frac(-0.25) == 0.75
    assert frac(1.0 - 1e-13) == 0.0
