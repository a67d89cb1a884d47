import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sweepout.exact import RootValue, log2_value, nth_root_floor


# ---------------------------------------------------------------------------
# integer roots
# ---------------------------------------------------------------------------

def test_nth_root_floor_small():
    assert nth_root_floor(0, 3) == 0
    assert nth_root_floor(1, 5) == 1
    assert nth_root_floor(7, 3) == 1
    assert nth_root_floor(8, 3) == 2
    assert nth_root_floor(10 ** 30, 2) == 10 ** 15
    assert nth_root_floor(10 ** 30 - 1, 2) == 10 ** 15 - 1


def test_nth_root_floor_rejects():
    with pytest.raises(ValueError):
        nth_root_floor(-1, 2)
    with pytest.raises(ValueError):
        nth_root_floor(4, 0)


@given(st.integers(min_value=0, max_value=10 ** 40),
       st.integers(min_value=1, max_value=12))
def test_nth_root_floor_definition(n, d):
    x = nth_root_floor(n, d)
    assert x ** d <= n
    assert (x + 1) ** d > n


# ---------------------------------------------------------------------------
# RootValue arithmetic
# ---------------------------------------------------------------------------

def test_normalization():
    assert RootValue(3, 1, 7).idx == 1          # rad 1 collapses
    assert RootValue(1, 4, 2).as_fraction() == 2   # perfect square folds
    assert RootValue(1, Fraction(1, 4), 2).as_fraction() == Fraction(1, 2)
    assert RootValue(1, 64, 6).as_fraction() == 2
    v = RootValue(1, 8, 2)                       # sqrt(8) stays irrational
    assert not v.is_rational
    with pytest.raises(ValueError):
        v.as_fraction()


def test_rejects_nonpositive():
    with pytest.raises(ValueError):
        RootValue(0)
    with pytest.raises(ValueError):
        RootValue(1, -2, 3)
    with pytest.raises(ValueError):
        RootValue(2, 2, 0)


def test_immutable():
    v = RootValue(1, 2, 2)
    with pytest.raises(AttributeError):
        v.coef = Fraction(2)


def test_mul_div_pow():
    sqrt2 = RootValue(1, 2, 2)
    assert (sqrt2 * sqrt2).as_fraction() == 2
    assert (sqrt2 ** 4).as_fraction() == 4
    assert ((sqrt2 * RootValue(1, 2, 3)) ** 6).as_fraction() == 32  # 2^(5/6)
    assert (RootValue(6) / sqrt2) == RootValue(3, 2, 2)   # 6/sqrt2 = 3 sqrt2
    assert (1 / sqrt2) * 2 == sqrt2
    assert (sqrt2 ** -2).as_fraction() == Fraction(1, 2)
    assert (sqrt2 ** 0).as_fraction() == 1


def test_root_and_pow_fraction():
    assert RootValue(64).pow_fraction(Fraction(3, 2)).as_fraction() == 512
    assert RootValue(729).root(3).as_fraction() == 9
    v = RootValue(2).pow_fraction(Fraction(5, 6))
    assert (v ** 6).as_fraction() == 32
    with pytest.raises(ValueError):
        RootValue(2).pow_fraction(Fraction(-1, 2))


def test_comparisons_exact():
    sqrt2 = RootValue(1, 2, 2)
    assert sqrt2 > Fraction(7, 5)
    assert sqrt2 < Fraction(3, 2)
    assert sqrt2 > 1
    assert sqrt2 != Fraction(141421356, 100000000)
    # cross-index comparison: 2^(1/2) vs 2^(2/3) -> lcm power 6
    assert RootValue(1, 2, 2) < RootValue(1, 4, 3)
    assert RootValue(2, 2, 2) == RootValue(1, 8, 2)


def test_floor_ceil_anchors():
    # the three interval-arithmetic anchors the schedules depend on
    assert (RootValue(46) * RootValue(1, 2, 2) / 64).ceil() == 2
    assert (RootValue(16) * RootValue(1, 4, 3)).floor() == 25
    assert (RootValue(512) * RootValue(1, 9, 3)).floor() == 1065
    assert RootValue(1, 2, 2).floor() == 1
    assert RootValue(1, 2, 2).ceil() == 2
    assert RootValue(4).floor() == 4 == RootValue(4).ceil()
    assert RootValue(Fraction(1, 3)).floor() == 0


def test_floor_beyond_float_range():
    v = RootValue(10 ** 400) * RootValue(1, 2, 2)
    f = v.floor()
    assert len(str(f)) == 401
    # f <= v < f+1, checked exactly
    assert f <= v
    assert v < f + 1
    assert float(v) == math.inf


def test_float_accuracy():
    assert float(RootValue(1, 2, 2)) == pytest.approx(math.sqrt(2), rel=1e-14)
    assert float(RootValue(Fraction(3, 7))) == pytest.approx(3 / 7, rel=1e-14)
    big = RootValue((1 << 2000) + 12345)
    assert math.isclose(math.log2(float(big) / (2.0 ** 1000)), 1000,
                        abs_tol=1e-9) or float(big) == math.inf


@given(st.integers(min_value=1, max_value=500),
       st.integers(min_value=1, max_value=500),
       st.integers(min_value=1, max_value=6))
def test_floor_matches_float(c, r, d):
    v = RootValue(c, r, d)
    f = v.floor()
    assert f <= v < f + 1
    assert f == math.floor(c * r ** (1.0 / d)) or \
        abs(c * r ** (1.0 / d) - f) < 1e-6 or \
        abs(c * r ** (1.0 / d) - (f + 1)) < 1e-6


@given(st.fractions(min_value=Fraction(1, 40), max_value=50,
                    max_denominator=40),
       st.fractions(min_value=Fraction(1, 40), max_value=50,
                    max_denominator=40))
def test_ordering_agrees_with_floats(a, b):
    x = RootValue(a, 2, 2)
    y = RootValue(b, 3, 3)
    fx, fy = float(x), float(y)
    if abs(fx - fy) > 1e-9 * max(fx, fy):
        assert (x < y) == (fx < fy)


def test_log2_value_anchors():
    assert log2_value(8) == 3.0
    assert log2_value(Fraction(1, 2)) == -1.0
    assert log2_value(RootValue(1, 2, 2)) == 0.5


def test_log2_value_survives_float_range():
    assert log2_value(Fraction(1, 1 << 1100)) == -1100.0
    assert log2_value(1 << 3000) == 3000.0
    tiny_root = RootValue(Fraction(1, 1 << 2000), 2, 2)
    assert log2_value(tiny_root) == -1999.5


def test_log2_value_rejects_nonpositive():
    with pytest.raises(ValueError):
        log2_value(0)
    with pytest.raises(ValueError):
        log2_value(Fraction(-3, 7))
