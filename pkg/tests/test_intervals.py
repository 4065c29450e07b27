from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from krtoolkit.intervals import INF, EmptyIntervalError, RatInterval, fmt_rational


def test_lattice_snapping():
    iv = RatInterval(Fraction(-1, 3), Fraction(5, 4), Fraction(1, 2))
    assert (iv.lo, iv.hi) == (0, 1)
    assert iv.candidates() == [0, Fraction(1, 2), 1]
    assert str(iv) == "∈ {0, 1/2, 1}"


def test_empty_after_snapping():
    with pytest.raises(EmptyIntervalError):
        RatInterval(Fraction(1, 4), Fraction(3, 4), 1)


def test_unbounded():
    iv = RatInterval(-INF, 3)
    assert not iv.is_bounded()
    assert fmt_rational(iv.lo) == "-inf"
    with pytest.raises(ValueError):
        iv.candidates()


def test_point_rendering():
    assert str(RatInterval.point(2)) == "= 2"
    assert RatInterval(0, 2).contains(1)


@given(
    st.fractions(-10, 10, max_denominator=12),
    st.fractions(-10, 10, max_denominator=12),
    st.integers(1, 6),
)
def test_candidates_lie_on_lattice(a, b, k):
    lo, hi = min(a, b), max(a, b) + 2
    iv = RatInterval(lo, hi, Fraction(2, k))
    for v in iv.candidates():
        assert lo <= v <= hi
        assert iv.contains(v)


@given(st.fractions(max_denominator=6), st.fractions(max_denominator=6))
def test_negation_flips(a, b):
    iv = RatInterval(min(a, b), max(a, b))
    n = -iv
    assert (n.lo, n.hi) == (-iv.hi, -iv.lo)
