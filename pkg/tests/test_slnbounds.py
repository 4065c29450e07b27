from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from krtoolkit.krhom import (
    HomologyTable,
    connected_sum,
    hopf_rr,
    kr_thin,
    mirror_table,
    torus_t2,
    unknot_table,
)
from krtoolkit.laurent import leq, parse_poly, t_component
from krtoolkit.diagram import from_braid, signature
from krtoolkit.skeinpoly import homflypt
from krtoolkit.slnbounds import (
    XnSet,
    double_les_bound,
    les_bound_minus,
    les_bound_plus,
    lift_stable,
    lifted_leq,
    pretzel_n2_bound,
    pretzel_n4_bound,
    sn_interval,
    sn_record,
    xn_set,
)


@pytest.mark.parametrize("n", range(2, 8))
def test_trefoil_xn(n):
    x = xn_set(torus_t2(3), n)
    assert x.values == {2 - 2 * n}
    iv = sn_interval(x, n)
    assert iv.is_point() and iv.lo == 2


def test_unknot_xn():
    assert xn_set(unknot_table(), 4).values == {0}


def test_two_point_intervals():
    assert sn_interval(XnSet(frozenset({-2, 0})), 3).candidates() == [0, 1]
    assert sn_interval(XnSet(frozenset({-2, 0})), 5).candidates() == [0, Fraction(1, 2)]


def test_xn_errors():
    with pytest.raises(ValueError):
        xn_set(torus_t2(3), 1)
    with pytest.raises(ValueError):
        xn_set(HomologyTable(parse_poly("t q^2")), 2)
    with pytest.raises(ValueError):
        XnSet(frozenset({1}))


def test_les_examples_on_the_unknot():
    minus = les_bound_minus(unknot_table(), hopf_rr())
    assert minus.dims == parse_poly("t^-2 a^2 + t^-1 q^2 + 1 + t q^-2 + t^2 a^-2")
    plus = les_bound_plus(unknot_table(), hopf_rr())
    # the a^-1 shift multiplies the whole Hopf contribution
    assert plus.dims == parse_poly("t^2 a^-2 + a^-2 q^2 + t a^-2 + t^2 a^-2 q^-2 + t^3 a^-4")
    assert plus.upper_bound and minus.upper_bound


def test_les_on_trefoil_has_seven_generators():
    assert les_bound_plus(torus_t2(3), hopf_rr()).total() == 7


@pytest.mark.parametrize("ell", [5, 7, 9, 11])
def test_pretzel_n2(ell):
    b = pretzel_n2_bound(ell)
    assert t_component(b.dims, 0) == parse_poly(f"{ell - 2} q^-2 + 1")
    assert leq(t_component(b.dims, 4), parse_poly(f"{ell - 4} q^-6 + a^-2"))
    for n in range(2, 9):
        assert sn_interval(xn_set(b, n), n).candidates() == [0, Fraction(2, n - 1)]


@pytest.mark.parametrize("ell", [5, 7, 9])
def test_pretzel_n4(ell):
    b = pretzel_n4_bound(ell)
    assert t_component(b.dims, 0) == parse_poly(f"{ell - 4} a^2 q^-6 + 2")
    for n in range(3, 9):
        iv = sn_interval(xn_set(b, n), n)
        assert (iv.lo, iv.hi) == (Fraction(4, n - 1) - 2, 0)


def test_double_bound_for_12n340():
    d = from_braid([1, 1, 1, -2, 1, -2, -2, -2], 3)  # 8_9
    h = kr_thin(homflypt(d), signature(d))
    b = double_les_bound(h)
    assert t_component(b.dims, 0) == parse_poly("a^-2 q^4 + a^-2 q^2")
    assert sn_interval(xn_set(b, 3), 3).candidates() == [1, 2]
    assert sn_interval(xn_set(b, 4), 4).candidates() == [Fraction(4, 3), 2]


def test_record_shape():
    rec = sn_record(pretzel_n2_bound(5), 3)
    assert rec["xn"] == [-2, 0]
    assert rec["candidates"] == ["0", "1"]
    assert rec["upper_bound_source"] is True
    assert set(rec) == {"N", "xn", "s_lo", "s_hi", "lattice_step", "candidates", "upper_bound_source"}


def test_lift_stable():
    a, b = parse_poly("q a"), parse_poly("q^2 + q a")
    assert lift_stable(a, b, 10, 1) and lifted_leq(a, b, 10)
    assert not lift_stable(a, b, 1, 5)
    assert lifted_leq(parse_poly("a"), parse_poly("q^2"), 3) is False
    assert lifted_leq(parse_poly("a"), parse_poly("q^2"), 1) is None


@given(st.sampled_from([3, 5, 7, 9]), st.integers(2, 10))
def test_torus_points(ell, n):
    iv = sn_interval(xn_set(torus_t2(ell), n), n)
    assert iv.is_point() and iv.lo == ell - 1


@given(st.sampled_from([3, 5, 7]), st.integers(2, 8))
def test_bounds_only_widen(ell, n):
    # a <=-bound table contains the exact one, so its interval contains the exact interval
    exact = connected_sum(torus_t2(ell), mirror_table(torus_t2(3)))
    wider = HomologyTable(exact.dims + parse_poly("q^-2 a^2 + q^4"), upper_bound=True)
    assert sn_interval(xn_set(wider, n), n).contains_interval(sn_interval(xn_set(exact, n), n))


@given(st.sampled_from([3, 5]), st.integers(2, 6))
def test_plus_then_minus_never_shrinks(ell, n):
    h = torus_t2(ell)
    back = les_bound_minus(les_bound_plus(h, hopf_rr()), hopf_rr())
    assert leq(h.dims, back.dims)
