import pytest
from hypothesis import given, strategies as st

from krtoolkit.diagram import from_braid, pretzel, signature, torus
from krtoolkit.krhom import (
    HomologyTable,
    NotThinError,
    connected_sum,
    hopf_rr,
    is_thin,
    kr_thin,
    mirror_table,
    published_pretzel_table,
    render_grid,
    torus_t2,
    unknot_table,
)
from krtoolkit.laurent import parse_poly, t_component
from krtoolkit.skeinpoly import homflypt


def test_trefoil_table():
    h = kr_thin(parse_poly("a^-2 q^2 + a^-2 q^-2 - a^-4"), 2)
    assert h.dims == parse_poly("a^-2 q^2 + t^2 a^-2 q^-2 + t^3 a^-4")
    assert torus_t2(3).dims == h.dims


def test_negative_dimensions_rejected():
    with pytest.raises(ValueError):
        HomologyTable(parse_poly("q - a"))


def test_wrong_signature_is_not_thin():
    with pytest.raises(NotThinError):
        kr_thin(parse_poly("a^-2 q^2 + a^-2 q^-2 - a^-4"), 0)


@pytest.mark.parametrize("ell", [3, 5, 7, 9, 11])
def test_torus_closed_form(ell):
    h = torus_t2(ell)
    assert h.dims.at_t_minus_one() == homflypt(torus(ell, 2))
    assert is_thin(h, ell - 1)
    assert h.total() == ell


def test_torus_closed_form_domain():
    with pytest.raises(ValueError):
        torus_t2(4)


def test_eight_nine_top_degree():
    d = from_braid([1, 1, 1, -2, 1, -2, -2, -2], 3)
    h = kr_thin(homflypt(d), signature(d))
    assert t_component(h.dims, -8) == parse_poly("q^4 a^2")
    assert h.dims == mirror_table(h).dims  # amphichiral


def test_sums_and_mirrors():
    h = connected_sum(torus_t2(3), mirror_table(torus_t2(3)))
    assert h.dims.at_t_minus_one() == homflypt(torus(3, 2)) * homflypt(torus(3, 2).mirror())
    assert connected_sum(unknot_table(), h).dims == h.dims
    with pytest.raises(ValueError):
        connected_sum(h, hopf_rr())


def test_hopf_table():
    h = hopf_rr()
    assert not h.is_knot_table()
    assert h.total() == 4


def test_published_table_at_minus_one_is_homflypt():
    assert published_pretzel_table().dims.at_t_minus_one() == homflypt(pretzel(5, -3, 2))


def test_published_table_is_not_thin():
    h = published_pretzel_table()
    assert len({m.t2 + m.q + 2 * m.a for m in h.dims.support()}) > 1


def test_grid_rendering():
    text = render_grid(torus_t2(3).dims)
    lines = text.splitlines()
    assert lines[0].split() == ["q\\t", "t^0", "t^2", "t^3"]
    assert "a^-4" in text
    with pytest.raises(ValueError):
        render_grid(torus_t2(3).dims, "t")


@given(st.sampled_from([3, 5, 7]), st.sampled_from([3, 5, 7]))
def test_mirror_of_sum(l1, l2):
    a, b = torus_t2(l1), torus_t2(l2)
    left = mirror_table(connected_sum(a, b))
    right = connected_sum(mirror_table(a), mirror_table(b))
    assert left.dims == right.dims
