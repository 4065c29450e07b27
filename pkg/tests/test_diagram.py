import pytest
from hypothesis import given

from krtoolkit.diagram import (
    DiagramError,
    bennequin_bounds,
    connected_sum,
    faces,
    format_pd,
    from_braid,
    from_pd,
    is_homogeneous,
    parse_pd,
    positive_braid_value,
    pretzel,
    seifert_stats,
    signature,
    symmetric_signature,
    torus,
    unknot,
)

from strategies import braid_words


def test_braid_closure_of_trefoil():
    d = from_braid([1, 1, 1], 2)
    assert d.n_crossings == 3 and d.is_knot() and d.writhe == 3
    assert format_pd(d) == "X(4,2,5,1)+, X(2,6,3,5)+, X(6,4,1,3)+"


def test_pd_text_roundtrip():
    d = from_braid([1, -2, 1, -2], 3)
    again = parse_pd(format_pd(d))
    assert again.canonical_key == d.canonical_key


def test_pd_wrappers_and_comments():
    a = parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]  # a comment")
    b = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)")
    assert a.canonical_key == b.canonical_key
    with pytest.raises(DiagramError):
        parse_pd("X(1,2,3)")


def test_bad_pd_rejected():
    with pytest.raises(DiagramError):
        from_pd([(1, 2, 3, 4), (1, 2, 3, 4)])


def test_mirror_and_switch():
    d = torus(3, 2)
    assert d.mirror().writhe == -3
    assert d.switch(0).writhe == 1
    assert d.switch(0).switch(0).canonical_key == d.canonical_key


def test_smoothing_splits_hopf():
    hopf = from_braid([1, 1], 2)
    assert hopf.components == 2
    assert hopf.smooth(0).components == 1


@pytest.mark.parametrize("ell,m,n", [(5, 3, 2), (7, 5, 4), (9, 5, 6), (7, 3, 4)])
def test_pretzel_seifert_data(ell, m, n):
    st = seifert_stats(pretzel(ell, -m, n))
    assert (st.writhe, st.circles, st.o_plus, st.o_minus) == (ell - m - n, n + 1, n, 1)
    iv = bennequin_bounds(st)
    assert (iv.lo, iv.hi) == (ell - m - 2, ell - m)


def test_pretzel_with_one_even_band_is_a_knot():
    assert pretzel(3, -3, 2).is_knot()


def test_pretzel_link_rejected():
    with pytest.raises(DiagramError):
        pretzel(2, -2, 3)
    assert pretzel(2, -2, 3, allow_links=True).components == 2


def test_positive_braids():
    assert positive_braid_value([1, 1, 1], 2) == 2
    assert positive_braid_value([1, 2] * 4, 3) == 6  # T(4,3)
    assert is_homogeneous(seifert_stats(torus(3, 2)))


@pytest.mark.parametrize(
    "d,sigma",
    [
        (torus(3, 2), 2),
        (torus(5, 2), 4),
        (torus(4, 3), 6),
        (torus(5, 3), 8),
        (pretzel(5, -3, 2), 2),
        (pretzel(7, -5, 4), 2),
        (pretzel(9, -5, 6), 4),
        (unknot(), 0),
    ],
)
def test_signatures(d, sigma):
    assert signature(d) == sigma


def test_figure_eight_is_amphichiral():
    d = from_braid([1, -2, 1, -2], 3)
    assert signature(d) == 0


def test_faces_count():
    d = from_braid([1, -2, 1, -2], 3)
    assert len(faces(d)) == d.n_crossings + 2


def test_symmetric_signature():
    assert symmetric_signature([[2, 1], [1, 2]]) == 2
    assert symmetric_signature([[0, 1], [1, 0]]) == 0
    assert symmetric_signature([[-1]]) == -1


def test_connected_sum_adds():
    d = connected_sum(torus(3, 2), torus(3, 2).mirror())
    assert d.is_knot() and d.n_crossings == 6
    assert signature(d) == 0
    assert signature(connected_sum(torus(3, 2), torus(5, 2))) == 6


@given(braid_words)
def test_mirror_negates_signature(wb):
    word, n = wb
    d = from_braid(word, n)
    if d.is_knot():
        assert signature(d.mirror()) == -signature(d)


@given(braid_words)
def test_canonical_key_ignores_labels(wb):
    d = from_braid(*wb)
    assert d.relabeled().canonical_key == d.canonical_key
