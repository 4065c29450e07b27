import random

import pytest
from hypothesis import given

from krtoolkit.acceptance import random_braid
from krtoolkit.diagram import connected_sum, from_braid, torus, unknot
from krtoolkit.laurent import dual, parse_poly, quantum_int, substitute_a
from krtoolkit.skeinpoly import (
    NotLaurentError,
    SkeinLimitError,
    SkeinMemo,
    homflypt,
    kauffman_sl2,
    sln_poly,
)

from strategies import braid_words


def test_unknot_values():
    assert homflypt(unknot()) == parse_poly("1")
    assert sln_poly(unknot(), 3) == quantum_int(3)
    assert kauffman_sl2(unknot()) == parse_poly("q + q^-1")


def test_trefoil():
    assert homflypt(from_braid([1, 1, 1], 2)) == parse_poly("a^-2 q^2 + a^-2 q^-2 - a^-4")


def test_t52():
    want = parse_poly("a^-4 q^4 + a^-4 + a^-4 q^-4 - a^-6 q^2 - a^-6 q^-2")
    assert homflypt(torus(5, 2)) == want


def test_figure_eight():
    assert homflypt(from_braid([1, -2, 1, -2], 3)) == parse_poly("a^2 - q^2 + 1 - q^-2 + a^-2")


def test_links_are_not_laurent():
    hopf = from_braid([1, 1], 2)
    with pytest.raises(NotLaurentError):
        homflypt(hopf)
    # the sl_N specialisation of a link is still a Laurent polynomial
    assert sln_poly(hopf, 2) == kauffman_sl2(hopf)


def test_crossing_limit():
    with pytest.raises(SkeinLimitError):
        homflypt(from_braid([1, 1, 1, 1, 1], 2), limit=4)


def test_private_memo_agrees():
    d = from_braid([1, -2, 1, 1, -2, -2], 3)
    assert homflypt(d, memo=SkeinMemo()) == homflypt(d)


def test_seeded_oracle_sample():
    rng = random.Random(7)
    for _ in range(10):
        _, _, d = random_braid(rng, knots_only=True)
        p = homflypt(d)
        assert sln_poly(d, 3) == quantum_int(3) * substitute_a(p, 3)


@given(braid_words)
def test_sl2_matches_bracket(wb):
    d = from_braid(*wb)
    assert sln_poly(d, 2) == kauffman_sl2(d)


@given(braid_words)
def test_mirror_is_dual(wb):
    d = from_braid(*wb)
    if d.is_knot():
        assert homflypt(d.mirror()) == dual(homflypt(d))


@given(braid_words, braid_words)
def test_connected_sum_multiplies(w1, w2):
    d1, d2 = from_braid(*w1), from_braid(*w2)
    if d1.is_knot() and d2.is_knot():
        assert homflypt(connected_sum(d1, d2)) == homflypt(d1) * homflypt(d2)
