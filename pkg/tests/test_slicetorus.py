import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from krtoolkit.intervals import INF, RatInterval
from krtoolkit.knots import Mirror, normalize, parse_expr
from krtoolkit.slicetorus import (
    ConstraintSyntaxError,
    Contradiction,
    bundled_constraints,
    certify_independence,
    eval_expr,
    load_constraints,
    parse_constraints,
    pretzel_chain,
    propagate,
    safe_eval,
)


def K(text):
    return normalize(parse_expr(text))


def ends(iv):
    return (iv.lo, iv.hi)


def test_additivity():
    cs = parse_constraints("value nu T(3,2) = 2")
    a = propagate(cs, "nu")
    assert ends(eval_expr(K("T(3,2) # T(3,2)"), a)) == (4, 4)


def test_sum_constraint_narrows_atoms():
    cs = parse_constraints('value nu T(3,2) = 2\nvalue nu "T(3,2) # -T(5,2)" = -2')
    a = propagate(cs, "nu")
    assert ends(a["T(5,2)"]) == (4, 4)


def test_unquoted_sum_is_rejected():
    with pytest.raises(ConstraintSyntaxError):
        parse_constraints("value nu T(3,2)#T(3,2) = 4")


def test_comments_and_blank_lines():
    cs = parse_constraints("# header\n\nvalue s_3 P(5,-3,2) = 1  # from elsewhere\n")
    assert len(cs) == 1 and cs[0].kind == "value"


@pytest.mark.parametrize(
    "line",
    [
        "frobnicate nu T(3,2)",
        "value q_3 T(3,2) = 1",
        "value s_1 T(3,2) = 1",
        "xchg nu T(3,2)",
        "cob nu T(3,2) T(5,2) 2",
        "genus nu T(3,2) -1",
        "value nu T(3,2) = 1 +",
        "value nu T(3,2) = __import__",
        "lattice s_5 stride 1/2",
        "value nu P(5,-3) = 0",
    ],
)
def test_bad_lines(line):
    with pytest.raises(ConstraintSyntaxError):
        parse_constraints(line)


def test_safe_eval():
    assert safe_eval("4/(N-1) - 2", {"N": 3}) == 0
    assert safe_eval("2**3 - 1/2") == Fraction(15, 2)
    assert safe_eval("N >= 4", {"N": 5}) is True
    with pytest.raises(ConstraintSyntaxError):
        safe_eval("open('x')")


def test_value_formula_and_condition():
    cs = parse_constraints("value s_N[N>=4] K1 = 2/(N-1)\nvalue s_N K1 in [-5, 5]")
    assert ends(propagate(cs, "s_5")["K1"]) == (Fraction(1, 2), Fraction(1, 2))
    assert ends(propagate(cs, "s_3")["K1"]) == (-5, 5)
    assert "K1" not in propagate(cs, "tau2")


def test_value_sets():
    a = propagate(parse_constraints("value s_3 K1 in {0, 2}"), "s_3")
    assert a["K1"].candidates() == [0, 1, 2]


def test_crossing_change_both_ways():
    cs = parse_constraints("xchg nu A B 1\nvalue nu A = 2")
    assert (propagate(cs, "nu")["B"].lo, propagate(cs, "nu")["B"].hi) == (0, 2)
    cs = parse_constraints("xchg nu A B 1\nvalue nu B = 2")
    assert (propagate(cs, "nu")["A"].lo, propagate(cs, "nu")["A"].hi) == (2, 4)


def test_cobordism_and_genus():
    cs = parse_constraints("cob nu A B -2\nvalue nu A = 1\ngenus nu C 1")
    a = propagate(cs, "nu")
    assert (a["B"].lo, a["B"].hi) == (-1, 3)
    assert (a["C"].lo, a["C"].hi) == (-2, 2)


def test_explicit_lattice():
    cs = parse_constraints("lattice s_5 step 1/2\nvalue s_5 A in [1/3, 1]")
    assert propagate(cs, "s_5")["A"].candidates() == [Fraction(1, 2), 1]


def test_auto_lattice():
    cs = parse_constraints("value tau2 A in [1/2, 3]")
    assert propagate(cs, "tau2")["A"].candidates() == [2]
    assert propagate(cs, "tau2", lattice=None)["A"].lo == Fraction(1, 2)


def test_computed_bennequin():
    a = propagate(parse_constraints("bennequin nu P(7,-5,4)"), "nu")
    assert (a["P(7,-5,4)"].lo, a["P(7,-5,4)"].hi) == (0, 2)


def test_alternating_rule_collapses_everything():
    cs = parse_constraints("alternating T(3,2)\nbennequin nu T(3,2)")
    for inv in ("nu", "s_2", "s_7", "tau2"):
        assert ends(propagate(cs, inv)["T(3,2)"]) == (2, 2)


def test_alternating_rule_is_checked_against_bennequin():
    cs = parse_constraints("alternating T(3,2) 0\nbennequin nu T(3,2)")
    with pytest.raises(Contradiction):
        propagate(cs, "nu")


def test_quasi_alternating_only_for_s2_and_tau():
    cs = parse_constraints("quasialt P(5,-3,2)")
    assert ends(propagate(cs, "s_2")["P(5,-3,2)"]) == (2, 2)
    assert ends(propagate(cs, "tau2")["P(5,-3,2)"]) == (2, 2)
    assert "P(5,-3,2)" not in propagate(cs, "s_3")


def test_positive_braids():
    a = propagate(parse_constraints("posbraid T(4,3)\nposbraid B[1,1,1]@2"), "nu")
    assert ends(a["T(4,3)"]) == (6, 6)
    assert ends(a["B[1,1,1]@2"]) == (2, 2)


def test_pretzel_chain_counts():
    # (n - 4)/2 switches in the last band, (l - m - 2)/2 in the first
    steps = pretzel_chain(11, 5, 8)
    assert len(steps) == (8 - 4) // 2 + (11 - 5 - 2) // 2
    assert steps[0] == ("P(7,-5,4)", "P(7,-5,6)", 1)
    assert steps[-1] == ("P(11,-5,8)", "P(9,-5,8)", 1)
    assert pretzel_chain(7, 5, 2) == []
    with pytest.raises(ValueError):
        pretzel_chain(5, 5, 4)


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("ell,m,k", [(7, 5, 4), (9, 5, 4), (9, 7, 6), (7, 3, 4)])
def test_pretzel_points(n, ell, m, k):
    a = propagate(bundled_constraints("pretzel_even"), f"s_{n}")
    assert ends(a[f"P({ell},{-m},{k})"]) == (ell - m - 2, ell - m - 2)


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("ell,m", [(7, 5), (9, 5), (7, 3)])
def test_pretzel_two_candidates(n, ell, m):
    a = propagate(bundled_constraints("pretzel_two"), f"s_{n}")
    base = ell - m - 2
    assert a[f"P({ell},{-m},2)"].candidates() == [base, base + Fraction(2, n - 1)]


def test_contradiction_chain():
    with pytest.raises(Contradiction) as info:
        propagate(bundled_constraints("inconsistent.constraints"), "s_3")
    chain = info.value.chain
    assert any("value s_3 P(7,-5,4) = 2" in c for c in chain)
    assert any("les s_N P(7,-5,4)" in c for c in chain)
    assert "constraint chain" in info.value.report()


def test_inconsistent_only_for_its_invariant():
    propagate(bundled_constraints("inconsistent.constraints"), "s_4")


def test_load_falls_back_to_bundled(tmp_path):
    assert load_constraints("examples/pretzel_even.constraints") == bundled_constraints("pretzel_even")
    f = tmp_path / "mine.txt"
    f.write_text("include pretzel_even\nvalue s_3 P(9,-5,4) = 2\n")
    assert ends(propagate(load_constraints(f), "s_3")["P(9,-5,4)"]) == (2, 2)
    with pytest.raises(FileNotFoundError):
        load_constraints(tmp_path / "nope")


def test_eval_expr_examples():
    k = K("P(5,-3,2) # P(5,-3,2) # -P(7,-5,4) # -T(3,2)")
    pts = {"P(5,-3,2)": 2, "P(7,-5,4)": 2, "T(3,2)": 2}
    assert ends(eval_expr(k, {a: RatInterval(v, v) for a, v in pts.items()})) == (0, 0)
    s3 = {"P(5,-3,2)": 1, "P(7,-5,4)": 0, "T(3,2)": 2}
    assert ends(eval_expr(k, {a: RatInterval(v, v) for a, v in s3.items()})) == (0, 0)
    for n in range(4, 13):
        vals = {
            "P(5,-3,2)": RatInterval(0, Fraction(2, n - 1)),
            "P(7,-5,4)": RatInterval(0, 0),
            "T(3,2)": RatInterval(2, 2),
        }
        iv = eval_expr(k, vals)
        assert iv.hi == Fraction(4, n - 1) - 2 < 0
    with pytest.raises(KeyError):
        eval_expr(k, {})


def _witness_values(witness, invs):
    cs = bundled_constraints("independence")
    return {inv: eval_expr(K(witness), propagate(cs, inv), inv) for inv in invs}


def test_certificate_convex():
    invs = [f"s_{n}" for n in range(3, 13)]
    vals = {"P(5,-3,2)": _witness_values("P(5,-3,2)", invs)}
    c = certify_independence(invs[1:], vals, "s_3", "convex")
    assert c is not None and c.witness == "P(5,-3,2)"
    assert (c.hull.lo, c.hull.hi) == (0, Fraction(2, 3))
    js = c.to_json()
    assert js["hull"]["hi"] == "2/3" and js["excluded_value"]["lo"] == "1"


def test_certificate_linear_on_p754():
    invs = ["s_2", "tau2"] + [f"s_{n}" for n in range(3, 13)]
    vals = {"P(7,-5,4)": _witness_values("P(7,-5,4)", invs)}
    for target in ("s_2", "tau2"):
        assert certify_independence(invs[2:], vals, target, "linear") is not None


def test_certificate_on_quasi_alternating_sum():
    invs = ["s_2", "tau2", "s_3", "s_4"]
    vals = {"K": _witness_values("P(5,-3,2) # -T(3,2)", invs)}
    assert ends(vals["K"]["s_2"]) == (0, 0)
    assert certify_independence(["s_2", "tau2"], vals, "s_3", "linear") is not None


def test_certificate_failure_when_dependent():
    vals = {"T(3,2)": {"s_2": RatInterval(2, 2)}}
    assert certify_independence(["s_2"], vals, "s_2", "convex") is None
    assert certify_independence(["s_2"], vals, "s_2", "linear") is None


def test_certificate_rejects_unbounded():
    vals = {"X": {"s_2": RatInterval(0, INF), "s_3": RatInterval(1, 1)}}
    with pytest.raises(ValueError):
        certify_independence(["s_2"], vals, "s_3")
    with pytest.raises(ValueError):
        certify_independence(["s_2"], {}, "s_3", "affine")


def test_mirror_negates():
    a = propagate(bundled_constraints("pretzel_two"), "s_5")
    e = K("P(7,-5,2) # P(9,-5,2)")
    iv, miv = eval_expr(e, a), eval_expr(Mirror(e), a)
    assert (miv.lo, miv.hi) == (-iv.hi, -iv.lo)


@given(st.integers(3, 8), st.randoms(use_true_random=False))
def test_order_does_not_matter(n, rnd):
    cs = bundled_constraints("pretzel_even") + bundled_constraints("pretzel_two")
    base = propagate(cs, f"s_{n}").intervals
    shuffled = list(cs)
    rnd.shuffle(shuffled)
    assert propagate(shuffled, f"s_{n}").intervals == base


@given(st.integers(3, 8), st.integers(0, 30))
def test_adding_constraints_never_widens(n, k):
    cs = bundled_constraints("pretzel_even")
    rng = random.Random(k)
    sub = rng.sample(cs, rng.randint(0, len(cs)))
    small = propagate(sub, f"s_{n}").intervals
    big = propagate(cs, f"s_{n}").intervals
    for atom, iv in small.items():
        assert iv.contains_interval(big[atom])


def test_external_values_fit_computed_bounds():
    from krtoolkit.diagram import signature
    from krtoolkit.knots import atom_diagram
    from krtoolkit.krhom import kr_thin
    from krtoolkit.skeinpoly import homflypt
    from krtoolkit.slnbounds import double_les_bound, sn_interval, xn_set

    d = atom_diagram("8_9")
    bound = double_les_bound(kr_thin(homflypt(d), signature(d)))
    cs = bundled_constraints("external")
    for n in (2, 3):
        v = propagate(cs, f"s_{n}")["12n_340"]
        assert sn_interval(xn_set(bound, n), n).contains(v.lo)
