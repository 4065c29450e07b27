"""Bounds on the sl_N concordance invariants read off HOMFLYPT homology.

For a knot K with reduced table H, let X_N collect ``alpha + N beta`` over
the generators q^alpha a^beta of H in homological degree 0.  Then

    max X_N / (1 - N)  <=  s_N(K)  <=  min X_N / (1 - N),

and s_N lies on the lattice (2/(N-1)) Z.  Upper-bound tables (from the
skein exact sequence) give supersets of the true X_N, hence valid but
possibly wider intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intervals import RatInterval, fmt_rational
from .krhom import HomologyTable, connected_sum, hopf_rr, mirror_table, torus_t2
from .laurent import LaurentPoly, Monomial, leq, mono, substitute_a, t_component

__all__ = [
    "RatInterval",
    "XnSet",
    "xn_set",
    "sn_interval",
    "sn_record",
    "les_bound_plus",
    "les_bound_minus",
    "lift_stable",
    "lifted_leq",
    "pretzel_n2_bound",
    "pretzel_n4_bound",
    "double_les_bound",
]


@dataclass(frozen=True)
class XnSet:
    values: frozenset[int]
    is_upper_bound_source: bool = False

    def __post_init__(self):
        if not self.values:
            raise ValueError("X_N is empty")
        if any(v % 2 for v in self.values):
            raise ValueError("X_N values must be even")

    def sorted(self) -> list[int]:
        return sorted(self.values)


def xn_set(h: HomologyTable, n: int) -> XnSet:
    if n < 2:
        raise ValueError("N must be at least 2")
    if not h.is_knot_table():
        raise ValueError("X_N is defined for knot tables")
    deg0 = t_component(h.dims, 0)
    if not deg0:
        raise ValueError("table has nothing in homological degree 0; inconsistent input")
    return XnSet(frozenset(m.q + n * m.a for m in deg0.support()), h.upper_bound)


def sn_interval(x: XnSet, n: int) -> RatInterval:
    lo = Fraction(max(x.values), 1 - n)
    hi = Fraction(min(x.values), 1 - n)
    return RatInterval(lo, hi, Fraction(2, n - 1), Fraction(0))


def sn_record(h: HomologyTable, n: int) -> dict:
    x = xn_set(h, n)
    iv = sn_interval(x, n)
    return {
        "N": n,
        "xn": x.sorted(),
        "s_lo": fmt_rational(iv.lo),
        "s_hi": fmt_rational(iv.hi),
        "lattice_step": fmt_rational(iv.step),
        "candidates": [fmt_rational(v) for v in iv.candidates()],
        "upper_bound_source": x.is_upper_bound_source,
    }


def _shift(h: HomologyTable, m: Monomial) -> LaurentPoly:
    return h.dims * m


def les_bound_plus(h_minus: HomologyTable, l0_rr: HomologyTable) -> HomologyTable:
    """H(K+) <= t^2 a^-2 H(K-) + t^(1/2) a^-1 H_rr(L0)."""
    dims = _shift(h_minus, mono(t=2, a=-2)) + _shift(l0_rr, mono(t="1/2", a=-1))
    return HomologyTable(dims, upper_bound=True)


def les_bound_minus(h_plus: HomologyTable, l0_rr: HomologyTable) -> HomologyTable:
    """H(K-) <= t^-2 a^2 H(K+) + t^(-1/2) a H_rr(L0)."""
    dims = _shift(h_plus, mono(t=-2, a=2)) + _shift(l0_rr, mono(t="-1/2", a=1))
    return HomologyTable(dims, upper_bound=True)


def lift_stable(a_spec: LaurentPoly, b_spec: LaurentPoly, n: int, span: int) -> bool:
    """Whether comparing A(q, q^N) with B(q, q^N) at this N decides A <= B.

    When |N| exceeds the spread of q-exponents, distinct monomials q^i a^j
    stay distinct after a -> q^N, so the comparison lifts.
    """
    return abs(n) > span


def lifted_leq(a_spec: LaurentPoly, b_spec: LaurentPoly, n: int) -> bool | None:
    """Decide A <= B from one specialisation, or None if N is too small."""
    qs = [m.q for m in a_spec.support()] + [m.q for m in b_spec.support()]
    span = (max(qs) - min(qs)) if qs else 0
    if not lift_stable(a_spec, b_spec, n, span):
        return None
    return leq(substitute_a(a_spec, n), substitute_a(b_spec, n))


# -- pipelines ---------------------------------------------------------------


def pretzel_n2_bound(ell: int) -> HomologyTable:
    """Bound for P(l, 2-l, 2) from K+ = T(l,2) # T(2-l,2), L0 the Hopf link."""
    k_plus = connected_sum(torus_t2(ell), mirror_table(torus_t2(ell - 2)))
    out = les_bound_minus(k_plus, hopf_rr())
    return HomologyTable(out.dims, True, f"P({ell},{2 - ell},2) bound")


def pretzel_n4_bound(ell: int) -> HomologyTable:
    """Bound for P(l, 2-l, 4): switch one more crossing of the last band."""
    out = les_bound_minus(pretzel_n2_bound(ell), hopf_rr())
    return HomologyTable(out.dims, True, f"P({ell},{2 - ell},4) bound")


def double_les_bound(h_minus_minus: HomologyTable) -> HomologyTable:
    """Two positive-side steps, each with a Hopf-link resolution:
    H(K) <= t^4 a^-4 H(K--) + (t^(1/2) a^-1 + t^(5/2) a^-3) H_rr(Hopf)."""
    mid = les_bound_plus(h_minus_minus, hopf_rr())
    return les_bound_plus(mid, hopf_rr())
