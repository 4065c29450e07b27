"""HOMFLYPT and sl_N polynomials by skein recursion, plus a Kauffman-bracket
state sum used as an independent sl_2 check.

Conventions: ``a P(+) - a^-1 P(-) = (q - q^-1) P(0)`` with the unknot equal
to 1; the sl_N polynomial satisfies the same relation with ``a = q^N`` and
takes the value [N]_q on the unknot.
"""

from __future__ import annotations

import threading
from collections import defaultdict

from .diagram import Diagram
from .laurent import LaurentPoly, ONE, ZERO, mono, quantum_int

__all__ = [
    "SkeinLimitError",
    "NotLaurentError",
    "SkeinMemo",
    "homflypt",
    "sln_poly",
    "kauffman_sl2",
    "CROSSING_LIMIT",
]

CROSSING_LIMIT = 16
DEPTH_LIMIT = 10_000


class SkeinLimitError(ValueError):
    pass


class NotLaurentError(ArithmeticError):
    """The normalised HOMFLYPT value of a link has a (q - q^-1) denominator."""


class SkeinMemo:
    """Map from (mode, canonical diagram key) to unlink-count expansions."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            return self._data.get(key)

    def get_or_insert(self, key, value):
        with self._lock:
            return self._data.setdefault(key, value)

    def __len__(self):
        return len(self._data)

    def clear(self):
        with self._lock:
            self._data.clear()


_MEMO = SkeinMemo()

Z = LaurentPoly({mono(q=1): 1, mono(q=-1): -1})


def _first_bad_crossing(d: Diagram) -> int | None:
    """First crossing met from below when walking the components in order
    (by minimum arc label), each from its minimum label; None if descending."""
    visited: set[int] = set()
    for cyc in sorted(d.component_cycles, key=min):
        start = min(cyc)
        arc = start
        while True:
            ci, slot = d.head(arc)
            if ci not in visited:
                visited.add(ci)
                if slot == 0:
                    return ci
            arc = d.next_arc(arc)
            if arc == start:
                break
    return None


def _expand(d: Diagram, x: LaurentPoly, xinv: LaurentPoly, mode, memo: SkeinMemo, depth=0):
    """Return {unlink count: coefficient} with P(d) = sum coeff * U(count)."""
    if depth > DEPTH_LIMIT:
        raise SkeinLimitError("skein recursion depth limit exceeded")
    key = (mode, d.canonical_key)
    hit = memo.get(key)
    if hit is not None:
        return hit
    ci = _first_bad_crossing(d)
    if ci is None:
        res = {d.components: ONE}
    else:
        sw = _expand(d.switch(ci), x, xinv, mode, memo, depth + 1)
        sm = _expand(d.smooth(ci), x, xinv, mode, memo, depth + 1)
        if d.crossings[ci].sign > 0:
            # P+ = x^-2 P- + x^-1 z P0
            c_sw, c_sm = xinv * xinv, xinv * Z
        else:
            # P- = x^2 P+ - x z P0
            c_sw, c_sm = x * x, -(x * Z)
        acc: dict[int, LaurentPoly] = defaultdict(lambda: ZERO)
        for c, p in sw.items():
            acc[c] = acc[c] + c_sw * p
        for c, p in sm.items():
            acc[c] = acc[c] + c_sm * p
        res = {c: p for c, p in acc.items() if p}
    return memo.get_or_insert(key, res)


def _check_limit(d: Diagram, limit: int | None):
    limit = CROSSING_LIMIT if limit is None else limit
    if d.n_crossings > limit:
        raise SkeinLimitError(f"{d.n_crossings} crossings exceed the limit of {limit}")


def _div_by_z(p: LaurentPoly) -> LaurentPoly:
    """Exact division by q - q^-1; raises if not divisible."""
    # q * p = (q^2 - 1) * s; peel from the top q-degree in each (t, a, r) slice
    slices: dict = defaultdict(dict)
    for m, c in p.terms():
        slices[(m.t2, m.a, m.r)][m.q + 1] = c
    out = {}
    for (t2, a, r), coeffs in slices.items():
        rem = dict(coeffs)
        floor = min(coeffs)
        while rem:
            top = max(rem)
            if top < floor:
                raise ArithmeticError("polynomial not divisible by q - q^-1")
            c = rem.pop(top)
            # subtract c q^(top-2) (q^2 - 1)
            out[mono(q=top - 2, a=a, r=r, t2=t2)] = c
            rem[top - 2] = rem.get(top - 2, 0) + c
            if rem[top - 2] == 0:
                del rem[top - 2]
    res = LaurentPoly(out)
    if res * Z != p:
        raise ArithmeticError("polynomial not divisible by q - q^-1")
    return res


def homflypt(d: Diagram, *, limit: int | None = None, memo: SkeinMemo | None = None) -> LaurentPoly:
    """P_oo(d) in the variables q, a; 1 on the unknot.

    Links whose value keeps a (q - q^-1) denominator raise NotLaurentError.
    """
    _check_limit(d, limit)
    a = LaurentPoly.var("a")
    ainv = LaurentPoly.monomial(mono(a=-1))
    exp = _expand(d, a, ainv, "homflypt", memo or _MEMO)
    top = max(exp)
    num = ZERO
    diff = a - ainv
    for c, p in exp.items():
        num = num + p * diff ** (c - 1) * Z ** (top - c)
    res = num
    try:
        for _ in range(top - 1):
            res = _div_by_z(res)
    except ArithmeticError:
        raise NotLaurentError(
            f"HOMFLYPT value of this {d.components}-component link is not a Laurent polynomial"
        ) from None
    return res


def sln_poly(d: Diagram, n: int, *, limit: int | None = None, memo: SkeinMemo | None = None) -> LaurentPoly:
    """P_N(d) in q; [N]_q on the unknot."""
    if n < 1:
        raise ValueError("N must be positive")
    _check_limit(d, limit)
    x = LaurentPoly.monomial(mono(q=n))
    xinv = LaurentPoly.monomial(mono(q=-n))
    exp = _expand(d, x, xinv, ("sln", n), memo or _MEMO)
    unknot = quantum_int(n)
    return sum((p * unknot ** c for c, p in exp.items()), ZERO)


def kauffman_sl2(d: Diagram, *, limit: int | None = None) -> LaurentPoly:
    """Unreduced Jones polynomial (unknot = q + q^-1) by bracket state sum.

    Each state contributes ``(-1)^w A^(#A - #B - 3w) (q + q^-1)^loops`` with
    ``A^2 = -q``; the exponent of A is always even.
    """
    _check_limit(d, limit)
    n = d.n_crossings
    w = d.writhe
    loop = LaurentPoly({mono(q=1): 1, mono(q=-1): 1})
    # group states by (A-exponent, loop count) first, then expand once
    counts: dict[tuple[int, int], int] = defaultdict(int)
    arcs = d.arcs()
    index = {lab: i for i, lab in enumerate(arcs)}
    for state in range(1 << n):
        parent = list(range(len(arcs)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        n_a = 0
        for ci, x in enumerate(d.crossings):
            s = x.arcs
            if (state >> ci) & 1:
                pairs = ((s[0], s[3]), (s[1], s[2]))
            else:
                n_a += 1
                pairs = ((s[0], s[1]), (s[2], s[3]))
            for u, v in pairs:
                ru, rv = find(index[u]), find(index[v])
                if ru != rv:
                    parent[ru] = rv
        loops = len({find(i) for i in range(len(arcs))}) + d.free_loops
        counts[(n_a - (n - n_a) - 3 * w, loops)] += 1
    total = ZERO
    sign_w = -1 if w % 2 else 1
    for (aexp, loops), mult in counts.items():
        k = aexp // 2  # A^(2k) = (-q)^k
        coeff = mult * sign_w * (-1 if k % 2 else 1)
        total = total + LaurentPoly.monomial(mono(q=k)) * coeff * loop ** loops
    return total
