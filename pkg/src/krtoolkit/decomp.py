"""Decategorified spectral sequences and decomposition searches.

If consecutive pages E_k, E_(k+1) of a spectral sequence are finite
dimensional and d_k has degree m, then E_k = E_(k+1) + (1 + m) f with f >= 0.
The searches below look for such witnesses: for the chain
HOMFLYPT -> reduced sl_N -> first page of the reduced/unreduced sequence ->
unreduced sl_N -> q^(s') [N]_q, and for the simpler one-step decompositions
that show the chain cannot distinguish certain values of s'.

Every search processes the lowest remaining monomial first.  When all pair
degrees have positive t-exponent that monomial must be the ``1`` end of some
pair (or stay in the free remainder), so the search is exhaustive: running
out of branches proves that no decomposition exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .krhom import HomologyTable
from .laurent import (
    LaurentPoly,
    Monomial,
    ONE,
    ZERO,
    exact_div_by_one_plus,
    mono,
    quantum_int,
    substitute_a,
)

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "Decomposition",
    "SearchFailure",
    "PageSequence",
    "page_step_check",
    "first_page",
    "decompose",
    "weakness_decomp",
    "main_chain_feasible",
    "main_chain_degrees",
    "figure_left",
    "figure_e1",
    "figure_e3",
    "FIGURE_D_DEGREES",
]

DEFAULT_BUDGET = 10 ** 6


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Decomposition:
    witnesses: dict[str, LaurentPoly]
    anchor: Monomial | None = None
    nodes: int = 0

    def to_json(self) -> dict:
        return {
            "anchor": None if self.anchor is None else self.anchor._asdict(),
            "witnesses": {k: v.to_records() for k, v in self.witnesses.items()},
            "text": {k: str(v) for k, v in self.witnesses.items()},
            "nodes": self.nodes,
        }


@dataclass(frozen=True)
class SearchFailure:
    """No decomposition: ``proven`` if the search space was exhausted."""

    reason: str
    proven: bool
    nodes: int = 0

    def __bool__(self) -> bool:
        return False


@dataclass
class PageSequence:
    pages: list[LaurentPoly]
    diff_degrees: list[Monomial] = field(default_factory=list)

    def __post_init__(self):
        if any(not p.is_nonnegative() for p in self.pages):
            raise ValueError("pages must have nonnegative dimensions")

    def witnesses(self) -> list[LaurentPoly | None]:
        return [
            page_step_check(self.pages[k], self.pages[k + 1], self.diff_degrees[k])
            for k in range(len(self.pages) - 1)
        ]


def page_step_check(e_k: LaurentPoly, e_k1: LaurentPoly, d_deg: Monomial) -> LaurentPoly | None:
    """f >= 0 with e_k = e_k1 + (1 + d_deg) f, or None if there is none."""
    diff = e_k - e_k1
    if not diff.is_nonnegative():
        return None
    f = exact_div_by_one_plus(diff, d_deg)
    if f is None or not f.is_nonnegative():
        return None
    return f


def first_page(reduced, n: int) -> LaurentPoly:
    dims = reduced.dims if isinstance(reduced, HomologyTable) else reduced
    return quantum_int(n, "qr") * dims


# -- generic search ---------------------------------------------------------------


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"search budget of {self.budget} nodes exhausted")


def _decompositions(target: LaurentPoly, pairs: list[Monomial], free: bool, counter: _Counter):
    """Yield (remainder, [f_k]) with target = remainder + sum (1 + m_k) f_k,
    all parts nonnegative; remainder is zero unless ``free``."""
    if not target.is_nonnegative():
        return
    if any(m.t2 <= 0 for m in pairs):
        raise ValueError("pair degrees must raise the t-degree")
    seen: set = set()
    n = len(pairs)

    def rec(rem: dict, keep: dict, fs: list[dict], last: tuple):
        counter.tick()
        if not rem:
            key = frozenset(keep.items())
            if free:
                if key in seen:
                    return
                seen.add(key)
            yield LaurentPoly(keep), [LaurentPoly(f) for f in fs]
            return
        mu = min(rem)
        # choice -1 keeps mu in the remainder; choice k pairs mu with mu*m_k
        start = last[1] if last[0] == mu else -1
        for choice in range(start, n):
            if choice == -1:
                if not free:
                    continue
                nrem = dict(rem)
                _dec(nrem, mu)
                nkeep = dict(keep)
                nkeep[mu] = nkeep.get(mu, 0) + 1
                yield from rec(nrem, nkeep, fs, (mu, -1))
            else:
                partner = mu * pairs[choice]
                if rem.get(partner, 0) <= 0:
                    continue
                nrem = dict(rem)
                _dec(nrem, mu)
                _dec(nrem, partner)
                nfs = list(fs)
                f = dict(nfs[choice])
                f[mu] = f.get(mu, 0) + 1
                nfs[choice] = f
                yield from rec(nrem, keep, nfs, (mu, choice))

    yield from rec(dict(target.terms()), {}, [{} for _ in pairs], (None, -1))


def _dec(d: dict, m: Monomial):
    c = d[m] - 1
    if c:
        d[m] = c
    else:
        del d[m]


def _resum(pairs: list[Monomial], fs: list[LaurentPoly]) -> LaurentPoly:
    return sum(((ONE + LaurentPoly.monomial(m)) * f for m, f in zip(pairs, fs)), ZERO)


def decompose(target: LaurentPoly, pairs: list[Monomial], budget: int = DEFAULT_BUDGET):
    """Exact decomposition target = sum (1 + m_k) f_k, or a SearchFailure."""
    counter = _Counter(budget)
    try:
        for rem, fs in _decompositions(target, pairs, False, counter):
            if _resum(pairs, fs) != target:
                raise AssertionError("decomposition failed to re-substitute")
            return Decomposition({f"f{k}": f for k, f in enumerate(fs)}, None, counter.nodes)
    except BudgetExceeded as e:
        return SearchFailure(str(e), False, counter.nodes)
    return SearchFailure("no decomposition exists", True, counter.nodes)


def weakness_decomp(a_poly, n: int, alpha: int, beta: int, budget: int = DEFAULT_BUDGET):
    """Witness i^0..i^(N-1) for A = q^alpha a^beta + sum_k (1 + t a^-2 q^(2k)) i^k."""
    dims = a_poly.dims if isinstance(a_poly, HomologyTable) else a_poly
    anchor = mono(q=alpha, a=beta)
    rest = dims - LaurentPoly.monomial(anchor)
    pairs = [mono(t=1, a=-2, q=2 * k) for k in range(n)]
    if not rest.is_nonnegative():
        return SearchFailure(f"q^{alpha} a^{beta} does not occur in the table", True, 0)
    res = decompose(rest, pairs, budget)
    if not isinstance(res, Decomposition):
        return res
    wit = {f"i{k}": res.witnesses[f"f{k}"] for k in range(n)}
    check = LaurentPoly.monomial(anchor) + _resum(pairs, list(wit.values()))
    if check != dims:
        raise AssertionError("weakness witness failed to re-substitute")
    return Decomposition(wit, anchor, res.nodes)


def main_chain_degrees(n: int) -> dict[str, list[Monomial]]:
    """Differential degrees for the three spectral sequences of the chain."""
    return {
        "f": [mono(t=1, q=2 * n * k, a=-2 * k) for k in range(1, n)],
        "g": [mono(t=1, r=2 * k) for k in range(1, n)],
        "h": [mono(t=1, q=-2 * n * k) for k in range(1, n)],
    }


def main_chain_feasible(h_inf, n: int, s_prime: int, budget: int = DEFAULT_BUDGET, degrees=None):
    """Search the whole decomposition chain ending in q^(s') [N]_q.

    f-stage: H = P' + sum (1 + t q^(2Nk) a^(-2k)) f^k, P' free;
    then a -> q^N and multiply by [N]_(qr);
    g-stage: that = P'' + sum (1 + t r^(2k)) g^k, P'' free;
    then r -> 1;
    h-stage: that = q^(s') [N]_q + sum (1 + t q^(-2Nk)) h^k, exact.
    """
    dims = h_inf.dims if isinstance(h_inf, HomologyTable) else h_inf
    if s_prime % 2:
        raise ValueError("s' must be even")
    degs = degrees or main_chain_degrees(n)
    counter = _Counter(budget)
    anchor = LaurentPoly.monomial(mono(q=s_prime)) * quantum_int(n)
    qr = quantum_int(n, "qr")
    try:
        for p1, fs in _decompositions(dims, degs["f"], True, counter):
            stage2 = qr * substitute_a(p1, n)
            for p2, gs in _decompositions(stage2, degs["g"], True, counter):
                unred = p2.set_r_to_one()
                rest = unred - anchor
                if not rest.is_nonnegative():
                    continue
                for _, hs in _decompositions(rest, degs["h"], False, counter):
                    wit = {"P'": p1, "P''": p2}
                    wit.update({f"f{k + 1}": f for k, f in enumerate(fs)})
                    wit.update({f"g{k + 1}": g for k, g in enumerate(gs)})
                    wit.update({f"h{k + 1}": h for k, h in enumerate(hs)})
                    _verify_chain(dims, n, s_prime, degs, wit, len(fs))
                    return Decomposition(wit, mono(q=s_prime), counter.nodes)
    except BudgetExceeded as e:
        return SearchFailure(str(e), False, counter.nodes)
    return SearchFailure(f"no chain ends in q^{s_prime} [{n}]_q", True, counter.nodes)


def _verify_chain(dims, n, s_prime, degs, wit, k):
    fs = [wit[f"f{i + 1}"] for i in range(len(degs["f"]))]
    gs = [wit[f"g{i + 1}"] for i in range(len(degs["g"]))]
    hs = [wit[f"h{i + 1}"] for i in range(len(degs["h"]))]
    assert dims == wit["P'"] + _resum(degs["f"], fs)
    assert quantum_int(n, "qr") * substitute_a(wit["P'"], n) == wit["P''"] + _resum(degs["g"], gs)
    anchor = LaurentPoly.monomial(mono(q=s_prime)) * quantum_int(n)
    assert wit["P''"].set_r_to_one() == anchor + _resum(degs["h"], hs)


# -- the P(5,-3,2) sl_3 tables ----------------------------------------------------------


def _table(cells) -> LaurentPoly:
    return LaurentPoly({mono(t=t, q=q, r=r): c for t, q, r, c in cells})


def figure_left() -> LaurentPoly:
    """Reduced sl_3 homology of P(5,-3,2), as (t, q) cells."""
    cells = [
        (5, 10, 0, 1), (3, 6, 0, 1), (4, 6, 0, 1), (1, 2, 0, 1), (2, 2, 0, 2),
        (0, 0, 0, 1), (0, -2, 0, 2), (1, -2, 0, 1), (-2, -6, 0, 1), (-1, -6, 0, 1),
        (-3, -10, 0, 1),
    ]
    return _table(cells)


def figure_e1() -> LaurentPoly:
    """First page of the reduced/unreduced sequence, cell by cell (r = +-2, 0)."""
    cells = [
        (5, 12, 2, 1), (5, 10, 0, 1),
        (3, 8, 2, 1), (4, 8, 2, 1), (5, 8, -2, 1),
        (3, 6, 0, 1), (4, 6, 0, 1),
        (1, 4, 2, 1), (2, 4, 2, 2), (3, 4, -2, 1), (4, 4, -2, 1),
        (0, 2, 2, 1), (1, 2, 0, 1), (2, 2, 0, 2),
        (0, 0, 2, 2), (0, 0, 0, 1), (1, 0, -2, 1), (1, 0, 2, 1), (2, 0, -2, 2),
        (0, -2, 0, 2), (0, -2, -2, 1), (1, -2, 0, 1),
        (-2, -4, 2, 1), (-1, -4, 2, 1), (0, -4, -2, 2), (1, -4, -2, 1),
        (-2, -6, 0, 1), (-1, -6, 0, 1),
        (-3, -8, 2, 1), (-2, -8, -2, 1), (-1, -8, -2, 1),
        (-3, -10, 0, 1),
        (-3, -12, -2, 1),
    ]
    return _table(cells)


def figure_e3() -> LaurentPoly:
    """Limit page: unreduced sl_3 homology with the extra r-grading."""
    cells = [
        (5, 12, 2, 1), (5, 10, 0, 1),
        (3, 8, 2, 1),
        (3, 6, 0, 1), (4, 6, 0, 1),
        (1, 4, 2, 1), (2, 4, 2, 1), (4, 4, -2, 1),
        (2, 2, 0, 2),
        (0, 0, 2, 2), (2, 0, -2, 1),
        (0, -2, 0, 2), (0, -2, -2, 1), (1, -2, 0, 1),
        (-2, -4, 2, 1), (0, -4, -2, 1), (1, -4, -2, 1),
        (-2, -6, 0, 1), (-1, -6, 0, 1),
        (-1, -8, -2, 1),
        (-3, -10, 0, 1),
        (-3, -12, -2, 1),
    ]
    return _table(cells)


# d_1 lowers r by 2, d_2 by 4; both raise t by one
FIGURE_D_DEGREES = (mono(t=1, r=-2), mono(t=1, r=-4))
