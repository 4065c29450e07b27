"""Reduced HOMFLYPT homology tables (graded dimensions only).

Tables are nonnegative Laurent polynomials in t, q, a.  Nothing here computes
homology from chain complexes: thin tables are rebuilt from P_oo and the
signature, torus knots T(l,2) come from their closed form, and everything
else is obtained by products, mirrors and skein-sequence bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly, ONE, ZERO, delta_degrees, dual, mono, parse_poly

__all__ = [
    "HomologyTable",
    "NotThinError",
    "kr_thin",
    "torus_t2",
    "connected_sum",
    "mirror_table",
    "hopf_rr",
    "is_thin",
    "unknot_table",
    "published_pretzel_table",
    "render_grid",
]


class NotThinError(ValueError):
    """P_oo cannot be the t = -1 value of a thin table with this signature."""


@dataclass(frozen=True)
class HomologyTable:
    dims: LaurentPoly
    upper_bound: bool = False
    label: str = ""

    def __post_init__(self):
        if not self.dims.is_nonnegative():
            raise ValueError("graded dimensions must be nonnegative")

    def is_knot_table(self) -> bool:
        return all(m.t2 % 2 == 0 for m in self.dims.support())

    def total(self) -> int:
        return self.dims.total()

    def __str__(self) -> str:
        return str(self.dims)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "upper_bound_source": self.upper_bound,
            "dims": self.dims.to_records(),
            "text": str(self.dims),
        }


def unknot_table() -> HomologyTable:
    return HomologyTable(ONE, label="unknot")


def kr_thin(p_inf: LaurentPoly, sigma: int, label: str = "") -> HomologyTable:
    """Place each monomial c q^j a^k of P_oo in homological degree
    i = (-sigma - j - 2k)/2 with multiplicity |c|."""
    if any(m.t2 or m.r for m in p_inf.support()):
        raise ValueError("P_oo must only involve q and a")
    terms = {}
    for m, c in p_inf.terms():
        twice_i = -sigma - m.q - 2 * m.a
        if twice_i % 2:
            raise NotThinError(f"q^{m.q} a^{m.a} lands in half-integral degree for sigma = {sigma}")
        i = twice_i // 2
        if (c > 0) != (i % 2 == 0):
            raise NotThinError(
                f"coefficient {c} of q^{m.q} a^{m.a} has the wrong sign for degree {i} (sigma = {sigma})"
            )
        terms[mono(t=i, q=m.q, a=m.a)] = abs(c)
    return HomologyTable(LaurentPoly(terms), label=label)


def torus_t2(ell: int) -> HomologyTable:
    """Closed form for T(l,2), l odd and >= 3:
    a^(1-l) q^(l-1) (1 + (t^2 q^-4 + t^3 a^-2 q^-2) sum_j (t^2 q^-4)^j)."""
    if ell < 3 or ell % 2 == 0:
        raise ValueError(f"torus_t2 needs odd l >= 3, got {ell}")
    step = LaurentPoly.monomial(mono(t=2, q=-4))
    geo = sum((step ** j for j in range((ell - 3) // 2 + 1)), ZERO)
    inner = ONE + (step + LaurentPoly.monomial(mono(t=3, a=-2, q=-2))) * geo
    return HomologyTable(LaurentPoly.monomial(mono(a=1 - ell, q=ell - 1)) * inner, label=f"T({ell},2)")


def connected_sum(h1: HomologyTable, h2: HomologyTable) -> HomologyTable:
    if not (h1.is_knot_table() and h2.is_knot_table()):
        raise ValueError("connected sums are formed of knot tables only")
    label = f"{h1.label}#{h2.label}" if h1.label and h2.label else ""
    return HomologyTable(h1.dims * h2.dims, h1.upper_bound or h2.upper_bound, label)


def mirror_table(h: HomologyTable) -> HomologyTable:
    """All gradings negated (dual complex)."""
    return HomologyTable(dual(h.dims), h.upper_bound, f"-{h.label}" if h.label else "")


def hopf_rr() -> HomologyTable:
    """Totally reduced table of the positive Hopf link."""
    p = parse_poly("a^-1 q^2 + t a^-1 + t^2 a^-1 q^-2 + t^3 a^-3")
    return HomologyTable(p * LaurentPoly.monomial(mono(t="-1/2")), label="Hopf")


def is_thin(h: HomologyTable, sigma: int) -> bool:
    return delta_degrees(h.dims) == {-sigma}


def published_pretzel_table() -> HomologyTable:
    """Reduced table of P(5,-3,2) as displayed in the literature, computed by
    an external program.  Its homological degrees run opposite to ours (the
    delta grading is +2, not -sigma = -2), though its value at t = -1 is
    still our HOMFLYPT polynomial.  It is used as printed."""
    p = parse_poly(
        "t^-3 a^2 q^4 + t^-2 q^6 + t^-1 a^2 + 2q^2 + 1 + t a^-2 q^4 + t a^2 q^-4"
        " + 2t^2 q^-2 + t^3 a^-2 + t^4 q^-6 + t^5 a^-2 q^-4"
    )
    return HomologyTable(p, label="P(5,-3,2) [published]")


def render_grid(p: LaurentPoly, row_var: str = "q") -> str:
    """Plain-text grid: one row per ``row_var`` degree (descending), one
    column per t-degree (ascending); each cell lists the remaining variables."""
    if row_var not in ("q", "a"):
        raise ValueError("row variable must be q or a")
    cols = sorted({m.t2 for m in p.support()})
    rows = sorted({getattr(m, row_var) for m in p.support()}, reverse=True)
    cells: dict[tuple[int, int], LaurentPoly] = {}
    for m, c in p.terms():
        key = (getattr(m, row_var), m.t2)
        rest = m._replace(t2=0, **{row_var: 0})
        cells[key] = cells.get(key, ZERO) + LaurentPoly.monomial(rest, c)

    def head(t2):
        return f"t^{t2 // 2}" if t2 % 2 == 0 else f"t^{t2}/2"

    table = [[f"{row_var}\\t"] + [head(c) for c in cols]]
    for rv in rows:
        line = [f"{row_var}^{rv}"]
        for c in cols:
            cell = cells.get((rv, c))
            line.append("" if cell is None else str(cell).replace(" ", ""))
        table.append(line)
    widths = [max(len(r[i]) for r in table) for i in range(len(table[0]))]
    return "\n".join(
        "  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip() for r in table
    )
