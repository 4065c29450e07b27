"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (contradiction, infeasible
decomposition, table that cannot be thin), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .decomp import (
    DEFAULT_BUDGET,
    FIGURE_D_DEGREES,
    Decomposition,
    decompose,
    figure_e1,
    figure_e3,
    figure_left,
    first_page,
    main_chain_feasible,
    weakness_decomp,
)
from .diagram import DiagramError, bennequin_bounds, format_pd, seifert_stats, signature
from .intervals import fmt_rational
from .laurent import LaurentPoly
from .knots import (
    Atom,
    KnotSyntaxError,
    Mirror,
    Sum,
    UnknownKnotError,
    expr_diagram,
    normalize,
    parse_atom_params,
    parse_expr,
)
from .krhom import (
    HomologyTable,
    NotThinError,
    connected_sum,
    kr_thin,
    mirror_table,
    published_pretzel_table,
    render_grid,
    torus_t2,
    unknot_table,
)
from .skeinpoly import NotLaurentError, SkeinLimitError, homflypt, kauffman_sl2, sln_poly
from .slicetorus import (
    ConstraintSyntaxError,
    Contradiction,
    eval_expr,
    load_constraints,
    propagate,
)
from .slnbounds import double_les_bound, pretzel_n2_bound, pretzel_n4_bound, sn_interval, sn_record, xn_set

__all__ = ["main", "run", "parse_knot", "table_for", "UsageError", "MathFailure"]


class UsageError(Exception):
    pass


class MathFailure(Exception):
    pass


def parse_knot(text: str):
    return normalize(parse_expr(text))


def table_for(e) -> HomologyTable:
    """Reduced table of a knot expression: closed form for T(l,2), thin
    reconstruction from P_oo and the signature otherwise, products for sums."""
    if isinstance(e, Mirror):
        return mirror_table(table_for(e.arg))
    if isinstance(e, Sum):
        out = unknot_table()
        for a in e.args:
            out = connected_sum(out, table_for(a))
        return out
    if e.name == "unknot":
        return unknot_table()
    kind, params = parse_atom_params(e.name)
    if kind == "T" and params[1] == 2 and params[0] % 2:
        ell = params[0]
        if ell >= 3:
            return torus_t2(ell)
        if ell <= -3:
            return mirror_table(torus_t2(-ell))
        return unknot_table()
    d = expr_diagram(e)
    if not d.is_knot():
        raise UsageError(f"{e} is a link; tables are built for knots")
    try:
        return kr_thin(homflypt(d), signature(d), str(e))
    except NotThinError as err:
        raise NotThinError(f"{e} has no thin table: {err}") from None


def _out(args, text: str, obj):
    if args.json:
        print(json.dumps(obj, indent=2, sort_keys=True, default=str))
    else:
        print(text)


# -- subcommands -------------------------------------------------------------------------


def cmd_poly(args) -> int:
    e = parse_knot(args.knot)
    d = expr_diagram(e)
    if args.sl is not None:
        p, what = sln_poly(d, args.sl, limit=args.limit), f"sl_{args.sl}"
    elif args.jones:
        p, what = kauffman_sl2(d, limit=args.limit), "bracket"
    else:
        p, what = homflypt(d, limit=args.limit), "homflypt"
    _out(args, str(p), {"knot": str(e), "invariant": what, "poly": p.to_records(), "text": str(p)})
    return 0


def cmd_homology(args) -> int:
    if args.published:
        h = published_pretzel_table()
    else:
        e = parse_knot(args.knot)
        if args.thin:
            d = expr_diagram(e)
            sigma = args.sigma if args.sigma is not None else signature(d)
            h = kr_thin(homflypt(d), sigma, str(e))
        else:
            h = table_for(e)
    text = render_grid(h.dims, args.rows) if args.grid else str(h)
    _out(args, text, h.to_json())
    return 0


def _sn_lines(label, h, ns):
    lines, recs = [], []
    for n in ns:
        iv = sn_interval(xn_set(h, n), n)
        lines.append(f"s_{n}({label}) {iv}")
        recs.append(sn_record(h, n))
    return lines, recs


def cmd_bounds(args) -> int:
    ns = args.sN or [2, 3, 4]
    if args.les_pretzel is not None:
        ell = args.les_pretzel
        if ell < 5 or ell % 2 == 0:
            raise UsageError("--les-pretzel needs an odd l >= 5")
        h = pretzel_n2_bound(ell) if args.bands == 2 else pretzel_n4_bound(ell)
        label = f"P({ell},{2 - ell},{args.bands})"
        lines, recs = _sn_lines(label, h, ns)
        _out(args, "\n".join(lines), {"knot": label, "sN": recs})
        return 0
    if args.knot is None:
        raise UsageError("give a knot or --les-pretzel")
    e = parse_knot(args.knot)
    h = table_for(e)
    lines, recs = _sn_lines(str(e), h, ns)
    obj = {"knot": str(e), "sN": recs}
    if isinstance(e, Atom):
        st = seifert_stats(expr_diagram(e))
        iv = bennequin_bounds(st)
        lines.append(f"bennequin({e}) ∈ [{fmt_rational(iv.lo)}, {fmt_rational(iv.hi)}]")
        obj["seifert"] = st.as_dict()
        obj["bennequin"] = iv.to_json()
    _out(args, "\n".join(lines), obj)
    return 0


def cmd_les(args) -> int:
    if args.pretzel is not None:
        ell = args.pretzel
        if ell < 5 or ell % 2 == 0:
            raise UsageError("--pretzel needs an odd l >= 5")
        h = pretzel_n2_bound(ell) if args.bands == 2 else pretzel_n4_bound(ell)
    else:
        h = double_les_bound(table_for(parse_knot(args.double)))
    text = render_grid(h.dims) if args.grid else str(h)
    _out(args, text, h.to_json())
    return 0


def _fail_or_ok(args, res, title) -> int:
    if isinstance(res, Decomposition):
        lines = [f"{title}: found ({res.nodes} nodes)"]
        lines += [f"  {k} = {v}" for k, v in res.witnesses.items()]
        _out(args, "\n".join(lines), {"found": True, **res.to_json()})
        return 0
    kind = "proven infeasible" if res.proven else "search budget exhausted"
    _out(args, f"{title}: {kind}: {res.reason}", {"found": False, "proven": res.proven, "reason": res.reason, "nodes": res.nodes})
    return 1


def cmd_decomp(args) -> int:
    if args.mode == "weakness":
        table = published_pretzel_table() if args.knot in (None, "published") else table_for(parse_knot(args.knot))
        res = weakness_decomp(table, args.N, args.alpha, args.beta, args.budget)
        return _fail_or_ok(args, res, f"weakness N={args.N} alpha={args.alpha} beta={args.beta}")
    if args.mode == "chain":
        if args.knot is None or args.s is None:
            raise UsageError("decomp chain needs a knot and --s")
        h = table_for(parse_knot(args.knot))
        res = main_chain_feasible(h, args.N, args.s, args.budget)
        return _fail_or_ok(args, res, f"chain N={args.N} s'={args.s}")
    # figure: first page and two page steps for the sl_3 tables of P(5,-3,2)
    e1 = first_page(figure_left(), 3)
    e3 = figure_e3()
    ok = e1 == figure_e1()
    lines = [f"E1 = [3]_qr * E_left: {'matches' if ok else 'differs from'} the transcribed middle table",
             f"dim E1 = {e1.total()}, dim E3 = {e3.total()}"]
    obj = {"e1_matches": ok, "dim_e1": e1.total(), "dim_e3": e3.total()}
    res = decompose(e1 - e3, list(FIGURE_D_DEGREES))
    if isinstance(res, Decomposition):
        ranks = [res.witnesses[f"f{k}"].total() for k in range(len(FIGURE_D_DEGREES))]
        lines.append(f"E1 - E3 splits along d-degrees {', '.join(str(LaurentPoly.monomial(m)) for m in FIGURE_D_DEGREES)} with ranks {ranks}")
        obj["ranks"] = ranks
    else:
        lines.append(f"E1 - E3 does not split: {res.reason}")
        ok = False
    _out(args, "\n".join(lines), obj)
    return 0 if ok else 1


def cmd_solve(args) -> int:
    cs = load_constraints(args.file)
    if args.query:
        parts = args.query.split(None, 1)
        if len(parts) != 2:
            raise UsageError('query looks like "s_3 P(7,-5,4)"')
        inv, knot = parts
        e = parse_knot(knot)
        a = propagate(cs, inv)
        # a single atom keeps its lattice; sums are plain interval sums
        if isinstance(e, Atom) and e.name in a.intervals:
            iv = a.intervals[e.name]
        else:
            iv = eval_expr(e, a, inv)
        _out(args, str(iv), {"invariant": inv, "knot": str(e), "value": iv.to_json()})
        return 0
    if not args.invariant:
        raise UsageError("give --query or --invariant")
    a = propagate(cs, args.invariant)
    lines = [f"{args.invariant}({k}) {v}" for k, v in sorted(a.intervals.items())]
    _out(args, "\n".join(lines), a.to_json())
    return 0


def cmd_verify(args) -> int:
    only = [int(x) for x in args.only.split(",")] if args.only else None
    outcomes = acceptance.run_all(args.seed, only)
    ok = all(o.passed for o in outcomes)
    if args.json:
        _out(args, "", [o.__dict__ for o in outcomes])
    else:
        for o in outcomes:
            print(o.line())
        print(f"{sum(o.passed for o in outcomes)}/{len(outcomes)} criteria passed")
    return 0 if ok else 1


def cmd_pd(args) -> int:
    d = expr_diagram(parse_knot(args.knot))
    _out(args, format_pd(d), {"pd": format_pd(d)})
    return 0


# -- argument parsing -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global flags without clobbering values given earlier
        f = argparse.ArgumentParser(add_help=False)
        f.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                       help="machine-readable output")
        f.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else acceptance.DEFAULT_SEED,
                       help="seed for randomised checks")
        return f

    common = flags(True)
    p = argparse.ArgumentParser(prog="krtoolkit", description=__doc__.splitlines()[0], parents=[flags(False)])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("poly", parents=[common], help="HOMFLYPT, sl_N or bracket polynomial")
    s.add_argument("knot")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--homflypt", action="store_true", help="HOMFLYPT in a, q (default)")
    g.add_argument("--sl", type=int, metavar="N", help="sl_N polynomial")
    g.add_argument("--jones", action="store_true", help="Kauffman bracket state sum (sl_2)")
    s.add_argument("--limit", type=int, default=None, help="crossing limit")
    s.set_defaults(func=cmd_poly)

    s = sub.add_parser("homology", parents=[common], help="reduced HOMFLYPT homology table")
    s.add_argument("knot", nargs="?", default="unknot")
    s.add_argument("--thin", action="store_true", help="force thin reconstruction from P_oo")
    s.add_argument("--sigma", type=int, default=None, help="signature for --thin (default: computed)")
    s.add_argument("--published", action="store_true", help="the published P(5,-3,2) table")
    s.add_argument("--grid", action="store_true")
    s.add_argument("--rows", choices=["q", "a"], default="q")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("bounds", parents=[common], help="s_N intervals and Bennequin bounds")
    s.add_argument("knot", nargs="?")
    s.add_argument("--sN", type=int, action="append", metavar="N")
    s.add_argument("--les-pretzel", type=int, metavar="L", help="use the exact-sequence bound for P(L,2-L,n)")
    s.add_argument("--bands", type=int, choices=[2, 4], default=2, help="last band n for --les-pretzel")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("les", parents=[common], help="skein exact-sequence bounds")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--pretzel", type=int, metavar="L", help="bound for P(L,2-L,n)")
    g.add_argument("--double", metavar="KNOT", help="two positive steps with Hopf resolutions from KNOT")
    s.add_argument("--bands", type=int, choices=[2, 4], default=2)
    s.add_argument("--grid", action="store_true")
    s.set_defaults(func=cmd_les)

    s = sub.add_parser("decomp", parents=[common], help="decomposition searches")
    s.add_argument("mode", choices=["weakness", "chain", "figure"])
    s.add_argument("knot", nargs="?", help="knot (default for weakness: the published P(5,-3,2) table)")
    s.add_argument("--N", type=int, default=2)
    s.add_argument("--alpha", type=int, default=0)
    s.add_argument("--beta", type=int, default=0)
    s.add_argument("--s", type=int, help="s' for the chain search")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.set_defaults(func=cmd_decomp)

    s = sub.add_parser("solve", parents=[common], help="propagate a constraint file")
    s.add_argument("file")
    s.add_argument("--query", help='e.g. "s_3 P(7,-5,4)"')
    s.add_argument("--invariant", help="print every atom for this invariant")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("pd", parents=[common], help="print a PD code for a knot expression")
    s.add_argument("knot")
    s.set_defaults(func=cmd_pd)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, KnotSyntaxError, ConstraintSyntaxError, DiagramError, SkeinLimitError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except UnknownKnotError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Contradiction as e:
        print(e.report(), file=sys.stderr if not args.json else sys.stdout)
        return 1
    except (NotThinError, NotLaurentError, MathFailure) as e:
        print(f"failure: {e}", file=sys.stderr)
        return 1


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
