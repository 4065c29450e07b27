"""Interval propagation over the axioms of slice-torus invariants.

A slice-torus invariant nu is a concordance homomorphism, so on a knot
expression it is a fixed integer combination of its values on atoms.  Every
constraint therefore becomes ``sum c_i nu(atom_i) in I``; propagation narrows
each atom's interval from every row until nothing changes.

Invariant names: ``nu`` (any slice-torus invariant), ``s_N`` (every sl_N
invariant, with ``N`` allowed in value formulas), ``s_3`` etc. (one of
them), ``tau2`` (twice the Ozsvath-Szabo tau).
"""

from __future__ import annotations

import ast
import operator
import re
import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from .diagram import bennequin_bounds, positive_braid_value, seifert_stats, signature
from .intervals import INF, EmptyIntervalError, RatInterval, fmt_rational
from .knots import (
    Atom,
    KnotExpr,
    atom_diagram,
    linear_form,
    normalize,
    parse_atom_params,
    parse_expr,
)

__all__ = [
    "Constraint",
    "Assignment",
    "Contradiction",
    "ConstraintSyntaxError",
    "Certificate",
    "parse_constraints",
    "load_constraints",
    "bundled_constraints",
    "propagate",
    "eval_expr",
    "certify_independence",
    "pretzel_chain",
    "safe_eval",
    "lattice_for",
]

ROUND_LIMIT = 500


class ConstraintSyntaxError(ValueError):
    pass


class Contradiction(ValueError):
    def __init__(self, message: str, chain: list[str]):
        super().__init__(message)
        self.chain = chain

    def report(self) -> str:
        return "\n".join([f"contradiction: {self}", "constraint chain:"] + [f"  {c}" for c in self.chain])


# -- arithmetic on formulas -------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}
_CMPOPS = {
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
}


def safe_eval(text: str, env: Mapping[str, object] | None = None):
    """Exact evaluation of +, -, *, /, integer powers and comparisons over
    Fractions; names are looked up in ``env``."""
    env = dict(env or {})
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as e:
        raise ConstraintSyntaxError(f"bad formula {text!r}") from e

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id in ("inf", "oo"):
                return INF
            if node.id not in env:
                raise ConstraintSyntaxError(f"unknown name {node.id!r} in {text!r}")
            return Fraction(env[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            base, exp = ev(node.left), ev(node.right)
            if exp.denominator != 1:
                raise ConstraintSyntaxError(f"non-integer power in {text!r}")
            return base ** int(exp)
        if isinstance(node, ast.Compare) and len(node.ops) == 1 and type(node.ops[0]) in _CMPOPS:
            return _CMPOPS[type(node.ops[0])](ev(node.left), ev(node.comparators[0]))
        raise ConstraintSyntaxError(f"unsupported syntax in {text!r}")

    return ev(tree)


# -- constraints ----------------------------------------------------------------------


_INV = re.compile(r"^(nu|tau2|s_N|s_(\d+))(?:\[(.+)\])?$")


@dataclass(frozen=True)
class InvariantSpec:
    name: str  # nu, tau2, s_N or s_<k>
    condition: str | None = None

    def applies_to(self, query: str) -> tuple[bool, dict]:
        """Whether rows of this spec constrain ``query``; also the formula env."""
        env: dict = {}
        qk = _sn_index(query)
        if qk is not None:
            env["N"] = qk
        if self.name == "nu":
            ok = True
        elif self.name == "s_N":
            ok = qk is not None
        else:
            ok = query in self.name.split("|")
        if ok and self.condition:
            if "N" not in env:
                return False, env
            ok = bool(safe_eval(self.condition, env))
        return ok, env

    def __str__(self):
        return self.name + (f"[{self.condition}]" if self.condition else "")


def _sn_index(name: str) -> int | None:
    m = re.fullmatch(r"s_(\d+)", name)
    return int(m.group(1)) if m else None


def _parse_inv(tok: str) -> InvariantSpec:
    m = _INV.match(tok)
    if not m:
        raise ConstraintSyntaxError(f"unknown invariant {tok!r} (use nu, tau2, s_N or s_<k>)")
    if m.group(2) is not None and int(m.group(2)) < 2:
        raise ConstraintSyntaxError("s_k needs k >= 2")
    return InvariantSpec(m.group(1), m.group(3))


@dataclass(frozen=True)
class Constraint:
    """One line of a constraint file.

    kind is one of value, xchg, cob, genus, bennequin, lattice, alternating,
    quasialt, posbraid, les, chain; the last five are expanded into the basic
    kinds using diagram and homology computations.
    """

    kind: str
    invariant: InvariantSpec
    operands: tuple
    payload: object = None
    source: str = ""

    def __str__(self):
        return self.source or f"{self.kind} {self.invariant} {' '.join(map(str, self.operands))}"


@dataclass(frozen=True)
class _Row:
    coeffs: tuple  # ((atom, c), ...)
    interval: RatInterval
    why: str


def _interval_payload(text: str, env) -> RatInterval:
    text = text.strip()
    if text.startswith("="):
        v = safe_eval(text[1:], env)
        return RatInterval(v, v)
    if text.startswith("in"):
        text = text[2:].strip()
    if text.startswith("[") and text.endswith("]"):
        lo, hi = _split_top(text[1:-1])
        return RatInterval(safe_eval(lo, env), safe_eval(hi, env))
    if text.startswith("{") and text.endswith("}"):
        vals = [safe_eval(v, env) for v in _split_top(text[1:-1], n=None)]
        return RatInterval(min(vals), max(vals))
    v = safe_eval(text, env)
    return RatInterval(v, v)


def _split_top(s: str, n: int | None = 2) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    if n is not None and len(parts) != n:
        raise ConstraintSyntaxError(f"expected {n} comma-separated values in {s!r}")
    return parts


def _knot(tok: str) -> KnotExpr:
    return normalize(parse_expr(tok))


def parse_constraints(text: str, origin: str = "<string>", base: Path | None = None) -> list[Constraint]:
    """Parse a constraint file.  '#' starts a comment outside quotes, so
    connected sums must be quoted: ``value nu "T(3,2) # T(3,2)" = 4``."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        try:
            _check_hash(raw)
            toks = shlex.split(raw, comments=True)
        except ValueError as e:
            raise ConstraintSyntaxError(f"{origin}:{lineno}: {e}") from None
        if not toks:
            continue
        if toks[0] == "include":
            if len(toks) != 2:
                raise ConstraintSyntaxError(f"{origin}:{lineno}: include takes one file name")
            out.extend(_resolve_include(toks[1], base))
            continue
        src = f"{origin}:{lineno}: {' '.join(shlex.quote(t) if ' ' in t else t for t in toks)}"
        try:
            out.append(_parse_line(toks, src))
        except (ConstraintSyntaxError, ValueError, KeyError) as e:
            raise ConstraintSyntaxError(f"{origin}:{lineno}: {e}") from None
    return out


def _check_hash(raw: str):
    # an unquoted '#' glued to a token would silently truncate the line
    quote = None
    for i, ch in enumerate(raw):
        if quote:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch == "#":
            if i > 0 and not raw[i - 1].isspace():
                raise ConstraintSyntaxError("quote knot expressions that contain '#'")
            return


def _parse_line(toks: list[str], src: str) -> Constraint:
    kind = toks[0].lower()
    rest = toks[1:]

    def need(n):
        if len(rest) < n:
            raise ConstraintSyntaxError(f"'{kind}' needs at least {n} arguments")

    if kind == "value":
        need(3)
        inv = _parse_inv(rest[0])
        knot = _knot(rest[1])
        payload = " ".join(rest[2:])
        _interval_payload(payload, {"N": 3})  # fail early on malformed formulas
        return Constraint(kind, inv, (knot,), payload, src)
    if kind == "xchg":
        need(3)
        inv = _parse_inv(rest[0])
        count = int(rest[3]) if len(rest) > 3 else 1
        if count < 0:
            raise ConstraintSyntaxError("crossing-change count must be nonnegative")
        return Constraint(kind, inv, (_knot(rest[1]), _knot(rest[2])), count, src)
    if kind == "cob":
        need(4)
        chi = int(rest[3])
        if chi > 0:
            raise ConstraintSyntaxError("a connected cobordism has Euler characteristic <= 0")
        return Constraint(kind, _parse_inv(rest[0]), (_knot(rest[1]), _knot(rest[2])), chi, src)
    if kind == "genus":
        need(3)
        g = int(rest[2])
        if g < 0:
            raise ConstraintSyntaxError("genus must be nonnegative")
        return Constraint(kind, _parse_inv(rest[0]), (_knot(rest[1]),), g, src)
    if kind == "bennequin":
        need(2)
        payload = " ".join(rest[2:]) or None
        return Constraint(kind, _parse_inv(rest[0]), (_knot(rest[1]),), payload, src)
    if kind == "lattice":
        need(3)
        inv = _parse_inv(rest[0])
        if rest[1] != "step":
            raise ConstraintSyntaxError("expected 'lattice <inv> step <s> [offset <o>]'")
        step = rest[2]
        offset = rest[4] if len(rest) > 4 and rest[3] == "offset" else "0"
        return Constraint(kind, inv, (), (step, offset), src)
    if kind in ("alternating", "quasialt"):
        need(1)
        sigma = int(rest[1]) if len(rest) > 1 else None
        # quasi-alternating knots: only s_2 and 2 tau are known to equal the signature
        inv = InvariantSpec("nu") if kind == "alternating" else InvariantSpec("s_2|tau2")
        return Constraint(kind, inv, (_knot(rest[0]),), sigma, src)
    if kind == "posbraid":
        need(1)
        return Constraint(kind, InvariantSpec("nu"), (_knot(rest[0]),), None, src)
    if kind == "les":
        need(2)
        return Constraint(kind, _parse_inv(rest[0]), (_knot(rest[1]),), None, src)
    if kind == "chain":
        need(2)
        return Constraint(kind, _parse_inv(rest[0]), (_knot(rest[1]),), None, src)
    raise ConstraintSyntaxError(f"unknown constraint kind {kind!r}")


def load_constraints(path) -> list[Constraint]:
    """Read a constraint file; a missing path falls back to the bundled file
    of the same name (so ``examples/pretzel_even.constraints`` works from anywhere)."""
    p = Path(path)
    if p.is_file():
        return parse_constraints(p.read_text(), p.name, p.parent)
    try:
        return bundled_constraints(p.name)
    except FileNotFoundError:
        raise FileNotFoundError(
            f"no constraint file {str(path)!r}; bundled: {', '.join(bundled_constraint_names())}"
        ) from None


def _resolve_include(name: str, base: Path | None) -> list[Constraint]:
    if base is not None and (base / name).is_file():
        return load_constraints(base / name)
    return bundled_constraints(name)


def bundled_constraints(name: str) -> list[Constraint]:
    from importlib import resources

    base = resources.files("krtoolkit") / "data" / "constraints"
    for cand in (name, name + ".constraints"):
        f = base / cand
        if f.is_file():
            return parse_constraints(f.read_text(), cand)
    raise FileNotFoundError(name)


def bundled_constraint_names() -> list[str]:
    from importlib import resources

    base = resources.files("krtoolkit") / "data" / "constraints"
    return sorted(p.name for p in base.iterdir() if p.is_file())


# -- expanding constraints into rows ---------------------------------------------------


def _single_atom(c: Constraint, k: KnotExpr) -> str:
    if not isinstance(k, Atom):
        raise ConstraintSyntaxError(f"{c.kind} needs a single named knot, got {k}")
    return k.name


def pretzel_chain(ell: int, m: int, n: int) -> list[tuple[str, str, int]]:
    """Crossing changes (K+, K-, 1) from P(m+2,-m,n0) up to P(l,-m,n), with
    n0 = 4 for n >= 4 and n0 = 2 for n = 2.

    Raising the last band by two switches one of its negative crossings
    (the larger band is K-); raising the first band by two switches one of
    its positive crossings (the larger band is K+).
    """
    if ell % 2 == 0 or m % 2 == 0 or n % 2 or not (ell > m >= 3) or n < 2:
        raise ValueError(f"chain needs odd l > m >= 3 and even n >= 2, got ({ell},{-m},{n})")
    steps = []
    n0 = 2 if n == 2 else 4
    cur_l = m + 2
    for nn in range(n0, n, 2):
        steps.append((f"P({cur_l},{-m},{nn})", f"P({cur_l},{-m},{nn + 2})", 1))
    for ll in range(cur_l, ell, 2):
        steps.append((f"P({ll + 2},{-m},{n})", f"P({ll},{-m},{n})", 1))
    return steps


def _pretzel_params(c: Constraint, k: KnotExpr):
    name = _single_atom(c, k)
    kind, params = parse_atom_params(name)
    if kind != "P":
        raise ConstraintSyntaxError(f"{c.kind} needs a pretzel knot P(a,b,c), got {name}")
    return params


def _expand(c: Constraint, query: str, env: dict) -> tuple[list[_Row], list]:
    """Rows and lattice settings contributed by ``c`` for invariant ``query``."""
    rows: list[_Row] = []
    lattices = []
    why = str(c)
    if c.kind == "value":
        iv = _interval_payload(c.payload, env)
        rows.append(_Row(tuple(linear_form(c.operands[0]).items()), iv, why))
    elif c.kind == "xchg":
        kp, km = c.operands
        form = dict(linear_form(kp))
        for a, v in linear_form(km).items():
            form[a] = form.get(a, 0) - v
        rows.append(_Row(tuple((a, v) for a, v in form.items() if v), RatInterval(0, 2 * c.payload), why))
    elif c.kind == "cob":
        k0, k1 = c.operands
        form = dict(linear_form(k0))
        for a, v in linear_form(k1).items():
            form[a] = form.get(a, 0) - v
        rows.append(_Row(tuple((a, v) for a, v in form.items() if v), RatInterval(c.payload, -c.payload), why))
    elif c.kind == "genus":
        rows.append(_Row(tuple(linear_form(c.operands[0]).items()), RatInterval(-2 * c.payload, 2 * c.payload), why))
    elif c.kind == "bennequin":
        if c.payload:
            iv = _interval_payload(c.payload, env)
        else:
            d = atom_diagram(_single_atom(c, c.operands[0]))
            iv = bennequin_bounds(seifert_stats(d))
            why += f"  (computed: [{fmt_rational(iv.lo)}, {fmt_rational(iv.hi)}])"
        rows.append(_Row(tuple(linear_form(c.operands[0]).items()), iv, why))
    elif c.kind == "lattice":
        step = safe_eval(c.payload[0], env)
        offset = safe_eval(c.payload[1], env)
        lattices.append((step, offset, why))
    elif c.kind in ("alternating", "quasialt"):
        sigma = c.payload
        if sigma is None:
            sigma = signature(atom_diagram(_single_atom(c, c.operands[0])))
            why += f"  (signature {sigma})"
        rows.append(_Row(tuple(linear_form(c.operands[0]).items()), RatInterval(sigma, sigma), why))
    elif c.kind == "posbraid":
        name = _single_atom(c, c.operands[0])
        kind, params = parse_atom_params(name)
        if kind == "T":
            p, q = params
            if p <= 0 or q <= 0:
                raise ConstraintSyntaxError(f"{name} is not a positive torus knot")
            word = [i for _ in range(p) for i in range(1, q)]
            val = positive_braid_value(word, q)
        elif kind == "B":
            val = positive_braid_value(*params)
        else:
            raise ConstraintSyntaxError(f"posbraid needs T(p,q) or B[...]@n, got {name}")
        rows.append(_Row(((name, 1),), RatInterval(val, val), why + f"  (value {val})"))
    elif c.kind == "les":
        a, b, n = _pretzel_params(c, c.operands[0])
        if b != 2 - a or n not in (2, 4) or a < 5 or a % 2 == 0:
            raise ConstraintSyntaxError("les bound is implemented for P(l,2-l,2) and P(l,2-l,4), l >= 5 odd")
        from .slnbounds import pretzel_n2_bound, pretzel_n4_bound, sn_interval, xn_set

        big_n = env["N"]
        table = pretzel_n2_bound(a) if n == 2 else pretzel_n4_bound(a)
        iv = sn_interval(xn_set(table, big_n), big_n)
        rows.append(_Row(((_single_atom(c, c.operands[0]), 1),), RatInterval(iv.lo, iv.hi), why + f"  (N={big_n}: {iv})"))
    elif c.kind == "chain":
        ell, neg_m, n = _pretzel_params(c, c.operands[0])
        for kp, km, cnt in pretzel_chain(ell, -neg_m, n):
            rows.append(_Row(((kp, 1), (km, -1)), RatInterval(0, 2 * cnt), f"{why}  (xchg {kp} {km})"))
    else:
        raise ConstraintSyntaxError(f"unknown constraint kind {c.kind!r}")
    return rows, lattices


# -- propagation -----------------------------------------------------------------------


def lattice_for(query: str) -> tuple[Fraction, Fraction] | None:
    """Built-in value lattice: s_N in (2/(N-1)) Z, 2 tau in 2Z."""
    k = _sn_index(query)
    if k is not None:
        return Fraction(2, k - 1), Fraction(0)
    if query == "tau2":
        return Fraction(2), Fraction(0)
    return None


@dataclass
class Assignment:
    invariant: str
    intervals: dict[str, RatInterval]
    provenance: dict[str, list[str]] = field(default_factory=dict)

    def __getitem__(self, atom) -> RatInterval:
        key = atom.name if isinstance(atom, Atom) else str(atom)
        return self.intervals[key]

    def __contains__(self, atom) -> bool:
        key = atom.name if isinstance(atom, Atom) else str(atom)
        return key in self.intervals

    def to_json(self) -> dict:
        return {
            "invariant": self.invariant,
            "values": {k: v.to_json() for k, v in sorted(self.intervals.items())},
        }


def _scaled(iv: RatInterval, c: int) -> tuple:
    lo, hi = iv.lo * c, iv.hi * c
    return (lo, hi) if c > 0 else (hi, lo)


def _add(x, y):
    # inf + -inf never occurs: a lower sum only adds lower ends
    return x + y


def propagate(
    constraints: Iterable[Constraint],
    invariant: str,
    lattice: tuple | None = "auto",
    round_limit: int = ROUND_LIMIT,
) -> Assignment:
    """Narrow every atom's interval to the fixpoint of all applicable rows.

    Raises Contradiction (with the constraints involved) on an empty interval.
    """
    rows: list[_Row] = []
    lattices = []
    for c in constraints:
        ok, env = c.invariant.applies_to(invariant)
        if not ok:
            continue
        r, lat = _expand(c, invariant, env)
        rows.extend(r)
        lattices.extend(lat)
    if lattice == "auto":
        lattice = lattice_for(invariant)
    if lattices:
        step, offset, _ = lattices[-1]
        lattice = (step, offset)
    step, offset = (lattice if lattice else (None, Fraction(0)))

    atoms = sorted({a for r in rows for a, _ in r.coeffs})
    cur: dict[str, RatInterval] = {}
    why: dict[str, set[str]] = {a: set() for a in atoms}

    def fresh(lo, hi):
        return RatInterval(lo, hi, step, offset) if step is not None else RatInterval(lo, hi)

    for a in atoms:
        try:
            cur[a] = fresh(-INF, INF)
        except EmptyIntervalError:  # pragma: no cover
            raise
    for _ in range(round_limit):
        changed = False
        for row in rows:
            for j, (aj, cj) in enumerate(row.coeffs):
                lo, hi = row.interval.lo, row.interval.hi
                used = {row.why}
                for i, (ai, ci) in enumerate(row.coeffs):
                    if i == j:
                        continue
                    slo, shi = _scaled(cur[ai], ci)
                    lo, hi = _sub_lo(lo, shi), _sub_hi(hi, slo)
                    used |= why[ai]
                if cj < 0:
                    lo, hi = -hi, -lo
                    cj = -cj
                lo, hi = lo / cj if not isinstance(lo, float) else lo, hi / cj if not isinstance(hi, float) else hi
                old = cur[aj]
                nlo, nhi = max(old.lo, lo), min(old.hi, hi)
                try:
                    new = fresh(nlo, nhi)
                except EmptyIntervalError:
                    chain = sorted(used | why[aj])
                    raise Contradiction(
                        f"{invariant}({aj}) has no admissible value: "
                        f"[{fmt_rational(nlo)}, {fmt_rational(nhi)}]"
                        + (f" on the lattice {fmt_rational(step)}Z" if step is not None else ""),
                        chain,
                    ) from None
                if new != old:
                    cur[aj] = new
                    why[aj] = why[aj] | used
                    changed = True
        if not changed:
            break
    return Assignment(invariant, cur, {a: sorted(w) for a, w in why.items()})


def _sub_lo(lo, shi):
    if isinstance(lo, float) or isinstance(shi, float):
        return -INF if (lo == -INF or shi == INF) else lo - shi
    return lo - shi


def _sub_hi(hi, slo):
    if isinstance(hi, float) or isinstance(slo, float):
        return INF if (hi == INF or slo == -INF) else hi - slo
    return hi - slo


def eval_expr(e: KnotExpr, assignment: Assignment | Mapping[str, RatInterval], invariant: str | None = None) -> RatInterval:
    """Interval of the invariant on a knot expression (sum over atoms)."""
    vals = assignment.intervals if isinstance(assignment, Assignment) else assignment
    lo, hi = Fraction(0), Fraction(0)
    for atom, c in linear_form(e).items():
        if atom not in vals:
            raise KeyError(f"no value for {atom}" + (f" ({invariant})" if invariant else ""))
        slo, shi = _scaled(vals[atom], c)
        lo, hi = lo + slo, hi + shi
    return RatInterval(lo, hi)


# -- independence certificates -----------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    witness: str
    mode: str
    family: tuple[str, ...]
    hull: RatInterval
    target: str
    excluded: RatInterval
    note: str = ""

    def to_json(self) -> dict:
        return {
            "witness": self.witness,
            "mode": self.mode,
            "family": list(self.family),
            "hull": self.hull.to_json(),
            "target": self.target,
            "excluded_value": self.excluded.to_json(),
            "note": self.note,
        }

    def __str__(self) -> str:
        return (
            f"{self.target} is not a {'convex' if self.mode == 'convex' else 'linear'} combination of "
            f"{{{', '.join(self.family)}}}: on {self.witness} the combinations lie in "
            f"[{fmt_rational(self.hull.lo)}, {fmt_rational(self.hull.hi)}] but "
            f"{self.target} = [{fmt_rational(self.excluded.lo)}, {fmt_rational(self.excluded.hi)}]"
            + (f"; {self.note}" if self.note else "")
        )


def certify_independence(
    family: list[str],
    values: Mapping[str, Mapping[str, RatInterval]],
    target: str,
    mode: str = "convex",
    note: str = "",
) -> Certificate | None:
    """Find a witness knot on which no admissible combination of ``family``
    can equal ``target``.

    ``values[witness][invariant]`` are closed intervals (or points).  In
    ``convex`` mode the combinations are convex (coefficients sum to one,
    forced when every invariant in play is normalised on the same torus
    knot), so their values lie in the hull of the family's intervals.  In
    ``linear`` mode only a witness where every family member vanishes
    certifies anything: all combinations are 0 there.
    """
    if mode not in ("convex", "linear"):
        raise ValueError("mode must be 'convex' or 'linear'")
    for witness in values:
        vals = values[witness]
        if target not in vals or any(f not in vals for f in family):
            continue
        ivs = [vals[f] for f in family]
        if any(not iv.is_bounded() for iv in ivs) or not vals[target].is_bounded():
            raise ValueError(f"unbounded value on {witness}; certificates need closed intervals")
        if mode == "convex":
            hull = RatInterval(min(iv.lo for iv in ivs), max(iv.hi for iv in ivs))
        else:
            if not all(iv.lo == iv.hi == 0 for iv in ivs):
                continue
            hull = RatInterval(0, 0)
        tv = vals[target]
        if tv.hi < hull.lo or tv.lo > hull.hi:
            return Certificate(witness, mode, tuple(family), hull, target, RatInterval(tv.lo, tv.hi), note)
    return None
