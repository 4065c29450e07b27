"""Knot expressions: atoms, mirrors and connected sums, with a parser.

Grammar::

    expr := term ('#' term)*
    term := '-' term | '(' expr ')' | atom
    atom := NAME | T(p,q) | P(a,b,c) | B[w1,w2,...]@n | PD[X(..),...]

Named atoms resolve to bundled PD codes (``data/pd/<name>.pd``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Union

from .diagram import Diagram, connected_sum, from_braid, parse_pd, pretzel, torus, unknot

__all__ = [
    "Atom",
    "Mirror",
    "Sum",
    "KnotExpr",
    "KnotSyntaxError",
    "UnknownKnotError",
    "parse_expr",
    "normalize",
    "linear_form",
    "known_names",
    "atom_diagram",
    "expr_diagram",
    "parse_atom_params",
]


@dataclass(frozen=True, order=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Mirror:
    arg: "KnotExpr"

    def __str__(self):
        inner = str(self.arg)
        return f"-{inner}" if isinstance(self.arg, Atom) else f"-({inner})"


@dataclass(frozen=True)
class Sum:
    args: tuple

    def __str__(self):
        if not self.args:
            return "unknot"
        return " # ".join(str(a) for a in self.args)


KnotExpr = Union[Atom, Mirror, Sum]


class KnotSyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


class UnknownKnotError(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown knot {self.name!r}; known names: {', '.join(known_names())}"


_ATOM_PATTERNS = [
    re.compile(r"T\(\s*-?\d+\s*,\s*-?\d+\s*\)"),
    re.compile(r"P\(\s*-?\d+\s*,\s*-?\d+\s*,\s*-?\d+\s*\)"),
    re.compile(r"B\[\s*(?:-?\d+\s*(?:,\s*-?\d+\s*)*)?\]\s*@\s*\d+"),
    re.compile(r"PD\[[^\]]*\]"),
    re.compile(r"[A-Za-z0-9_]+(?![\(\[])"),
]


def _canonical_atom(tok: str) -> str:
    if tok.startswith("PD["):
        return "PD[" + re.sub(r"\s+", "", tok[3:-1]) + "]"
    return re.sub(r"\s+", "", tok)


def parse_expr(text: str) -> KnotExpr:
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def expr():
        nonlocal pos
        parts = [term()]
        skip()
        while pos < len(text) and text[pos] == "#":
            pos += 1
            parts.append(term())
            skip()
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))

    def term():
        nonlocal pos
        skip()
        if pos >= len(text):
            raise KnotSyntaxError("unexpected end of input", text, pos)
        ch = text[pos]
        if ch == "-":
            pos += 1
            return Mirror(term())
        if ch == "(":
            pos += 1
            inner = expr()
            skip()
            if pos >= len(text) or text[pos] != ")":
                raise KnotSyntaxError("expected ')'", text, pos)
            pos += 1
            return inner
        for pat in _ATOM_PATTERNS:
            m = pat.match(text, pos)
            if m:
                pos = m.end()
                return Atom(_canonical_atom(m.group(0)))
        raise KnotSyntaxError("expected a knot", text, pos)

    result = expr()
    skip()
    if pos != len(text):
        raise KnotSyntaxError("unexpected trailing input", text, pos)
    return result


def _sort_key(e) -> tuple:
    if isinstance(e, Atom):
        return (e.name, 0)
    if isinstance(e, Mirror):
        return (_sort_key(e.arg)[0], 1)
    return (str(e), 2)


def normalize(e: KnotExpr) -> KnotExpr:
    """Push mirrors onto atoms, flatten sums and sort their summands."""

    def push(x, neg: bool) -> list:
        if isinstance(x, Atom):
            if x.name == "unknot":
                return []
            return [Mirror(x) if neg else x]
        if isinstance(x, Mirror):
            return push(x.arg, not neg)
        out = []
        for a in x.args:
            out.extend(push(a, neg))
        return out

    parts = sorted(push(e, False), key=_sort_key)
    if len(parts) == 1:
        return parts[0]
    if not parts:
        return Atom("unknot")
    return Sum(tuple(parts))


def linear_form(e: KnotExpr) -> dict[str, int]:
    """Integer combination of atoms computed by any additive, mirror-odd invariant."""
    out: dict[str, int] = {}

    def walk(x, c):
        if isinstance(x, Atom):
            if x.name != "unknot":
                out[x.name] = out.get(x.name, 0) + c
        elif isinstance(x, Mirror):
            walk(x.arg, -c)
        else:
            for a in x.args:
                walk(a, c)

    walk(e, 1)
    return {k: v for k, v in out.items() if v}


# -- resolving atoms ----------------------------------------------------------------


def _pd_dir():
    return resources.files("krtoolkit") / "data" / "pd"


def known_names() -> list[str]:
    names = ["unknot"]
    names += sorted(p.name[:-3] for p in _pd_dir().iterdir() if p.name.endswith(".pd"))
    return names


def parse_atom_params(name: str):
    """('T', (p, q)), ('P', (a, b, c)), ('B', (word, n)), ('PD', text) or ('name', name)."""
    m = re.fullmatch(r"T\((-?\d+),(-?\d+)\)", name)
    if m:
        return "T", (int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"P\((-?\d+),(-?\d+),(-?\d+)\)", name)
    if m:
        return "P", tuple(int(g) for g in m.groups())
    m = re.fullmatch(r"B\[([-\d,]*)\]@(\d+)", name)
    if m:
        word = [int(v) for v in m.group(1).split(",") if v]
        return "B", (word, int(m.group(2)))
    if name.startswith("PD[") and name.endswith("]"):
        return "PD", name[3:-1]
    return "name", name


@lru_cache(maxsize=None)
def atom_diagram(name: str) -> Diagram:
    kind, params = parse_atom_params(name)
    if kind == "T":
        return torus(*params)
    if kind == "P":
        return pretzel(*params)
    if kind == "B":
        return from_braid(params[0], params[1], name=name)
    if kind == "PD":
        return parse_pd(params, name="PD")
    if name == "unknot":
        return unknot()
    path = _pd_dir() / f"{name}.pd"
    if not path.is_file():
        raise UnknownKnotError(name)
    return parse_pd(path.read_text(), name=name)


def expr_diagram(e: KnotExpr) -> Diagram:
    """A diagram for the expression (mirrors and connected sums of atoms)."""
    if isinstance(e, Atom):
        return atom_diagram(e.name)
    if isinstance(e, Mirror):
        return expr_diagram(e.arg).mirror()
    d = unknot()
    for a in e.args:
        d = connected_sum(d, expr_diagram(a))
    return d
