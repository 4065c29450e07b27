"""Exact Laurent polynomials over Z in the variables t, q, a, r.

The t-exponent is stored doubled (``t2``) so that the half-integer shifts
carried by totally reduced homology stay integral.  Coefficients are Python
integers, hence arbitrary precision.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, NamedTuple

__all__ = [
    "Monomial",
    "LaurentPoly",
    "ONE",
    "ZERO",
    "mono",
    "mul",
    "quantum_int",
    "substitute_a",
    "leq",
    "dual",
    "t_component",
    "delta_degrees",
    "exact_div_by_one_plus",
]


class Monomial(NamedTuple):
    """Exponent vector ``t^(t2/2) q^q a^a r^r``.

    Tuple comparison gives the canonical lexicographic order on
    ``(t2, q, a, r)``; it is compatible with multiplication.
    """

    t2: int = 0
    q: int = 0
    a: int = 0
    r: int = 0

    def __mul__(self, other):  # type: ignore[override]
        return Monomial(self.t2 + other.t2, self.q + other.q, self.a + other.a, self.r + other.r)

    def inverse(self) -> "Monomial":
        return Monomial(-self.t2, -self.q, -self.a, -self.r)

    def is_one(self) -> bool:
        return not any(self)

    def __repr__(self) -> str:
        return f"Monomial({_render_monomial(self) or '1'})"


_IDENTITY = Monomial()


def mono(t: int | str = 0, q: int = 0, a: int = 0, r: int = 0, *, t2: int | None = None) -> Monomial:
    """Build a monomial; ``t`` may be an int or a string such as ``"1/2"``."""
    if t2 is None:
        t2 = _parse_t_exponent(str(t)) if isinstance(t, str) else 2 * t
    return Monomial(t2, q, a, r)


class LaurentPoly:
    """Immutable finite map from :class:`Monomial` to nonzero integers."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        acc: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            if not isinstance(m, Monomial):
                m = Monomial(*m)
            acc[m] = acc.get(m, 0) + int(c)
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({_IDENTITY: c})

    @classmethod
    def monomial(cls, m: Monomial, c: int = 1) -> "LaurentPoly":
        return cls({m: c})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "LaurentPoly":
        if name == "t":
            return cls({Monomial(2 * exp, 0, 0, 0): 1})
        idx = {"q": 1, "a": 2, "r": 3}[name]
        e = [0, 0, 0, 0]
        e[idx] = exp
        return cls({Monomial(*e): 1})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return parse_poly(text)

    @classmethod
    def from_records(cls, records: Iterable[Mapping[str, int]]) -> "LaurentPoly":
        return cls(
            (Monomial(rec.get("t2", 0), rec.get("q", 0), rec.get("a", 0), rec.get("r", 0)), rec["c"])
            for rec in records
        )

    # access

    def terms(self) -> list[tuple[Monomial, int]]:
        """Terms sorted by the canonical monomial order."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, m: Monomial) -> int:
        return self._terms.get(m, 0)

    def support(self) -> list[Monomial]:
        return sorted(self._terms)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def total(self) -> int:
        """Sum of all coefficients (total dimension for graded dimensions)."""
        return sum(self._terms.values())

    def uses(self, var: str) -> bool:
        idx = {"t": 0, "q": 1, "a": 2, "r": 3}[var]
        return any(m[idx] for m in self._terms)

    # arithmetic

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other: "LaurentPoly | int | Monomial") -> "LaurentPoly":
        if isinstance(other, Monomial):
            return LaurentPoly({m * other: c for m, c in self._terms.items()})
        if isinstance(other, int):
            return LaurentPoly({m: c * other for m, c in self._terms.items()})
        acc: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                acc[m] = acc.get(m, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def map_monomials(self, fn) -> "LaurentPoly":
        """Apply ``fn`` to every monomial, summing collisions."""
        return LaurentPoly((fn(m), c) for m, c in self._terms.items())

    def filter(self, pred) -> "LaurentPoly":
        return LaurentPoly({m: c for m, c in self._terms.items() if pred(m)})

    def at_t_minus_one(self) -> "LaurentPoly":
        """Evaluate at t = -1 (integer homological degrees only)."""
        out: dict[Monomial, int] = {}
        for m, c in self._terms.items():
            if m.t2 % 2:
                raise ValueError("cannot evaluate a half-integer t-power at t = -1")
            key = Monomial(0, m.q, m.a, m.r)
            out[key] = out.get(key, 0) + (c if (m.t2 // 2) % 2 == 0 else -c)
        return LaurentPoly(out)

    def set_r_to_one(self) -> "LaurentPoly":
        return self.map_monomials(lambda m: Monomial(m.t2, m.q, m.a, 0))

    # rendering

    def to_records(self) -> list[dict[str, int]]:
        return [{"c": c, "t2": m.t2, "q": m.q, "a": m.a, "r": m.r} for m, c in self.terms()]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        items = sorted(self._terms.items(), key=lambda mc: _display_key(mc[0]))
        out = []
        for i, (m, c) in enumerate(items):
            body = _render_monomial(m)
            mag = abs(c)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag} {body}"
            if i == 0:
                out.append(piece if c > 0 else "-" + piece)
            else:
                out.append((" + " if c > 0 else " - ") + piece)
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    if isinstance(x, Monomial):
        return LaurentPoly.monomial(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def _display_key(m: Monomial):
    # display order: homological degree first, then a and q descending
    return (m.t2, -m.a, -m.q, -m.r)


def _fmt_t(t2: int) -> str:
    if t2 % 2 == 0:
        return "t" if t2 == 2 else f"t^{t2 // 2}"
    return f"t^{t2}/2"


def _render_monomial(m: Monomial) -> str:
    parts = []
    if m.t2:
        parts.append(_fmt_t(m.t2))
    for name, e in (("a", m.a), ("q", m.q), ("r", m.r)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " ".join(parts)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"([tqar])(?:\^\{?(-?\d+(?:/2)?)\}?)?")


def _parse_t_exponent(s: str) -> int:
    if s.endswith("/2"):
        return int(s[:-2])
    return 2 * int(s)


def parse_poly(text: str) -> LaurentPoly:
    """Parse text such as ``"a^-2 q^2 + t^2 a^-2 q^-2 - 3 t^3 a^-4"``.

    Factors may be separated by spaces or ``*``; the t-exponent may be a
    half-integer written ``k/2``.
    """
    s = text.strip()
    if not s or s == "0":
        return ZERO
    # split on binary +/- but keep exponent signs (preceded by ^)
    tokens: list[tuple[int, str]] = []
    sign = 1
    buf = ""
    i = 0
    while i < len(s):
        ch = s[i]
        if ch in "+-" and (not buf.strip() or not buf.rstrip().endswith(("^", "{"))):
            if buf.strip():
                tokens.append((sign, buf))
                buf = ""
                sign = 1
            sign = sign * (-1 if ch == "-" else 1)
        else:
            buf += ch
        i += 1
    if buf.strip():
        tokens.append((sign, buf))
    acc = ZERO
    for sgn, body in tokens:
        body = body.replace("*", " ").strip()
        coeff = 1
        mcoef = re.match(r"^(\d+)\s*", body)
        if mcoef:
            coeff = int(mcoef.group(1))
            body = body[mcoef.end():]
        t2 = q = a = r = 0
        pos = 0
        body = body.replace(" ", "")
        while pos < len(body):
            mf = _FACTOR.match(body, pos)
            if not mf:
                raise ValueError(f"cannot parse polynomial term {body!r} in {text!r}")
            name, exp = mf.group(1), mf.group(2)
            if name == "t":
                t2 += _parse_t_exponent(exp) if exp else 2
            else:
                e = int(exp) if exp else 1
                if name == "q":
                    q += e
                elif name == "a":
                    a += e
                else:
                    r += e
            pos = mf.end()
        acc = acc + LaurentPoly({Monomial(t2, q, a, r): sgn * coeff})
    return acc


# -- operations ---------------------------------------------------------------


def mul(p: LaurentPoly, s: LaurentPoly) -> LaurentPoly:
    return p * s


def quantum_int(n: int, var: str = "q") -> LaurentPoly:
    """``x^(1-n) + x^(3-n) + ... + x^(n-1)`` with ``x`` either ``q`` or ``qr``."""
    if n <= 0:
        raise ValueError(f"quantum integer needs n >= 1, got {n}")
    if var not in ("q", "qr"):
        raise ValueError(f"unknown quantum variable {var!r}")
    r_on = var == "qr"
    return LaurentPoly(
        (Monomial(0, e, 0, e if r_on else 0), 1) for e in range(1 - n, n, 2)
    )


def substitute_a(p: LaurentPoly, n: int) -> LaurentPoly:
    """Regrade ``t^i q^j a^l -> t^i q^(j + n l)``."""
    if p.uses("r"):
        raise ValueError("substitute_a expects a polynomial without r")
    return p.map_monomials(lambda m: Monomial(m.t2, m.q + n * m.a, 0, 0))


def leq(p: LaurentPoly, s: LaurentPoly) -> bool:
    """Partial order: ``s - p`` has only nonnegative coefficients."""
    return all(c > 0 for _, c in (s - p))


def dual(p: LaurentPoly) -> LaurentPoly:
    return p.map_monomials(Monomial.inverse)


def t_component(p: LaurentPoly, i2: int) -> LaurentPoly:
    """Part of ``p`` in doubled homological degree ``i2``, with t removed."""
    return LaurentPoly(
        {Monomial(0, m.q, m.a, m.r): c for m, c in p.terms() if m.t2 == i2}
    )


def delta_degrees(p: LaurentPoly) -> set[int]:
    """``{2i + j + 2k}`` over the monomials ``t^i q^j a^k`` of ``p``."""
    out = set()
    for m, _ in p:
        if m.r:
            raise ValueError("delta grading is undefined in the presence of r")
        if m.t2 % 2:
            raise ValueError("delta grading needs integer homological degrees")
        out.add(m.t2 + m.q + 2 * m.a)
    return out


def exact_div_by_one_plus(p: LaurentPoly, m: Monomial) -> LaurentPoly | None:
    """Return ``f >= 0`` with ``(1 + m) f = p``, or ``None`` if there is none.

    The quotient is unique when it exists: peel off the extreme term of the
    remainder in the direction in which ``m`` points.
    """
    if m.is_one():
        raise ValueError("the shift monomial must not be 1")
    ascending = m > _IDENTITY
    if not p:
        return ZERO
    rem = dict(p._terms)
    lo, hi = min(rem), max(rem)
    f: dict[Monomial, int] = {}
    while rem:
        x = min(rem) if ascending else max(rem)
        if (ascending and x > hi) or (not ascending and x < lo):
            return None
        c = rem.pop(x)
        if c < 0:
            return None
        f[x] = c
        y = x * m
        v = rem.get(y, 0) - c
        if v:
            rem[y] = v
        else:
            rem.pop(y, None)
    return LaurentPoly(f)
