"""Exact closed rational intervals, optionally restricted to a lattice."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Num = Union[Fraction, float]  # float only for +-inf

INF = math.inf


class EmptyIntervalError(ValueError):
    pass


def as_rational(x) -> Num:
    if isinstance(x, float) and math.isinf(x):
        return x
    if isinstance(x, str):
        s = x.strip()
        if s in ("inf", "+inf", "oo"):
            return INF
        if s in ("-inf", "-oo"):
            return -INF
        return Fraction(s)
    return Fraction(x)


def fmt_rational(x) -> str:
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RatInterval:
    lo: Num
    hi: Num
    step: Fraction | None = None
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.step is not None:
            step = Fraction(self.step)
            if step <= 0:
                raise ValueError("lattice step must be positive")
            object.__setattr__(self, "step", step)
            object.__setattr__(self, "offset", Fraction(self.offset) % step)
            lo, hi = self._snap(self.lo, self.hi)
            object.__setattr__(self, "lo", lo)
            object.__setattr__(self, "hi", hi)
        if self.lo > self.hi:
            raise EmptyIntervalError(f"empty interval [{fmt_rational(self.lo)}, {fmt_rational(self.hi)}]")

    def _snap(self, lo, hi):
        s, o = self.step, self.offset
        if not isinstance(lo, float):
            lo = o + s * math.ceil((lo - o) / s)
        if not isinstance(hi, float):
            hi = o + s * math.floor((hi - o) / s)
        return lo, hi

    @classmethod
    def point(cls, x) -> "RatInterval":
        x = as_rational(x)
        return cls(x, x)

    @classmethod
    def everything(cls) -> "RatInterval":
        return cls(-INF, INF)

    def is_bounded(self) -> bool:
        return not (isinstance(self.lo, float) or isinstance(self.hi, float))

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        x = as_rational(x)
        if not (self.lo <= x <= self.hi):
            return False
        if self.step is not None and not isinstance(x, float):
            return (x - self.offset) % self.step == 0
        return True

    def contains_interval(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def candidates(self) -> list[Fraction]:
        """Admissible values; finite only for bounded lattice intervals or points."""
        if self.is_point():
            return [self.lo]
        if self.step is None or not self.is_bounded():
            raise ValueError("interval has infinitely many admissible values")
        n = int((self.hi - self.lo) / self.step)
        return [self.lo + k * self.step for k in range(n + 1)]

    def with_lattice(self, step, offset=0) -> "RatInterval":
        if self.step is not None and Fraction(step) != self.step:
            # keep the finer information only when one lattice refines the other
            raise ValueError("conflicting lattice steps")
        return RatInterval(self.lo, self.hi, Fraction(step), Fraction(offset))

    def intersect(self, other: "RatInterval") -> "RatInterval":
        step, offset = self.step, self.offset
        if step is None:
            step, offset = other.step, other.offset
        elif other.step is not None and (other.step != step or other.offset != offset):
            # only equal lattices are combined; otherwise keep ours
            pass
        return RatInterval(max(self.lo, other.lo), min(self.hi, other.hi), step, offset)

    def __add__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "RatInterval") -> "RatInterval":
        return self + (-other)

    def __neg__(self) -> "RatInterval":
        step = self.step
        return RatInterval(-self.hi, -self.lo, step, -self.offset if step else Fraction(0))

    def scale(self, c) -> "RatInterval":
        c = Fraction(c)
        if c == 0:
            return RatInterval.point(0)
        lo, hi = self.lo * c, self.hi * c
        if c < 0:
            lo, hi = hi, lo
        return RatInterval(lo, hi)

    def __str__(self) -> str:
        if self.is_point():
            return f"= {fmt_rational(self.lo)}"
        if self.step is not None and self.is_bounded() and len(self.candidates()) <= 12:
            return "∈ {" + ", ".join(fmt_rational(v) for v in self.candidates()) + "}"
        return f"∈ [{fmt_rational(self.lo)}, {fmt_rational(self.hi)}]"

    def to_json(self) -> dict:
        out = {"lo": fmt_rational(self.lo), "hi": fmt_rational(self.hi)}
        if self.step is not None:
            out["lattice_step"] = fmt_rational(self.step)
            out["lattice_offset"] = fmt_rational(self.offset)
            if self.is_bounded():
                out["candidates"] = [fmt_rational(v) for v in self.candidates()]
        return out
