"""Oriented link diagrams in planar-diagram (PD) form.

A crossing is a 4-tuple of arc labels listed counterclockwise, starting at
the incoming under-strand; the under-strand runs slot 0 -> slot 2.  The
over-strand runs slot 3 -> slot 1 at a positive crossing and slot 1 -> slot 3
at a negative one.  Crossingless unknotted components are carried as a
``free_loops`` count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .intervals import RatInterval

__all__ = [
    "Crossing",
    "Diagram",
    "SeifertStats",
    "GoeritzData",
    "DiagramError",
    "from_pd",
    "from_braid",
    "torus",
    "pretzel",
    "unknot",
    "connected_sum",
    "seifert_stats",
    "bennequin_bounds",
    "is_homogeneous",
    "positive_braid_value",
    "goeritz",
    "signature",
    "parse_pd",
    "format_pd",
]


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    arcs: tuple[int, int, int, int]
    sign: int

    def incoming(self) -> tuple[int, int]:
        return (0, 3) if self.sign > 0 else (0, 1)

    def outgoing(self) -> tuple[int, int]:
        return (2, 1) if self.sign > 0 else (2, 3)

    def switched(self) -> "Crossing":
        """Same crossing with over and under exchanged."""
        a, b, c, d = self.arcs
        if self.sign > 0:
            return Crossing((d, a, b, c), -1)
        return Crossing((b, c, d, a), 1)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


@dataclass(frozen=True, eq=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        heads: dict[int, tuple[int, int]] = {}
        tails: dict[int, tuple[int, int]] = {}
        for ci, x in enumerate(self.crossings):
            if x.sign not in (1, -1):
                raise DiagramError(f"crossing {ci} has sign {x.sign}")
            for k in x.incoming():
                lab = x.arcs[k]
                if lab in heads:
                    raise DiagramError(f"arc {lab} enters two crossings; orientation inconsistent")
                heads[lab] = (ci, k)
            for k in x.outgoing():
                lab = x.arcs[k]
                if lab in tails:
                    raise DiagramError(f"arc {lab} leaves two crossings; orientation inconsistent")
                tails[lab] = (ci, k)
        if set(heads) != set(tails):
            bad = sorted(set(heads) ^ set(tails))
            raise DiagramError(f"arcs {bad} do not occur exactly twice with consistent orientation")
        object.__setattr__(self, "_heads", heads)
        object.__setattr__(self, "_tails", tails)

    # basic data

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def arcs(self) -> list[int]:
        return sorted(self._heads)

    def head(self, arc: int) -> tuple[int, int]:
        """(crossing, slot) where ``arc`` ends."""
        return self._heads[arc]

    def tail(self, arc: int) -> tuple[int, int]:
        return self._tails[arc]

    def next_arc(self, arc: int) -> int:
        ci, k = self._heads[arc]
        return self.crossings[ci].arcs[(k + 2) % 4]

    @cached_property
    def component_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Arc sequences of the components containing crossings."""
        seen: set[int] = set()
        out = []
        for start in self.arcs():
            if start in seen:
                continue
            cyc = []
            a = start
            while a not in seen:
                seen.add(a)
                cyc.append(a)
                a = self.next_arc(a)
            out.append(tuple(cyc))
        return tuple(out)

    @property
    def components(self) -> int:
        return len(self.component_cycles) + self.free_loops

    @property
    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    def is_knot(self) -> bool:
        return self.components == 1

    # transformations

    def mirror(self) -> "Diagram":
        return Diagram(tuple(x.switched() for x in self.crossings), self.free_loops)

    def switch(self, i: int) -> "Diagram":
        xs = list(self.crossings)
        xs[i] = xs[i].switched()
        return Diagram(tuple(xs), self.free_loops)

    def smooth(self, i: int) -> "Diagram":
        """Oriented (Seifert) smoothing of crossing ``i``."""
        x = self.crossings[i]
        a = x.arcs
        pairs = ((a[0], a[1]), (a[3], a[2])) if x.sign > 0 else ((a[0], a[3]), (a[1], a[2]))
        uf = _UnionFind()
        for u, v in pairs:
            uf.union(u, v)
        rest = [y for j, y in enumerate(self.crossings) if j != i]
        remaining = {lab for y in rest for lab in y.arcs}
        roots = {uf.find(lab) for lab in a}
        loops = sum(1 for rt in roots if not any(uf.find(lab) == rt for lab in a if lab in remaining))
        rest = [Crossing(tuple(uf.find(l) for l in y.arcs), y.sign) for y in rest]
        return Diagram(tuple(rest), self.free_loops + loops)

    def relabeled(self) -> "Diagram":
        """Relabel arcs 1..2n in traversal order of the components."""
        mapping: dict[int, int] = {}
        nxt = 1
        for cyc in self.component_cycles:
            for arc in cyc:
                mapping[arc] = nxt
                nxt += 1
        return Diagram(
            tuple(Crossing(tuple(mapping[l] for l in x.arcs), x.sign) for x in self.crossings),
            self.free_loops,
            self.name,
        )

    @cached_property
    def canonical_key(self) -> tuple:
        """Encoding invariant under arc relabelling and crossing reordering.

        The first component is started at every arc and the lexicographically
        smallest encoding is kept; later components are entered at the first
        unlabelled arc met while scanning crossings in label order.
        """
        if not self.crossings:
            return ((), self.free_loops)
        best = None
        first_cycles = [c for c in self.component_cycles]
        for cyc in first_cycles:
            for start in cyc:
                enc = self._encode_from(start)
                if best is None or enc < best:
                    best = enc
        return (best, self.free_loops)

    def _encode_from(self, start: int) -> tuple:
        labels: dict[int, int] = {}
        nxt = 1

        def walk(a):
            nonlocal nxt
            while a not in labels:
                labels[a] = nxt
                nxt += 1
                a = self.next_arc(a)

        walk(start)
        while len(labels) < len(self._heads):
            cands = []
            for x in self.crossings:
                known = [labels[l] for l in x.arcs if l in labels]
                if known and len(known) < 4:
                    cands.append((min(known), [l for l in x.arcs if l not in labels]))
            cands.sort(key=lambda t: t[0])
            if cands:
                walk(cands[0][1][0])
            else:  # split component with no shared crossing
                walk(min(l for l in self._heads if l not in labels))
        enc = sorted(
            (tuple(labels[l] for l in x.arcs), x.sign) for x in self.crossings
        )
        return tuple(enc)

    def __str__(self) -> str:
        return self.name or format_pd(self)


def from_pd(
    tuples: Sequence[Sequence[int]],
    signs: Sequence[int | None] | None = None,
    free_loops: int = 0,
    name: str | None = None,
    rotate: bool = False,
) -> Diagram:
    """Build a diagram from PD tuples whose slots 0 and 2 are the under-strand.

    The under-strand of each tuple is taken to run slot 0 -> slot 2 (standard
    PD convention), unless ``rotate`` is set, in which case tuples whose
    under-strand runs backwards are rotated by two slots.  Orientation of each component is propagated along the
    strands; ``signs`` (optional, per crossing) pin the direction of
    over-strands and are checked for consistency.
    """
    tuples = [tuple(int(v) for v in t) for t in tuples]
    if any(len(t) != 4 for t in tuples):
        raise DiagramError("every crossing needs four arc labels")
    signs = list(signs) if signs is not None else [None] * len(tuples)
    if len(signs) != len(tuples):
        raise DiagramError("one sign per crossing expected")
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, t in enumerate(tuples):
        for k, lab in enumerate(t):
            occ.setdefault(lab, []).append((ci, k))
    for lab, places in occ.items():
        if len(places) != 2:
            raise DiagramError(f"arc {lab} occurs {len(places)} times (expected 2)")

    # direction[(ci, k)] = +1 if the strand enters the crossing at slot k
    direction: dict[tuple[int, int], int] = {}

    def other_end(ci, k):
        a, b = occ[tuples[ci][k]]
        return b if a == (ci, k) else a

    def orient_from(ci, k):
        """Strand enters at (ci, k); propagate around the component."""
        stack = [(ci, k)]
        while stack:
            c, s = stack.pop()
            if (c, s) in direction:
                if direction[(c, s)] != 1:
                    raise DiagramError("PD tuples are not consistently orientable")
                continue
            direction[(c, s)] = 1
            out = (c, (s + 2) % 4)
            if direction.get(out) == 1:
                raise DiagramError("PD tuples are not consistently orientable")
            direction[out] = -1
            nc, ns = other_end(*out)
            stack.append((nc, ns))

    for ci, t in enumerate(tuples):
        if (ci, 0) not in direction and (ci, 2) not in direction:
            orient_from(ci, 0)
        sg = signs[ci]
        if sg is not None:
            slot = 3 if sg > 0 else 1
            if (ci, slot) not in direction and (ci, (slot + 2) % 4) not in direction:
                orient_from(ci, slot)
    for ci in range(len(tuples)):
        if (ci, 1) not in direction and (ci, 3) not in direction:
            orient_from(ci, 3)
    crossings = []
    for ci, t in enumerate(tuples):
        if direction[(ci, 0)] != 1:
            if not rotate:
                raise DiagramError(f"crossing {ci}: under-strand is not oriented slot 0 -> 2")
            t = (t[2], t[3], t[0], t[1])
            d1 = direction[(ci, 1)]
        else:
            d1 = direction[(ci, 3)]
        sg = 1 if d1 == 1 else -1
        if signs[ci] is not None and signs[ci] != sg:
            raise DiagramError(f"crossing {ci}: declared sign {signs[ci]} contradicts orientation")
        crossings.append(Crossing(t, sg))
    return Diagram(tuple(crossings), free_loops, name)


def _from_geometry(raw: list[tuple], connections: list[tuple], name=None) -> Diagram:
    """Assemble crossings given as ccw slot-name 4-tuples (slots 0, 2 under)
    plus pairwise connections between slot names and junction names."""
    adj: dict = {}
    for u, v in connections:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    slot_names = {s for t in raw for s in t}
    label: dict = {}
    nxt = 1
    for s in sorted(slot_names, key=str):
        if s in label:
            continue
        # walk through junctions to the slot at the other end
        prev, cur = s, adj[s][0]
        while cur not in slot_names:
            nbrs = adj[cur]
            if len(nbrs) != 2:
                raise DiagramError(f"junction {cur} has degree {len(nbrs)}")
            prev, cur = cur, (nbrs[1] if nbrs[0] == prev else nbrs[0])
        label[s] = label[cur] = nxt
        nxt += 1
    # cycles through junctions only are free loops
    seen_j = set()
    loops = 0
    for j in adj:
        if j in slot_names or j in seen_j:
            continue
        stack, comp, touches = [j], set(), False
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            for y in adj[x]:
                if y in slot_names:
                    touches = True
                else:
                    stack.append(y)
        seen_j |= comp
        if not touches:
            loops += 1
    tuples = [tuple(label[s] for s in t) for t in raw]
    return from_pd(tuples, free_loops=loops, name=name, rotate=True).relabeled()


def unknot() -> Diagram:
    return Diagram((), 1, "unknot")


def from_braid(word: Sequence[int], strands: int, name: str | None = None) -> Diagram:
    """PD code of the closure of a braid word (letters +-i for sigma_i^{+-1})."""
    if strands < 1:
        raise DiagramError("a braid needs at least one strand")
    for w in word:
        if w == 0 or abs(w) >= strands:
            raise DiagramError(f"braid letter {w} out of range for {strands} strands")
    cur = list(range(1, strands + 1))
    nxt = strands + 1
    raw = []
    for w in word:
        i = abs(w) - 1
        left, right = cur[i], cur[i + 1]
        new_left, new_right = nxt, nxt + 1
        nxt += 2
        if w > 0:
            # left strand passes over, SW -> NE; under enters at SE
            raw.append(((right, new_right, new_left, left), 1))
        else:
            # right strand passes over, SE -> NW; under enters at SW
            raw.append(((left, right, new_right, new_left), -1))
        cur[i], cur[i + 1] = new_left, new_right
    uf = _UnionFind()
    for k in range(strands):
        uf.union(k + 1, cur[k])
    tuples = [tuple(uf.find(l) for l in t) for t, _ in raw]
    used = {l for t in tuples for l in t}
    loops = len({uf.find(k + 1) for k in range(strands)} - used)
    d = Diagram(tuple(Crossing(t, s) for t, (_, s) in zip(tuples, raw)), loops)
    d = d.relabeled()
    return Diagram(d.crossings, d.free_loops, name)


def torus(p: int, q: int) -> Diagram:
    """T(p, q) as the closure of (sigma_1 ... sigma_{q-1})^p on q strands."""
    if q < 1:
        raise DiagramError("torus link needs q >= 1 strands")
    sgn = 1 if p >= 0 else -1
    word = [sgn * i for _ in range(abs(p)) for i in range(1, q)]
    return from_braid(word, q, name=f"T({p},{q})")


def pretzel(p1: int, p2: int, p3: int, *, allow_links: bool = False) -> Diagram:
    """Standard three-band pretzel diagram P(p1, p2, p3).

    Band ``i`` is a vertical two-strand twist with ``|p_i|`` crossings whose
    handedness follows the sign of ``p_i``; adjacent bands are joined at the
    top and bottom, the outer bands around the back.
    """
    raw = []
    conns = []
    for b, p in enumerate((p1, p2, p3)):
        n = abs(p)
        if n == 0:
            conns.append((("BL", b), ("TL", b)))
            conns.append((("BR", b), ("TR", b)))
            continue
        for j in range(n):
            sw, se, ne, nw = (("x", b, j, d) for d in ("SW", "SE", "NE", "NW"))
            if p > 0:
                raw.append((se, ne, nw, sw))  # over strand SW-NE
            else:
                raw.append((sw, se, ne, nw))  # over strand SE-NW
            if j + 1 < n:
                conns.append((nw, ("x", b, j + 1, "SW")))
                conns.append((ne, ("x", b, j + 1, "SE")))
        conns.append((("BL", b), ("x", b, 0, "SW")))
        conns.append((("BR", b), ("x", b, 0, "SE")))
        conns.append((("TL", b), ("x", b, n - 1, "NW")))
        conns.append((("TR", b), ("x", b, n - 1, "NE")))
    for b in range(3):
        c = (b + 1) % 3
        conns.append((("TR", b), ("TL", c)))
        conns.append((("BR", b), ("BL", c)))
    d = _from_geometry(raw, conns, name=f"P({p1},{p2},{p3})")
    if not allow_links and d.components != 1:
        raise DiagramError(f"P({p1},{p2},{p3}) has {d.components} components, not a knot")
    return d


def connected_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Band the first arc of ``d1`` to the first arc of ``d2``."""
    if not d1.crossings:
        return Diagram(d2.crossings, d2.free_loops + d1.free_loops - 1)
    if not d2.crossings:
        return Diagram(d1.crossings, d1.free_loops + d2.free_loops - 1)
    off = max(d1.arcs())
    xs2 = [Crossing(tuple(l + off for l in x.arcs), x.sign) for x in d2.crossings]
    xs1 = list(d1.crossings)
    x_arc = d1.arcs()[0]
    y_arc = d2.arcs()[0] + off
    hc1, hk1 = d1.head(x_arc)
    hc2, hk2 = d2.head(y_arc - off)
    # x now runs into d2's head of y and vice versa
    a = list(xs1[hc1].arcs)
    a[hk1] = y_arc
    xs1[hc1] = Crossing(tuple(a), xs1[hc1].sign)
    b = list(xs2[hc2].arcs)
    b[hk2] = x_arc
    xs2[hc2] = Crossing(tuple(b), xs2[hc2].sign)
    return Diagram(tuple(xs1 + xs2), d1.free_loops + d2.free_loops).relabeled()


# -- Seifert data -------------------------------------------------------------


@dataclass(frozen=True)
class SeifertStats:
    writhe: int
    circles: int
    edges: tuple[tuple[int, int, int], ...]  # (circle, circle, sign)
    o_plus: int
    o_minus: int

    def as_dict(self) -> dict:
        return {
            "writhe": self.writhe,
            "circles": self.circles,
            "o_plus": self.o_plus,
            "o_minus": self.o_minus,
            "edges": [list(e) for e in self.edges],
        }


def _count_components(n: int, edges: Iterable[tuple[int, int]]) -> int:
    uf = _UnionFind()
    for v in range(n):
        uf.find(v)
    for u, v in edges:
        uf.union(u, v)
    return len({uf.find(v) for v in range(n)})


def seifert_stats(d: Diagram) -> SeifertStats:
    uf = _UnionFind()
    for lab in d.arcs():
        uf.find(lab)
    for x in d.crossings:
        a = x.arcs
        if x.sign > 0:
            uf.union(a[0], a[1])
            uf.union(a[3], a[2])
        else:
            uf.union(a[0], a[3])
            uf.union(a[1], a[2])
    roots = sorted({uf.find(l) for l in d.arcs()})
    index = {r: i for i, r in enumerate(roots)}
    n = len(roots) + d.free_loops
    edges = []
    for x in d.crossings:
        u, v = index[uf.find(x.arcs[0])], index[uf.find(x.arcs[2])]
        edges.append((min(u, v), max(u, v), x.sign))
    o_plus = _count_components(n, [(u, v) for u, v, s in edges if s > 0])
    o_minus = _count_components(n, [(u, v) for u, v, s in edges if s < 0])
    return SeifertStats(d.writhe, n, tuple(edges), o_plus, o_minus)


def bennequin_bounds(s: SeifertStats) -> RatInterval:
    """Interval allowed for any slice-torus invariant by the sharper
    slice-Bennequin inequality."""
    lo = -1 + s.writhe - s.circles + 2 * s.o_plus
    hi = 1 + s.writhe + s.circles - 2 * s.o_minus
    return RatInterval(Fraction(lo), Fraction(hi))


def is_homogeneous(s: SeifertStats) -> bool:
    return s.o_plus + s.o_minus == s.circles + 1


def positive_braid_value(word: Sequence[int], strands: int) -> Fraction:
    """Common value ``1 + k - n`` of slice-torus invariants on a positive
    braid closure that is a knot."""
    if any(w < 0 for w in word):
        raise DiagramError("positive braid expected")
    d = from_braid(word, strands)
    if not d.is_knot():
        raise DiagramError(f"closure has {d.components} components, not a knot")
    return Fraction(1 + len(word) - strands)


# -- faces and signature ------------------------------------------------------


def faces(d: Diagram) -> list[list[tuple[int, int]]]:
    """Faces as cycles of departure slots ``(crossing, slot)``.

    Slot ``k`` of crossing ``c`` as a departure also names the corner between
    slots ``k`` and ``k + 1``; that corner lies in the face being traced.
    """
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(d.crossings):
        for k, lab in enumerate(x.arcs):
            occ.setdefault(lab, []).append((ci, k))
    seen = set()
    out = []
    for ci in range(d.n_crossings):
        for k in range(4):
            if (ci, k) in seen:
                continue
            face = []
            cur = (ci, k)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                p, q = occ[d.crossings[cur[0]].arcs[cur[1]]]
                arrive = q if p == cur else p
                cur = (arrive[0], (arrive[1] - 1) % 4)
            out.append(face)
    return out


@dataclass(frozen=True)
class GoeritzData:
    matrix: tuple[tuple[int, ...], ...]
    correction: int


def goeritz(d: Diagram) -> GoeritzData:
    """Goeritz matrix of the white regions and the Gordon-Litherland
    correction ``sum of eta over type II crossings``."""
    if not d.crossings:
        return GoeritzData((), 0)
    fs = faces(d)
    if len(fs) != d.n_crossings + 2:
        raise DiagramError(
            f"face recovery failed: {len(fs)} faces for {d.n_crossings} crossings "
            "(diagram split or PD not planar)"
        )
    face_of = {dep: i for i, f in enumerate(fs) for dep in f}
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(d.crossings):
        for k, lab in enumerate(x.arcs):
            occ.setdefault(lab, []).append((ci, k))
    # faces on the two sides of an arc get opposite colours
    nbrs: dict[int, set[int]] = {i: set() for i in range(len(fs))}
    for p, q in occ.values():
        nbrs[face_of[p]].add(face_of[q])
        nbrs[face_of[q]].add(face_of[p])
    colour = {0: 0}
    stack = [0]
    while stack:
        f = stack.pop()
        for g in nbrs[f]:
            if g not in colour:
                colour[g] = 1 - colour[f]
                stack.append(g)
            elif colour[g] == colour[f]:
                raise DiagramError("faces are not two-colourable; PD code is not planar")
    white = sorted(f for f in colour if colour[f] == 0)
    widx = {f: i for i, f in enumerate(white)}
    m = len(white)
    g = [[0] * m for _ in range(m)]
    correction = 0
    for ci, x in enumerate(d.crossings):
        even_white = colour[face_of[(ci, 0)]] == 0
        eta = 1 if even_white else -1
        w1, w2 = (face_of[(ci, 0)], face_of[(ci, 2)]) if even_white else (
            face_of[(ci, 1)], face_of[(ci, 3)])
        if w1 != w2:
            i, j = widx[w1], widx[w2]
            g[i][j] -= eta
            g[j][i] -= eta
        # the oriented smoothing joins corners {1,3} (positive) or {0,2}
        # type II: the smoothing merges the two black corners
        merged_even = x.sign < 0
        if merged_even != even_white:
            correction += eta
    for i in range(m):
        g[i][i] = -sum(g[i][j] for j in range(m) if j != i)
    return GoeritzData(tuple(tuple(row) for row in g), correction)


def symmetric_signature(mat: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric rational matrix by congruence diagonalisation."""
    a = [[Fraction(v) for v in row] for row in mat]
    n = len(a)
    sig = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            piv = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if piv is not None:
                a[k], a[piv] = a[piv], a[k]
                for row in a:
                    row[k], row[piv] = row[piv], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    k += 1
                    continue
                for c in range(n):
                    a[k][c] += a[j][c]
                for r in range(n):
                    a[r][k] += a[r][j]
        p = a[k][k]
        sig += 1 if p > 0 else -1
        for r in range(k + 1, n):
            f = a[r][k] / p
            if f:
                for c in range(k, n):
                    a[r][c] -= f * a[k][c]
        for r in range(k + 1, n):
            a[k][r] = Fraction(0)
            a[r][k] = Fraction(0)
        k += 1
    return sig


def signature(d: Diagram) -> int:
    """Knot signature, normalised so that the positive trefoil has +2.

    Gordon-Litherland: ``sign(G) - mu``, with the overall sign chosen so that
    positive torus knots get positive signature.
    """
    if not d.is_knot():
        raise DiagramError("signature is implemented for knots only")
    if not d.crossings:
        return 0
    gd = goeritz(d)
    reduced = [row[1:] for row in gd.matrix[1:]]
    return -(symmetric_signature(reduced) - gd.correction)


# -- PD text format -------------------------------------------------------------

def parse_pd(text: str, name: str | None = None) -> Diagram:
    """Parse ``X(1,4,2,5), X(3,6,4,1), ...``; a ``+``/``-`` before or after
    an ``X`` pins that crossing's sign."""
    body = re.sub(r"#.*", "", text)
    body = body.strip()
    if body.upper().startswith("PD"):
        body = body[2:].strip()
        if body[:1] in "[(" and body[-1:] in "])":
            body = body[1:-1]
    tuples, signs = [], []
    pos = 0
    pattern = re.compile(r"\s*,?\s*([+\-−]?)\s*X\s*([+\-−]?)\s*[\(\[]([^\)\]]*)[\)\]]\s*([+\-−]?)")
    while pos < len(body):
        m = pattern.match(body, pos)
        if not m:
            if body[pos:].strip(" ,;\n") == "":
                break
            raise DiagramError(f"cannot parse PD code near {body[pos:pos + 20]!r}")
        nums = [int(v) for v in re.split(r"[\s,]+", m.group(3).strip()) if v]
        if len(nums) != 4:
            raise DiagramError(f"crossing {m.group(0).strip()!r} needs four labels")
        marks = [s for s in (m.group(1), m.group(2), m.group(4)) if s]
        sg = None
        if marks:
            sg = -1 if marks[0] in "-−" else 1
        tuples.append(nums)
        signs.append(sg)
        pos = m.end()
    if not tuples:
        return Diagram((), 1, name)
    return from_pd(tuples, signs, name=name)


def format_pd(d: Diagram, signs: bool = True) -> str:
    if not d.crossings:
        return "PD[]" if d.free_loops <= 1 else f"PD[] + {d.free_loops} loops"
    parts = []
    for x in d.crossings:
        s = "X({},{},{},{})".format(*x.arcs)
        if signs:
            s += "+" if x.sign > 0 else "-"
        parts.append(s)
    out = ", ".join(parts)
    if d.free_loops:
        out += f" + {d.free_loops} loop" + ("s" if d.free_loops > 1 else "")
    return out
