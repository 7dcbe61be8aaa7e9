"""Oriented link diagrams in PD notation.

A crossing ``X(a, b, c, d)`` lists its four arcs counterclockwise starting
from the incoming under-strand, so the under-strand runs ``a -> c`` and the
over-strand joins ``b`` and ``d``.  Arcs of each component carry consecutive
labels along the component, wrapping at the end of its label range.

Sign convention: a crossing is positive when the over-strand runs
``d -> b``.  With the under-strand pointing up this puts the over-strand
left-to-right, i.e. the right-hand rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DiagramError
from .forms import SymmetricForm

_CROSSING_RE = re.compile(r"\s*[Xx]\s*[\[(]\s*([^\])]*)[\])]\s*")


@dataclass(frozen=True)
class Crossing:
    arcs: Tuple[int, int, int, int]

    def __str__(self):
        return "X({},{},{},{})".format(*self.arcs)


@dataclass(frozen=True)
class OrientedLinkDiagram:
    """Validated PD diagram.

    Use :func:`parse_pd` or :meth:`from_crossings` rather than calling the
    constructor directly; they derive ``components`` and the over-strand
    directions.

    Attributes
    ----------
    crossings : tuple of Crossing
    components : tuple of tuple of int
        Arc labels of each component in traversal order (label order).
        Zero-crossing unknots are empty tuples.
    orientations : tuple of bool
        ``True`` when a component is traversed in increasing label order.
    over_in : tuple of int
        Per crossing, the slot (1 or 3) holding the incoming over arc for
        label-order traversal.
    """

    crossings: Tuple[Crossing, ...]
    components: Tuple[Tuple[int, ...], ...]
    orientations: Tuple[bool, ...]
    over_in: Tuple[int, ...]
    _arc_component: Dict[int, int] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_crossings(cls, crossings, n_components: Optional[int] = None,
                       orientations: Optional[Sequence[bool]] = None):
        crossings = tuple(c if isinstance(c, Crossing) else Crossing(tuple(int(a) for a in c))
                          for c in crossings)
        comps, over_in = _analyse(crossings)
        if n_components is not None:
            if n_components < len(comps):
                raise DiagramError(
                    f"declared {n_components} components but the PD code has {len(comps)}")
            comps = comps + [()] * (n_components - len(comps))
        if orientations is None:
            orientations = (True,) * len(comps)
        orientations = tuple(bool(o) for o in orientations)
        if len(orientations) != len(comps):
            raise DiagramError(
                f"{len(orientations)} orientations given for {len(comps)} components")
        arc_comp = {a: i for i, arcs in enumerate(comps) for a in arcs}
        return cls(crossings, tuple(comps), orientations, tuple(over_in), arc_comp)

    @property
    def arc_count(self) -> int:
        return sum(len(c) for c in self.components)

    @property
    def n_components(self) -> int:
        return len(self.components)

    def component_of(self, arc: int) -> int:
        return self._arc_component[arc]

    def is_knot(self) -> bool:
        return self.n_components == 1

    def under_components(self, k: int) -> Tuple[int, int]:
        """(component of the under strand, component of the over strand)."""
        a, b, _, _ = self.crossings[k].arcs
        return self._arc_component[a], self._arc_component[b]

    def next_arc(self, arc: int) -> int:
        """Successor of ``arc`` in label order on its component."""
        comp = self.components[self._arc_component[arc]]
        return arc + 1 if arc < comp[-1] else comp[0]

    def to_pd(self) -> str:
        return ", ".join(str(c) for c in self.crossings)

    def to_json(self, framings: Optional[Sequence[int]] = None) -> dict:
        doc = {"pd": self.to_pd(), "components": self.n_components,
               "orientations": list(self.orientations)}
        if framings is not None:
            doc["framings"] = list(framings)
        return doc

    def canonical(self) -> "OrientedLinkDiagram":
        """Equivalent diagram whose orientations are all ``True``.

        Reversed components are relabelled backwards and the crossings
        where they run under are rotated so slot 0 is again incoming.
        """
        if all(self.orientations):
            return self
        relabel = {}
        for arcs, fwd in zip(self.components, self.orientations):
            for a in arcs:
                relabel[a] = a if fwd or not arcs else arcs[0] + arcs[-1] - a
        new = []
        for x in self.crossings:
            a, b, c, d = (relabel[v] for v in x.arcs)
            if self.orientations[self._arc_component[x.arcs[0]]]:
                new.append((a, b, c, d))
            else:
                new.append((c, d, a, b))
        return OrientedLinkDiagram.from_crossings(new, self.n_components)


@dataclass(frozen=True)
class FramedLink:
    diagram: OrientedLinkDiagram
    framings: Tuple[int, ...]

    def __post_init__(self):
        if len(self.framings) != self.diagram.n_components:
            raise DiagramError(
                f"{len(self.framings)} framings given for "
                f"{self.diagram.n_components} components")


def _analyse(crossings: Tuple[Crossing, ...]):
    occ: Dict[int, List[Tuple[int, int]]] = {}
    for k, x in enumerate(crossings):
        for s, a in enumerate(x.arcs):
            if a <= 0:
                raise DiagramError(f"crossing {k}: arc labels must be positive, got {a}")
            occ.setdefault(a, []).append((k, s))
    bad = sorted(a for a, v in occ.items() if len(v) != 2)
    if bad:
        raise DiagramError(
            "arcs must appear exactly twice; wrong count for arcs "
            + ", ".join(f"{a} ({len(occ[a])}x)" for a in bad))
    n = len(occ)
    if n and sorted(occ) != list(range(1, n + 1)):
        raise DiagramError(f"arc labels must be exactly 1..{n}")

    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in crossings:
        a, b, c, d = x.arcs
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    groups: Dict[int, List[int]] = {}
    for a in range(1, n + 1):
        groups.setdefault(find(a), []).append(a)
    comps = sorted(groups.values(), key=lambda g: g[0])
    for g in comps:
        if g[-1] - g[0] + 1 != len(g):
            raise DiagramError(
                f"arcs {g} form one component but are not consecutively labelled")
    comp_of = {a: i for i, g in enumerate(comps) for a in g}

    def succ(a):
        g = comps[comp_of[a]]
        return a + 1 if a < g[-1] else g[0]

    # Each arc enters exactly one crossing slot and leaves from one.  Under
    # slots are fixed by convention; propagate to the over slots.
    role: Dict[Tuple[int, int], bool] = {}  # True == incoming

    def assign(start, value):
        stack = [(start, value)]
        while stack:
            (k, s), v = stack.pop()
            if (k, s) in role:
                if role[(k, s)] != v:
                    raise DiagramError(
                        f"crossing {k}: inconsistent strand directions at arc "
                        f"{crossings[k].arcs[s]}")
                continue
            role[(k, s)] = v
            arc = crossings[k].arcs[s]
            other = [o for o in occ[arc] if o != (k, s)][0]
            stack.append((other, not v))
            if s in (1, 3):
                stack.append(((k, 4 - s), not v))

    for k in range(len(crossings)):
        assign((k, 0), True)
        assign((k, 2), False)
    for k, x in enumerate(crossings):
        if (k, 1) not in role:
            b, d = x.arcs[1], x.arcs[3]
            incoming_b = succ(b) == d and (succ(d) != b or b <= d)
            assign((k, 1), incoming_b)

    over_in = []
    for k, x in enumerate(crossings):
        a, b, c, d = x.arcs
        if succ(a) != c:
            raise DiagramError(
                f"crossing {k} {x}: under-strand arcs {a}->{c} are not consecutive")
        oi = 1 if role[(k, 1)] else 3
        src, dst = x.arcs[oi], x.arcs[4 - oi]
        if succ(src) != dst:
            raise DiagramError(
                f"crossing {k} {x}: over-strand arcs {src}->{dst} are not consecutive")
        over_in.append(oi)
    return [tuple(g) for g in comps], over_in


def parse_pd(text: str, framings: Optional[Sequence[int]] = None,
             components: Optional[int] = None,
             orientations: Optional[Sequence[bool]] = None) -> FramedLink:
    """Parse ``"X(a,b,c,d), X(...)"`` into a :class:`FramedLink`.

    ``components`` declares the total component count, which is how
    zero-crossing unknots enter.  Framings default to zero.
    """
    text = text.strip()
    crossings = []
    if text:
        body = text
        if body.startswith("PD") or body.startswith("pd"):
            body = body[2:].strip()
            if body[:1] in "[(" and body[-1:] in "])":
                body = body[1:-1]
        pos = 0
        for piece in _split_top(body):
            m = _CROSSING_RE.fullmatch(piece)
            if not m:
                raise DiagramError(f"malformed crossing {piece.strip()!r} at offset {pos}")
            try:
                arcs = tuple(int(v) for v in m.group(1).split(","))
            except ValueError:
                raise DiagramError(f"non-integer arc label in {piece.strip()!r}") from None
            if len(arcs) != 4:
                raise DiagramError(f"crossing {piece.strip()!r} needs exactly 4 arcs")
            crossings.append(arcs)
            pos += len(piece) + 1
    if not crossings and components is None:
        components = 1
    d = OrientedLinkDiagram.from_crossings(crossings, components, orientations)
    if framings is None:
        framings = [0] * d.n_components
    return FramedLink(d, tuple(int(f) for f in framings))


def _split_top(body: str) -> List[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return parts


def link_from_json(doc: dict) -> FramedLink:
    """Build a :class:`FramedLink` from ``{"pd", "components", "framings", "orientations"}``."""
    return parse_pd(doc.get("pd", ""), doc.get("framings"), doc.get("components"),
                    doc.get("orientations"))


def crossing_signs(d: OrientedLinkDiagram) -> Tuple[Tuple[int, ...], int]:
    """Per-crossing signs and the writhe."""
    signs = []
    for k, x in enumerate(d.crossings):
        s = 1 if d.over_in[k] == 3 else -1
        cu, co = d.under_components(k)
        if not d.orientations[cu]:
            s = -s
        if not d.orientations[co]:
            s = -s
        signs.append(s)
    return tuple(signs), sum(signs)


def linking_number(d: OrientedLinkDiagram, i: int, j: int) -> int:
    n = d.n_components
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"component index out of range for {n} components")
    if i == j:
        raise ValueError("self-linking is framing data; pass i != j")
    signs, _ = crossing_signs(d)
    total = sum(s for k, s in enumerate(signs) if set(d.under_components(k)) == {i, j})
    if total % 2:
        raise ArithmeticError(f"odd signed crossing count {total} between components {i}, {j}")
    return total // 2


def linking_matrix(fl: FramedLink) -> SymmetricForm:
    d = fl.diagram
    n = d.n_components
    signs, _ = crossing_signs(d)
    M = [[0] * n for _ in range(n)]
    for k, s in enumerate(signs):
        cu, co = d.under_components(k)
        if cu != co:
            M[cu][co] += s
            M[co][cu] += s
    for i in range(n):
        for j in range(n):
            if i != j:
                M[i][j] //= 2
        M[i][i] = fl.framings[i]
    return SymmetricForm(M)


def reverse_component(d: OrientedLinkDiagram, i: int) -> OrientedLinkDiagram:
    if not 0 <= i < d.n_components:
        raise IndexError(f"component {i} out of range")
    o = list(d.orientations)
    o[i] = not o[i]
    return OrientedLinkDiagram(d.crossings, d.components, tuple(o), d.over_in, d._arc_component)


def _incoming_slot(d: OrientedLinkDiagram, arc: int) -> Tuple[int, int]:
    for k, x in enumerate(d.crossings):
        if x.arcs[0] == arc:
            return k, 0
        oi = d.over_in[k]
        if x.arcs[oi] == arc:
            return k, oi
    raise KeyError(arc)


def connected_sum(d1: OrientedLinkDiagram, d2: OrientedLinkDiagram,
                  a1: Optional[int] = None, a2: Optional[int] = None) -> OrientedLinkDiagram:
    """Band the knot diagrams together by cutting arc ``a1`` of ``d1`` and ``a2`` of ``d2``."""
    if not (d1.is_knot() and d2.is_knot()):
        raise DiagramError("connected_sum needs two knot diagrams")
    if not d1.crossings:
        return d2
    if not d2.crossings:
        return d1
    d1, d2 = d1.canonical(), d2.canonical()
    m, k = d1.arc_count, d2.arc_count
    a1 = m if a1 is None else a1
    a2 = k if a2 is None else a2
    if not (1 <= a1 <= m and 1 <= a2 <= k):
        raise DiagramError("splice arcs out of range")
    r1 = {x: (x - a1 - 1) % m + 1 for x in range(1, m + 1)}
    r2 = {y: m + (y - a2 - 1) % k + 1 for y in range(1, k + 1)}
    c1 = [[r1[v] for v in x.arcs] for x in d1.crossings]
    c2 = [[r2[v] for v in x.arcs] for x in d2.crossings]
    ck, cs = _incoming_slot(d1, a1)
    c1[ck][cs] = m + k
    ck, cs = _incoming_slot(d2, a2)
    c2[ck][cs] = m
    return OrientedLinkDiagram.from_crossings(c1 + c2)


def braid_closure(word: Sequence[int], strands: Optional[int] = None) -> OrientedLinkDiagram:
    """Diagram of the closure of a braid word.

    Letters are ``±i`` for ``sigma_i^{±1}`` acting on strands ``i, i+1``;
    ``sigma_i`` gives a positive crossing.  Strands that never cross become
    zero-crossing unknots.
    """
    n = strands or (max((abs(g) for g in word), default=0) + 1)
    pos = list(range(n))
    next_id = n
    raw = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < n - 1:
            raise DiagramError(f"braid letter {g} out of range for {n} strands")
        lo, hi = pos[i], pos[i + 1]
        top_lo, top_hi = next_id, next_id + 1
        next_id += 2
        if g > 0:
            # under hi -> top_lo, over lo -> top_hi
            raw.append(((hi, top_hi, top_lo, lo), 3))
        else:
            # under lo -> top_hi, over hi -> top_lo
            raw.append(((lo, hi, top_hi, top_lo), 1))
        pos[i], pos[i + 1] = top_lo, top_hi
    ident = {pos[p]: p for p in range(n)}
    raw = [(tuple(ident.get(v, v) for v in arcs), oi) for arcs, oi in raw]

    start: Dict[int, Tuple[int, int]] = {}
    end: Dict[int, Tuple[int, int]] = {}
    for k, (arcs, oi) in enumerate(raw):
        end[arcs[0]] = (k, 0)
        start[arcs[2]] = (k, 2)
        end[arcs[oi]] = (k, oi)
        start[arcs[4 - oi]] = (k, 4 - oi)
    label: Dict[int, int] = {}
    free = 0
    for p in range(n):
        if p not in end:
            free += 1
            continue
        e = p
        while e not in label:
            label[e] = len(label) + 1
            k, s = end[e]
            out = 2 if s == 0 else 4 - s
            e = raw[k][0][out]
    crossings = [tuple(label[v] for v in arcs) for arcs, _ in raw]
    linked = OrientedLinkDiagram.from_crossings(crossings)
    return OrientedLinkDiagram.from_crossings(crossings, linked.n_components + free)
