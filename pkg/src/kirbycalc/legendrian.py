"""Legendrian front diagrams as event words.

A front is read left to right as a word of events acting on a stack of
strands numbered from the bottom, starting at 1:

* ``("L", i)`` a left cusp inserts two strands at positions ``i, i+1``;
* ``("R", i)`` a right cusp joins the strands at ``i, i+1``;
* ``("X", i)`` the strands at ``i, i+1`` cross.

At a crossing the strand coming down from ``i+1`` has the more negative
slope and so passes over.  A component is traversed, for orientation
``True``, starting at its first left cusp along the lower branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import DiagramError, KirbyCalcError
from .forms import SymmetricForm
from .linkdiag import FramedLink, OrientedLinkDiagram, linking_matrix

Event = Tuple[str, int]


@dataclass(frozen=True)
class _Passage:
    event: int
    seg_in: int
    seg_out: int


class _FrontGraph:
    """Segment structure of a valid front word."""

    def __init__(self, events: Sequence[Event]):
        self.events = tuple(events)
        stack: List[int] = []
        self.seg_start: List[Tuple[str, int]] = []
        self.seg_end: List[Optional[Tuple[str, int]]] = []
        self.cusp_segs: Dict[int, Tuple[int, int]] = {}  # event -> (lower, upper)
        self.cross: Dict[int, Tuple[int, int, int, int]] = {}  # old_lo, old_hi, new_lo, new_hi
        self.right_of: Dict[int, int] = {}
        self.left_of: Dict[int, int] = {}

        def new_seg(kind, k):
            self.seg_start.append((kind, k))
            self.seg_end.append(None)
            return len(self.seg_start) - 1

        for k, ev in enumerate(self.events):
            if not (isinstance(ev, (tuple, list)) and len(ev) == 2):
                raise DiagramError(f"event {k}: expected (kind, index), got {ev!r}")
            kind, i = str(ev[0]).upper(), ev[1]
            if not isinstance(i, int) or isinstance(i, bool):
                raise DiagramError(f"event {k}: index must be an integer")
            h = len(stack)
            if kind == "L":
                if not 1 <= i <= h + 1:
                    raise DiagramError(f"event {k}: L({i}) out of range with {h} strands")
                lo, up = new_seg("L", k), new_seg("L", k)
                stack[i - 1:i - 1] = [lo, up]
                self.cusp_segs[k] = (lo, up)
            elif kind in ("R", "X"):
                if not 1 <= i <= h - 1:
                    raise DiagramError(f"event {k}: {kind}({i}) out of range with {h} strands")
                lo, up = stack[i - 1], stack[i]
                self.seg_end[lo] = (kind, k)
                self.seg_end[up] = (kind, k)
                if kind == "R":
                    del stack[i - 1:i + 1]
                    self.cusp_segs[k] = (lo, up)
                else:
                    nlo, nup = new_seg("X", k), new_seg("X", k)
                    stack[i - 1:i + 1] = [nlo, nup]
                    self.cross[k] = (lo, up, nlo, nup)
                    self.right_of[lo], self.right_of[up] = nup, nlo
                    self.left_of[nup], self.left_of[nlo] = lo, up
            else:
                raise DiagramError(f"event {k}: unknown event kind {ev[0]!r}")
        if stack:
            raise DiagramError(f"front ends with {len(stack)} open strands")

        self.left_cusps = [k for k, ev in enumerate(self.events) if str(ev[0]).upper() == "L"]

    def traverse(self, cusp: int, forward: bool):
        """Walk the component through left cusp ``cusp``.

        Returns (segment directions, cusp kinds, passages).  Direction is
        +1 for rightward travel.
        """
        lo, up = self.cusp_segs[cusp]
        start = (lo, 1) if forward else (up, 1)
        seg, d = start
        dirs: Dict[int, int] = {}
        cusps: Dict[int, str] = {}
        passages: List[_Passage] = []
        while True:
            dirs[seg] = d
            kind, k = self.seg_end[seg] if d == 1 else self.seg_start[seg]
            if kind == "X":
                nxt = self.right_of[seg] if d == 1 else self.left_of[seg]
                passages.append(_Passage(k, seg, nxt))
                seg = nxt
            else:
                clo, cup = self.cusp_segs[k]
                cusps[k] = "down" if seg == cup else "up"
                seg, d = (clo if seg == cup else cup), -d
            if (seg, d) == start:
                break
        return dirs, cusps, passages


@dataclass(frozen=True, init=False)
class FrontWord:
    """Validated front event word.

    >>> FrontWord([("L", 1), ("R", 1)]).n_components
    1
    """

    events: Tuple[Event, ...]

    def __init__(self, events: Sequence[Sequence]):
        evs = tuple((str(e[0]).upper(), int(e[1])) if isinstance(e, (list, tuple)) and len(e) == 2
                    and not isinstance(e[1], bool) and isinstance(e[1], int) else e
                    for e in events)
        object.__setattr__(self, "events", evs)
        g = _FrontGraph(evs)
        comps, seen = [], set()
        for c in g.left_cusps:
            if c in seen:
                continue
            _, cusps, _ = g.traverse(c, True)
            seen.update(k for k in cusps if self.events[k][0] == "L")
            comps.append(c)
        object.__setattr__(self, "_graph", g)
        object.__setattr__(self, "_starts", tuple(comps))

    @property
    def n_components(self) -> int:
        return len(self._starts)

    def to_json(self) -> list:
        return [[k, i] for k, i in self.events]


def validate_front(w: Union[FrontWord, Sequence[Sequence]]) -> List[List[Tuple[int, int]]]:
    """Components as cyclic lists of ``(segment, direction)`` pairs.

    Raises :class:`DiagramError` for words that do not close up.
    """
    if not isinstance(w, FrontWord):
        w = FrontWord(w)
    out = []
    for c in w._starts:
        dirs, _, _ = w._graph.traverse(c, True)
        out.append(sorted(dirs.items()))
    return out


@dataclass(frozen=True, init=False)
class OrientedFront:
    word: FrontWord
    orientations: Tuple[bool, ...]

    def __init__(self, word, orientations: Optional[Sequence[bool]] = None):
        if not isinstance(word, FrontWord):
            word = FrontWord(word)
        if orientations is None:
            orientations = (True,) * word.n_components
        orientations = tuple(bool(o) for o in orientations)
        if len(orientations) != word.n_components:
            raise DiagramError(
                f"{len(orientations)} orientations for {word.n_components} components")
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "orientations", orientations)

    @property
    def n_components(self) -> int:
        return self.word.n_components

    @classmethod
    def from_json(cls, doc: dict) -> "OrientedFront":
        return cls(FrontWord(doc["events"]), doc.get("orientations"))

    def to_json(self) -> dict:
        return {"events": self.word.to_json(), "orientations": list(self.orientations)}

    def _walks(self):
        g = self.word._graph
        return [g.traverse(c, o) for c, o in zip(self.word._starts, self.orientations)]


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rot: int
    writhe: int
    cusps: int
    up_cusps: int
    down_cusps: int

    def to_json(self) -> dict:
        return {"tb": self.tb, "rot": self.rot, "writhe": self.writhe, "cusps": self.cusps,
                "up_cusps": self.up_cusps, "down_cusps": self.down_cusps}


def _segment_data(of: OrientedFront):
    comp_of: Dict[int, int] = {}
    dirs: Dict[int, int] = {}
    cusp_kind: Dict[int, Tuple[int, str]] = {}
    for ci, (d, cusps, _) in enumerate(of._walks()):
        for s, v in d.items():
            comp_of[s] = ci
            dirs[s] = v
        for k, kind in cusps.items():
            cusp_kind[k] = (ci, kind)
    return comp_of, dirs, cusp_kind


def front_crossing_signs(of: OrientedFront) -> Dict[int, int]:
    """Sign per crossing event: +1 when both strands travel the same way."""
    _, dirs, _ = _segment_data(of)
    return {k: (1 if dirs[lo] == dirs[hi] else -1)
            for k, (lo, hi, _, _) in of.word._graph.cross.items()}


def classical_invariants(of: OrientedFront, component: Optional[int] = None) -> ClassicalInvariants:
    """Thurston-Bennequin and rotation numbers of one component.

    ``component`` may be omitted for single-component fronts.
    """
    if component is None:
        if of.n_components != 1:
            raise KirbyCalcError("front has several components; pass component=")
        component = 0
    if not 0 <= component < of.n_components:
        raise IndexError(f"component {component} out of range")
    comp_of, dirs, cusp_kind = _segment_data(of)
    g = of.word._graph
    writhe = 0
    for k, (lo, hi, _, _) in g.cross.items():
        if comp_of[lo] == component and comp_of[hi] == component:
            writhe += 1 if dirs[lo] == dirs[hi] else -1
    kinds = [kind for ci, kind in cusp_kind.values() if ci == component]
    up, down = kinds.count("up"), kinds.count("down")
    cusps = up + down
    return ClassicalInvariants(tb=writhe - cusps // 2, rot=(down - up) // 2, writhe=writhe,
                               cusps=cusps, up_cusps=up, down_cusps=down)


def reverse_front_component(of: OrientedFront, i: int) -> OrientedFront:
    o = list(of.orientations)
    o[i] = not o[i]
    return OrientedFront(of.word, o)


def stabilize(of: OrientedFront, component: int, sign: int) -> OrientedFront:
    """Add a zig-zag to ``component``: tb drops by 1 and rot moves by ``sign``.

    The zig-zag goes on the lower branch just after the component's first
    left cusp.
    """
    if sign not in (1, -1):
        raise KirbyCalcError("stabilization sign must be +1 or -1")
    if not 0 <= component < of.n_components:
        raise IndexError(f"component {component} out of range")
    k = of.word._starts[component]
    i = of.word.events[k][1]
    rightward = of.orientations[component]
    # L(i) R(i+1) adds two down cusps when the branch runs rightward
    if (sign == 1) == rightward:
        zig = [("L", i), ("R", i + 1)]
    else:
        zig = [("L", i + 1), ("R", i)]
    events = list(of.word.events[:k + 1]) + zig + list(of.word.events[k + 1:])
    return OrientedFront(FrontWord(events), of.orientations)


def _front_to_pd(of: OrientedFront):
    g = of.word._graph
    walks = of._walks()
    seg_arc: Dict[int, int] = {}
    dirs: Dict[int, int] = {}
    base = 0
    with_crossings, without = [], []
    for ci, (d, _, passages) in enumerate(walks):
        dirs.update(d)
        if not passages:
            without.append(ci)
            continue
        with_crossings.append(ci)
        m = len(passages)
        # arc j runs from passage j to passage j+1
        for j, p in enumerate(passages):
            nxt = passages[(j + 1) % m]
            seg = p.seg_out
            seg_arc[seg] = base + j + 1
            while seg != nxt.seg_in:
                # walk the cusps between two crossings
                dd = d[seg]
                kind, k = g.seg_end[seg] if dd == 1 else g.seg_start[seg]
                lo, up = g.cusp_segs[k]
                seg = lo if seg == up else up
                seg_arc[seg] = base + j + 1
        base += m
    crossings = []
    for k in sorted(g.cross):
        lo, hi, nlo, nhi = g.cross[k]
        sw, nw, ne, se = seg_arc[lo], seg_arc[hi], seg_arc[nhi], seg_arc[nlo]
        if dirs[lo] == 1:
            crossings.append((sw, se, ne, nw))
        else:
            crossings.append((ne, nw, sw, se))
    order = with_crossings + without
    diagram = OrientedLinkDiagram.from_crossings(crossings, len(order))
    pd_index = {ci: order.index(ci) for ci in range(len(walks))}
    return diagram, pd_index


def front_to_pd(of: OrientedFront) -> OrientedLinkDiagram:
    """Smooth the cusps and read off a PD diagram with the front's orientation.

    Components that cross nothing become zero-crossing unknots listed after
    the others.
    """
    return _front_to_pd(of)[0]


def disjoint_union(fronts: Sequence[OrientedFront]) -> OrientedFront:
    """Place fronts side by side (a split link)."""
    events: List[Event] = []
    orient: List[bool] = []
    for f in fronts:
        events.extend(f.word.events)
        orient.extend(f.orientations)
    return OrientedFront(FrontWord(events), orient)


@dataclass(frozen=True)
class SteinTrace:
    form: SymmetricForm
    c1: Tuple[int, ...]
    tb: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"form": self.form.tolist(), "c1": list(self.c1), "tb": list(self.tb)}


def stein_trace(fronts: Union[OrientedFront, Sequence[OrientedFront]],
                linking: Optional[Sequence[Sequence[int]]] = None) -> SteinTrace:
    """2-handles along a Legendrian link with framings ``tb - 1``.

    A list of fronts is treated as a split union unless ``linking`` supplies
    the off-diagonal linking numbers.  Otherwise linking numbers come from
    the smoothed PD diagram of the front.
    """
    of = fronts if isinstance(fronts, OrientedFront) else disjoint_union(list(fronts))
    n = of.n_components
    inv = [classical_invariants(of, i) for i in range(n)]
    if linking is None:
        diagram, idx = _front_to_pd(of)
        pd_framings = [0] * n
        for i in range(n):
            pd_framings[idx[i]] = inv[i].tb - 1
        L = linking_matrix(FramedLink(diagram, tuple(pd_framings)))
        M = [[L.entries[idx[i]][idx[j]] for j in range(n)] for i in range(n)]
    else:
        M = [list(r) for r in linking]
        if len(M) != n or any(len(r) != n for r in M):
            raise KirbyCalcError(f"linking matrix must be {n}x{n}")
        for i in range(n):
            M[i][i] = inv[i].tb - 1
    return SteinTrace(SymmetricForm(M), tuple(c.rot for c in inv), tuple(c.tb for c in inv))


@dataclass(frozen=True)
class GenusBound:
    kind: str
    bound: int
    detail: dict

    def to_json(self) -> dict:
        return {"kind": self.kind, "bound": self.bound, **self.detail}


def slice_bennequin_bound(of: OrientedFront, component: Optional[int] = None) -> GenusBound:
    """``g4 >= ceil((tb + |rot| + 1) / 2)``; may be negative, hence vacuous."""
    inv = classical_invariants(of, component)
    b = math.ceil((inv.tb + abs(inv.rot) + 1) / 2)
    return GenusBound("slice-bennequin", b,
                      {"tb": inv.tb, "rot": inv.rot, "obstructs_slice": b >= 1})


def adjunction_bound(trace: SteinTrace, a: Sequence[int]) -> GenusBound:
    """Lower bound on the genus of a surface in class ``a`` of a Stein trace."""
    if len(a) != trace.form.n:
        raise KirbyCalcError(f"class has length {len(a)}, form has rank {trace.form.n}")
    if not any(a):
        raise KirbyCalcError("the adjunction inequality needs a nonzero class")
    sq = trace.form.pair(a, a)
    c1 = sum(x * r for x, r in zip(a, trace.c1))
    b = max(0, math.ceil((sq + abs(c1) + 2) / 2))
    return GenusBound("adjunction", b, {"square": sq, "c1_pairing": c1})


def thom_bound(d: int) -> GenusBound:
    if d == 0:
        raise KirbyCalcError("the Thom bound needs a nonzero degree")
    m = abs(d)
    return GenusBound("thom", (m - 1) * (m - 2) // 2, {"degree": d})


def genus_bounds(request: dict) -> GenusBound:
    """Dispatch a tagged request.

    ``{"kind": "slice-bennequin", "front": {...}}``,
    ``{"kind": "adjunction", "fronts": [...] | "trace": {"form", "c1"}, "class": [...]}``
    or ``{"kind": "thom", "degree": d}``.
    """
    kind = request.get("kind")
    if kind == "slice-bennequin":
        return slice_bennequin_bound(OrientedFront.from_json(request["front"]),
                                     request.get("component"))
    if kind == "adjunction":
        if "trace" in request:
            t = request["trace"]
            trace = SteinTrace(SymmetricForm(t["form"]), tuple(t["c1"]), tuple(t.get("tb", ())))
        else:
            fronts = [OrientedFront.from_json(f) for f in request["fronts"]]
            trace = stein_trace(fronts, request.get("linking"))
        return adjunction_bound(trace, request["class"])
    if kind == "thom":
        return thom_bound(int(request["degree"]))
    raise KirbyCalcError(f"unknown genus-bound kind {kind!r}")
