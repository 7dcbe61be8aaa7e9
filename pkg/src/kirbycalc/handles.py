"""Handle decompositions with one 0-handle, 1-handles and 2-handles.

Attaching curves are given as words in the 1-handle generators.  From these
we read off a presentation of the fundamental group, the cellular boundary
map, homology via Smith normal form, and the intersection form on
``H_2 = ker d_2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import intmat
from .errors import KirbyCalcError
from .forms import SymmetricForm
from .linkdiag import FramedLink, linking_matrix

Word = Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class TwoHandle:
    word: Word
    framing: int = 0


@dataclass(frozen=True)
class HandleComplex:
    """Combinatorial handle decomposition.

    ``linking`` is a symmetric matrix over the 2-handles; only its
    off-diagonal entries are used, the diagonal comes from the framings.
    It may be omitted when there is at most one 2-handle.
    """

    one_handles: Tuple[str, ...]
    two_handles: Tuple[TwoHandle, ...]
    linking: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        gens = set(self.one_handles)
        if len(gens) != len(self.one_handles):
            raise KirbyCalcError("duplicate 1-handle names")
        for k, h in enumerate(self.two_handles):
            for g, e in h.word:
                if g not in gens:
                    raise KirbyCalcError(f"2-handle {k}: undeclared generator {g!r}")
                if e not in (1, -1):
                    raise KirbyCalcError(f"2-handle {k}: exponents must be ±1, got {e}")
        if self.linking is not None:
            m = len(self.two_handles)
            L = self.linking
            if len(L) != m or any(len(r) != m for r in L):
                raise KirbyCalcError(f"linking matrix must be {m}x{m}")
            if any(L[i][j] != L[j][i] for i in range(m) for j in range(m)):
                raise KirbyCalcError("linking matrix must be symmetric")

    @classmethod
    def from_json(cls, doc: dict) -> "HandleComplex":
        twos = tuple(
            TwoHandle(tuple((str(g), int(e)) for g, e in h.get("word", [])), int(h.get("framing", 0)))
            for h in doc.get("two_handles", []))
        link = doc.get("linking")
        return cls(tuple(doc.get("one_handles", [])), twos,
                   None if link is None else tuple(tuple(int(v) for v in r) for r in link))

    def to_json(self) -> dict:
        doc = {"one_handles": list(self.one_handles),
               "two_handles": [{"word": [[g, e] for g, e in h.word], "framing": h.framing}
                               for h in self.two_handles]}
        if self.linking is not None:
            doc["linking"] = [list(r) for r in self.linking]
        return doc


@dataclass(frozen=True)
class GroupPresentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]

    def __str__(self):
        def fmt(w):
            if not w:
                return "1"
            return "".join(g if e == 1 else f"{g}^-1" for g, e in w)
        rels = ", ".join(fmt(w) for w in self.relators if w)
        return f"<{', '.join(self.generators)} | {rels}>"

    def to_json(self) -> dict:
        return {"generators": list(self.generators),
                "relators": [[[g, e] for g, e in w] for w in self.relators],
                "text": str(self)}


@dataclass(frozen=True)
class HomologySummary:
    h1_invariant_factors: Tuple[int, ...]
    h1_free_rank: int
    h2_rank: int
    h2_basis: Tuple[Tuple[int, ...], ...] = field(default=())

    def h1_str(self) -> str:
        parts = [f"Z/{d}" for d in self.h1_invariant_factors]
        if self.h1_free_rank:
            parts.append("Z" if self.h1_free_rank == 1 else f"Z^{self.h1_free_rank}")
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"h1": self.h1_str(), "h1_invariant_factors": list(self.h1_invariant_factors),
                "h1_free_rank": self.h1_free_rank, "h2_rank": self.h2_rank,
                "h2_basis": [list(r) for r in self.h2_basis]}


def free_reduce(word: Sequence[Tuple[str, int]]) -> Word:
    out: List[Tuple[str, int]] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def pi1_presentation(hc: HandleComplex) -> GroupPresentation:
    return GroupPresentation(hc.one_handles, tuple(free_reduce(h.word) for h in hc.two_handles))


def boundary_matrix_2(hc: HandleComplex) -> List[List[int]]:
    """Exponent sums: rows are 1-handles, columns are 2-handles."""
    index = {g: i for i, g in enumerate(hc.one_handles)}
    M = [[0] * len(hc.two_handles) for _ in hc.one_handles]
    for j, h in enumerate(hc.two_handles):
        for g, e in h.word:
            M[index[g]][j] += e
    return M


def smith_normal_form(M: Sequence[Sequence[int]]):
    """``(S, U, V)`` with ``U M V = S``; see :func:`kirbycalc.intmat.smith_normal_form`."""
    return intmat.smith_normal_form(M)


def homology_summary(hc: HandleComplex) -> HomologySummary:
    d2 = boundary_matrix_2(hc)
    n1, n2 = len(hc.one_handles), len(hc.two_handles)
    if n1 and n2:
        factors = intmat.invariant_factors(d2)
    else:
        factors = []
    r = len(factors)
    basis = intmat.kernel_basis(d2, ncols=n2) if n1 else intmat.identity(n2)
    return HomologySummary(
        h1_invariant_factors=tuple(d for d in factors if d > 1),
        h1_free_rank=n1 - r,
        h2_rank=n2 - r,
        h2_basis=tuple(tuple(row) for row in basis))


def _framed_linking(hc: HandleComplex) -> List[List[int]]:
    m = len(hc.two_handles)
    if hc.linking is None:
        if m > 1:
            raise KirbyCalcError("linking matrix required when there are two or more 2-handles")
        L = [[0] * m for _ in range(m)]
    else:
        L = [list(r) for r in hc.linking]
    for i, h in enumerate(hc.two_handles):
        L[i][i] = h.framing
    return L


def intersection_form_of_complex(hc: HandleComplex) -> SymmetricForm:
    """Linking matrix restricted to a saturated basis of ``ker d_2``."""
    L = _framed_linking(hc)
    if not hc.one_handles:
        return SymmetricForm(L)
    B = [list(r) for r in homology_summary(hc).h2_basis]
    if not B or not B[0]:
        return SymmetricForm([])
    return SymmetricForm(intmat.congruent(L, B))


def complex_from_framed_link(fl: FramedLink) -> HandleComplex:
    """2-handles only, attached along a framed link."""
    Q = linking_matrix(fl)
    return HandleComplex((), tuple(TwoHandle((), f) for f in fl.framings),
                         tuple(tuple(r) for r in Q.entries))


def knot_trace(fl: FramedLink) -> HandleComplex:
    if fl.diagram.n_components != 1:
        raise KirbyCalcError("knot trace needs a single-component framed link")
    return HandleComplex((), (TwoHandle((), fl.framings[0]),), ((fl.framings[0],),))
