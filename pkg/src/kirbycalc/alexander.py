"""Alexander polynomials of knots and Fox-Milnor slice obstructions.

The Alexander polynomial is computed from the Wirtinger presentation of a PD
diagram by Fox calculus, abelianising every generator to ``t``.  The
determinant of the Alexander matrix with one row and column deleted is
taken over ``Z[t, 1/t]`` by Bareiss elimination and normalised to the
symmetric representative with ``Δ(1) = 1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import DiagramError, InvariantViolation
from .intmat import bareiss_det
from .laurent import LaurentPoly
from .linkdiag import OrientedLinkDiagram, crossing_signs

MAX_FACTOR_DEGREE = 12

Poly = Tuple[int, ...]  # dense coefficients, constant term first


@dataclass(frozen=True)
class WirtingerRelation:
    """``out = over^s * incoming * over^-s`` for crossing sign ``s``."""

    out: int
    over: int
    incoming: int
    sign: int

    def relator(self) -> Tuple[Tuple[int, int], ...]:
        s = self.sign
        return ((self.over, s), (self.incoming, 1), (self.over, -s), (self.out, -1))


@dataclass(frozen=True)
class WirtingerData:
    """One generator per PD arc, one relation per crossing.

    ``overstrand`` maps each arc to the index of the over-strand it lies
    on; arcs sharing an over-strand are the same element of the knot group.
    """

    generators: Tuple[int, ...]
    relations: Tuple[WirtingerRelation, ...]
    overstrand: Dict[int, int]

    @property
    def n_strands(self) -> int:
        return len(set(self.overstrand.values()))


def wirtinger_presentation(d: OrientedLinkDiagram) -> WirtingerData:
    if not d.is_knot():
        raise DiagramError("Wirtinger presentation here is for knot diagrams only")
    if not d.crossings:
        raise DiagramError("zero-crossing diagram has no Wirtinger relations")
    d = d.canonical()
    signs, _ = crossing_signs(d)
    n = d.arc_count
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    rels = []
    for k, x in enumerate(d.crossings):
        a, b, c, dd = x.arcs
        parent[find(b)] = find(dd)
        over = x.arcs[d.over_in[k]]
        rels.append(WirtingerRelation(out=c, over=over, incoming=a, sign=signs[k]))
    roots = sorted({find(a) for a in range(1, n + 1)})
    idx = {r: i for i, r in enumerate(roots)}
    return WirtingerData(tuple(range(1, n + 1)), tuple(rels),
                         {a: idx[find(a)] for a in range(1, n + 1)})


def fox_derivative(word: Sequence[Tuple[int, int]], gen) -> LaurentPoly:
    """Abelianised Fox derivative ``∂word/∂gen`` with every generator sent to ``t``."""
    total = LaurentPoly()
    height = 0
    for g, e in word:
        if g == gen:
            if e == 1:
                total = total + LaurentPoly.monomial(height)
            else:
                total = total - LaurentPoly.monomial(height - 1)
        height += e
    return total


def alexander_matrix(w: WirtingerData) -> List[List[LaurentPoly]]:
    """Rows are crossings, columns are over-strands."""
    m = w.n_strands
    rows = []
    for rel in w.relations:
        word = rel.relator()
        row = [LaurentPoly() for _ in range(m)]
        for arc in {g for g, _ in word}:
            row[w.overstrand[arc]] = row[w.overstrand[arc]] + fox_derivative(word, arc)
        rows.append(row)
    return rows


def normalize(p: LaurentPoly) -> LaurentPoly:
    """Unit multiple ``±t^k p`` that is symmetric under ``t -> 1/t`` with value 1 at 1."""
    if p.is_zero():
        raise InvariantViolation("Alexander minor vanished; knot encodings never do this")
    if p.span() % 2:
        raise InvariantViolation(f"Alexander minor {p} has odd span, cannot be symmetric")
    q = p.shift(-(p.min_exp + p.max_exp) // 2)
    if q(1) < 0:
        q = -q
    if q(1) != 1:
        raise InvariantViolation(f"Δ(1) = {q(1)} (expected ±1) for minor {p}")
    if q.invert() != q:
        raise InvariantViolation(f"Δ = {q} is not symmetric under t -> 1/t")
    return q


def alexander_minor(d: OrientedLinkDiagram) -> LaurentPoly:
    """Unnormalised determinant of the Alexander matrix minus last row and column."""
    A = alexander_matrix(wirtinger_presentation(d))
    minor = [row[:-1] for row in A[:-1]]
    return bareiss_det(minor, one=LaurentPoly.const(1), zero=LaurentPoly())


def alexander_polynomial(d: OrientedLinkDiagram) -> LaurentPoly:
    if not d.is_knot():
        raise DiagramError("Alexander polynomial is implemented for knots only")
    if not d.crossings:
        return LaurentPoly.const(1)
    return normalize(alexander_minor(d))


def knot_determinant(p: LaurentPoly) -> int:
    return abs(int(p(-1)))


# -- integer polynomial factorisation ------------------------------------


def _trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _eval(p: Poly, x: int) -> int:
    v = 0
    for a in reversed(p):
        v = v * x + a
    return v


def _divide(p: Poly, q: Poly) -> Optional[Poly]:
    """Exact quotient over Z, or ``None``."""
    p, q = list(p), list(q)
    if len(q) > len(p):
        return None
    out = [0] * (len(p) - len(q) + 1)
    lead = q[-1]
    for i in range(len(out) - 1, -1, -1):
        top = p[i + len(q) - 1]
        if top % lead:
            return None
        c = top // lead
        out[i] = c
        for j, b in enumerate(q):
            p[i + j] -= c * b
    if any(p):
        return None
    return tuple(out)


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


class _Interpolator:
    """Lagrange interpolation on fixed nodes over a common integer denominator."""

    def __init__(self, xs: Sequence[int]):
        n = len(xs)
        self.n = n
        denoms, bases = [], []
        for i in range(n):
            basis = [1]
            denom = 1
            for j in range(n):
                if j == i:
                    continue
                basis = [0] + basis
                for k in range(len(basis) - 1):
                    basis[k] -= xs[j] * basis[k + 1]
                denom *= xs[i] - xs[j]
            denoms.append(denom)
            bases.append(basis)
        self.D = abs(math.lcm(*denoms))
        self.scaled = [[b * (self.D // d) for b in basis] for basis, d in zip(bases, denoms)]

    def __call__(self, ys: Sequence[int]) -> Optional[Poly]:
        """Integer polynomial through the points, or ``None`` if non-integral."""
        coef = [0] * self.n
        for y, basis in zip(ys, self.scaled):
            if y:
                for k, b in enumerate(basis):
                    coef[k] += y * b
        if any(c % self.D for c in coef):
            return None
        return _trim(c // self.D for c in coef)


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> Optional[Poly]:
    return _Interpolator(xs)(ys)


def _primitive(p: Poly) -> Tuple[int, Poly]:
    c = 0
    for a in p:
        c = math.gcd(c, a)
    if p and p[-1] < 0:
        c = -c
    return c, tuple(a // c for a in p)


def _find_factor(f: Poly) -> Optional[Poly]:
    deg = len(f) - 1
    # linear factors via rational roots
    for q in _divisors(f[-1]):
        for pnum in _divisors(f[0]) if f[0] else [0]:
            for s in (1, -1):
                cand = (-s * pnum, q)
                if _divide(f, _trim(cand)) is not None:
                    return _primitive(_trim(cand))[1]
    points = sorted(range(-12, 13), key=lambda x: (len(_divisors(_eval(f, x))) if _eval(f, x) else 10**9, abs(x)))
    for d in range(2, deg // 2 + 1):
        xs = points[:d + 1]
        vals = [_eval(f, x) for x in xs]
        if any(v == 0 for v in vals):
            return None  # roots were handled above; unreachable for deg >= 2 factors
        choices = [[s * k for k in _divisors(v) for s in (1, -1)] for v in vals]
        choices[0] = _divisors(vals[0])  # fix the overall sign
        interp = _Interpolator(xs)
        for ys in itertools.product(*choices):
            g = interp(ys)
            if g is None or len(g) - 1 != d:
                continue
            if _divide(f, g) is not None:
                return _primitive(g)[1]
    return None


def kronecker_factor(p: Union[LaurentPoly, Sequence[int]]) -> Tuple[int, List[Poly]]:
    """Factor an integer polynomial into irreducibles by Kronecker's method.

    Accepts a dense coefficient sequence (constant term first) or a
    :class:`LaurentPoly`, whose lowest power of ``t`` is divided out first.
    Returns ``(content, factors)``: primitive factors with positive leading
    coefficient, sorted, whose product times ``content`` is the input.
    The monomial ``t`` appears as the factor ``(0, 1)``.
    """
    if isinstance(p, LaurentPoly):
        if p.is_zero():
            raise ValueError("cannot factor the zero polynomial")
        coeffs = p.dense()
        t_power = 0
    else:
        coeffs = list(_trim(p))
        if not coeffs:
            raise ValueError("cannot factor the zero polynomial")
        t_power = next(i for i, a in enumerate(coeffs) if a)
        coeffs = coeffs[t_power:]
    f = _trim(coeffs)
    if len(f) - 1 > MAX_FACTOR_DEGREE:
        raise ValueError(f"degree {len(f) - 1} exceeds the factorisation cap of {MAX_FACTOR_DEGREE}")
    content, f = _primitive(f)
    factors: List[Poly] = [(0, 1)] * t_power
    stack = [f]
    while stack:
        g = stack.pop()
        if len(g) <= 1:
            continue
        h = _find_factor(g)
        if h is None or len(h) == len(g):
            factors.append(g)
            continue
        stack.append(h)
        stack.append(_primitive(_divide(g, h))[1])
    # Gauss's lemma: splitting a primitive polynomial with positive leading
    # coefficient keeps both parts that way, so the product is exact.
    return content, sorted(factors, key=lambda g: (len(g), g))


def _mul(p: Poly, q: Poly) -> Poly:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def reciprocal(g: Poly) -> Poly:
    """``t^deg(g) g(1/t)`` made primitive with positive leading coefficient."""
    return _primitive(_trim(reversed(g)))[1]


def poly_str(g: Poly) -> str:
    return str(LaurentPoly.from_coeffs(g))


@dataclass(frozen=True)
class FoxMilnorReport:
    determinant: int
    det_square: bool
    factor_pairing: Union[bool, str]
    factors: Tuple[Poly, ...]
    not_slice: bool

    @property
    def verdict(self) -> str:
        return "not slice" if self.not_slice else "inconclusive"

    def to_json(self) -> dict:
        return {"determinant": self.determinant, "det_square": self.det_square,
                "factor_pairing": self.factor_pairing,
                "factors": [poly_str(g) for g in self.factors],
                "verdict": self.verdict}


def factors_pair_up(factors: Sequence[Poly]) -> bool:
    """Whether the factors split into pairs ``{g, reciprocal(g)}``."""
    counts: Dict[Poly, int] = {}
    for g in factors:
        counts[g] = counts.get(g, 0) + 1
    for g, c in counts.items():
        r = reciprocal(g)
        if r == g:
            if c % 2:
                return False
        elif counts.get(r, 0) != c:
            return False
    return True


def fox_milnor_test(p: LaurentPoly) -> FoxMilnorReport:
    """Fox-Milnor obstructions for a normalised Alexander polynomial.

    Failure of either check proves the knot is not slice (smoothly or
    topologically); passing both proves nothing.
    """
    det = knot_determinant(p)
    square = math.isqrt(det) ** 2 == det
    factors: Tuple[Poly, ...] = ()
    if p.span() > MAX_FACTOR_DEGREE:
        pairing: Union[bool, str] = "inconclusive"
    else:
        _, fs = kronecker_factor(p)
        factors = tuple(fs)
        pairing = factors_pair_up(fs)
    return FoxMilnorReport(det, square, pairing, factors,
                           not square or pairing is False)
