"""Symmetric integer bilinear forms and their invariants.

Everything is exact.  Inertia comes from a rational congruence
diagonalisation (Sylvester's law), determinants from Bareiss elimination.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import intmat
from .errors import FormError

# Node ordering is deliberate; do not replace with the Dynkin-diagram ordering.
E8_MATRIX = (
    (2, 1, 0, 0, 0, 0, 0, 0),
    (1, 2, 1, 0, 0, 0, 0, 0),
    (0, 1, 2, 1, 0, 0, 0, 0),
    (0, 0, 1, 2, 1, 0, 0, 0),
    (0, 0, 0, 1, 2, 1, 0, 1),
    (0, 0, 0, 0, 1, 2, 1, 0),
    (0, 0, 0, 0, 0, 1, 2, 0),
    (0, 0, 0, 0, 1, 0, 0, 2),
)

HYPERBOLIC = ((0, 1), (1, 0))


@dataclass(frozen=True, init=False)
class SymmetricForm:
    """A symmetric matrix over ``Z`` presenting a form on ``Z^n``."""

    entries: Tuple[Tuple[int, ...], ...]

    def __init__(self, entries: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise FormError(f"row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise FormError(f"matrix is not symmetric at ({i},{j})")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self):
        return self.n

    def __getitem__(self, idx):
        return self.entries[idx]

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.entries]

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(x[i] * self.entries[i][j] * y[j]
                   for i in range(self.n) for j in range(self.n))

    def __add__(self, other: "SymmetricForm") -> "SymmetricForm":
        return direct_sum(self, other)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"


def direct_sum(*forms: SymmetricForm) -> SymmetricForm:
    n = sum(f.n for f in forms)
    M = [[0] * n for _ in range(n)]
    off = 0
    for f in forms:
        for i in range(f.n):
            for j in range(f.n):
                M[off + i][off + j] = f.entries[i][j]
        off += f.n
    return SymmetricForm(M)


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    det: int
    b_plus: int
    b_minus: int
    b_zero: int
    signature: int
    parity: str
    unimodular: bool
    nondegenerate: bool
    definiteness: str

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ObstructionReport:
    sigma_mod_8: int
    sigma_mod_16: int
    algebraic_ok: bool
    rohlin_smooth_ok: bool
    mu: Optional[int]

    def to_json(self) -> dict:
        return asdict(self)


def determinant(Q) -> int:
    return intmat.bareiss_det(Q.entries if isinstance(Q, SymmetricForm) else Q)


def inertia(Q: SymmetricForm) -> Tuple[int, int, int]:
    """``(b_plus, b_minus, b_zero)`` by symmetric Gaussian elimination over Q.

    Each step is a congruence: a nonzero diagonal pivot splits off a 1x1
    block, otherwise a 2x2 block ``[[0, b], [b, d]]`` with ``b != 0`` splits
    off and contributes one positive and one negative square.
    """
    A = [[Fraction(v) for v in row] for row in Q.entries]
    plus = minus = 0
    while A:
        n = len(A)
        piv = next((i for i in range(n) if A[i][i] != 0), None)
        if piv is not None:
            p = A[piv][piv]
            if p > 0:
                plus += 1
            else:
                minus += 1
            rest = [i for i in range(n) if i != piv]
            A = [[A[i][j] - A[i][piv] * A[piv][j] / p for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if A[i][j] != 0), None)
        if pair is None:
            break
        i0, j0 = pair
        plus += 1
        minus += 1
        b = A[i0][j0]
        # inverse of [[0, b], [b, 0]] (diagonal is zero here)
        rest = [k for k in range(n) if k not in pair]
        new = []
        for r in rest:
            row = []
            for c in rest:
                # C B^{-1} C^T with B^{-1} = [[0, 1/b], [1/b, 0]]
                corr = (A[r][i0] * A[j0][c] + A[r][j0] * A[i0][c]) / b
                row.append(A[r][c] - corr)
            new.append(row)
        A = new
    return plus, minus, Q.n - plus - minus


def form_invariants(Q: SymmetricForm) -> FormInvariants:
    det = determinant(Q)
    bp, bm, b0 = inertia(Q)
    if b0:
        definiteness = "degenerate"
    elif bm == 0:
        definiteness = "positive-definite"
    elif bp == 0:
        definiteness = "negative-definite"
    else:
        definiteness = "indefinite"
    even = all(Q.entries[i][i] % 2 == 0 for i in range(Q.n))
    return FormInvariants(
        rank=Q.n, det=det, b_plus=bp, b_minus=bm, b_zero=b0, signature=bp - bm,
        parity="even" if even else "odd", unimodular=abs(det) == 1,
        nondegenerate=det != 0, definiteness=definiteness)


def verify_congruence(Q: SymmetricForm, Q2: SymmetricForm, A: Sequence[Sequence[int]]) -> bool:
    """Whether ``A^T Q A == Q2`` for a unimodular ``A``."""
    A = [list(map(int, r)) for r in A]
    if len(A) != Q.n or any(len(r) != Q.n for r in A):
        raise FormError(f"basis change must be {Q.n}x{Q.n}")
    if Q.n and abs(intmat.bareiss_det(A)) != 1:
        raise FormError("basis change is not unimodular (det != ±1)")
    if Q2.n != Q.n:
        return False
    return intmat.congruent(Q.tolist(), A) == Q2.tolist()


def slide_matrix(n: int, i: int, j: int, eps: int) -> List[List[int]]:
    A = intmat.identity(n)
    A[j][i] = eps
    return A


def handle_slide(Q: SymmetricForm, i: int, j: int, eps: int):
    """Slide handle ``i`` over handle ``j``: the new ``i``-th class is ``e_i + eps*e_j``.

    Returns the new form and the basis change ``A`` with ``A^T Q A`` equal
    to it.
    """
    n = Q.n
    if i == j:
        raise FormError("cannot slide a handle over itself")
    if not (0 <= i < n and 0 <= j < n):
        raise FormError(f"slide indices ({i}, {j}) out of range for rank {n}")
    if eps not in (1, -1):
        raise FormError("eps must be +1 or -1")
    A = slide_matrix(n, i, j, eps)
    return SymmetricForm(intmat.congruent(Q.tolist(), A)), A


def blow(Q: SymmetricForm, direction: str, sign: int = 1, k: Optional[int] = None) -> SymmetricForm:
    """Blow up (``Q ⊕ <sign>``) or blow down a cleared ``<sign>`` summand at index ``k``."""
    if sign not in (1, -1):
        raise FormError("blow sign must be +1 or -1")
    if direction == "up":
        return direct_sum(Q, SymmetricForm([[sign]]))
    if direction != "down":
        raise FormError(f"unknown blow direction {direction!r}")
    n = Q.n
    if k is None:
        k = n - 1
    if not 0 <= k < n:
        raise FormError(f"blow-down index {k} out of range for rank {n}")
    if Q.entries[k][k] != sign:
        raise FormError(f"diagonal entry {k} is {Q.entries[k][k]}, expected {sign}")
    if any(Q.entries[k][j] for j in range(n) if j != k):
        raise FormError(f"row {k} is not cleared; slide other handles off it first")
    keep = [i for i in range(n) if i != k]
    return SymmetricForm([[Q.entries[i][j] for j in keep] for i in keep])


def obstruction_report(Q: SymmetricForm) -> ObstructionReport:
    inv = form_invariants(Q)
    sigma = inv.signature
    even = inv.parity == "even"
    mu = (sigma // 8) % 2 if even and inv.unimodular else None
    return ObstructionReport(
        sigma_mod_8=sigma % 8,
        sigma_mod_16=sigma % 16,
        algebraic_ok=not (even and inv.unimodular) or sigma % 8 == 0,
        rohlin_smooth_ok=not even or sigma % 16 == 0,
        mu=mu)


def _solve_mod2(M: List[List[int]], rhs: List[int]):
    """Solve ``M x = rhs`` over GF(2); return (particular, nullspace basis)."""
    n = len(M)
    m = len(M[0]) if n else 0
    A = [[M[i][j] & 1 for j in range(m)] + [rhs[i] & 1] for i in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(n):
            if i != r and A[i][c]:
                A[i] = [x ^ y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if any(A[i][m] for i in range(r, n)):
        return None, []
    x = [0] * m
    for i, c in enumerate(pivots):
        x[c] = A[i][m]
    basis = []
    for f in (c for c in range(m) if c not in pivots):
        v = [0] * m
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = A[i][f]
        basis.append(v)
    return x, basis


@dataclass(frozen=True)
class CharacteristicReport:
    is_characteristic: Optional[bool]
    particular: Tuple[int, ...]
    mod2_basis: Tuple[Tuple[int, ...], ...]
    square: Optional[int]
    km_ok: Optional[bool]

    def to_json(self) -> dict:
        return {"is_characteristic": self.is_characteristic,
                "particular": list(self.particular),
                "mod2_basis": [list(b) for b in self.mod2_basis],
                "square": self.square, "km_ok": self.km_ok}


def characteristic_report(Q: SymmetricForm, v: Optional[Sequence[int]] = None) -> CharacteristicReport:
    """Characteristic vectors: ``Q x ≡ diag(Q) (mod 2)``.

    With ``v`` given, also reports ``Q(v, v)`` and whether it is ``≡ 0 mod 16``
    (the sphere obstruction for characteristic classes).
    """
    n = Q.n
    diag = [Q.entries[i][i] for i in range(n)]
    part, basis = _solve_mod2(Q.tolist(), diag)
    if part is None:
        raise AssertionError("diagonal of a symmetric matrix is always in its mod-2 image")
    is_char = square = km_ok = None
    if v is not None:
        if len(v) != n:
            raise FormError(f"vector has length {len(v)}, form has rank {n}")
        Qv = [sum(Q.entries[i][j] * v[j] for j in range(n)) for i in range(n)]
        is_char = all((Qv[i] - diag[i]) % 2 == 0 for i in range(n))
        square = Q.pair(v, v)
        km_ok = square % 16 == 0
    return CharacteristicReport(is_char, tuple(part), tuple(tuple(b) for b in basis), square, km_ok)


@dataclass(frozen=True)
class FormLabel:
    """Normal form ``p<1> + q<-1>`` (odd) or ``a H + b E8`` (even)."""

    parity: str
    p: int = 0
    q: int = 0
    a: int = 0
    b: int = 0

    def __str__(self):
        if self.parity == "odd":
            return f"{self.p}<1> + {self.q}<-1>"
        return f"{self.a}H + {self.b}E8"

    def representative(self) -> SymmetricForm:
        if self.parity == "odd":
            return standard_form("diag", [1] * self.p + [-1] * self.q)
        e8 = SymmetricForm(E8_MATRIX)
        if self.b < 0:
            e8 = SymmetricForm([[-x for x in r] for r in E8_MATRIX])
        parts = [SymmetricForm(HYPERBOLIC)] * self.a + [e8] * abs(self.b)
        return direct_sum(*parts) if parts else SymmetricForm([])

    def to_json(self) -> dict:
        d = {"label": str(self), "parity": self.parity}
        if self.parity == "odd":
            d.update(p=self.p, q=self.q)
        else:
            d.update(a=self.a, b=self.b)
        return d


def classify_indefinite_unimodular(Q: SymmetricForm) -> FormLabel:
    inv = form_invariants(Q)
    if not inv.unimodular:
        raise FormError(f"form is not unimodular (det {inv.det})")
    if inv.definiteness != "indefinite":
        raise FormError(f"form is {inv.definiteness}; classification needs an indefinite form")
    if inv.parity == "odd":
        return FormLabel("odd", p=inv.b_plus, q=inv.b_minus)
    b = inv.signature // 8
    return FormLabel("even", a=min(inv.b_plus, inv.b_minus), b=b)


def recognise_e8(Q: SymmetricForm) -> Optional[str]:
    """``"E8"``/``"-E8"`` when the invariants force it, else ``None``.

    Relies on uniqueness of the even unimodular definite rank-8 lattice.
    """
    inv = form_invariants(Q)
    if inv.rank == 8 and inv.unimodular and inv.parity == "even" and abs(inv.signature) == 8:
        return "E8" if inv.signature > 0 else "-E8"
    return None


def orthogonal_complement(Q: SymmetricForm, v: Sequence[int]) -> Tuple[SymmetricForm, List[List[int]]]:
    """Gram matrix of ``{x : Q(x, v) = 0}`` and the basis used (as columns)."""
    n = Q.n
    if len(v) != n:
        raise FormError(f"vector has length {len(v)}, form has rank {n}")
    if not any(v):
        raise FormError("orthogonal complement of the zero vector is not supported")
    w = [[sum(Q.entries[i][j] * v[j] for j in range(n)) for i in range(n)]]
    B = intmat.kernel_basis(w) if any(w[0]) else intmat.identity(n)
    return SymmetricForm(intmat.congruent(Q.tolist(), B)), B


def standard_form(name: str, entries: Optional[Sequence[int]] = None) -> SymmetricForm:
    key = name.strip()
    if key.upper() == "E8":
        return SymmetricForm(E8_MATRIX)
    if key.upper() == "H":
        return SymmetricForm(HYPERBOLIC)
    if key.lower() == "diag":
        vals = list(entries or [])
        return SymmetricForm([[vals[i] if i == j else 0 for j in range(len(vals))]
                              for i in range(len(vals))])
    raise FormError(f"unknown standard form {name!r}")
