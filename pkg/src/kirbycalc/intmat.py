"""Exact integer matrix helpers.

Matrices are plain lists of rows of Python ints.  Nothing here touches
floating point; every routine is exact at any entry size.
"""

from __future__ import annotations

from typing import List, Sequence

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int) -> Matrix:
    return [[0] * m for _ in range(n)]


def copy(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in M]


def transpose(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(A[0])
    if inner != len(B):
        raise ValueError(f"shape mismatch: {len(A)}x{inner} times {len(B)}x?")
    if inner == 0:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def congruent(Q: Sequence[Sequence[int]], A: Sequence[Sequence[int]]) -> Matrix:
    """Return ``A^T Q A``."""
    return matmul(matmul(transpose(A, len(A[0]) if A else 0), Q), A)


def bareiss_det(M, one=1, zero=0):
    """Determinant by fraction-free (Bareiss) elimination.

    Works over any commutative ring whose elements support ``+ - *`` and an
    exact ``//`` (Python ints, :class:`~kirbycalc.laurent.LaurentPoly`).
    ``one``/``zero`` are that ring's identities, returned for the empty
    matrix and used for pivot tests.
    """
    n = len(M)
    if n == 0:
        return one
    A = [list(row) for row in M]
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = one
    for k in range(n - 1):
        if A[k][k] == zero:
            for r in range(k + 1, n):
                if A[r][k] != zero:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (pivot * A[i][j] - A[i][k] * A[k][j]) // prev
            A[i][k] = zero
        prev = pivot
    det = A[n - 1][n - 1]
    return det if sign == 1 else -det


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Smith normal form ``S = U M V`` with ``U``, ``V`` unimodular.

    Returns ``(S, U, V)``.  Diagonal entries of ``S`` are nonnegative and
    form a divisibility chain.  Reduction pivots on the entry of least
    absolute value in the remaining block.
    """
    n = len(M)
    m = len(M[0]) if n else 0
    S = copy(M)
    U = identity(n)
    V = identity(m)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        S[dst] = [x + c * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in S:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(n, m)):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, m):
                    if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = S[t][t]
            clean = True
            for i in range(t + 1, n):
                q = S[i][t] // p
                if q:
                    add_row(t, i, -q)
                if S[i][t]:
                    clean = False
            for j in range(t + 1, m):
                q = S[t][j] // p
                if q:
                    add_col(t, j, -q)
                if S[t][j]:
                    clean = False
            if not clean:
                continue
            # pivot must divide the whole remaining block
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, m)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if best is None:
            break
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]

    if matmul(matmul(U, M), V) != S:
        raise ArithmeticError("Smith normal form failed its U*M*V == S self-check")
    return S, U, V


def invariant_factors(M: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero diagonal of the Smith normal form."""
    S, _, _ = smith_normal_form(M)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i]]


def rank(M: Sequence[Sequence[int]]) -> int:
    if not M or not M[0]:
        return 0
    return len(invariant_factors(M))


def kernel_basis(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis of the integer kernel ``{x : M x = 0}`` as matrix columns.

    The returned lattice is saturated: it is cut out of ``Z^m`` by a
    unimodular change of coordinates, so ``Z^m / ker`` is torsion-free.
    ``ncols`` gives the column count when ``M`` has no rows.
    """
    m = len(M[0]) if M else (ncols or 0)
    if not M:
        return identity(m)
    S, _, V = smith_normal_form(M)
    r = sum(1 for i in range(min(len(S), m)) if S[i][i])
    return [row[r:] for row in V]


def is_unimodular(A: Sequence[Sequence[int]]) -> bool:
    return len(A) == (len(A[0]) if A else 0) and abs(bareiss_det(A)) == 1
