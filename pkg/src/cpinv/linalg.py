"""Dense exact linear algebra over any field whose elements support + - * /
and truthiness (Fraction, NFElem).

Matrices are lists of rows.  Nothing here allocates shared state.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

Matrix = list[list[Any]]


def _inv(x: Any) -> Any:
    if isinstance(x, int):
        return Fraction(1, x)
    if isinstance(x, Fraction):
        return 1 / x
    return x.inverse()


def rref(rows: Sequence[Sequence[Any]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return [], []
    ncols = len(A[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = _inv(A[r][c])
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def nullspace(rows: Sequence[Sequence[Any]], ncols: int, zero: Any, one: Any) -> Matrix:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    R, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(R, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence[Any]]) -> int:
    return len(rref(rows)[1]) if rows else 0


def solve(A: Sequence[Sequence[Any]], b: Sequence[Any]) -> list[Any] | None:
    """One solution of A v = b, or None when inconsistent."""
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    zero = b[0] - b[0]
    v = [zero] * n
    for row, p in zip(R, pivots):
        v[p] = row[n]
    return v


def _det_expand(A: Sequence[Sequence[Any]], rows: tuple[int, ...], col: int, zero: Any) -> Any:
    if len(rows) == 1:
        return A[rows[0]][col]
    acc = zero
    for k, r in enumerate(rows):
        a = A[r][col]
        if a:
            minor = _det_expand(A, rows[:k] + rows[k + 1:], col + 1, zero)
            if minor:
                acc = acc + a * minor if k % 2 == 0 else acc - a * minor
    return acc


def det(M: Sequence[Sequence[Any]]) -> Any:
    """Determinant; cofactor expansion (no divisions) up to 4 x 4, elimination above."""
    A = [list(r) for r in M]
    n = len(A)
    if n <= 4:
        return _det_expand(A, tuple(range(n)), 0, A[0][0] - A[0][0])
    zero = A[0][0] - A[0][0]
    result = zero + 1
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return zero
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        piv = A[c][c]
        result = result * piv
        inv = _inv(piv)
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return result


def matmul(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> Matrix:
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            acc = None
            for x, y in zip(row, col):
                if x and y:
                    acc = x * y if acc is None else acc + x * y
            out_row.append(acc if acc is not None else row[0] - row[0])
        out.append(out_row)
    return out


def transpose(A: Sequence[Sequence[Any]]) -> Matrix:
    return [list(c) for c in zip(*A)]


def charpoly(M: Sequence[Sequence[Any]]) -> list[Any]:
    """Characteristic polynomial det(X I - M), constant term first, monic.

    Reduces to upper Hessenberg form by similarity, then runs the usual
    three-term recurrence on the leading principal blocks.
    """
    A = [list(r) for r in M]
    n = len(A)
    zero = A[0][0] - A[0][0]
    one = zero + 1
    for m in range(1, n - 1):
        p = next((i for i in range(m, n) if A[i][m - 1]), None)
        if p is None:
            continue
        if p != m:
            A[m], A[p] = A[p], A[m]
            for row in A:
                row[m], row[p] = row[p], row[m]
        piv = A[m][m - 1]
        inv = _inv(piv)
        for i in range(m + 1, n):
            if A[i][m - 1]:
                f = A[i][m - 1] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[m])]
                for row in A:
                    row[m] = row[m] + f * row[i]
    # p_k = characteristic polynomial of the leading k x k block
    polys: list[list[Any]] = [[one]]
    for k in range(1, n + 1):
        a = A[k - 1][k - 1]
        prev = polys[k - 1]
        pk = [zero] + prev  # X * p_{k-1}
        for i, c in enumerate(prev):
            pk[i] = pk[i] - a * c
        prod = one
        for i in range(1, k):
            prod = prod * A[k - i][k - i - 1]
            h = A[k - i - 1][k - 1]
            if not (prod and h):
                if not prod:
                    break
                continue
            coef = h * prod
            for j, c in enumerate(polys[k - i - 1]):
                pk[j] = pk[j] - coef * c
        polys.append(pk)
    return polys[n]


def identity(n: int, zero: Any, one: Any) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def inverse(M: Sequence[Sequence[Any]]) -> Matrix | None:
    n = len(M)
    zero = M[0][0] - M[0][0]
    one = zero + 1
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, n)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in R]
