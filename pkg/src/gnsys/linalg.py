"""Exact integer and rational matrix routines.

Matrices are tuples of row tuples holding ``int`` or ``Fraction`` entries.
Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple  # tuple[tuple[int | Fraction, ...], ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    Bt = tuple(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def mat_vec(A: Matrix, v: Sequence) -> tuple:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(c, A: Matrix) -> Matrix:
    return tuple(tuple(c * a for a in row) for row in A)


def inf_norm(A: Matrix):
    """Induced infinity norm: the largest absolute row sum."""
    return max((sum(abs(a) for a in row) for row in A), default=0)


def det(A: Matrix) -> int | Fraction:
    """Determinant by fraction-free Bareiss elimination (exact for ints)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    if any(isinstance(x, Fraction) for r in M for x in r):
        return _det_fraction(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def _det_fraction(M: list[list]) -> Fraction:
    n = len(M)
    M = [[Fraction(x) for x in r] for r in M]
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            result = -result
        result *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return result


def inverse(A: Matrix) -> Matrix:
    """Rational inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[k], M[piv] = M[piv], M[k]
        p = M[k][k]
        M[k] = [x / p for x in M[k]]
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k]
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return tuple(tuple(_demote(x) for x in row[n:]) for row in M)


def integer_inverse(U: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    inv = inverse(U)
    if any(isinstance(x, Fraction) for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return inv


def _demote(x: Fraction) -> int | Fraction:
    return x.numerator if x.denominator == 1 else x


def charpoly(A: Matrix) -> tuple[int, ...]:
    """Coefficients of det(xI - A), lowest degree first.

    Berkowitz's algorithm: division free, so integer input stays integral.
    """
    n = len(A)
    if n == 0:
        return (1,)
    coeffs = [1, -A[0][0]]  # highest degree first while building
    for r in range(1, n):
        sub = [row[:r] for row in A[:r]]
        row_r = A[r][:r]
        col_r = [A[i][r] for i in range(r)]
        toeplitz = [1, -A[r][r]]
        vec = col_r
        for _ in range(r):
            toeplitz.append(-sum(a * b for a, b in zip(row_r, vec)))
            vec = [sum(a * b for a, b in zip(srow, vec)) for srow in sub]
        new = []
        for i in range(r + 2):
            new.append(sum(toeplitz[i - j] * coeffs[j] for j in range(max(0, i - r - 1), min(i, r) + 1)))
        coeffs = new
    return tuple(reversed(coeffs))


def smith_normal_form(A: Matrix) -> tuple[Matrix, tuple[int, ...], Matrix]:
    """Return ``(U, diag, V)`` with ``U * A * V`` diagonal and unimodular U, V.

    The diagonal entries are non-negative and each divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(r) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):  # col_dst += c * col_src
        for row in M:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            piv = M[t][t]
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(t, i, -(M[i][t] // piv))
                    clean &= M[i][t] == 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(t, j, -(M[t][j] // piv))
                    clean &= M[t][j] == 0
            if not clean:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            U[t] = [-a for a in U[t]]
    diag = tuple(M[i][i] for i in range(min(m, n)))
    return as_matrix(U), diag, as_matrix(V)
