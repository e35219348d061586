"""Small exact linear algebra over Q (Fraction) and over F_p (ints mod p)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence


def _row_echelon(rows: Sequence[Sequence], p: int = 0):
    """Gauss-Jordan elimination. Returns (reduced matrix, pivot columns, swap parity)."""
    M = [list(r) if p else [Fraction(x) for x in r] for r in rows]
    if not M:
        return M, [], 1
    ncols = len(M[0])
    pivots = []
    sign = 1
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(M)):
            if M[i][c] % p if p else M[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            M[r], M[pr] = M[pr], M[r]
            sign = -sign
        piv = M[r][c]
        inv = pow(piv, -1, p) if p else 1 / piv
        M[r] = [(x * inv) % p if p else x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r:
                f = M[i][c]
                if f:
                    M[i] = [((a - f * b) % p if p else a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots, sign


def rank(rows: Sequence[Sequence], p: int = 0) -> int:
    if not rows:
        return 0
    return len(_row_echelon(rows, p)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of {v : rows @ v = 0} over Q."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    M, pivots, _ = _row_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][f]
        basis.append(v)
    return basis


def det(matrix: Sequence[Sequence], p: int = 0):
    """Determinant; exact Fraction over Q, int in [0, p) over F_p."""
    n = len(matrix)
    if n == 0:
        return 1
    M = [list(r) if p else [Fraction(x) for x in r] for r in matrix]
    result = 1 if p else Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if (M[i][c] % p if p else M[i][c]) != 0), None)
        if pr is None:
            return 0 if p else Fraction(0)
        if pr != c:
            M[c], M[pr] = M[pr], M[c]
            result = -result
        piv = M[c][c]
        result = result * piv % p if p else result * piv
        inv = pow(piv, -1, p) if p else 1 / piv
        for i in range(c + 1, n):
            f = M[i][c] * inv
            if f % p if p else f:
                M[i] = [((a - f * b) % p if p else a - f * b) for a, b in zip(M[i], M[c])]
    return result % p if p else result


def inverse(matrix: Sequence[Sequence], p: int = 0) -> Optional[List[list]]:
    """Inverse matrix, or None when singular."""
    n = len(matrix)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    M, pivots, _ = _row_echelon(aug, p)
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] >= n:
        return None
    return [row[n:] for row in M[:n]]


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[List[Fraction]]:
    """Unique solution of a square system over Q, or None."""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    M, pivots, _ = _row_echelon(aug)
    if len(pivots) != n or pivots[-1] >= n:
        return None
    return [M[i][n] for i in range(n)]
