"""Small exact linear algebra over Q and over prime fields."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def row_echelon_mod_p(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p.  Returns (nonzero rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    if not rows or not rows[0]:
        return 0
    return len(row_echelon_mod_p(rows, p)[1])


def affine_solution_count(rows: list[list[int]], rhs: list[int], p: int, nvars: int) -> int:
    """Number of x in F_p^nvars with rows @ x == rhs."""
    if not rows:
        return p ** nvars
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    _, pivots = row_echelon_mod_p(aug, p)
    if pivots and pivots[-1] == nvars:
        return 0
    return p ** (nvars - len(pivots))


def rank_q(rows: Sequence[Sequence[int | Fraction]]) -> int:
    """Rank over the rationals."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    rank = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def columns(matrix: Matrix, idx) -> list[list[int]]:
    """Sub-matrix formed by the given column indices."""
    return [[row[j] for j in idx] for row in matrix]


def integer_kernel_basis(matrix: Matrix) -> list[list[int]]:
    """Integer row vectors spanning the right kernel of ``matrix`` over Q."""
    ncols = len(matrix[0]) if matrix else 0
    m = [[Fraction(x) for x in r] for r in matrix]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][free]
        den = lcm(*(x.denominator for x in vec))
        ints = [int(x * den) for x in vec]
        g = 0
        for x in ints:
            g = gcd(g, x)
        basis.append([x // g for x in ints])
    return basis


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def maximal_minors(matrix: Matrix) -> list[int]:
    d = len(matrix)
    n = len(matrix[0]) if d else 0
    return [det_int(columns(matrix, idx)) for idx in combinations(range(n), d)]
