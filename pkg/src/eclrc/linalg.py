"""Exact Gaussian elimination over GF(q).

Matrices are lists of rows of field indices.  Pivoting always takes the first
column with a nonzero entry and, within it, the lowest-numbered row, so bases
and solutions are reproducible.
"""
from __future__ import annotations

from .gf import FieldSpec


def rref(F: FieldSpec, rows, ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(matrix, pivot_columns)``."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    prow = 0
    for col in range(ncols):
        if prow >= len(m):
            break
        piv = next((i for i in range(prow, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[prow], m[piv] = m[piv], m[prow]
        inv_p = F.inv(m[prow][col])
        m[prow] = [F.mul(v, inv_p) for v in m[prow]]
        pr = m[prow]
        for i in range(len(m)):
            if i != prow and m[i][col]:
                f = m[i][col]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], pr)]
        pivots.append(col)
        prow += 1
    return m, pivots


def rank(F: FieldSpec, rows) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: FieldSpec, rows, ncols: int) -> list[list[int]]:
    """Basis of {v : rows * v = 0}, one vector per free column (free entry = 1)."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(m[r][fc])
        basis.append(v)
    return basis


def solve(F: FieldSpec, A, b):
    """A solution of A x = b, or None when the system is inconsistent.

    The returned vector sets free variables to zero; uniqueness is the
    caller's business (compare ``rank(A)`` with the column count).
    """
    ncols = len(A[0])
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    m, pivots = rref(F, aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x


def det(F: FieldSpec, A) -> int:
    m = [list(r) for r in A]
    n = len(m)
    d = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = F.neg(d)
        d = F.mul(d, m[col][col])
        inv_p = F.inv(m[col][col])
        for i in range(col + 1, n):
            if m[i][col]:
                f = F.mul(m[i][col], inv_p)
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[col])]
    return d


def inverse(F: FieldSpec, A):
    n = len(A)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    m, pivots = rref(F, aug, n)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in m]


def matmul(F: FieldSpec, A, B):
    cols = list(zip(*B))
    return [[F.dot(row, col) for col in cols] for row in A]
