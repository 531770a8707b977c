"""Exact linear algebra over a Field.

Sparse rows are dicts ``column -> value``; dense matrices are lists of rows.
"""
from __future__ import annotations


def sparse_rank(rows, field) -> int:
    """Rank of a list of sparse rows (echelon form by leading column)."""
    p = field.p
    pivots = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c0 = min(r)
            piv = pivots.get(c0)
            if piv is None:
                inv = field.inv(r[c0])
                pivots[c0] = {c: field.reduce(v * inv) for c, v in r.items()}
                break
            f = r[c0]
            for c, v in piv.items():
                nv = r.get(c, 0) - f * v
                if p:
                    nv %= p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return len(pivots)


def sparse_echelon(rows, field):
    """Echelon basis {leading column: normalized row} of the row span."""
    p = field.p
    pivots = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c0 = min(r)
            piv = pivots.get(c0)
            if piv is None:
                inv = field.inv(r[c0])
                pivots[c0] = {c: field.reduce(v * inv) for c, v in r.items()}
                break
            f = r[c0]
            for c, v in piv.items():
                nv = r.get(c, 0) - f * v
                if p:
                    nv %= p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return pivots


def zeros(m, n, field):
    z = field.zero
    return [[z] * n for _ in range(m)]


def identity(n, field):
    out = zeros(n, n, field)
    for i in range(n):
        out[i][i] = field.one
    return out


def transpose(A, nrows=None, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B, field, inner=None):
    """A (m x k) times B (k x n); ``inner`` gives k when A has no columns info."""
    if not A:
        return []
    k = len(A[0]) if A[0] is not None else inner
    n = len(B[0]) if B else 0
    red = field.reduce
    out = []
    for row in A:
        acc = [field.zero] * n
        for t, a in enumerate(row):
            if a:
                brow = B[t]
                for j in range(n):
                    b = brow[j]
                    if b:
                        acc[j] += a * b
        out.append([red(v) for v in acc])
    return out


def rref(A, field):
    """Reduced row echelon form; returns (R, pivot columns)."""
    R = [list(r) for r in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivcols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = field.inv(R[r][c])
        R[r] = [field.reduce(v * inv) for v in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [field.reduce(a - f * b) for a, b in zip(R[i], R[r])]
        pivcols.append(c)
        r += 1
        if r == m:
            break
    return R, pivcols


def rank(A, field) -> int:
    if not A or not A[0]:
        return 0
    return sparse_rank([{j: v for j, v in enumerate(row) if v} for row in A], field)


def nullspace(A, ncols, field):
    """Basis (list of column vectors) of {v : A v = 0}."""
    if not A:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(A, field)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, c in enumerate(piv):
            v[c] = field.neg(R[i][f])
        basis.append(v)
    return basis


def inverse(A, field):
    n = len(A)
    aug = [list(row) + ident for row, ident in zip(A, identity(n, field))]
    R, piv = rref(aug, field)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def is_zero_matrix(A) -> bool:
    return all(not v for row in A for v in row)
