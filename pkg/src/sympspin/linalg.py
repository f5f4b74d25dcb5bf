"""Small dense exact linear algebra over Q(i): row reduction, kernels, ranks."""

from __future__ import annotations

from .exactnum import GaussianRational, ZERO, ONE


def rref(rows):
    """Reduced row echelon form; returns (new_rows, pivot_column_list)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def null_space(rows, ncols):
    """Basis of the kernel of the matrix (rows of length ncols), canonical
    free-variable form: each vector has a 1 in its free column."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [ZERO] * ncols
        vec[fc] = ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    return basis


def rank(rows):
    _, pivots = rref(rows)
    return len(pivots)
