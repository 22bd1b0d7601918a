"""Dense linear algebra over F_p on int64 numpy arrays.

Entries stay in [0, p) with p < 2**31, so a single product fits in int64.
"""

import numpy as np

from fcompat.poly import inverse_mod


def rref(A, p):
    """Row-reduced echelon form of A mod p; returns (R, pivot columns)."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape if M.ndim == 2 else (0, 0)
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = inverse_mod(int(M[r, c]), p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A, p):
    return len(rref(A, p)[1])


def nullspace(A, p, ncols=None):
    """Basis (list of int64 vectors) of {v : A v = 0} over F_p."""
    A = np.array(A, dtype=np.int64)
    if A.size == 0:
        n = ncols if ncols is not None else (A.shape[1] if A.ndim == 2 else 0)
        return [np.eye(n, dtype=np.int64)[i] for i in range(n)]
    R, pivots = rref(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-R[i, f]) % p
        basis.append(v)
    return basis


def row_space(vectors, p, n):
    """Reduced basis of the span of ``vectors`` (each length n)."""
    if not len(vectors):
        return np.zeros((0, n), dtype=np.int64)
    R, _ = rref(np.array(vectors, dtype=np.int64), p)
    return R


def same_span(U, V, p, n) -> bool:
    a = row_space(U, p, n)
    b = row_space(V, p, n)
    return a.shape == b.shape and np.array_equal(a, b)


def in_span(v, U, p, n) -> bool:
    base = row_space(U, p, n)
    ext = row_space(list(base) + [np.asarray(v, dtype=np.int64)], p, n)
    return ext.shape[0] == base.shape[0]
