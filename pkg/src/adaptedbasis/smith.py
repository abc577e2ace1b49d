"""Smith normal form over the integers.

Entries are Python integers held in ``dtype=object`` arrays, so nothing can
overflow.  Elimination always pivots on the smallest non-zero absolute
value in the remaining block; row operations accumulate in ``U`` and
column operations in ``V``.
"""

from __future__ import annotations

import numpy as np


def _as_int_matrix(m) -> np.ndarray:
    a = np.array(m, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    if a.ndim != 2:
        raise ValueError("expected a two-dimensional integer matrix")
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = int(x)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def smith_normal_form(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D``.

    ``D`` is diagonal with non-negative entries ``d1 | d2 | ...`` and ``U``,
    ``V`` are unimodular.
    """
    D = _as_int_matrix(m)
    rows, cols = D.shape
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        if i != j:
            D[[i, j]] = D[[j, i]]
            U[[i, j]] = U[[j, i]]

    def swap_cols(i, j):
        if i != j:
            D[:, [i, j]] = D[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = D[i, j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return U, D, V
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t, t]
            dirty = False
            for i in range(t + 1, rows):
                q = D[i, t] // p
                if q:
                    D[i] -= q * D[t]
                    U[i] -= q * U[t]
                if D[i, t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = D[t, j] // p
                if q:
                    D[:, j] -= q * D[:, t]
                    V[:, j] -= q * V[:, t]
                if D[t, j]:
                    dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if D[i, j] % p),
                None,
            )
            if bad is None:
                break
            D[t] += D[bad[0]]
            U[t] += U[bad[0]]
        if D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]
    return U, D, V


def diagonal(D: np.ndarray) -> list[int]:
    return [int(D[i, i]) for i in range(min(D.shape))]


def det(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in row] for row in np.asarray(m, dtype=object)]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
