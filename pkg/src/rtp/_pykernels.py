"""Pure-Python integer kernels.

Mirrors ``_ckernels.pyx`` exactly, including the order in which minors are
visited, so either backend reports the same witness.
"""
from itertools import combinations


def det_int(rows):
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            mik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - mik * rk[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def first_negative_minor(rows, r):
    """First negative minor of order <= r in (order, rows, cols) lex order.

    Returns ``(row_indices, col_indices, value)`` or ``None``.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    for k in range(1, min(r, nr, nc) + 1):
        col_sets = list(combinations(range(nc), k))
        for rs in combinations(range(nr), k):
            sub_rows = [rows[i] for i in rs]
            for cs in col_sets:
                if k == 1:
                    v = sub_rows[0][cs[0]]
                else:
                    v = det_int([[row[j] for j in cs] for row in sub_rows])
                if v < 0:
                    return rs, cs, v
    return None


def count_minors(nr, nc, r):
    from math import comb
    return sum(comb(nr, k) * comb(nc, k) for k in range(1, min(r, nr, nc) + 1))
