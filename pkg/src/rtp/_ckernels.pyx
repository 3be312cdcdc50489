# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels: Bareiss determinants and minor scans.

Minors are visited in the same (order, rows, cols) lexicographic order as
``_pykernels``. When every minor of order <= r is provably bounded by 2**62
the scan runs on int64 with __int128 intermediate products; otherwise it
falls back to Python integers inside compiled loops.
"""
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    typedef __int128 rtp_i128;
    """
    ctypedef long long rtp_i128

cdef enum:
    MAXK = 16
cdef int64_t LIMIT = (<int64_t>1) << 62


cdef int64_t _det_small(int64_t *a, int k) nogil:
    # a is a k*k row-major scratch buffer, destroyed.
    cdef int i, j, p, s
    cdef int sign = 1
    cdef int64_t prev = 1, pivot, tmp
    cdef rtp_i128 num
    if k == 1:
        return a[0]
    for p in range(k - 1):
        if a[p * k + p] == 0:
            s = -1
            for i in range(p + 1, k):
                if a[i * k + p] != 0:
                    s = i
                    break
            if s < 0:
                return 0
            for j in range(k):
                tmp = a[p * k + j]
                a[p * k + j] = a[s * k + j]
                a[s * k + j] = tmp
            sign = -sign
        pivot = a[p * k + p]
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                num = (<rtp_i128>a[i * k + j]) * pivot - (<rtp_i128>a[i * k + p]) * a[p * k + j]
                a[i * k + j] = <int64_t>(num / prev)
        prev = pivot
    return sign * a[k * k - 1]


cpdef object det_int(list rows):
    """Determinant of a square integer matrix by Bareiss elimination."""
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k
    if n == 0:
        return 1
    cdef list m = [list(r) for r in rows]
    cdef int sign = 1
    cdef object prev = 1, pivot, mik
    cdef list rk, ri
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = <list>m[k]
        pivot = rk[k]
        for i in range(k + 1, n):
            ri = <list>m[i]
            mik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - mik * rk[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


cdef bint _next_comb(int *c, int k, int n) nogil:
    cdef int i = k - 1
    while i >= 0 and c[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for i in range(i + 1, k):
        c[i] = c[i - 1] + 1
    return True


cdef bint _fits_int64(list rows, int k):
    cdef object big = 0, v
    for row in rows:
        for v in row:
            if v < 0:
                v = -v
            if v > big:
                big = v
    return (big * k) ** k <= LIMIT


cdef object _scan_native(list rows, int nr, int nc, int r):
    cdef int64_t *mat = <int64_t *>malloc(nr * nc * sizeof(int64_t))
    cdef int64_t buf[MAXK * MAXK]
    cdef int rc[MAXK]
    cdef int cc[MAXK]
    cdef int i, j, k
    cdef int64_t v
    cdef bint more_r, more_c
    try:
        for i in range(nr):
            for j in range(nc):
                mat[i * nc + j] = rows[i][j]
        for k in range(1, min(r, min(nr, nc)) + 1):
            for i in range(k):
                rc[i] = i
            more_r = True
            while more_r:
                for i in range(k):
                    cc[i] = i
                more_c = True
                while more_c:
                    for i in range(k):
                        for j in range(k):
                            buf[i * k + j] = mat[rc[i] * nc + cc[j]]
                    v = _det_small(buf, k)
                    if v < 0:
                        return (tuple(rc[i] for i in range(k)),
                                tuple(cc[i] for i in range(k)), v)
                    more_c = _next_comb(cc, k, nc)
                more_r = _next_comb(rc, k, nr)
        return None
    finally:
        free(mat)


cdef object _scan_object(list rows, int nr, int nc, int r):
    cdef int rc[MAXK]
    cdef int cc[MAXK]
    cdef int i, j, k
    cdef bint more_r, more_c
    cdef object v
    cdef list sub
    for k in range(1, min(r, min(nr, nc)) + 1):
        for i in range(k):
            rc[i] = i
        more_r = True
        while more_r:
            for i in range(k):
                cc[i] = i
            more_c = True
            while more_c:
                if k == 1:
                    v = rows[rc[0]][cc[0]]
                else:
                    sub = [[rows[rc[i]][cc[j]] for j in range(k)] for i in range(k)]
                    v = det_int(sub)
                if v < 0:
                    return (tuple(rc[i] for i in range(k)),
                            tuple(cc[i] for i in range(k)), v)
                more_c = _next_comb(cc, k, nc)
            more_r = _next_comb(rc, k, nr)
    return None


def first_negative_minor(rows, int r):
    """First negative minor of order <= r in (order, rows, cols) lex order.

    Returns ``(row_indices, col_indices, value)`` or ``None``.
    """
    cdef list rl = [list(row) for row in rows]
    cdef int nr = len(rl)
    cdef int nc = len(rl[0]) if nr else 0
    cdef int kmax = min(r, min(nr, nc))
    if kmax <= 0:
        return None
    if kmax > MAXK:
        from rtp._pykernels import first_negative_minor as slow
        return slow(rl, r)
    if _fits_int64(rl, kmax):
        return _scan_native(rl, nr, nc, kmax)
    return _scan_object(rl, nr, nc, kmax)


def count_minors(nr, nc, r):
    from math import comb
    return sum(comb(nr, k) * comb(nc, k) for k in range(1, min(r, nr, nc) + 1))
