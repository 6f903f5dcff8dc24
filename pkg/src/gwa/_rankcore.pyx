# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free elimination kernels; twin of `gwa._rankcore_py`.

The arithmetic stays on Python big integers (entries are minors and can
exceed machine words), but the loop bookkeeping and indexing run at C speed,
which is where the pure-Python version spends most of its time.
"""

IMPLEMENTATION = "cython"


def echelon_int(rows, Py_ssize_t ncols):
    """Fraction-free row echelon of an integer matrix.

    Returns (rank, pivot_columns, echelon_rows).
    """
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nr = len(m)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, col, i, j, best
    cdef list row_i, row_r
    prev = 1
    for col in range(ncols):
        if r == nr:
            break
        best = -1
        best_abs = 0
        for i in range(r, nr):
            v = (<list>m[i])[col]
            if v:
                av = -v if v < 0 else v
                if best < 0 or av < best_abs:
                    best = i
                    best_abs = av
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        row_r = <list>m[r]
        piv = row_r[col]
        for i in range(r + 1, nr):
            row_i = <list>m[i]
            f = row_i[col]
            if f:
                for j in range(col, ncols):
                    row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
            elif piv != prev:
                for j in range(col, ncols):
                    row_i[j] = (piv * row_i[j]) // prev
        pivots.append(col)
        prev = piv
        r += 1
    return r, pivots, m[:r]


def rank_int(rows, Py_ssize_t ncols):
    return echelon_int(rows, ncols)[0]


cdef inline tuple _quad_mul(a0, a1, b0, b1, b, c):
    t = a1 * b1
    return (a0 * b0 - c * t, a0 * b1 + a1 * b0 - b * t)


cdef inline tuple _quad_divexact(u0, u1, v0, v1, b, c):
    n = v0 * v0 - b * v0 * v1 + c * v1 * v1
    w = _quad_mul(u0, u1, v0 - b * v1, -v1, b, c)
    return (w[0] // n, w[1] // n)


def echelon_quad(rows, Py_ssize_t ncols, b, c):
    """Fraction-free row echelon over Z[z]/(z^2 + b z + c); entries (a0, a1)."""
    cdef list m = [[(e[0], e[1]) for e in row] for row in rows]
    cdef Py_ssize_t nr = len(m)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, col, i, j, best
    cdef list row_i, row_r
    cdef bint trivial_prev
    prev = (1, 0)
    for col in range(ncols):
        if r == nr:
            break
        best = -1
        best_size = 0
        for i in range(r, nr):
            e = (<list>m[i])[col]
            v0 = (<tuple>e)[0]
            v1 = (<tuple>e)[1]
            if v0 or v1:
                size = abs(v0) + abs(v1)
                if best < 0 or size < best_size:
                    best = i
                    best_size = size
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        row_r = <list>m[r]
        piv = row_r[col]
        p0 = (<tuple>piv)[0]
        p1 = (<tuple>piv)[1]
        q0 = (<tuple>prev)[0]
        q1 = (<tuple>prev)[1]
        trivial_prev = q0 == 1 and q1 == 0
        for i in range(r + 1, nr):
            row_i = <list>m[i]
            e = row_i[col]
            f0 = (<tuple>e)[0]
            f1 = (<tuple>e)[1]
            if f0 or f1:
                for j in range(col, ncols):
                    ex = <tuple>row_i[j]
                    ey = <tuple>row_r[j]
                    tt = _quad_mul(p0, p1, ex[0], ex[1], b, c)
                    ss = _quad_mul(f0, f1, ey[0], ey[1], b, c)
                    t0 = tt[0] - ss[0]
                    t1 = tt[1] - ss[1]
                    if not trivial_prev:
                        dd = _quad_divexact(t0, t1, q0, q1, b, c)
                        row_i[j] = dd
                    else:
                        row_i[j] = (t0, t1)
            elif p0 != q0 or p1 != q1:
                for j in range(col, ncols):
                    ex = <tuple>row_i[j]
                    tt = _quad_mul(p0, p1, ex[0], ex[1], b, c)
                    if not trivial_prev:
                        row_i[j] = _quad_divexact(tt[0], tt[1], q0, q1, b, c)
                    else:
                        row_i[j] = tt
        pivots.append(col)
        prev = piv
        r += 1
    return r, pivots, m[:r]


def rank_quad(rows, Py_ssize_t ncols, b, c):
    return echelon_quad(rows, ncols, b, c)[0]
