"""Pure-Python fraction-free elimination kernels.

`gwa._rankcore` is the compiled twin of this module; `gwa.linalg` picks
whichever is importable at package import time.  Both implement Bareiss-style
fraction-free row echelon over the integers and over the ring of integers of
a quadratic cyclotomic field (enough for the twists by -1, zeta3, zeta4 and
zeta6 that appear in practice).

Entries after stage r of the Bareiss sweep are r x r minors of the input, so
every division below is exact; this is what keeps coefficient growth under
control compared to naive rational elimination.
"""

from __future__ import annotations

IMPLEMENTATION = "python"


def echelon_int(rows, ncols):
    """Fraction-free row echelon of an integer matrix.

    Returns (rank, pivot_columns, echelon_rows); echelon_rows holds the
    `rank` nonzero rows, each with integer entries and leading entry in its
    pivot column.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    pivots = []
    prev = 1
    r = 0
    for col in range(ncols):
        if r == nr:
            break
        best = -1
        best_abs = 0
        for i in range(r, nr):
            v = m[i][col]
            if v:
                av = -v if v < 0 else v
                if best < 0 or av < best_abs:
                    best, best_abs = i, av
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        piv = m[r][col]
        row_r = m[r]
        for i in range(r + 1, nr):
            row_i = m[i]
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


def rank_int(rows, ncols):
    return echelon_int(rows, ncols)[0]


def _quad_mul(a0, a1, b0, b1, b, c):
    """(a0 + a1 z)(b0 + b1 z) in Z[z]/(z^2 + b z + c)."""
    t = a1 * b1
    return a0 * b0 - c * t, a0 * b1 + a1 * b0 - b * t


def _quad_divexact(u0, u1, v0, v1, b, c):
    """Exact division by v in Z[z]/(z^2 + b z + c) via the conjugate."""
    # conj(v) = (v0 - b*v1) - v1 z; norm = v * conj(v) is a rational integer.
    n = v0 * v0 - b * v0 * v1 + c * v1 * v1
    w0, w1 = _quad_mul(u0, u1, v0 - b * v1, -v1, b, c)
    return w0 // n, w1 // n


def echelon_quad(rows, ncols, b, c):
    """Fraction-free row echelon over Z[z]/(z^2 + b z + c).

    Entries are (a0, a1) pairs.  Same contract as `echelon_int`.
    """
    m = [[(e[0], e[1]) for e in row] for row in rows]
    nr = len(m)
    pivots = []
    prev = (1, 0)
    r = 0
    for col in range(ncols):
        if r == nr:
            break
        best = -1
        best_size = 0
        for i in range(r, nr):
            v0, v1 = m[i][col]
            if v0 or v1:
                size = abs(v0) + abs(v1)
                if best < 0 or size < best_size:
                    best, best_size = i, size
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        piv = m[r][col]
        row_r = m[r]
        p0, p1 = piv
        q0, q1 = prev
        trivial_prev = q0 == 1 and q1 == 0
        for i in range(r + 1, nr):
            row_i = m[i]
            f0, f1 = row_i[col]
            if f0 or f1:
                for j in range(col, ncols):
                    x0, x1 = row_i[j]
                    y0, y1 = row_r[j]
                    t0, t1 = _quad_mul(p0, p1, x0, x1, b, c)
                    s0, s1 = _quad_mul(f0, f1, y0, y1, b, c)
                    t0 -= s0
                    t1 -= s1
                    if not trivial_prev:
                        t0, t1 = _quad_divexact(t0, t1, q0, q1, b, c)
                    row_i[j] = (t0, t1)
            elif p0 != q0 or p1 != q1:
                for j in range(col, ncols):
                    x0, x1 = row_i[j]
                    t0, t1 = _quad_mul(p0, p1, x0, x1, b, c)
                    if not trivial_prev:
                        t0, t1 = _quad_divexact(t0, t1, q0, q1, b, c)
                    row_i[j] = (t0, t1)
        pivots.append(col)
        prev = piv
        r += 1
    return r, pivots, m[:r]


def rank_quad(rows, ncols, b, c):
    return echelon_quad(rows, ncols, b, c)[0]
