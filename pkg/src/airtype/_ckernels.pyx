# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Behaviour mirrors ``_pykernels`` bit for bit.

Integer predicates use 64-bit arithmetic; callers must keep coordinates
below 2**30 in magnitude (``airtype.kernels`` enforces this).
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport ceil
from libc.string cimport memcpy

cnp.import_array()

ctypedef long long i64


def boundary_pixels(grid):
    cdef cnp.uint8_t[:, ::1] g = np.ascontiguousarray(grid, dtype=np.uint8)
    cdef Py_ssize_t h = g.shape[0], w = g.shape[1]
    cdef Py_ssize_t x, y, n = 0
    out_arr = np.empty((h * w, 2), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    for y in range(h):
        for x in range(w):
            if not g[y, x]:
                continue
            if (x == 0 or y == 0 or x == w - 1 or y == h - 1
                    or not g[y, x - 1] or not g[y, x + 1]
                    or not g[y - 1, x] or not g[y + 1, x]):
                out[n, 0] = x
                out[n, 1] = y
                n += 1
    return out_arr[:n].copy()


cdef inline i64 cross(i64 ox, i64 oy, i64 ax, i64 ay, i64 bx, i64 by) nogil:
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def hull_sorted(pts):
    cdef i64[:, ::1] p = np.ascontiguousarray(pts, dtype=np.int64).reshape(-1, 2)
    cdef Py_ssize_t n = p.shape[0]
    if n <= 2:
        return np.asarray(p).copy()
    buf_arr = np.empty((2 * n, 2), dtype=np.int64)
    cdef i64[:, ::1] buf = buf_arr
    cdef Py_ssize_t k = 0, i, t
    for i in range(n):
        while k >= 2 and cross(buf[k - 2, 0], buf[k - 2, 1], buf[k - 1, 0], buf[k - 1, 1],
                               p[i, 0], p[i, 1]) <= 0:
            k -= 1
        buf[k, 0] = p[i, 0]
        buf[k, 1] = p[i, 1]
        k += 1
    t = k + 1
    for i in range(n - 2, -1, -1):
        while k >= t and cross(buf[k - 2, 0], buf[k - 2, 1], buf[k - 1, 0], buf[k - 1, 1],
                               p[i, 0], p[i, 1]) <= 0:
            k -= 1
        buf[k, 0] = p[i, 0]
        buf[k, 1] = p[i, 1]
        k += 1
    return buf_arr[:k - 1].copy()


cdef inline bint lex_less(i64 ax, i64 ay, i64 bx, i64 by) nogil:
    return ax < bx or (ax == bx and ay < by)


cdef struct Best:
    i64 d2
    Py_ssize_t p
    Py_ssize_t q


cdef inline void consider(i64[:, ::1] h, Py_ssize_t p, Py_ssize_t q, Best* best) nogil:
    cdef Py_ssize_t tmp
    cdef i64 dx = h[p, 0] - h[q, 0], dy = h[p, 1] - h[q, 1]
    cdef i64 d2 = dx * dx + dy * dy
    if lex_less(h[q, 0], h[q, 1], h[p, 0], h[p, 1]):
        tmp = p
        p = q
        q = tmp
    if best.p < 0 or d2 > best.d2:
        best.d2 = d2
        best.p = p
        best.q = q
        return
    if d2 < best.d2:
        return
    # tie: lexicographic on (a, b)
    if lex_less(h[p, 0], h[p, 1], h[best.p, 0], h[best.p, 1]) or (
            h[p, 0] == h[best.p, 0] and h[p, 1] == h[best.p, 1]
            and lex_less(h[q, 0], h[q, 1], h[best.q, 0], h[best.q, 1])):
        best.p = p
        best.q = q


def hull_diameter(hull):
    cdef i64[:, ::1] h = np.ascontiguousarray(hull, dtype=np.int64).reshape(-1, 2)
    cdef Py_ssize_t m = h.shape[0]
    cdef Best best
    best.d2 = 0
    best.p = -1
    best.q = -1
    if m == 1:
        return 0, 0, 0
    if m == 2:
        consider(h, 0, 1, &best)
        return best.p, best.q, best.d2
    cdef Py_ssize_t i, i1, j = 1, jn
    cdef i64 ax, ay, bx, by
    for i in range(m):
        i1 = (i + 1) % m
        ax = h[i, 0]
        ay = h[i, 1]
        bx = h[i1, 0]
        by = h[i1, 1]
        while True:
            jn = (j + 1) % m
            if cross(ax, ay, bx, by, h[jn, 0], h[jn, 1]) > cross(ax, ay, bx, by, h[j, 0], h[j, 1]):
                j = jn
            else:
                break
        consider(h, i, j, &best)
        consider(h, i1, j, &best)
        jn = (j + 1) % m
        if cross(ax, ay, bx, by, h[jn, 0], h[jn, 1]) == cross(ax, ay, bx, by, h[j, 0], h[j, 1]):
            consider(h, i, jn, &best)
            consider(h, i1, jn, &best)
    return best.p, best.q, best.d2


def rle_decode(counts, Py_ssize_t width, Py_ssize_t height):
    cdef i64[::1] c = np.ascontiguousarray(counts, dtype=np.int64)
    out_arr = np.zeros(width * height, dtype=np.uint8)
    cdef cnp.uint8_t[::1] out = out_arr
    cdef Py_ssize_t k, pos = 0, e
    for k in range(c.shape[0]):
        e = pos + c[k]
        if k & 1:
            while pos < e:
                out[pos] = 1
                pos += 1
        else:
            pos = e
    return out_arr.reshape(height, width)


cdef inline Py_ssize_t _run_end(const cnp.uint8_t* p, Py_ssize_t i, Py_ssize_t n, bint on) nogil:
    # index of the first byte at or after i whose truth value differs from ``on``;
    # whole 8-byte words are skipped while they cannot contain a change
    cdef cnp.uint64_t w
    while i + 8 <= n:
        memcpy(&w, p + i, 8)
        if on:
            if (w - 0x0101010101010101ULL) & ~w & 0x8080808080808080ULL:
                break  # some byte is zero
        elif w:
            break
        i += 8
    while i < n and (p[i] != 0) == on:
        i += 1
    return i


def rle_encode(grid):
    g = np.ascontiguousarray(grid)
    if g.dtype != np.uint8 and g.dtype != np.bool_:
        g = g.astype(bool)
    cdef const cnp.uint8_t[::1] flat = g.reshape(-1).view(np.uint8)
    cdef Py_ssize_t n = flat.shape[0], i = 0, j, k = 0, runs = 0
    if n == 0:
        return np.zeros(1, dtype=np.int64)
    cdef const cnp.uint8_t* p = &flat[0]
    cdef bint on = False
    with nogil:
        while i < n:
            i = _run_end(p, i, n, on)
            runs += 1
            on = not on
    out_arr = np.empty(runs, dtype=np.int64)
    cdef i64[::1] out = out_arr
    i = 0
    on = False
    with nogil:
        while i < n:
            j = _run_end(p, i, n, on)
            out[k] = j - i
            k += 1
            i = j
            on = not on
    return out_arr


def fill_polygon(xs, ys, Py_ssize_t width, Py_ssize_t height):
    cdef double[::1] px = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] py = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t n = px.shape[0]
    out_arr = np.zeros((height, width), dtype=np.uint8)
    if n < 3:
        return out_arr
    cdef cnp.uint8_t[:, ::1] out = out_arr
    xc_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] xc = xc_arr
    cdef Py_ssize_t row, e, e1, k, a, b, c0, c1, col
    cdef double cy, t, v
    for row in range(height):
        cy = row + 0.5
        k = 0
        for e in range(n):
            e1 = e + 1 if e + 1 < n else 0
            if (py[e] <= cy) != (py[e1] <= cy):
                t = (cy - py[e]) / (py[e1] - py[e])
                v = px[e] + t * (px[e1] - px[e])
                # insertion sort
                a = k
                while a > 0 and xc[a - 1] > v:
                    xc[a] = xc[a - 1]
                    a -= 1
                xc[a] = v
                k += 1
        b = 0
        while b + 1 < k:
            c0 = <Py_ssize_t>ceil(xc[b] - 0.5)
            c1 = <Py_ssize_t>ceil(xc[b + 1] - 0.5)
            if c0 < 0:
                c0 = 0
            if c1 > width:
                c1 = width
            for col in range(c0, c1):
                out[row, col] = 1
            b += 2
    return out_arr
