# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. ``_fallback.py`` mirrors these exactly, operation for
operation, so both backends give identical labels."""

import numpy as np
cimport numpy as cnp
from libc.math cimport floor

cnp.import_array()


def slic_assign(const double[:, :, ::1] feat, const double[:, ::1] centers,
                double spatial_w, Py_ssize_t win_r, Py_ssize_t win_c,
                cnp.int64_t[:, ::1] labels, double[:, ::1] dist):
    """One SLIC assignment pass over each center's search window, in place.

    ``centers`` rows are ``(y, x, f_0 .. f_{d-1})``. Ties keep the earlier
    center (strict ``<``).
    """
    cdef Py_ssize_t rows = feat.shape[0], cols = feat.shape[1], nf = feat.shape[2]
    cdef Py_ssize_t k, r, c, ch, r0, r1, c0, c1, ry, cx_i
    cdef double cy, cx, d, diff, dy, dx
    for k in range(centers.shape[0]):
        cy = centers[k, 0]
        cx = centers[k, 1]
        ry = <Py_ssize_t>floor(cy + 0.5)
        cx_i = <Py_ssize_t>floor(cx + 0.5)
        r0 = ry - win_r if ry - win_r > 0 else 0
        r1 = ry + win_r + 1 if ry + win_r + 1 < rows else rows
        c0 = cx_i - win_c if cx_i - win_c > 0 else 0
        c1 = cx_i + win_c + 1 if cx_i + win_c + 1 < cols else cols
        for r in range(r0, r1):
            dy = r - cy
            for c in range(c0, c1):
                diff = feat[r, c, 0] - centers[k, 2]
                d = diff * diff
                for ch in range(1, nf):
                    diff = feat[r, c, ch] - centers[k, 2 + ch]
                    d = d + diff * diff
                dx = c - cx
                d = d + spatial_w * (dy * dy + dx * dx)
                if d < dist[r, c]:
                    dist[r, c] = d
                    labels[r, c] = k


def label_components(const cnp.int64_t[:, ::1] labels):
    """4-connected components numbered 0..n-1 in raster order of first pixel."""
    cdef Py_ssize_t rows = labels.shape[0], cols = labels.shape[1]
    cdef Py_ssize_t n = rows * cols
    out_arr = np.full((rows, cols), -1, dtype=np.int64)
    queue_arr = np.empty(n, dtype=np.intp)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef Py_ssize_t[::1] queue = queue_arr
    cdef Py_ssize_t r, c, y, x, head, tail, p
    cdef cnp.int64_t lab, nxt = 0
    for r in range(rows):
        for c in range(cols):
            if out[r, c] != -1:
                continue
            lab = labels[r, c]
            out[r, c] = nxt
            queue[0] = r * cols + c
            head = 0
            tail = 1
            while head < tail:
                p = queue[head]
                head += 1
                y = p // cols
                x = p - y * cols
                if y > 0 and out[y - 1, x] == -1 and labels[y - 1, x] == lab:
                    out[y - 1, x] = nxt
                    queue[tail] = p - cols
                    tail += 1
                if y + 1 < rows and out[y + 1, x] == -1 and labels[y + 1, x] == lab:
                    out[y + 1, x] = nxt
                    queue[tail] = p + cols
                    tail += 1
                if x > 0 and out[y, x - 1] == -1 and labels[y, x - 1] == lab:
                    out[y, x - 1] = nxt
                    queue[tail] = p - 1
                    tail += 1
                if x + 1 < cols and out[y, x + 1] == -1 and labels[y, x + 1] == lab:
                    out[y, x + 1] = nxt
                    queue[tail] = p + 1
                    tail += 1
            nxt += 1
    return out_arr, int(nxt)
