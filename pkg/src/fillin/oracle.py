"""Naive reference implementations for cross-checking the fast paths.

Nothing here imports the downsampling, signal, fusion or superpixel modules;
only the value types are shared. Everything is plain Python loops over
nested lists and is meant for small inputs (at most 256x256).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ShapeError
from .tensor import BinaryMask, FeatureMap, LabelMap

MAX_SIDE = 256


def _check_small(rows, cols):
    if rows > MAX_SIDE or cols > MAX_SIDE:
        raise ValueError(f"oracles accept at most {MAX_SIDE}x{MAX_SIDE} inputs, got {rows}x{cols}")


def oracle_downsample(s: LabelMap, t: int) -> LabelMap:
    if not isinstance(t, (int, np.integer)) or isinstance(t, bool) or t < 1:
        raise ValueError(f"stride must be a positive integer, got {t!r}")
    m, n = s.rows, s.cols
    _check_small(m, n)
    grid = s.data.tolist()
    out_rows = math.ceil(m / t)
    out_cols = math.ceil(n / t)
    out = []
    for i in range(out_rows):
        row = []
        for j in range(out_cols):
            row.append(grid[min(i * t, m - 1)][min(j * t, n - 1)])
        out.append(row)
    return LabelMap(np.array(out, dtype=np.int64))


def oracle_survivors(s: LabelMap, p: int) -> set[int]:
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool) or p < 1:
        raise ValueError(f"stride must be a positive integer, got {p!r}")
    m, n = s.rows, s.cols
    _check_small(m, n)
    grid = s.data.tolist()
    kept = set()
    i = 0
    while i < m:
        j = 0
        while j < n:
            kept.add(grid[i][j])
            j += p
        i += p
    return kept


def oracle_fuse(f_low: FeatureMap, f_high: FeatureMap, h: BinaryMask) -> FeatureMap:
    """F_low * (1 - H) + F_high * H, element by element, in float32.

    Matches a select bit-for-bit except when both a zero product and the
    selected value are signed zeros of opposite sign.
    """
    if f_low.data.shape != f_high.data.shape or f_low.data.shape[:2] != h.data.shape:
        raise ShapeError("oracle_fuse operands differ in shape")
    rows, cols, channels = f_low.data.shape
    _check_small(rows, cols)
    one = np.float32(1.0)
    out = np.empty((rows, cols, channels), dtype=np.float32)
    for i in range(rows):
        for j in range(cols):
            hv = np.float32(h.data[i, j])
            lv = one - hv
            for c in range(channels):
                out[i, j, c] = f_low.data[i, j, c] * lv + f_high.data[i, j, c] * hv
    return FeatureMap(out)


def oracle_bilinear_at(grid: list[list[float]], out_rows: int, out_cols: int,
                       r: int, c: int) -> float:
    """One output sample of a half-pixel-centre bilinear resize of a 2D grid."""
    in_rows, in_cols = len(grid), len(grid[0])

    def src(x, n_in, n_out):
        v = (x + 0.5) * n_in / n_out - 0.5
        return min(max(v, 0.0), n_in - 1.0)

    y = src(r, in_rows, out_rows)
    x = src(c, in_cols, out_cols)
    y0, x0 = int(math.floor(y)), int(math.floor(x))
    y1, x1 = min(y0 + 1, in_rows - 1), min(x0 + 1, in_cols - 1)
    dy, dx = y - y0, x - x0
    return ((1 - dy) * (1 - dx) * grid[y0][x0] + (1 - dy) * dx * grid[y0][x1]
            + dy * (1 - dx) * grid[y1][x0] + dy * dx * grid[y1][x1])


def oracle_components(m: LabelMap) -> list[list[int]]:
    """4-connected components by stack flood fill, numbered in raster order."""
    rows, cols = m.rows, m.cols
    _check_small(rows, cols)
    grid = m.data.tolist()
    comp = [[-1] * cols for _ in range(rows)]
    nxt = 0
    for r in range(rows):
        for c in range(cols):
            if comp[r][c] != -1:
                continue
            lab = grid[r][c]
            comp[r][c] = nxt
            stack = [(r, c)]
            while stack:
                y, x = stack.pop()
                for yy, xx in ((y - 1, x), (y + 1, x), (y, x - 1), (y, x + 1)):
                    if 0 <= yy < rows and 0 <= xx < cols and comp[yy][xx] == -1 \
                            and grid[yy][xx] == lab:
                        comp[yy][xx] = nxt
                        stack.append((yy, xx))
            nxt += 1
    return comp


def oracle_is_four_connected(m: LabelMap) -> bool:
    """True when every label's pixel set forms a single 4-connected component."""
    comp = oracle_components(m)
    n_components = max(max(row) for row in comp) + 1
    n_labels = len({v for row in m.data.tolist() for v in row})
    return n_components == n_labels
