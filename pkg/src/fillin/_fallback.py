"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``.

Float operations are performed in the same order as the compiled loop so
both backends produce bit-identical distances and therefore labels.
"""

from __future__ import annotations

from collections import deque
import math

import numpy as np


def slic_assign(feat, centers, spatial_w, win_r, win_c, labels, dist):
    rows, cols, nf = feat.shape
    for k in range(centers.shape[0]):
        cy, cx = centers[k, 0], centers[k, 1]
        ry = int(math.floor(cy + 0.5))
        cx_i = int(math.floor(cx + 0.5))
        r0, r1 = max(ry - win_r, 0), min(ry + win_r + 1, rows)
        c0, c1 = max(cx_i - win_c, 0), min(cx_i + win_c + 1, cols)
        if r0 >= r1 or c0 >= c1:
            continue
        win = feat[r0:r1, c0:c1]
        diff = win[:, :, 0] - centers[k, 2]
        d = diff * diff
        for ch in range(1, nf):
            diff = win[:, :, ch] - centers[k, 2 + ch]
            d = d + diff * diff
        dy = (np.arange(r0, r1, dtype=np.float64) - cy)[:, None]
        dx = (np.arange(c0, c1, dtype=np.float64) - cx)[None, :]
        d = d + spatial_w * (dy * dy + dx * dx)
        better = d < dist[r0:r1, c0:c1]
        dist[r0:r1, c0:c1][better] = d[better]
        labels[r0:r1, c0:c1][better] = k


def label_components(labels):
    rows, cols = labels.shape
    grid = labels.tolist()
    out = [[-1] * cols for _ in range(rows)]
    nxt = 0
    for r in range(rows):
        for c in range(cols):
            if out[r][c] != -1:
                continue
            lab = grid[r][c]
            out[r][c] = nxt
            queue = deque([(r, c)])
            while queue:
                y, x = queue.popleft()
                for yy, xx in ((y - 1, x), (y + 1, x), (y, x - 1), (y, x + 1)):
                    if 0 <= yy < rows and 0 <= xx < cols and out[yy][xx] == -1 \
                            and grid[yy][xx] == lab:
                        out[yy][xx] = nxt
                        queue.append((yy, xx))
            nxt += 1
    return np.array(out, dtype=np.int64), nxt
