"""SLIC over-segmentation and connectivity clean-up of label maps.

The fusion only needs *some* over-segmentation; SLIC is the built-in one,
and any externally produced label map can be used instead after
:func:`relabel_connected`.
"""

from __future__ import annotations

import colorsys
import heapq
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _backend
from .formats import read_netpbm
from .tensor import LabelMap

GOLDEN_RATIO_CONJ = 0.6180339887498949


@dataclass(frozen=True, eq=False)
class Image:
    """Gray (1 channel) or RGB (3 channels) intensities in [0, 1], shape (rows, cols, ch)."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim == 2:
            arr = arr[:, :, None]
        if arr.ndim != 3 or arr.shape[2] not in (1, 3) or min(arr.shape[:2]) < 1:
            raise ValueError(f"image must be (rows, cols, 1|3), got shape {arr.shape}")
        if not np.isfinite(arr).all() or arr.min() < 0.0 or arr.max() > 1.0:
            raise ValueError("image intensities must lie in [0, 1]")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    @classmethod
    def from_netpbm(cls, data: bytes) -> Image:
        return cls(read_netpbm(data) / 255.0)

    def to_uint8(self) -> np.ndarray:
        return np.round(self.data * 255.0).astype(np.uint8)


@dataclass(frozen=True)
class SlicParams:
    target_superpixels: int
    compactness: float = 10.0
    iterations: int = 10

    def __post_init__(self):
        if self.target_superpixels < 1:
            raise ValueError("target_superpixels must be >= 1")
        if not self.compactness > 0:
            raise ValueError("compactness must be > 0")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


def rgb_to_lab(rgb: np.ndarray) -> np.ndarray:
    """sRGB in [0, 1] to CIELAB (D65 white)."""
    lin = np.where(rgb > 0.04045, ((rgb + 0.055) / 1.055) ** 2.4, rgb / 12.92)
    m = np.array([[0.412453, 0.357580, 0.180423],
                  [0.212671, 0.715160, 0.072169],
                  [0.019334, 0.119193, 0.950227]])
    xyz = lin @ m.T / np.array([0.950456, 1.0, 1.088754])
    eps = 216 / 24389
    f = np.where(xyz > eps, np.cbrt(xyz), (24389 / 27 * xyz + 16) / 116)
    L = 116 * f[..., 1] - 16
    a = 500 * (f[..., 0] - f[..., 1])
    b = 200 * (f[..., 1] - f[..., 2])
    return np.stack([L, a, b], axis=-1)


def _features(img: Image) -> np.ndarray:
    if img.channels == 3:
        return np.ascontiguousarray(rgb_to_lab(img.data))
    # gray intensity on the same 0..100 scale as L*
    return np.ascontiguousarray(img.data * 100.0)


def _seed_grid(rows: int, cols: int, k: int) -> list[tuple[float, float]]:
    """Exactly ``k`` seeds at pixel-centre positions of near-even seed rows."""
    ky = int(round(math.sqrt(k * rows / cols)))
    ky = min(max(ky, 1, -(-k // cols)), rows, k)
    base, extra = divmod(k, ky)
    seeds = []
    for i in range(ky):
        n = base + (1 if i < extra else 0)
        y = (i + 0.5) * rows / ky - 0.5
        seeds.extend((y, (j + 0.5) * cols / n - 0.5) for j in range(n))
    return seeds


def _gradient(feat: np.ndarray) -> np.ndarray:
    p = np.pad(feat, ((1, 1), (1, 1), (0, 0)), mode="edge")
    gy = p[2:, 1:-1] - p[:-2, 1:-1]
    gx = p[1:-1, 2:] - p[1:-1, :-2]
    return (gy * gy).sum(axis=2) + (gx * gx).sum(axis=2)


def _perturb(seeds, grad):
    """Snap a seed to a pixel of its 3x3 neighbourhood with strictly lower gradient.

    Seeds on flat ground keep their sub-pixel position; a pixel is never
    claimed by two seeds.
    """
    rows, cols = grad.shape
    taken = set()
    out = []
    for y, x in seeds:
        py, px = int(math.floor(y + 0.5)), int(math.floor(x + 0.5))
        best = (grad[py, px], py, px)
        for yy in range(max(py - 1, 0), min(py + 2, rows)):
            for xx in range(max(px - 1, 0), min(px + 2, cols)):
                if (yy, xx) not in taken and grad[yy, xx] < best[0]:
                    best = (grad[yy, xx], yy, xx)
        if best[1:] != (py, px):
            out.append((float(best[1]), float(best[2])))
        else:
            out.append((y, x))
        taken.add(best[1:])
    return out


def _fill_uncovered(feat, centers, spatial_w, labels, dist):
    miss = np.argwhere(np.isinf(dist))
    if miss.size == 0:
        return
    f = feat[miss[:, 0], miss[:, 1]]
    dc = ((f[:, None, :] - centers[None, :, 2:]) ** 2).sum(axis=2)
    dy = miss[:, 0, None] - centers[None, :, 0]
    dx = miss[:, 1, None] - centers[None, :, 1]
    d = dc + spatial_w * (dy * dy + dx * dx)
    labels[miss[:, 0], miss[:, 1]] = np.argmin(d, axis=1)


def _update_centers(feat, labels, centers):
    k = centers.shape[0]
    flat = labels.ravel()
    counts = np.bincount(flat, minlength=k).astype(np.float64)
    rr, cc = np.indices(labels.shape)
    cols = [rr.ravel(), cc.ravel()] + [feat[:, :, i].ravel() for i in range(feat.shape[2])]
    new = np.stack([np.bincount(flat, weights=v, minlength=k) for v in cols], axis=1)
    alive = counts > 0
    centers[alive] = new[alive] / counts[alive, None]


def _adjacency(comp: np.ndarray, n: int) -> list[Counter]:
    adj = [Counter() for _ in range(n)]
    pairs = []
    for a, b in ((comp[:, :-1], comp[:, 1:]), (comp[:-1, :], comp[1:, :])):
        diff = a != b
        pairs.append(np.stack([a[diff], b[diff]], axis=1))
    pairs = np.concatenate(pairs)
    if pairs.size:
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        uniq, counts = np.unique(np.stack([lo, hi], axis=1), axis=0, return_counts=True)
        for (u, v), c in zip(uniq.tolist(), counts.tolist()):
            adj[u][v] += c
            adj[v][u] += c
    return adj


def merge_orphans(comp: np.ndarray, n: int, min_size: float) -> np.ndarray:
    """Merge every region smaller than ``min_size`` into a neighbour.

    Regions are processed smallest first (ties: lower id). Each goes to the
    neighbour sharing the most boundary edges (ties: lower id); a merged
    region that is still too small is revisited. Returns a region-id map
    (ids are not compacted).
    """
    sizes = np.bincount(comp.ravel(), minlength=n).tolist()
    adj = _adjacency(comp, n)
    parent = list(range(n))
    heap = [(s, i) for i, s in enumerate(sizes) if s < min_size]
    heapq.heapify(heap)
    while heap:
        size, src = heapq.heappop(heap)
        if parent[src] != src or size != sizes[src] or not adj[src]:
            continue
        dst = min(adj[src].items(), key=lambda kv: (-kv[1], kv[0]))[0]
        for nb, c in adj[src].items():
            del adj[nb][src]
            if nb != dst:
                adj[dst][nb] += c
                adj[nb][dst] += c
        adj[src].clear()
        parent[src] = dst
        sizes[dst] += sizes[src]
        if sizes[dst] < min_size:
            heapq.heappush(heap, (sizes[dst], dst))

    def root(i):
        while parent[i] != i:
            i = parent[i]
        return i

    lut = np.array([root(i) for i in range(n)], dtype=np.int64)
    return lut[comp]


def relabel_connected(m: LabelMap) -> LabelMap:
    """One label per 4-connected component, numbered 0.. in raster order."""
    comp, _ = _backend.label_components(np.ascontiguousarray(m.data, dtype=np.int64))
    return LabelMap(comp)


def orphan_threshold(rows: int, cols: int, k: int) -> float:
    return rows * cols / (4 * k)


def slic_segment(img: Image, params: SlicParams) -> LabelMap:
    """SLIC superpixels with connectivity enforcement.

    Labels are 0..L-1 in raster order and every label is 4-connected.
    Fragments smaller than ``rows*cols / (4*K)`` pixels are merged away, so
    ``L`` can differ from ``K``.
    """
    rows, cols = img.rows, img.cols
    n_pix = rows * cols
    k = params.target_superpixels
    if k > n_pix:
        raise ValueError(f"target_superpixels={k} exceeds pixel count {n_pix}")

    feat = _features(img)
    seeds = _perturb(_seed_grid(rows, cols, k), _gradient(feat))
    centers = np.array(
        [[y, x, *feat[int(math.floor(y + 0.5)), int(math.floor(x + 0.5))]] for y, x in seeds],
        dtype=np.float64)

    step = math.sqrt(n_pix / k)
    spatial_w = (params.compactness / step) ** 2
    per_row = Counter(y for y, _ in _seed_grid(rows, cols, k))  # seeds per seed row
    win_r = math.ceil(rows / len(per_row))
    win_c = math.ceil(cols / min(per_row.values()))

    labels = np.zeros((rows, cols), dtype=np.int64)
    dist = np.empty((rows, cols), dtype=np.float64)
    for _ in range(params.iterations):
        dist.fill(np.inf)
        _backend.slic_assign(feat, centers, spatial_w, win_r, win_c, labels, dist)
        _fill_uncovered(feat, centers, spatial_w, labels, dist)
        _update_centers(feat, labels, centers)

    comp, n = _backend.label_components(labels)
    merged = merge_orphans(comp, n, orphan_threshold(rows, cols, k))
    final, _ = _backend.label_components(np.ascontiguousarray(merged))
    return LabelMap(final)


def palette_rgb(m: LabelMap) -> np.ndarray:
    """Colour per label from golden-ratio hue stepping; same label, same colour."""
    uniq, inv = np.unique(m.data, return_inverse=True)
    colors = np.array(
        [colorsys.hsv_to_rgb((lab * GOLDEN_RATIO_CONJ) % 1.0, 0.65, 0.95) for lab in uniq.tolist()]
    )
    return np.round(colors[inv.reshape(m.shape)] * 255.0).astype(np.uint8)
