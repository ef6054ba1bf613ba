"""FillIn fusion: every output pixel is copied, across all channels, from
either the high-level or the low-level feature map.

The routing mask comes from the superpixel map point-sampled to feature
resolution and looked up in an appearance signal computed on the
full-resolution map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .appearance import AppearanceSignal, compute_signal, downsample, reverse_signal
from .errors import ShapeError
from .tensor import BinaryMask, FeatureMap, FusionConfig, LabelMap


@dataclass(frozen=True)
class FusedPair:
    fused: FeatureMap
    mask_h: BinaryMask  # 1 where the value came from the high-level map

    def __post_init__(self):
        if self.fused.spatial_shape != self.mask_h.shape:
            raise ShapeError(f"fused map {self.fused.spatial_shape} vs mask {self.mask_h.shape}")


def build_masks(s: LabelMap, t: int, a: AppearanceSignal) -> tuple[BinaryMask, BinaryMask]:
    u = downsample(s, t)
    h = a.lookup(u.data)
    return BinaryMask(h), BinaryMask(1 - h)


def fillin_fuse(f_low: FeatureMap, f_high: FeatureMap, h: BinaryMask) -> FusedPair:
    if f_low.spatial_shape != f_high.spatial_shape or f_low.spatial_shape != h.shape:
        raise ShapeError(
            f"spatial shapes differ: low {f_low.spatial_shape}, high {f_high.spatial_shape}, "
            f"mask {h.shape}")
    if f_low.channels != f_high.channels:
        raise ShapeError(f"channel counts differ: low {f_low.channels}, high {f_high.channels}")
    # select rather than multiply-add: identical for {0,1} masks, no 0*x rounding of signs
    fused = np.where(h.data[:, :, None].astype(bool), f_high.data, f_low.data)
    return FusedPair(FeatureMap(fused), h)


def _resize_axis(arr: np.ndarray, out: int, axis: int) -> np.ndarray:
    n = arr.shape[axis]
    if n == out:
        return arr
    x = (np.arange(out, dtype=np.float64) + 0.5) * (n / out) - 0.5
    x = np.clip(x, 0.0, n - 1)
    i0 = np.floor(x).astype(np.intp)
    i1 = np.minimum(i0 + 1, n - 1)
    shape = [1] * arr.ndim
    shape[axis] = out
    w = (x - i0).reshape(shape)
    v0 = np.take(arr, i0, axis=axis)
    v1 = np.take(arr, i1, axis=axis)
    res = v0 + w * (v1 - v0)
    # keep the lerp inside its two samples despite rounding
    return np.clip(res, np.minimum(v0, v1), np.maximum(v0, v1))


def bilinear_upsample(f: FeatureMap, out_rows: int, out_cols: int) -> FeatureMap:
    """Resize with half-pixel centres and edge clamping.

    Source coordinate per axis is ``(dst + 0.5) * in / out - 0.5`` clamped to
    ``[0, in - 1]``. Axes whose size is unchanged are passed through untouched,
    so equal dimensions give a bit-identical copy.
    """
    if out_rows < 1 or out_cols < 1:
        raise ValueError(f"output dimensions must be >= 1, got {out_rows}x{out_cols}")
    if (out_rows, out_cols) == f.spatial_shape:
        return f
    arr = f.data.astype(np.float64)
    arr = _resize_axis(arr, out_rows, 0)
    arr = _resize_axis(arr, out_cols, 1)
    return FeatureMap(arr.astype(np.float32))


def concat_channels(a: FeatureMap, b: FeatureMap) -> FeatureMap:
    if a.spatial_shape != b.spatial_shape:
        raise ShapeError(f"spatial shapes differ: {a.spatial_shape} vs {b.spatial_shape}")
    return FeatureMap(np.concatenate([a.data, b.data], axis=2))


def _to_grid(f: FeatureMap, shape: tuple[int, int], name: str) -> FeatureMap:
    if f.rows > shape[0] or f.cols > shape[1]:
        raise ShapeError(f"{name} map {f.spatial_shape} is larger than the fusion grid {shape}")
    return bilinear_upsample(f, *shape)


def run_structure(cfg: FusionConfig, s: LabelMap, f_low: FeatureMap,
                  f_high: FeatureMap) -> tuple[FusedPair, ...]:
    """Run one decoder variant's FillIn step.

    Both feature maps are bilinearly upsampled (when smaller) to the grid of
    ``s`` downsampled by ``cfg.fillin_scale``. Bi4 and Bi2 return a single
    fused pair; Reverse returns ``(thick, thin)`` where thin uses the
    complemented signal.
    """
    grid = downsample(s, cfg.fillin_scale).shape
    low = _to_grid(f_low, grid, "low-level")
    high = _to_grid(f_high, grid, "high-level")
    if low.channels != high.channels:
        raise ShapeError(f"channel counts differ: low {low.channels}, high {high.channels}")

    signal = compute_signal(s, cfg.as_stride)
    h, _ = build_masks(s, cfg.fillin_scale, signal)
    thick = fillin_fuse(low, high, h)
    if not cfg.reverse:
        return (thick,)
    h_thin, _ = build_masks(s, cfg.fillin_scale, reverse_signal(signal))
    return thick, fillin_fuse(low, high, h_thin)
