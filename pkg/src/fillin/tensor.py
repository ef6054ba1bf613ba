"""Value types shared by every stage of the pipeline.

All arrays are stored read-only; operations always return new objects.
Labels are opaque identifiers: they need not start at 0 or be contiguous.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NonFinite

MAX_CELLS = 2**32 - 1


def _frozen(arr: np.ndarray) -> np.ndarray:
    # callers pass a private copy
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class LabelMap:
    """2D grid of non-negative integer superpixel labels, stored as int64."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 2:
            raise ValueError(f"label map must be 2D, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"label map must be non-empty, got shape {arr.shape}")
        if arr.size > MAX_CELLS:
            raise ValueError("label map has more than 2**32-1 cells")
        if arr.dtype.kind not in "iub":
            raise TypeError(f"labels must be integers, got dtype {arr.dtype}")
        arr = arr.astype(np.int64, copy=True)
        if arr.min() < 0:
            r, c = np.argwhere(arr < 0)[0]
            raise ValueError(f"negative label {arr[r, c]} at ({r},{c})")
        object.__setattr__(self, "data", _frozen(arr))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __eq__(self, other):
        if not isinstance(other, LabelMap):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __repr__(self):
        return f"LabelMap({self.rows}x{self.cols})"


@dataclass(frozen=True, eq=False)
class FeatureMap:
    """Channel-last ``(rows, cols, channels)`` float32 activations.

    Anything castable to float32 is accepted; NaN/Inf (including values that
    overflow float32 on the cast) are rejected.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 3:
            raise ValueError(f"feature map must be (rows, cols, channels), got shape {arr.shape}")
        if min(arr.shape) < 1:
            raise ValueError(f"feature map dimensions must be >= 1, got {arr.shape}")
        if arr.size > MAX_CELLS:
            raise ValueError("feature map has more than 2**32-1 elements")
        with np.errstate(over="ignore"):
            arr = arr.astype(np.float32, copy=True)
        bad = ~np.isfinite(arr.reshape(-1))
        if bad.any():
            raise NonFinite(int(np.argmax(bad)))
        object.__setattr__(self, "data", _frozen(arr))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    @property
    def spatial_shape(self) -> tuple[int, int]:
        return self.data.shape[:2]

    def __eq__(self, other):
        # bitwise, so -0.0 != 0.0
        if not isinstance(other, FeatureMap):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(
            np.array_equal(self.data.view(np.uint32), other.data.view(np.uint32))
        )

    def __repr__(self):
        return f"FeatureMap({self.rows}x{self.cols}x{self.channels})"


@dataclass(frozen=True, eq=False)
class BinaryMask:
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 2 or min(arr.shape) < 1:
            raise ValueError(f"mask must be a non-empty 2D array, got shape {arr.shape}")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("mask elements must be 0 or 1")
        object.__setattr__(self, "data", _frozen(arr.astype(np.uint8, copy=True)))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def complement(self) -> BinaryMask:
        return BinaryMask(1 - self.data)

    def count(self) -> int:
        return int(self.data.sum(dtype=np.int64))

    def __eq__(self, other):
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __repr__(self):
        return f"BinaryMask({self.rows}x{self.cols}, ones={self.count()})"


class Variant(str, enum.Enum):
    BI4 = "Bi4"
    BI2 = "Bi2"
    REVERSE = "Reverse"


@dataclass(frozen=True)
class FusionConfig:
    """How a pair of feature maps is fused.

    ``fillin_scale`` is the ratio between the superpixel map and the feature
    maps being fused; ``as_stride`` is the simulated-downsampling stride of
    the appearance signal. The two are independent.
    """

    fillin_scale: int = 4
    as_stride: int = 16
    reverse: bool = False
    variant: Variant = Variant.BI4

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        for name in ("fillin_scale", "as_stride"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if (self.variant is Variant.REVERSE) != bool(self.reverse):
            raise ValueError("reverse must be set exactly when variant is Reverse")

    @classmethod
    def bi4(cls, as_stride: int = 16) -> FusionConfig:
        return cls(fillin_scale=4, as_stride=as_stride)

    @classmethod
    def bi2(cls, as_stride: int = 16) -> FusionConfig:
        return cls(fillin_scale=2, as_stride=as_stride, variant=Variant.BI2)

    @classmethod
    def reversed(cls, fillin_scale: int = 4, as_stride: int = 16) -> FusionConfig:
        return cls(fillin_scale=fillin_scale, as_stride=as_stride, reverse=True,
                   variant=Variant.REVERSE)
