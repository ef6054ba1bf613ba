"""Point-sampling downsampling of label maps and the appearance signal.

A superpixel "survives" stride ``p`` when at least one of its pixels lies on
the sampling grid ``(i*p, j*p)``. Survivors are routed to the high-level
feature map, everything else to the low-level one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .errors import UnknownLabel
from .tensor import LabelMap


def _check_stride(t, name="stride"):
    if isinstance(t, bool) or not isinstance(t, (int, np.integer)) or t < 1:
        raise ValueError(f"{name} must be a positive integer, got {t!r}")


def downsample(s: LabelMap, t: int) -> LabelMap:
    """Sample ``s[min(i*t, rows-1), min(j*t, cols-1)]`` onto a ceil(rows/t) x ceil(cols/t) grid."""
    _check_stride(t)
    out_r = -(-s.rows // t)
    out_c = -(-s.cols // t)
    ri = np.minimum(np.arange(out_r) * t, s.rows - 1)
    ci = np.minimum(np.arange(out_c) * t, s.cols - 1)
    return LabelMap(s.data[np.ix_(ri, ci)])


def label_set(m: LabelMap) -> frozenset[int]:
    return frozenset(np.unique(m.data).tolist())


@dataclass(frozen=True, eq=False)
class AppearanceSignal(Mapping[int, int]):
    """Survival bit per label of the map it was computed on.

    Behaves as a read-only ``{label: bit}`` mapping iterated in ascending
    label order. ``labels`` and ``bits`` are parallel sorted arrays.
    """

    labels: np.ndarray
    bits: np.ndarray
    as_stride: int

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        bits = np.asarray(self.bits, dtype=np.uint8)
        if labels.ndim != 1 or labels.shape != bits.shape:
            raise ValueError("labels and bits must be 1D arrays of equal length")
        order = np.argsort(labels, kind="stable")
        labels, bits = labels[order], bits[order]
        if labels.size > 1 and (np.diff(labels) == 0).any():
            raise ValueError("duplicate label in appearance signal")
        if not np.isin(bits, (0, 1)).all():
            raise ValueError("bits must be 0 or 1")
        _check_stride(self.as_stride, "as_stride")
        labels.flags.writeable = False
        bits.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_dict(cls, bits: Mapping[int, int], as_stride: int) -> AppearanceSignal:
        keys = sorted(bits)
        return cls(np.array(keys, dtype=np.int64), np.array([bits[k] for k in keys]), as_stride)

    @property
    def source_labels(self) -> frozenset[int]:
        return frozenset(self.labels.tolist())

    @property
    def survivors(self) -> frozenset[int]:
        return frozenset(self.labels[self.bits == 1].tolist())

    def __getitem__(self, label: int) -> int:
        i = np.searchsorted(self.labels, label)
        if i < self.labels.size and self.labels[i] == label:
            return int(self.bits[i])
        raise KeyError(label)

    def __iter__(self) -> Iterator[int]:
        return iter(self.labels.tolist())

    def __len__(self) -> int:
        return int(self.labels.size)

    def __eq__(self, other):
        if not isinstance(other, AppearanceSignal):
            return NotImplemented
        return (self.as_stride == other.as_stride
                and np.array_equal(self.labels, other.labels)
                and np.array_equal(self.bits, other.bits))

    def __repr__(self):
        return (f"AppearanceSignal(p={self.as_stride}, labels={len(self)}, "
                f"survivors={int(self.bits.sum())})")

    def lookup(self, labels: np.ndarray) -> np.ndarray:
        """Vectorized ``bits[label]``; raises UnknownLabel for labels outside the domain."""
        labels = np.asarray(labels)
        idx = np.searchsorted(self.labels, labels)
        idx_c = np.minimum(idx, self.labels.size - 1)
        found = self.labels[idx_c] == labels
        if not found.all():
            raise UnknownLabel(int(labels[~found].flat[0]))
        return self.bits[idx_c]

    def to_text(self) -> str:
        return "".join(f"{lab} {bit}\n" for lab, bit in zip(self.labels.tolist(), self.bits.tolist()))


def compute_signal(s: LabelMap, p: int) -> AppearanceSignal:
    _check_stride(p, "as_stride")
    labels = np.unique(s.data)
    kept = np.unique(downsample(s, p).data)
    return AppearanceSignal(labels, np.isin(labels, kept).astype(np.uint8), p)


def reverse_signal(a: AppearanceSignal) -> AppearanceSignal:
    return AppearanceSignal(a.labels, 1 - a.bits, a.as_stride)
