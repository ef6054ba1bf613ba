"""Superpixel-guided FillIn fusion of low- and high-level feature maps."""

from ._backend import NAME as BACKEND
from .appearance import AppearanceSignal, compute_signal, downsample, label_set, reverse_signal
from .errors import FillInError, FormatError, ShapeError, UnknownLabel
from .formats import read_feature_map, read_label_map, write_feature_map, write_label_map
from .fusion import (
    FusedPair,
    bilinear_upsample,
    build_masks,
    concat_channels,
    fillin_fuse,
    run_structure,
)
from .superpixel import Image, SlicParams, relabel_connected, slic_segment
from .tensor import BinaryMask, FeatureMap, FusionConfig, LabelMap, Variant

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AppearanceSignal",
    "BinaryMask",
    "FeatureMap",
    "FillInError",
    "FormatError",
    "FusedPair",
    "FusionConfig",
    "Image",
    "LabelMap",
    "ShapeError",
    "SlicParams",
    "UnknownLabel",
    "Variant",
    "bilinear_upsample",
    "build_masks",
    "compute_signal",
    "concat_channels",
    "downsample",
    "fillin_fuse",
    "label_set",
    "read_feature_map",
    "read_label_map",
    "relabel_connected",
    "reverse_signal",
    "run_structure",
    "slic_segment",
    "write_feature_map",
    "write_label_map",
]
