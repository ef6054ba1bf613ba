"""``fillin`` command line: segment, signal, fuse, demo.

Exit codes: 0 success, 2 input/format error, 3 shape/contract error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .appearance import compute_signal, reverse_signal
from .demo import DemoObject, DemoSpec, run_demo, variant_config
from .errors import FormatError, ShapeError, UnknownLabel
from .formats import (
    mask_to_pgm,
    read_feature_map,
    read_label_map,
    write_feature_map,
    write_label_map,
    write_ppm,
)
from .fusion import run_structure
from .superpixel import Image, SlicParams, palette_rgb, slic_segment
from .tensor import FusionConfig

EXIT_INPUT = 2
EXIT_SHAPE = 3


class InputError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path: str | Path, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None


def _load(path: str, reader, what: str):
    data = _read(path)
    try:
        return reader(data)
    except FormatError as exc:
        raise InputError(f"{path}: malformed {what}: {exc}") from None


def cmd_segment(args) -> int:
    img = _load(args.image, Image.from_netpbm, "PGM/PPM image")
    try:
        params = SlicParams(args.k, args.compactness, args.iterations)
        labels = slic_segment(img, params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = Path(args.out) if args.out else Path(args.image).with_suffix(".labels.txt")
    _write(out, write_label_map(labels))
    ppm = Path(args.ppm) if args.ppm else out.with_suffix(".ppm")
    _write(ppm, write_ppm(palette_rgb(labels)))
    print(f"{len(np.unique(labels.data))} superpixels -> {out}, {ppm}", file=sys.stderr)
    return 0


def cmd_signal(args) -> int:
    labels = _load(args.labelmap, read_label_map, "label map")
    sig = compute_signal(labels, args.as_stride)
    if args.reverse:
        sig = reverse_signal(sig)
    text = sig.to_text()
    if args.out:
        _write(args.out, text.encode("ascii"))
    else:
        sys.stdout.write(text)
    return 0


def cmd_fuse(args) -> int:
    sp = _load(args.superpixels, read_label_map, "label map")
    low = _load(args.low, read_feature_map, "feature map")
    high = _load(args.high, read_feature_map, "feature map")
    if args.reverse:
        cfg = FusionConfig.reversed(args.fillin_scale, args.as_stride)
    else:
        cfg = FusionConfig(args.fillin_scale, args.as_stride)
    # with --reverse, keep only the map fused under the complemented signal
    pair = run_structure(cfg, sp, low, high)[-1]
    _write(args.out, write_feature_map(pair.fused))
    if args.mask_out:
        _write(args.mask_out, mask_to_pgm(pair.mask_h))
    return 0


def _parse_object(text: str) -> DemoObject:
    """``SHAPE:SIZE:CLASS[@ROW,COL]``, e.g. ``rect:1:1@5,7``."""
    body, _, at = text.partition("@")
    try:
        shape, size, cls = body.split(":")
        pos = tuple(int(v) for v in at.split(",")) if at else None
        if pos is not None and len(pos) != 2:
            raise ValueError
        return DemoObject(shape, int(size), int(cls), pos)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad object {text!r}: {exc or 'use SHAPE:SIZE:CLASS[@ROW,COL]'}")


def cmd_demo(args) -> int:
    try:
        if args.spec:
            spec = DemoSpec.from_json(_read(args.spec).decode("utf-8"))
        else:
            spec = DemoSpec(args.rows, args.cols, tuple(args.object or ()), args.seed,
                            args.high_stride)
        cfg = variant_config(args.variant, args.fillin_scale, args.as_stride)
        slic = SlicParams(args.k, args.compactness) if args.k else None
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"invalid demo spec: {exc}") from None
    result = run_demo(spec, cfg, superpixels=args.superpixels, slic=slic, noise=args.noise)
    report = result.report()
    sys.stdout.write(report)
    if args.out_dir:
        out = Path(args.out_dir)
        try:
            result.write_images(out)
        except OSError as exc:
            raise InputError(f"cannot write to {out}: {exc}") from None
        _write(out / "report.txt", report.encode("ascii"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fillin", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("segment", help="SLIC superpixels for a PGM/PPM image")
    s.add_argument("image")
    s.add_argument("--k", type=_positive_int, default=64, help="target superpixel count")
    s.add_argument("--compactness", type=float, default=10.0)
    s.add_argument("--iterations", type=_positive_int, default=10)
    s.add_argument("--out", help="label map path (default: <image>.labels.txt)")
    s.add_argument("--ppm", help="palette visualization path")
    s.set_defaults(func=cmd_segment)

    s = sub.add_parser("signal", help="appearance signal of a label map")
    s.add_argument("labelmap")
    s.add_argument("--as-stride", type=_positive_int, default=16)
    s.add_argument("--reverse", action="store_true")
    s.add_argument("--out", help="write here instead of stdout")
    s.set_defaults(func=cmd_signal)

    s = sub.add_parser("fuse", help="FillIn-fuse a low and a high feature map")
    s.add_argument("--superpixels", required=True, help="full-resolution label map")
    s.add_argument("--low", required=True)
    s.add_argument("--high", required=True)
    s.add_argument("--fillin-scale", type=_positive_int, default=4)
    s.add_argument("--as-stride", type=_positive_int, default=16)
    s.add_argument("--reverse", action="store_true", help="use the complemented signal")
    s.add_argument("--out", required=True)
    s.add_argument("--mask-out", help="PGM of the high-source mask")
    s.set_defaults(func=cmd_fuse)

    s = sub.add_parser("demo", help="synthetic small-object preservation run")
    s.add_argument("spec", nargs="?", help="JSON demo spec (overrides the canvas flags)")
    s.add_argument("--rows", type=_positive_int, default=64)
    s.add_argument("--cols", type=_positive_int, default=64)
    s.add_argument("--object", type=_parse_object, action="append",
                   help="SHAPE:SIZE:CLASS[@ROW,COL]; repeatable")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--high-stride", type=_positive_int, default=16)
    s.add_argument("--as-stride", type=_positive_int, default=16)
    s.add_argument("--fillin-scale", type=_positive_int, default=1)
    s.add_argument("--variant", choices=["Bi4", "Bi2", "Reverse"], default="Bi4")
    s.add_argument("--superpixels", choices=["slic", "truth"], default="slic")
    s.add_argument("--k", type=_positive_int, help="SLIC target superpixels")
    s.add_argument("--compactness", type=float, default=10.0)
    s.add_argument("--noise", type=float, default=0.02)
    s.add_argument("--out-dir", help="write report and visualizations here")
    s.set_defaults(func=cmd_demo)
    return p


def _check_threads() -> None:
    raw = os.environ.get("FILLIN_THREADS")
    if raw is None:
        return
    try:
        ok = int(raw) >= 1
    except ValueError:
        ok = False
    if not ok:
        raise InputError(f"FILLIN_THREADS must be a positive integer, got {raw!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _check_threads()
        return args.func(args)
    except InputError as exc:
        print(f"fillin: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ShapeError, UnknownLabel) as exc:
        print(f"fillin: shape error: {exc}", file=sys.stderr)
        return EXIT_SHAPE


if __name__ == "__main__":
    sys.exit(main())
