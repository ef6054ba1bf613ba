"""Byte-level readers and writers.

* label maps: ASCII grid, ``"<rows> <cols>\\n"`` then one line per row of
  space-separated non-negative decimal labels;
* feature maps: ``b"FMAP"``, three little-endian uint32 dims
  (rows, cols, channels), then row-major channel-last float32 LE values;
* netpbm: binary PGM (``P5``) and PPM (``P6``) with maxval 255.
"""

from __future__ import annotations

import re
import struct

import numpy as np

from .errors import (
    BadMagic,
    DimensionOverflow,
    FormatError,
    LengthMismatch,
    MalformedHeader,
    NegativeLabel,
    NonFinite,
    NonIntegerToken,
    TrailingBytes,
    Truncated,
)
from .tensor import MAX_CELLS, BinaryMask, FeatureMap, LabelMap

FMAP_MAGIC = b"FMAP"
_FMAP_HEADER = struct.Struct("<4sIII")

_HEADER_RE = re.compile(rb"([0-9]+) ([0-9]+)")
_UINT_RE = re.compile(rb"[0-9]+")
_NEG_RE = re.compile(rb"-[0-9]*[1-9][0-9]*")


def read_label_map(data: bytes) -> LabelMap:
    lines = data.split(b"\n")
    if lines and lines[-1] == b"" and len(lines) > 1:
        lines.pop()
    header = _HEADER_RE.fullmatch(lines[0]) if lines else None
    if header is None:
        raise MalformedHeader(f"expected '<rows> <cols>' header, got {lines[0][:40]!r}")
    rows, cols = int(header.group(1)), int(header.group(2))
    if rows < 1 or cols < 1:
        raise MalformedHeader(f"dimensions must be >= 1, got {rows}x{cols}")
    if rows * cols > MAX_CELLS:
        raise DimensionOverflow(f"{rows}x{cols} exceeds 2**32-1 cells")

    body = lines[1:]
    if len(body) != rows:
        raise LengthMismatch(f"expected {rows} rows, found {len(body)}", row=min(len(body), rows))

    out = np.empty((rows, cols), dtype=np.int64)
    for r, line in enumerate(body):
        tokens = line.split(b" ")
        for c, tok in enumerate(tokens[:cols]):
            if not _UINT_RE.fullmatch(tok):
                if _NEG_RE.fullmatch(tok):
                    raise NegativeLabel(r, c, int(tok))
                raise NonIntegerToken(r, c, tok.decode("ascii", "replace"))
        if len(tokens) != cols:
            raise LengthMismatch(f"expected {cols} labels, found {len(tokens)}",
                                 row=r, col=min(len(tokens), cols))
        try:
            out[r] = [int(t) for t in tokens]
        except OverflowError:
            c = next(i for i, t in enumerate(tokens) if int(t) > np.iinfo(np.int64).max)
            raise NonIntegerToken(r, c, tokens[c].decode("ascii")) from None
    return LabelMap(out)


def write_label_map(m: LabelMap) -> bytes:
    lines = [f"{m.rows} {m.cols}"]
    lines.extend(" ".join(map(str, row)) for row in m.data.tolist())
    return ("\n".join(lines) + "\n").encode("ascii")


def read_feature_map(data: bytes) -> FeatureMap:
    if data[:4] != FMAP_MAGIC[: len(data[:4])] or len(data) == 0:
        raise BadMagic(f"expected magic {FMAP_MAGIC!r}, got {bytes(data[:4])!r}")
    if len(data) < _FMAP_HEADER.size:
        raise Truncated(f"header needs {_FMAP_HEADER.size} bytes, got {len(data)}")
    _, rows, cols, channels = _FMAP_HEADER.unpack_from(data)
    if min(rows, cols, channels) < 1:
        raise MalformedHeader(f"dimensions must be >= 1, got {rows}x{cols}x{channels}")
    count = rows * cols * channels
    if count > MAX_CELLS:
        raise DimensionOverflow(f"{rows}x{cols}x{channels} exceeds 2**32-1 values")
    need = _FMAP_HEADER.size + 4 * count
    if len(data) < need:
        raise Truncated(f"payload needs {4 * count} bytes, got {len(data) - _FMAP_HEADER.size}")
    if len(data) > need:
        raise TrailingBytes(f"{len(data) - need} unexpected bytes after payload")
    values = np.frombuffer(data, dtype="<f4", count=count, offset=_FMAP_HEADER.size)
    bad = ~np.isfinite(values)
    if bad.any():
        raise NonFinite(int(np.argmax(bad)))
    return FeatureMap(values.astype(np.float32).reshape(rows, cols, channels))


def write_feature_map(f: FeatureMap) -> bytes:
    header = _FMAP_HEADER.pack(FMAP_MAGIC, f.rows, f.cols, f.channels)
    return header + f.data.astype("<f4", copy=False).tobytes(order="C")


# --- netpbm -----------------------------------------------------------------

def _netpbm_header(data: bytes):
    """Return (magic, width, height, maxval, payload offset)."""
    pos = 0
    fields: list[bytes] = []
    n = len(data)
    while len(fields) < 4:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos < n and data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise MalformedHeader("truncated netpbm header")
        fields.append(data[start:pos])
        if len(fields) == 1 and fields[0] not in (b"P5", b"P6"):
            raise BadMagic(f"expected P5 or P6, got {fields[0][:8]!r}")
    if pos >= n or not data[pos : pos + 1].isspace():
        raise MalformedHeader("missing whitespace after maxval")
    try:
        width, height, maxval = (int(x) for x in fields[1:])
    except ValueError:
        raise MalformedHeader(f"non-integer netpbm header field in {fields[1:]}") from None
    if width < 1 or height < 1:
        raise MalformedHeader(f"dimensions must be >= 1, got {width}x{height}")
    if maxval != 255:
        raise FormatError(f"only maxval 255 is supported, got {maxval}")
    return fields[0], width, height, pos + 1


def read_netpbm(data: bytes) -> np.ndarray:
    """Decode a P5/P6 file into a uint8 array of shape (rows, cols, 1|3)."""
    magic, width, height, offset = _netpbm_header(data)
    channels = 1 if magic == b"P5" else 3
    need = width * height * channels
    payload = data[offset:]
    if len(payload) < need:
        raise Truncated(f"pixel data needs {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise TrailingBytes(f"{len(payload) - need} unexpected bytes after pixel data")
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width, channels).copy()


def write_pgm(gray: np.ndarray) -> bytes:
    gray = np.asarray(gray, dtype=np.uint8)
    if gray.ndim == 3 and gray.shape[2] == 1:
        gray = gray[:, :, 0]
    if gray.ndim != 2:
        raise ValueError(f"PGM needs a 2D array, got shape {gray.shape}")
    h, w = gray.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + gray.tobytes()


def write_ppm(rgb: np.ndarray) -> bytes:
    rgb = np.asarray(rgb, dtype=np.uint8)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValueError(f"PPM needs a (rows, cols, 3) array, got shape {rgb.shape}")
    h, w, _ = rgb.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + rgb.tobytes()


def mask_to_pgm(mask: BinaryMask) -> bytes:
    return write_pgm(mask.data * np.uint8(255))


def mask_to_label_map(mask: BinaryMask) -> LabelMap:
    return LabelMap(mask.data)
