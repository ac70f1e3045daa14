"""FBM1 binary feature files and CSV export.

Layout: ``b"FBM1"``, u32 rows, u32 cols (little-endian), then
``rows * cols`` float32 little-endian values in row-major order.
"""
from __future__ import annotations

import struct

import numpy as np

from ..errors import MalformedFeatureFile
from .fbank import FeatureMatrix

MAGIC = b"FBM1"
_HEADER = struct.Struct("<4sII")


def encode_fbm(m: FeatureMatrix) -> bytes:
    return _HEADER.pack(MAGIC, m.rows, m.cols) + m.data.astype("<f4").tobytes()


def decode_fbm(blob: bytes) -> FeatureMatrix:
    if len(blob) < _HEADER.size:
        raise MalformedFeatureFile("truncated header")
    magic, rows, cols = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise MalformedFeatureFile(f"bad magic {magic!r}")
    expected = _HEADER.size + 4 * rows * cols
    if len(blob) != expected:
        raise MalformedFeatureFile(f"expected {expected} bytes, found {len(blob)}")
    data = np.frombuffer(blob, dtype="<f4", offset=_HEADER.size).reshape(rows, cols)
    return FeatureMatrix(data.astype(np.float64))


def write_fbm(m: FeatureMatrix, path) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_fbm(m))


def read_fbm(path) -> FeatureMatrix:
    with open(path, "rb") as fh:
        return decode_fbm(fh.read())


def write_csv(m: FeatureMatrix, path) -> None:
    np.savetxt(path, m.data, delimiter=",", fmt="%.6f")
