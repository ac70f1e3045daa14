"""Mono 16-bit PCM WAV I/O and the in-memory sample buffer."""
from __future__ import annotations

import os
import struct
from dataclasses import dataclass

import numpy as np

from .errors import EmptyBuffer, MalformedWav, UnsupportedFormat

PCM_FORMAT = 1
DECODE_SCALE = 32768.0
ENCODE_SCALE = 32767.0


@dataclass(frozen=True, eq=False)
class AudioBuffer:
    """Float samples in ``[-1, 1]`` at an integer sample rate.

    Samples are copied to a read-only float64 array and clamped on
    construction, so the range invariant holds for every instance.
    """

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        if int(self.sample_rate) != self.sample_rate or self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be a positive integer, got {self.sample_rate!r}")
        arr = np.clip(np.asarray(self.samples, dtype=np.float64).reshape(-1), -1.0, 1.0)
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    def __len__(self) -> int:
        return self.samples.shape[0]

    @property
    def duration_seconds(self) -> float:
        return len(self) / self.sample_rate

    def __eq__(self, other):
        if not isinstance(other, AudioBuffer):
            return NotImplemented
        return self.sample_rate == other.sample_rate and np.array_equal(self.samples, other.samples)

    __hash__ = None  # type: ignore[assignment]


def quantize(samples: np.ndarray) -> np.ndarray:
    """int16 codes for ``samples``: clamp(round(s * 32767), -32768, 32767)."""
    q = np.round(np.asarray(samples, dtype=np.float64) * ENCODE_SCALE)
    return np.clip(q, -32768, 32767).astype("<i2")


def _iter_chunks(data: bytes):
    pos = 12
    while pos + 8 <= len(data):
        cid, size = struct.unpack_from("<4sI", data, pos)
        body = data[pos + 8:pos + 8 + size]
        if len(body) < size:
            raise MalformedWav(f"chunk {cid!r} truncated ({len(body)} of {size} bytes)")
        yield cid, body
        pos += 8 + size + (size & 1)


def parse_header(data: bytes):
    """Validate a RIFF/WAVE byte string; return ``(sample_rate, data_chunk)``."""
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MalformedWav("missing RIFF/WAVE magic")
    fmt = None
    pcm = None
    for cid, body in _iter_chunks(data):
        if cid == b"fmt ":
            if len(body) < 16:
                raise MalformedWav("fmt chunk shorter than 16 bytes")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif cid == b"data":
            pcm = body
            break
    if fmt is None:
        raise MalformedWav("no fmt chunk")
    if pcm is None:
        raise MalformedWav("no data chunk")
    code, channels, rate, _, _, bits = fmt
    if code != PCM_FORMAT:
        raise UnsupportedFormat(f"format code {code} (only PCM=1 is supported)")
    if bits != 16:
        raise UnsupportedFormat(f"{bits}-bit samples (only 16-bit is supported)")
    if channels != 1:
        raise UnsupportedFormat(f"{channels} channels (only mono is supported)")
    if rate <= 0:
        raise MalformedWav("sample rate of zero")
    return rate, pcm


def read_wav(path) -> AudioBuffer:
    with open(path, "rb") as fh:
        data = fh.read()
    rate, pcm = parse_header(data)
    codes = np.frombuffer(pcm[: len(pcm) // 2 * 2], dtype="<i2")
    return AudioBuffer(codes.astype(np.float64) / DECODE_SCALE, rate)


def wav_info(path):
    """``(sample_rate, n_frames)`` from the header, without decoding."""
    rate, pcm = parse_header(open(path, "rb").read())
    return rate, len(pcm) // 2


def encode_wav(buf: AudioBuffer) -> bytes:
    if len(buf) == 0:
        raise EmptyBuffer("cannot write an empty buffer")
    pcm = quantize(buf.samples).tobytes()
    rate = buf.sample_rate
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(pcm), b"WAVE",
        b"fmt ", 16, PCM_FORMAT, 1, rate, rate * 2, 2, 16,
        b"data", len(pcm),
    )
    return header + pcm


def write_wav(buf: AudioBuffer, path) -> None:
    """Write ``buf`` as 16-bit mono PCM.  Raises OSError on I/O failure."""
    payload = encode_wav(buf)
    tmp = f"{os.fspath(path)}.part"
    with open(tmp, "wb") as fh:
        fh.write(payload)
    os.replace(tmp, path)
