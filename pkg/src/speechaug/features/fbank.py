"""Log mel filterbank (FBANK) features."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..audio_io import AudioBuffer
from ..dsp.resample import round_half_up
from ..errors import RateMismatch, TooShort


@dataclass(frozen=True)
class FbankConfig:
    sample_rate_hz: int = 16000
    frame_length_ms: float = 25.0
    frame_shift_ms: float = 10.0
    n_fft: int = 512
    n_mels: int = 80
    f_min_hz: float = 20.0
    f_max_hz: float = 7600.0
    log_floor: float = 1e-10
    preemphasis: float = 0.97

    def __post_init__(self):
        if self.n_mels < 1:
            raise ValueError("n_mels must be at least 1")
        if not 0 <= self.f_min_hz < self.f_max_hz <= self.sample_rate_hz / 2:
            raise ValueError("need 0 <= f_min < f_max <= sample_rate / 2")
        if not 0 < self.frame_shift_ms <= self.frame_length_ms:
            raise ValueError("need 0 < frame_shift <= frame_length")
        if self.n_fft < self.frame_length:
            raise ValueError("n_fft shorter than the frame")
        if not self.log_floor > 0:
            raise ValueError("log_floor must be positive")

    @property
    def frame_length(self) -> int:
        return round_half_up(self.frame_length_ms * self.sample_rate_hz / 1000.0)

    @property
    def frame_shift(self) -> int:
        return round_half_up(self.frame_shift_ms * self.sample_rate_hz / 1000.0)


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Row-major ``rows x cols`` log energies (time x mel bin)."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("feature data must be 2-D")
        object.__setattr__(self, "data", np.ascontiguousarray(arr))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other):
        if not isinstance(other, FeatureMatrix):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    __hash__ = None  # type: ignore[assignment]


def hz_to_mel(f):
    return 1127.0 * np.log1p(np.asarray(f, dtype=np.float64) / 700.0)


def mel_to_hz(m):
    return 700.0 * np.expm1(np.asarray(m, dtype=np.float64) / 1127.0)


def mel_edges_hz(cfg: FbankConfig) -> np.ndarray:
    """``n_mels + 2`` band edges; filter ``i`` spans ``edges[i]..edges[i+2]``."""
    mels = np.linspace(hz_to_mel(cfg.f_min_hz), hz_to_mel(cfg.f_max_hz), cfg.n_mels + 2)
    return mel_to_hz(mels)


def mel_filterbank(cfg: FbankConfig) -> np.ndarray:
    """Triangular filters on the mel axis, shape ``(n_mels, n_fft // 2 + 1)``."""
    mels = np.linspace(hz_to_mel(cfg.f_min_hz), hz_to_mel(cfg.f_max_hz), cfg.n_mels + 2)
    bin_mel = hz_to_mel(np.arange(cfg.n_fft // 2 + 1) * cfg.sample_rate_hz / cfg.n_fft)
    left, center, right = mels[:-2, None], mels[1:-1, None], mels[2:, None]
    up = (bin_mel[None, :] - left) / (center - left)
    down = (right - bin_mel[None, :]) / (right - center)
    return np.maximum(0.0, np.minimum(up, down))


def num_frames(n_samples: int, cfg: FbankConfig) -> int:
    return 1 + (n_samples - cfg.frame_length) // cfg.frame_shift


def compute_fbank(buf: AudioBuffer, cfg: FbankConfig = FbankConfig()) -> FeatureMatrix:
    if buf.sample_rate != cfg.sample_rate_hz:
        raise RateMismatch(f"buffer is {buf.sample_rate} Hz, config expects {cfg.sample_rate_hz} Hz")
    flen, fshift = cfg.frame_length, cfg.frame_shift
    if len(buf) < flen:
        raise TooShort(f"{len(buf)} samples is shorter than one {flen}-sample frame")

    n = num_frames(len(buf), cfg)
    idx = np.arange(flen)[None, :] + fshift * np.arange(n)[:, None]
    frames = buf.samples[idx]
    frames = frames - frames.mean(axis=1, keepdims=True)
    # first sample pre-emphasized against itself
    prev = np.concatenate([frames[:, :1], frames[:, :-1]], axis=1)
    frames = frames - cfg.preemphasis * prev
    frames = frames * np.hanning(flen)[None, :]
    power = np.abs(np.fft.rfft(frames, n=cfg.n_fft, axis=1)) ** 2
    energies = power @ mel_filterbank(cfg).T
    return FeatureMatrix(np.log(np.maximum(energies, cfg.log_floor)))
