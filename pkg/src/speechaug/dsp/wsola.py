"""WSOLA time-scale modification."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._backend import kernels
from ..audio_io import AudioBuffer
from ..errors import ConfigOutOfRange, EmptyBuffer, WindowLongerThanSignal
from .resample import check_factor, round_half_up


@dataclass(frozen=True)
class WsolaConfig:
    window_ms: float = 50.0
    overlap_fraction: float = 0.5
    seek_ms: float = 15.0

    def __post_init__(self):
        if not self.window_ms > 0:
            raise ConfigOutOfRange("window_ms must be positive")
        if not 0.0 < self.overlap_fraction < 1.0:
            raise ConfigOutOfRange("overlap_fraction must lie in (0, 1)")
        if not self.seek_ms >= 0:
            raise ConfigOutOfRange("seek_ms must be non-negative")

    def frame_samples(self, rate: int) -> int:
        return max(2, round_half_up(self.window_ms * rate / 1000.0))

    def hop_samples(self, rate: int) -> int:
        frame = self.frame_samples(rate)
        return min(frame - 1, max(1, round_half_up(frame * (1.0 - self.overlap_fraction))))

    def seek_samples(self, rate: int) -> int:
        return round_half_up(self.seek_ms * rate / 1000.0)


DEFAULT_WSOLA = WsolaConfig()


def hann(n: int) -> np.ndarray:
    """Periodic Hann window; shifted copies at 50 % overlap sum to one."""
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def wsola_stretch(buf: AudioBuffer, factor: float, cfg: WsolaConfig = DEFAULT_WSOLA) -> AudioBuffer:
    """Change duration by ``1/factor`` while keeping pitch.

    Output frames sit on a fixed synthesis hop.  Frame ``k`` is read from the
    input around ``round(k * hop * factor)``, shifted by up to ``seek`` samples
    to the position whose leading overlap best matches (normalized
    cross-correlation) the natural continuation of the previous frame.
    """
    factor = check_factor(factor)
    if len(buf) == 0:
        raise EmptyBuffer("cannot stretch an empty buffer")
    if factor == 1.0:
        return AudioBuffer(buf.samples.copy(), buf.sample_rate)
    rate = buf.sample_rate
    frame = cfg.frame_samples(rate)
    hop = cfg.hop_samples(rate)
    seek = cfg.seek_samples(rate)
    if len(buf) < frame:
        raise WindowLongerThanSignal(f"{len(buf)} samples is shorter than the {frame}-sample window")

    out_len = round_half_up(len(buf) / factor)
    pad = frame + seek
    right = 3 * frame + 2 * hop + seek
    xpad = np.concatenate([np.zeros(pad), buf.samples, np.zeros(right)])
    y = kernels.wsola_core(xpad, pad, out_len, frame, hop, seek, factor, hann(frame))
    return AudioBuffer(y, rate)


def tempo_perturb(buf: AudioBuffer, factor: float, cfg: WsolaConfig = DEFAULT_WSOLA) -> AudioBuffer:
    return wsola_stretch(buf, factor, cfg)
