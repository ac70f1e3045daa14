"""Schroeder/freeverb-style reverberation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._backend import kernels
from ..audio_io import AudioBuffer
from ..errors import ConfigOutOfRange
from .resample import round_half_up

REFERENCE_RATE = 44100
COMB_DELAYS = (1116, 1188, 1277, 1356, 1422, 1491, 1557, 1617)
ALLPASS_DELAYS = (556, 441, 341, 225)
ALLPASS_GAIN = 0.5
# freeverb's fixed input attenuation and wet make-up gain
INPUT_GAIN = 0.015
WET_SCALE = 3.0


@dataclass(frozen=True)
class ReverbConfig:
    reverberance: float = 0.5
    damping: float = 0.5
    wet_gain: float = 1.0
    dry_gain: float = 1.0
    tail_ms: float = 500.0

    def __post_init__(self):
        if not 0.0 <= self.reverberance <= 1.0:
            raise ConfigOutOfRange("reverberance must lie in [0, 1]")
        if not 0.0 <= self.damping <= 1.0:
            raise ConfigOutOfRange("damping must lie in [0, 1]")
        if not self.tail_ms >= 0.0:
            raise ConfigOutOfRange("tail_ms must be non-negative")
        if not (np.isfinite(self.wet_gain) and np.isfinite(self.dry_gain)):
            raise ConfigOutOfRange("gains must be finite")

    @property
    def feedback(self) -> float:
        return 0.7 + 0.28 * self.reverberance

    @property
    def damp(self) -> float:
        return self.damping * 0.4


def scaled_delays(delays, rate: int) -> np.ndarray:
    return np.array([max(1, round_half_up(d * rate / REFERENCE_RATE)) for d in delays], dtype=np.int_)


def wet_signal(x: np.ndarray, rate: int, cfg: ReverbConfig) -> np.ndarray:
    """Reverberant component only: 8 parallel combs into 4 series allpasses."""
    x = np.ascontiguousarray(x, dtype=np.float64) * INPUT_GAIN
    combs = kernels.comb_bank(x, scaled_delays(COMB_DELAYS, rate), cfg.feedback, cfg.damp)
    wet = kernels.allpass_chain(np.ascontiguousarray(combs), scaled_delays(ALLPASS_DELAYS, rate), ALLPASS_GAIN)
    return wet * WET_SCALE


def reverberate(buf: AudioBuffer, cfg: ReverbConfig = ReverbConfig()) -> AudioBuffer:
    """``dry_gain * input + wet_gain * wet``, extended by ``tail_ms`` and clamped."""
    if not isinstance(cfg, ReverbConfig):
        raise ConfigOutOfRange("cfg must be a ReverbConfig")
    tail = round_half_up(cfg.tail_ms * buf.sample_rate / 1000.0)
    x = np.concatenate([buf.samples, np.zeros(tail)])
    out = cfg.dry_gain * x
    if cfg.wet_gain != 0.0:
        out = out + cfg.wet_gain * wet_signal(x, buf.sample_rate, cfg)
    return AudioBuffer(out, buf.sample_rate)
