"""Waveform perturbations: speed, tempo, pitch, volume and reverberation."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..audio_io import AudioBuffer
from ..errors import CentsOutOfRange, GainOutOfRange
from .resample import resample, speed_perturb
from .reverb import ReverbConfig, reverberate
from .wsola import DEFAULT_WSOLA, WsolaConfig, tempo_perturb, wsola_stretch

MIN_GAIN = 0.125
MAX_GAIN = 2.0
MAX_CENTS = 1200.0


def cents_to_ratio(cents: float) -> float:
    return 2.0 ** (cents / 1200.0)


def pitch_shift_cents(buf: AudioBuffer, cents: float, cfg: WsolaConfig = DEFAULT_WSOLA) -> AudioBuffer:
    """Shift pitch by ``cents`` at (nearly) constant duration.

    Resamples by ``r = 2**(cents/1200)`` and then restores the duration with
    WSOLA at ``1/r``.
    """
    cents = float(cents)
    if not abs(cents) <= MAX_CENTS:
        raise CentsOutOfRange(f"{cents} cents outside [-1200, 1200]")
    if cents == 0.0:
        return AudioBuffer(buf.samples.copy(), buf.sample_rate)
    r = cents_to_ratio(cents)
    return wsola_stretch(resample(buf, r), 1.0 / r, cfg)


def volume_scale(buf: AudioBuffer, gain: float) -> AudioBuffer:
    gain = float(gain)
    if not MIN_GAIN <= gain <= MAX_GAIN:
        raise GainOutOfRange(f"gain {gain} outside [{MIN_GAIN}, {MAX_GAIN}]")
    return AudioBuffer(np.clip(buf.samples * gain, -1.0, 1.0), buf.sample_rate)


class PerturbationKind(str, Enum):
    SPEED = "speed"
    TEMPO = "tempo"
    PITCH_CENTS = "pitch_cents"
    VOLUME = "volume"


_LIMITS = {
    PerturbationKind.SPEED: (0.5, 2.0),
    PerturbationKind.TEMPO: (0.5, 2.0),
    PerturbationKind.PITCH_CENTS: (-MAX_CENTS, MAX_CENTS),
    PerturbationKind.VOLUME: (MIN_GAIN, MAX_GAIN),
}


@dataclass(frozen=True)
class PerturbationFactor:
    kind: PerturbationKind
    value: float

    def __post_init__(self):
        kind = PerturbationKind(self.kind)
        object.__setattr__(self, "kind", kind)
        lo, hi = _LIMITS[kind]
        if not lo <= self.value <= hi:
            raise ValueError(f"{kind.value} value {self.value} outside [{lo}, {hi}]")

    def apply(self, buf: AudioBuffer, cfg: WsolaConfig = DEFAULT_WSOLA) -> AudioBuffer:
        if self.kind is PerturbationKind.SPEED:
            return speed_perturb(buf, self.value)
        if self.kind is PerturbationKind.TEMPO:
            return tempo_perturb(buf, self.value, cfg)
        if self.kind is PerturbationKind.PITCH_CENTS:
            return pitch_shift_cents(buf, self.value, cfg)
        return volume_scale(buf, self.value)


__all__ = [
    "DEFAULT_WSOLA",
    "PerturbationFactor",
    "PerturbationKind",
    "ReverbConfig",
    "WsolaConfig",
    "cents_to_ratio",
    "pitch_shift_cents",
    "resample",
    "reverberate",
    "speed_perturb",
    "tempo_perturb",
    "volume_scale",
    "wsola_stretch",
]
