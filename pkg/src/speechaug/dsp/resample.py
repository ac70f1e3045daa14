"""Windowed-sinc polyphase resampling with playback-speed semantics."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .._backend import kernels
from ..audio_io import AudioBuffer
from ..errors import EmptyBuffer, FactorOutOfRange

TAPS = 64
N_PHASES = 1024
KAISER_BETA = 8.6
CUTOFF = 0.95

MIN_FACTOR = 0.5
MAX_FACTOR = 2.0


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def check_factor(factor: float) -> float:
    factor = float(factor)
    if not (MIN_FACTOR <= factor <= MAX_FACTOR):
        raise FactorOutOfRange(f"factor {factor} outside [{MIN_FACTOR}, {MAX_FACTOR}]")
    return factor


@lru_cache(maxsize=64)
def phase_table(factor: float) -> np.ndarray:
    """Kernel table, shape ``(N_PHASES + 1, TAPS)``, for reading at ``factor`` x speed.

    Row ``p`` holds the kernel for fractional read offset ``p / N_PHASES``.
    The cutoff sits at 0.95 of the lower of the two Nyquist rates, expressed
    in cycles per input sample.
    """
    half = TAPS // 2
    fc = CUTOFF * 0.5 / max(1.0, factor)
    frac = np.arange(N_PHASES + 1, dtype=np.float64)[:, None] / N_PHASES
    offs = np.arange(TAPS, dtype=np.float64)[None, :] - half + 1 - frac
    ratio = np.clip(offs / half, -1.0, 1.0)
    win = np.i0(KAISER_BETA * np.sqrt(1.0 - ratio * ratio)) / np.i0(KAISER_BETA)
    h = 2.0 * fc * np.sinc(2.0 * fc * offs) * win
    h /= h.sum(axis=1, keepdims=True)
    h.flags.writeable = False
    return np.ascontiguousarray(h)


def resample(buf: AudioBuffer, factor: float) -> AudioBuffer:
    """Play ``buf`` back ``factor`` times faster at the same sample rate.

    Output length is ``round(len / factor)`` and every frequency is multiplied
    by ``factor``.  ``factor == 1`` returns the samples unchanged.
    """
    factor = check_factor(factor)
    if len(buf) == 0:
        raise EmptyBuffer("cannot resample an empty buffer")
    if factor == 1.0:
        return AudioBuffer(buf.samples.copy(), buf.sample_rate)
    out_len = round_half_up(len(buf) / factor)
    y = kernels.polyphase_resample(
        np.ascontiguousarray(buf.samples), phase_table(factor), out_len, factor
    )
    return AudioBuffer(y, buf.sample_rate)


def speed_perturb(buf: AudioBuffer, factor: float) -> AudioBuffer:
    """Speed perturbation: duration scaled by ``1/factor``, pitch by ``factor``."""
    return resample(buf, factor)
