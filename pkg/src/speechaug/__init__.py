"""Seeded speech-corpus augmentation toolkit.

Waveform perturbations live in :mod:`speechaug.dsp`, features in
:mod:`speechaug.features`, corpus tooling in :mod:`speechaug.corpus` and
CER scoring in :mod:`speechaug.scoring`.
"""
from ._backend import NAME as BACKEND
from .audio_io import AudioBuffer, read_wav, write_wav

__version__ = "0.1.0"

__all__ = ["AudioBuffer", "BACKEND", "read_wav", "write_wav", "__version__"]
