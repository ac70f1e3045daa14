import numpy as np
import pytest

from speechaug import _kernels_py
from speechaug.audio_io import AudioBuffer, write_wav
from speechaug.corpus import Manifest, Utterance

try:
    from speechaug import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

SR = 16000


def sine(freq, seconds=2.0, amp=0.5, sr=SR):
    t = np.arange(int(round(seconds * sr))) / sr
    return AudioBuffer(amp * np.sin(2 * np.pi * freq * t), sr)


def fft_peak(x, sr=SR):
    """(peak frequency, bin width) of a Hann-windowed magnitude spectrum."""
    x = np.asarray(x, dtype=np.float64)
    spec = np.abs(np.fft.rfft(x * np.hanning(len(x))))
    return np.argmax(spec) * sr / len(x), sr / len(x)


def spectral_centroid(x, sr=SR):
    spec = np.abs(np.fft.rfft(np.asarray(x) * np.hanning(len(x)))) ** 2
    freqs = np.fft.rfftfreq(len(x), 1 / sr)
    return float((spec * freqs).sum() / spec.sum())


def speech_like_noise(n, seed=0, sr=SR):
    """Noise shaped by a crude syllabic envelope; deterministic."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    # one-pole lowpass keeps most energy below ~2 kHz
    y = np.empty(n)
    acc = 0.0
    for i, v in enumerate(x):
        acc = 0.7 * acc + 0.3 * v
        y[i] = acc
    env = 0.5 + 0.5 * np.sin(2 * np.pi * 4 * np.arange(n) / sr)
    y = y * env
    return AudioBuffer(0.5 * y / np.abs(y).max(), sr)


def make_corpus(root, n_utts=10, seconds=0.5, n_speakers=3, name="A", seed=0):
    """Write ``n_utts`` short WAVs and return their manifest."""
    rng = np.random.default_rng(seed)
    root.mkdir(parents=True, exist_ok=True)
    utts = []
    for i in range(n_utts):
        n = int(seconds * SR) + int(rng.integers(0, 800))
        freq = 150 + 40 * (i % 7)
        t = np.arange(n) / SR
        x = 0.3 * np.sin(2 * np.pi * freq * t) + 0.05 * rng.standard_normal(n)
        path = root / f"{name}{i:03d}.wav"
        write_wav(AudioBuffer(x, SR), path)
        utts.append(Utterance(f"{name}{i:03d}", f"spk{i % n_speakers}", str(path), n / SR, f"句子{i}"))
    return Manifest(name, utts)


KERNEL_BACKENDS = [pytest.param(_kernels_py, id="python")]
if _kernels_c is not None:
    KERNEL_BACKENDS.insert(0, pytest.param(_kernels_c, id="cython"))


@pytest.fixture(params=KERNEL_BACKENDS)
def kernel_module(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
