import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speechaug.audio_io import AudioBuffer
from speechaug.dsp import (
    PerturbationFactor,
    ReverbConfig,
    WsolaConfig,
    cents_to_ratio,
    pitch_shift_cents,
    resample,
    reverberate,
    speed_perturb,
    tempo_perturb,
    volume_scale,
    wsola_stretch,
)
from speechaug.dsp.reverb import ALLPASS_DELAYS, COMB_DELAYS, INPUT_GAIN, WET_SCALE, scaled_delays
from speechaug.errors import (
    CentsOutOfRange,
    ConfigOutOfRange,
    EmptyBuffer,
    FactorOutOfRange,
    GainOutOfRange,
    WindowLongerThanSignal,
)

from conftest import SR, fft_peak, sine, spectral_centroid, speech_like_noise
from test_kernels import freeverb_reference

HOP = 400  # default WSOLA synthesis hop at 16 kHz
RECIPE_FACTORS = [0.85, 0.88, 0.9, 1.1, 1.12, 1.15]


# --- resample / speed ----------------------------------------------------------

def test_resample_identity():
    b = sine(440, 0.5)
    out = resample(b, 1.0)
    assert np.max(np.abs(out.samples - b.samples)) <= 1e-6


def test_resample_length():
    b = AudioBuffer(np.zeros(16000), SR)
    assert len(resample(b, 0.9)) == 17778


def test_resample_moves_tone_up():
    out = resample(sine(440), 1.1)
    peak, bin_hz = fft_peak(out.samples)
    assert abs(peak - 484.0) <= bin_hz
    assert out.sample_rate == SR


def test_speed_duration_and_pitch():
    out = speed_perturb(AudioBuffer(np.zeros(SR), SR), 1.15)
    assert abs(out.duration_seconds - 1 / 1.15) <= 1 / SR
    peak, bin_hz = fft_peak(speed_perturb(sine(440), 0.9).samples)
    assert abs(peak - 396.0) <= bin_hz


def test_speed_identity_is_exact():
    b = sine(300, 0.3)
    assert speed_perturb(b, 1.0) == b


@pytest.mark.parametrize("factor", [0.49, 2.01, 0.0, -1.0])
def test_resample_factor_range(factor):
    with pytest.raises(FactorOutOfRange):
        resample(sine(440, 0.1), factor)


def test_resample_empty():
    with pytest.raises(EmptyBuffer):
        resample(AudioBuffer(np.zeros(0), SR), 1.1)


def test_downsampling_suppresses_aliases():
    # 7.8 kHz at 1.15x lands above Nyquist and sits in the stopband
    out = resample(sine(7800, 1.0, amp=0.5), 1.15)
    assert np.sqrt(np.mean(out.samples[200:-200] ** 2)) < 1e-3


@settings(max_examples=40, deadline=None)
@given(st.integers(200, 20000), st.sampled_from(RECIPE_FACTORS))
def test_speed_length_property(n, factor):
    out = speed_perturb(AudioBuffer(np.zeros(n), SR), factor)
    assert len(out) == int(np.floor(n / factor + 0.5))


# --- WSOLA / tempo ---------------------------------------------------------------

def test_wsola_identity_exact():
    b = speech_like_noise(8000)
    assert wsola_stretch(b, 1.0) == b


def test_wsola_length_bound():
    out = wsola_stretch(speech_like_noise(16000), 0.9)
    assert abs(len(out) - 17778) <= HOP


def test_wsola_preserves_tone():
    out = wsola_stretch(sine(440), 1.15)
    peak, _ = fft_peak(out.samples)
    assert abs(peak - 440) <= 4.4


def test_tempo_duration_on_speech_noise():
    out = tempo_perturb(speech_like_noise(SR), 1.12)
    assert abs(out.duration_seconds - 1 / 1.12) <= HOP / SR


def test_tempo_identity():
    b = sine(200, 0.2)
    assert tempo_perturb(b, 1.0) == b


def test_tempo_keeps_chirp_centroid():
    t = np.arange(2 * SR) / SR
    f0, f1 = 200.0, 2000.0
    phase = 2 * np.pi * (f0 * t + (f1 - f0) * t**2 / 4)
    b = AudioBuffer(0.5 * np.sin(phase), SR)
    out = tempo_perturb(b, 0.85)
    c_in, c_out = spectral_centroid(b.samples), spectral_centroid(out.samples)
    assert abs(c_out - c_in) / c_in <= 0.02


def test_wsola_window_longer_than_signal():
    with pytest.raises(WindowLongerThanSignal):
        wsola_stretch(AudioBuffer(np.zeros(100), SR), 1.1)


def test_wsola_factor_range():
    with pytest.raises(FactorOutOfRange):
        wsola_stretch(sine(440, 0.2), 2.5)


def test_wsola_config_validation():
    with pytest.raises(ConfigOutOfRange):
        WsolaConfig(overlap_fraction=1.0)
    with pytest.raises(ConfigOutOfRange):
        WsolaConfig(window_ms=0)
    with pytest.raises(ConfigOutOfRange):
        WsolaConfig(seek_ms=-1)
    cfg = WsolaConfig()
    assert (cfg.frame_samples(SR), cfg.hop_samples(SR), cfg.seek_samples(SR)) == (800, 400, 240)


def test_wsola_other_overlap_normalizes():
    cfg = WsolaConfig(window_ms=40, overlap_fraction=0.75, seek_ms=5)
    out = wsola_stretch(sine(440, 1.0), 0.9, cfg)
    mid = out.samples[2000:-2000]
    assert abs(np.sqrt(2) * np.sqrt(np.mean(mid**2)) - 0.5) < 0.05


@settings(max_examples=25, deadline=None)
@given(st.integers(1600, 24000), st.sampled_from(RECIPE_FACTORS))
def test_tempo_length_property(n, factor):
    out = tempo_perturb(AudioBuffer(np.zeros(n), SR), factor)
    assert abs(len(out) - round(n / factor)) <= HOP


# --- pitch -------------------------------------------------------------------------

def test_cents_ratio():
    assert abs(cents_to_ratio(250) - 1.15535) <= 1e-5


def test_pitch_zero_identity():
    b = speech_like_noise(4000)
    assert pitch_shift_cents(b, 0) == b


def test_pitch_octave_up():
    b = sine(440)
    out = pitch_shift_cents(b, 1200)
    peak, _ = fft_peak(out.samples)
    assert abs(peak - 880) <= 8.8
    assert abs(len(out) - len(b)) <= HOP


def test_pitch_order_is_resample_then_stretch():
    b = speech_like_noise(8000)
    r = cents_to_ratio(300)
    assert pitch_shift_cents(b, 300) == wsola_stretch(resample(b, r), 1 / r)


@pytest.mark.parametrize("cents", [1200.5, -1201, np.nan])
def test_pitch_range(cents):
    with pytest.raises(CentsOutOfRange):
        pitch_shift_cents(sine(440, 0.2), cents)


@settings(max_examples=15, deadline=None)
@given(st.integers(4000, 24000), st.integers(-1200, 1200))
def test_pitch_length_property(n, cents):
    out = pitch_shift_cents(AudioBuffer(np.zeros(n), SR), cents)
    assert abs(len(out) - n) <= HOP


@pytest.mark.parametrize("cents", [250, 370, -300])
def test_pitch_moves_tone_by_ratio(cents):
    out = pitch_shift_cents(sine(500), cents)
    peak, _ = fft_peak(out.samples)
    target = 500 * cents_to_ratio(cents)
    assert abs(peak - target) <= 0.01 * target


# --- volume ---------------------------------------------------------------------------

def test_volume_examples():
    b = AudioBuffer([0.3, 0.8, -0.8], SR)
    assert volume_scale(b, 1.0) == b
    out = volume_scale(b, 2.0).samples
    assert out[0] == 0.6 and out[1] == 1.0 and out[2] == -1.0


@pytest.mark.parametrize("gain", [0.1, 2.5, 0.0])
def test_volume_range(gain):
    with pytest.raises(GainOutOfRange):
        volume_scale(AudioBuffer([0.1], SR), gain)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.125, 2.0), st.floats(0.125, 2.0))
def test_volume_linearity_without_clamping(a, c):
    if not 0.125 <= a * c <= 2.0:
        return
    b = AudioBuffer(np.linspace(-0.2, 0.2, 101), SR)
    two = volume_scale(volume_scale(b, a), c).samples
    one = volume_scale(b, a * c).samples
    np.testing.assert_allclose(two, one, rtol=1e-12, atol=1e-15)


# --- reverb -----------------------------------------------------------------------------

def test_reverb_silence():
    out = reverberate(AudioBuffer(np.zeros(1000), SR))
    assert not out.samples.any()
    assert len(out) == 1000 + 8000


def test_reverb_identity_case():
    b = speech_like_noise(3000)
    out = reverberate(b, ReverbConfig(reverberance=0.0, wet_gain=0.0, tail_ms=0.0))
    assert out == b


def test_reverb_impulse_tail():
    imp = np.zeros(SR // 2)
    imp[0] = 1.0
    out = reverberate(AudioBuffer(imp, SR))
    late = out.samples[int(0.1 * SR) + 1:]
    assert np.max(np.abs(late)) > 1e-4


def test_reverb_matches_topology_oracle():
    cfg = ReverbConfig(reverberance=0.7, damping=0.3, wet_gain=0.8, dry_gain=0.6, tail_ms=100)
    x = np.zeros(4000)
    x[10] = 0.9
    x[2000:2010] = 0.2
    out = reverberate(AudioBuffer(x, SR), cfg)
    xp = np.concatenate([x, np.zeros(1600)])
    wet = freeverb_reference(
        xp * INPUT_GAIN, scaled_delays(COMB_DELAYS, SR), scaled_delays(ALLPASS_DELAYS, SR),
        0.7 + 0.28 * 0.7, 0.3 * 0.4, 0.5,
    ) * WET_SCALE
    expected = np.clip(0.6 * xp + 0.8 * wet, -1, 1)
    np.testing.assert_allclose(out.samples, expected, atol=1e-12)


def test_reverb_delays_scale_with_rate():
    assert scaled_delays(COMB_DELAYS, 44100).tolist() == list(COMB_DELAYS)
    assert scaled_delays((1116,), 16000).tolist() == [405]


@pytest.mark.parametrize("kw", [{"reverberance": 1.1}, {"damping": -0.1}, {"tail_ms": -1}])
def test_reverb_config_range(kw):
    with pytest.raises(ConfigOutOfRange):
        ReverbConfig(**kw)


def test_reverb_output_clamped():
    out = reverberate(AudioBuffer(np.full(2000, 0.99), SR), ReverbConfig(wet_gain=5.0))
    assert np.max(np.abs(out.samples)) <= 1.0


# --- purity / factors --------------------------------------------------------------------

@pytest.mark.parametrize(
    "fn",
    [
        lambda b: speed_perturb(b, 0.88),
        lambda b: tempo_perturb(b, 1.12),
        lambda b: pitch_shift_cents(b, 310),
        lambda b: reverberate(b),
        lambda b: volume_scale(b, 0.5),
    ],
)
def test_operations_are_pure(fn):
    b = speech_like_noise(6000, seed=3)
    before = b.samples.copy()
    out1, out2 = fn(b), fn(b)
    assert out1.samples.tobytes() == out2.samples.tobytes()
    assert np.array_equal(b.samples, before)


def test_perturbation_factor_limits():
    PerturbationFactor("volume", 0.125)
    with pytest.raises(ValueError):
        PerturbationFactor("volume", 0.1)
    with pytest.raises(ValueError):
        PerturbationFactor("speed", 2.5)
    with pytest.raises(ValueError):
        PerturbationFactor("pitch_cents", 1300)
    b = sine(440, 0.5)
    assert PerturbationFactor("speed", 1.1).apply(b) == speed_perturb(b, 1.1)
