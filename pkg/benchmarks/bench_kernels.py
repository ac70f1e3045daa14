"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat N] [--seconds S]

Each kernel is run on the same inputs through both backends; outputs are
checked for bit equality before timings are reported.
"""
import argparse
import time

import numpy as np

from speechaug import _kernels_py
from speechaug.dsp.reverb import ALLPASS_DELAYS, ALLPASS_GAIN, COMB_DELAYS, ReverbConfig, scaled_delays
from speechaug.dsp.resample import phase_table
from speechaug.dsp.wsola import DEFAULT_WSOLA, hann

try:
    from speechaug import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

SR = 16000


def cases(seconds):
    rng = np.random.default_rng(0)
    x = 0.3 * rng.standard_normal(int(seconds * SR))
    cfg = ReverbConfig()
    combs = scaled_delays(COMB_DELAYS, SR)
    allpasses = scaled_delays(ALLPASS_DELAYS, SR)

    factor = 1.1
    table = phase_table(factor)
    out_len = int(np.floor(len(x) / factor + 0.5))

    frame, hop, seek = (DEFAULT_WSOLA.frame_samples(SR), DEFAULT_WSOLA.hop_samples(SR),
                        DEFAULT_WSOLA.seek_samples(SR))
    pad = frame + seek
    xpad = np.concatenate([np.zeros(pad), x, np.zeros(3 * frame + 2 * hop + seek)])
    window = hann(frame)

    ref = rng.integers(0, 3000, 40).astype(np.int32)
    hyp = ref.copy()
    hyp[::7] = 1

    return {
        "resample": lambda k: k.polyphase_resample(x, table, out_len, factor),
        "wsola": lambda k: k.wsola_core(xpad, pad, out_len, frame, hop, seek, factor, window),
        "comb_bank": lambda k: k.comb_bank(x, combs, cfg.feedback, cfg.damp),
        "allpass": lambda k: k.allpass_chain(x, allpasses, ALLPASS_GAIN),
        "align": lambda k: k.align_counts(ref, hyp),
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seconds", type=float, default=2.0, help="signal length for the DSP kernels")
    args = ap.parse_args(argv)

    if _kernels_c is None:
        print("compiled kernels are not built; install with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'kernel':<10} {'cython ms':>10} {'python ms':>10} {'speedup':>8}  identical")
    for name, call in cases(args.seconds).items():
        a, b = call(_kernels_c), call(_kernels_py)
        same = np.array_equal(np.asarray(a), np.asarray(b))
        tc = best_of(lambda: call(_kernels_c), args.repeat)
        tp = best_of(lambda: call(_kernels_py), args.repeat)
        print(f"{name:<10} {1e3 * tc:10.2f} {1e3 * tp:10.2f} {tp / tc:8.1f}  {same}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
