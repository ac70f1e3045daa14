"""Pure-Python/numpy twins of the compiled kernels in ``_kernels.pyx``.

Arithmetic is ordered exactly as in the compiled loops (sequential
accumulation, same candidate scan order) so results match bit for bit.
"""
import math

import numpy as np


def polyphase_resample(x, table, out_len, step):
    x = np.asarray(x, dtype=np.float64)
    n_phases = table.shape[0] - 1
    taps = table.shape[1]
    half = taps // 2
    n = x.shape[0]
    if out_len == 0:
        return np.zeros(0)

    t = np.arange(out_len, dtype=np.float64) * step
    i0 = np.floor(t).astype(np.int64)
    frac = t - i0
    pos = frac * n_phases
    p = np.minimum(np.floor(pos).astype(np.int64), n_phases - 1)
    a = pos - p

    # zero padding stands in for the compiled loop's bounds skip
    lo = half
    xp = np.concatenate([np.zeros(lo), x, np.zeros(taps + 1)])
    acc = np.zeros(out_len)
    one_minus_a = 1.0 - a
    for k in range(taps):
        idx = i0 - half + 1 + k
        idx = np.clip(idx, -lo, n)  # n maps into the right zero pad
        coef = table[p, k] * one_minus_a + table[p + 1, k] * a
        acc = acc + xp[idx + lo] * coef
    return acc


def wsola_core(xpad, pad, out_len, frame, hop, seek, factor, window):
    xpad = np.asarray(xpad, dtype=np.float64)
    window = np.asarray(window, dtype=np.float64)
    overlap = frame - hop
    half = frame // 2
    xlen = xpad.shape[0]
    y = np.zeros(out_len + 2 * frame)
    wsum = np.zeros(out_len + 2 * frame)

    k = 0
    prev_a = 0
    while k * hop - half < out_len:
        s = k * hop - half + frame
        a_nom = int(math.floor(k * hop * factor + 0.5)) - half + pad
        best_d = 0
        if k > 0:
            d_lo = max(-seek, -a_nom)
            d_hi = min(seek, xlen - frame - a_nom)
            order = np.concatenate([np.arange(0, d_hi + 1), np.arange(-1, d_lo - 1, -1)])
            starts = a_nom + order
            tmpl = xpad[prev_a + hop:prev_a + hop + overlap]
            acc = np.zeros(order.shape[0])
            energy = np.zeros(order.shape[0])
            for n in range(overlap):
                seg = xpad[starts + n]
                acc = acc + tmpl[n] * seg
                energy = energy + seg * seg
            safe = np.where(energy > 0.0, energy, 1.0)
            score = np.where(energy > 0.0, acc / np.sqrt(safe), 0.0)
            best_d = int(order[int(np.argmax(score))])
        a = a_nom + best_d
        y[s:s + frame] = y[s:s + frame] + window * xpad[a:a + frame]
        wsum[s:s + frame] = wsum[s:s + frame] + window
        prev_a = a
        k += 1

    body = y[frame:frame + out_len]
    wb = wsum[frame:frame + out_len]
    res = np.zeros(out_len)
    ok = wb > 1e-12
    res[ok] = body[ok] / wb[ok]
    return res


def comb_bank(x, delays, feedback, damp):
    xs = [float(v) for v in x]
    n = len(xs)
    out = np.zeros(n)
    for d in delays:
        d = int(d)
        line = [0.0] * d
        ys = [0.0] * n
        store = 0.0
        idx = 0
        for t in range(n):
            yv = line[idx]
            store = yv * (1.0 - damp) + store * damp
            line[idx] = xs[t] + store * feedback
            idx += 1
            if idx == d:
                idx = 0
            ys[t] = yv
        out = out + np.asarray(ys)
    return out


def allpass_chain(x, delays, gain):
    out = [float(v) for v in x]
    n = len(out)
    for d in delays:
        d = int(d)
        line = [0.0] * d
        idx = 0
        for t in range(n):
            inp = out[t]
            bufout = line[idx]
            line[idx] = inp + bufout * gain
            out[t] = bufout - inp
            idx += 1
            if idx == d:
                idx = 0
    return np.asarray(out, dtype=np.float64)


def edit_table(ref, hyp):
    ref = list(ref)
    hyp = list(hyp)
    n, m = len(ref), len(hyp)
    prev = list(range(m + 1))
    rows = [prev]
    for i in range(1, n + 1):
        cur = [i] + [0] * m
        r = ref[i - 1]
        for j in range(1, m + 1):
            best = prev[j - 1] + (0 if r == hyp[j - 1] else 1)
            cand = cur[j - 1] + 1
            if cand < best:
                best = cand
            cand = prev[j] + 1
            if cand < best:
                best = cand
            cur[j] = best
        rows.append(cur)
        prev = cur
    return np.asarray(rows, dtype=np.int32).reshape(n + 1, m + 1)


def align_counts(ref, hyp):
    a = list(ref)
    b = list(hyp)
    tab = edit_table(a, b)
    i, j = len(a), len(b)
    sub = dele = ins = cor = 0
    while i > 0 or j > 0:
        cur = tab[i, j]
        if i > 0 and j > 0:
            same = a[i - 1] == b[j - 1]
            if cur == tab[i - 1, j - 1] + (0 if same else 1):
                if same:
                    cor += 1
                else:
                    sub += 1
                i -= 1
                j -= 1
                continue
        if j > 0 and cur == tab[i, j - 1] + 1:
            ins += 1
            j -= 1
        else:
            dele += 1
            i -= 1
    return (sub, dele, ins, cor)


def align_counts_cross(refs, ref_lens, hyps, hyp_lens):
    out = np.zeros((len(ref_lens), len(hyp_lens), 4), dtype=np.int32)
    for r, rl in enumerate(ref_lens):
        for h, hl in enumerate(hyp_lens):
            out[r, h] = align_counts(refs[r, :rl], hyps[h, :hl])
    return out
