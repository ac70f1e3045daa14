# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops.

Every function here has a twin in ``_kernels_py`` that performs the same
floating-point operations in the same order, so both backends produce
bit-identical output.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor, sqrt

cnp.import_array()


def polyphase_resample(const double[::1] x, const double[:, ::1] table,
                       Py_ssize_t out_len, double step):
    """Evaluate ``x`` at times ``j * step`` through an interpolated phase table.

    ``table`` has ``n_phases + 1`` rows of ``taps`` coefficients; row ``p``
    holds the kernel for fractional offset ``p / n_phases``.
    """
    cdef Py_ssize_t n_phases = table.shape[0] - 1
    cdef Py_ssize_t taps = table.shape[1]
    cdef Py_ssize_t half = taps // 2
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.zeros(out_len, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t j, k, i0, p, idx
    cdef double t, frac, pos, a, acc, coef

    for j in range(out_len):
        t = j * step
        i0 = <Py_ssize_t>floor(t)
        frac = t - i0
        pos = frac * n_phases
        p = <Py_ssize_t>floor(pos)
        if p >= n_phases:
            p = n_phases - 1
        a = pos - p
        acc = 0.0
        for k in range(taps):
            idx = i0 - half + 1 + k
            if idx < 0 or idx >= n:
                continue
            coef = table[p, k] * (1.0 - a) + table[p + 1, k] * a
            acc = acc + x[idx] * coef
        out[j] = acc
    return out_arr


def wsola_core(const double[::1] xpad, Py_ssize_t pad, Py_ssize_t out_len,
               Py_ssize_t frame, Py_ssize_t hop, Py_ssize_t seek, double factor,
               const double[::1] window):
    """Overlap-add frames picked by normalized cross-correlation search.

    ``xpad`` is the input with ``pad`` zeros on the left and enough on the
    right for every candidate frame.  Returns ``out_len`` samples.
    """
    cdef Py_ssize_t overlap = frame - hop
    cdef Py_ssize_t half = frame // 2
    cdef Py_ssize_t xlen = xpad.shape[0]
    cdef Py_ssize_t buf_len = out_len + 2 * frame
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y_arr = np.zeros(buf_len, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w_arr = np.zeros(buf_len, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] res_arr = np.zeros(out_len, dtype=np.float64)
    cdef double[::1] y = y_arr
    cdef double[::1] wsum = w_arr
    cdef double[::1] res = res_arr
    cdef Py_ssize_t k = 0, s, a_nom, a, prev_a = 0, d, d_lo, d_hi, best_d, n, base
    cdef double acc, energy, score, best_score

    while k * hop - half < out_len:
        s = k * hop - half + frame
        a_nom = <Py_ssize_t>floor(k * hop * factor + 0.5) - half + pad
        best_d = 0
        if k > 0:
            d_lo = -seek
            if a_nom + d_lo < 0:
                d_lo = -a_nom
            d_hi = seek
            if a_nom + d_hi + frame > xlen:
                d_hi = xlen - frame - a_nom
            base = prev_a + hop
            best_score = -1.0e300
            # delta 0 first so that ties (e.g. silence) keep the nominal position
            for d in range(0, d_hi + 1):
                acc = 0.0
                energy = 0.0
                for n in range(overlap):
                    acc = acc + xpad[base + n] * xpad[a_nom + d + n]
                    energy = energy + xpad[a_nom + d + n] * xpad[a_nom + d + n]
                score = acc / sqrt(energy) if energy > 0.0 else 0.0
                if score > best_score:
                    best_score = score
                    best_d = d
            for d in range(-1, d_lo - 1, -1):
                acc = 0.0
                energy = 0.0
                for n in range(overlap):
                    acc = acc + xpad[base + n] * xpad[a_nom + d + n]
                    energy = energy + xpad[a_nom + d + n] * xpad[a_nom + d + n]
                score = acc / sqrt(energy) if energy > 0.0 else 0.0
                if score > best_score:
                    best_score = score
                    best_d = d
        a = a_nom + best_d
        for n in range(frame):
            y[s + n] = y[s + n] + window[n] * xpad[a + n]
            wsum[s + n] = wsum[s + n] + window[n]
        prev_a = a
        k += 1

    for n in range(out_len):
        if wsum[frame + n] > 1e-12:
            res[n] = y[frame + n] / wsum[frame + n]
    return res_arr


def comb_bank(const double[::1] x, const long[::1] delays, double feedback, double damp):
    """Sum of parallel lowpass-feedback comb filters."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t n_comb = delays.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] line_arr
    cdef double[::1] line
    cdef Py_ssize_t i, t, idx, d
    cdef double store, yv

    for i in range(n_comb):
        d = delays[i]
        line_arr = np.zeros(d, dtype=np.float64)
        line = line_arr
        store = 0.0
        idx = 0
        for t in range(n):
            yv = line[idx]
            store = yv * (1.0 - damp) + store * damp
            line[idx] = x[t] + store * feedback
            idx += 1
            if idx == d:
                idx = 0
            out[t] = out[t] + yv
    return out_arr


def allpass_chain(const double[::1] x, const long[::1] delays, double gain):
    """Series Schroeder allpass sections."""
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.array(x, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] line_arr
    cdef double[::1] line
    cdef Py_ssize_t i, t, idx, d
    cdef double inp, bufout

    for i in range(delays.shape[0]):
        d = delays[i]
        line_arr = np.zeros(d, dtype=np.float64)
        line = line_arr
        idx = 0
        for t in range(n):
            inp = out[t]
            bufout = line[idx]
            line[idx] = inp + bufout * gain
            out[t] = bufout - inp
            idx += 1
            if idx == d:
                idx = 0
    return out_arr


def edit_table(const int[::1] ref, const int[::1] hyp):
    """Unit-cost Levenshtein table of shape ``(len(ref)+1, len(hyp)+1)``."""
    cdef Py_ssize_t n = ref.shape[0]
    cdef Py_ssize_t m = hyp.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=2] tab_arr = np.zeros((n + 1, m + 1), dtype=np.int32)
    cdef int[:, ::1] tab = tab_arr
    cdef Py_ssize_t i, j
    cdef int best, cand

    for i in range(n + 1):
        tab[i, 0] = <int>i
    for j in range(m + 1):
        tab[0, j] = <int>j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            best = tab[i - 1, j - 1] + (0 if ref[i - 1] == hyp[j - 1] else 1)
            cand = tab[i, j - 1] + 1
            if cand < best:
                best = cand
            cand = tab[i - 1, j] + 1
            if cand < best:
                best = cand
            tab[i, j] = best
    return tab_arr


cdef void _align(const int* a, Py_ssize_t n, const int* b, Py_ssize_t m,
                 int* tab, int* counts) noexcept nogil:
    # tab is a scratch (n+1) x (m+1) table; counts <- sub, del, ins, correct
    cdef Py_ssize_t w = m + 1
    cdef Py_ssize_t i, j
    cdef int best, cand, cur
    cdef bint same
    for i in range(n + 1):
        tab[i * w] = <int>i
    for j in range(m + 1):
        tab[j] = <int>j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            best = tab[(i - 1) * w + j - 1] + (0 if a[i - 1] == b[j - 1] else 1)
            cand = tab[i * w + j - 1] + 1
            if cand < best:
                best = cand
            cand = tab[(i - 1) * w + j] + 1
            if cand < best:
                best = cand
            tab[i * w + j] = best
    counts[0] = 0
    counts[1] = 0
    counts[2] = 0
    counts[3] = 0
    i = n
    j = m
    while i > 0 or j > 0:
        cur = tab[i * w + j]
        if i > 0 and j > 0:
            same = a[i - 1] == b[j - 1]
            if cur == tab[(i - 1) * w + j - 1] + (0 if same else 1):
                if same:
                    counts[3] += 1
                else:
                    counts[0] += 1
                i -= 1
                j -= 1
                continue
        if j > 0 and cur == tab[i * w + j - 1] + 1:
            counts[2] += 1
            j -= 1
        else:
            counts[1] += 1
            i -= 1


def align_counts(const int[::1] ref, const int[::1] hyp):
    """``(substitutions, deletions, insertions, correct)`` of one alignment.

    Backtrace preference on ties: diagonal, then insertion, then deletion.
    """
    cdef Py_ssize_t n = ref.shape[0]
    cdef Py_ssize_t m = hyp.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] tab = np.empty((n + 1) * (m + 1), dtype=np.int32)
    cdef int counts[4]
    cdef const int* pa = &ref[0] if n > 0 else NULL
    cdef const int* pb = &hyp[0] if m > 0 else NULL
    _align(pa, n, pb, m, <int*>tab.data, counts)
    return (counts[0], counts[1], counts[2], counts[3])


def align_counts_cross(const int[:, ::1] refs, const int[::1] ref_lens,
                       const int[:, ::1] hyps, const int[::1] hyp_lens):
    """Alignment counts for every (ref, hyp) pair; shape ``(n_ref, n_hyp, 4)``.

    Rows of ``refs``/``hyps`` are zero-padded code sequences.
    """
    cdef Py_ssize_t nr = refs.shape[0]
    cdef Py_ssize_t nh = hyps.shape[0]
    cdef Py_ssize_t max_r = refs.shape[1]
    cdef Py_ssize_t max_h = hyps.shape[1]
    cdef cnp.ndarray[cnp.int32_t, ndim=3] out_arr = np.zeros((nr, nh, 4), dtype=np.int32)
    cdef int[:, :, ::1] out = out_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] tab = np.empty((max_r + 1) * (max_h + 1), dtype=np.int32)
    cdef int* ptab = <int*>tab.data
    cdef int counts[4]
    cdef Py_ssize_t r, h
    with nogil:
        for r in range(nr):
            for h in range(nh):
                _align(&refs[r, 0], ref_lens[r], &hyps[h, 0], hyp_lens[h], ptab, counts)
                out[r, h, 0] = counts[0]
                out[r, h, 1] = counts[1]
                out[r, h, 2] = counts[2]
                out[r, h, 3] = counts[3]
    return out_arr
