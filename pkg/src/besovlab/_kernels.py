"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The backend is chosen at import time: numba is used when available unless
the environment variable ``BESOVLAB_DISABLE_NUMBA`` is set to ``1``/``true``.
Both paths produce identical results (same arithmetic, same order); the
parity is covered by tests/test_kernels.py and timed by
benchmarks/bench_kernels.py.
"""

from __future__ import annotations

import math
import os

import numpy as np

_DISABLED = os.environ.get("BESOVLAB_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

if not _DISABLED:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _HAVE_NUMBA = False
else:
    _HAVE_NUMBA = False

USING_NUMBA = _HAVE_NUMBA


# ---------------------------------------------------------------------------
# linear interpolation with extension values
# ---------------------------------------------------------------------------

def _interp_eval_np(samples, origin, spacing, left, right, xs):
    n = samples.shape[0]
    t = (xs - origin) / spacing
    i = np.clip(np.floor(t).astype(np.int64), 0, n - 2)
    frac = t - i
    vals = samples[i] + (samples[i + 1] - samples[i]) * frac
    return np.where(t < 0.0, left, np.where(t > n - 1.0, right, vals))


if USING_NUMBA:

    @njit(cache=True)
    def _interp_eval_nb(samples, origin, spacing, left, right, xs):
        n = samples.shape[0]
        out = np.empty(xs.shape[0])
        inv = 1.0 / spacing
        for k in range(xs.shape[0]):
            t = (xs[k] - origin) * inv
            if t < 0.0:
                out[k] = left
            elif t > n - 1.0:
                out[k] = right
            else:
                i = int(t)
                if i > n - 2:
                    i = n - 2
                frac = t - i
                out[k] = samples[i] + (samples[i + 1] - samples[i]) * frac
        return out


def interp_eval(samples, origin, spacing, left, right, xs):
    """Evaluate a uniformly sampled function at ``xs`` (linear interpolation,
    constant extension values ``left``/``right`` beyond the window)."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    if USING_NUMBA:
        return _interp_eval_nb(samples, origin, spacing, left, right, xs)
    return _interp_eval_np(samples, origin, spacing, left, right, xs)


# ---------------------------------------------------------------------------
# difference operator, batched over shifts
# ---------------------------------------------------------------------------

def _shift_difference_np(samples, left, right, offsets, coefs):
    n = samples.shape[0]
    out = np.empty((offsets.shape[0], n))
    idx = np.arange(n)
    for k in range(offsets.shape[0]):
        acc = coefs[0] * samples
        for j in range(1, coefs.shape[0]):
            sh = idx + j * offsets[k]
            vals = np.where(
                sh < 0, left, np.where(sh > n - 1, right, samples[np.clip(sh, 0, n - 1)])
            )
            acc = acc + coefs[j] * vals
        out[k] = acc
    return out


if USING_NUMBA:

    @njit(cache=True)
    def _shift_difference_nb(samples, left, right, offsets, coefs):
        n = samples.shape[0]
        m1 = coefs.shape[0]
        out = np.empty((offsets.shape[0], n))
        for k in range(offsets.shape[0]):
            off = offsets[k]
            for i in range(n):
                acc = coefs[0] * samples[i]
                for j in range(1, m1):
                    sh = i + j * off
                    if sh < 0:
                        acc += coefs[j] * left
                    elif sh > n - 1:
                        acc += coefs[j] * right
                    else:
                        acc += coefs[j] * samples[sh]
                out[k, i] = acc
        return out


def shift_difference_batch(samples, left, right, offsets, m):
    """Delta^m_h on the sample grid for integer shift counts ``offsets``.

    Entry [k, i] is sum_j (-1)^(m-j) C(m,j) f(x_i + j*offsets[k]*dx), with
    out-of-window reads replaced by the extension values.
    """
    coefs = np.array([(-1.0) ** (m - j) * math.comb(m, j) for j in range(m + 1)])
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    if USING_NUMBA:
        return _shift_difference_nb(samples, left, right, offsets, coefs)
    return _shift_difference_np(samples, left, right, offsets, coefs)


def interp_difference(samples, origin, spacing, left, right, h, m):
    """Delta^m_h for arbitrary (sub-spacing) h, using linear interpolation."""
    n = samples.shape[0]
    xs = origin + spacing * np.arange(n)
    acc = ((-1.0) ** m) * samples.astype(np.float64)
    for j in range(1, m + 1):
        c = (-1.0) ** (m - j) * math.comb(m, j)
        acc = acc + c * interp_eval(samples, origin, spacing, left, right, xs + j * h)
    return acc


# ---------------------------------------------------------------------------
# monotone-segment preimage solving
# ---------------------------------------------------------------------------
# Segment table columns: [t0, c0, c1, c2, c3, xlo, xhi, ylo, yhi] where the
# cubic is c0 + c1*u + c2*u**2 + c3*u**3 in u = x - t0 and is monotone on
# [xlo, xhi] with values ylo = p(xlo), yhi = p(xhi). Flat segments have
# ylo == yhi.

N_BISECT = 80


def _poly3(t0, c0, c1, c2, c3, x):
    u = x - t0
    return c0 + u * (c1 + u * (c2 + u * c3))


def _solve_mono_py(row, y):
    t0, c0, c1, c2, c3, xlo, xhi, ylo, yhi = row[:9]
    a, b = xlo, xhi
    inc = yhi >= ylo
    for _ in range(N_BISECT):
        mid = 0.5 * (a + b)
        fm = _poly3(t0, c0, c1, c2, c3, mid) - y
        if (fm <= 0.0) == inc:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def _clip_segment_py(row, lo, hi):
    """Return (xa, xb) with xa <= xb for {x in segment : lo <= p(x) <= hi},
    or None when the segment misses the target band."""
    ylo, yhi = row[7], row[8]
    ymin, ymax = min(ylo, yhi), max(ylo, yhi)
    if ymax < lo or ymin > hi:
        return None
    xlo, xhi = row[5], row[6]
    if ymin == ymax:
        return (xlo, xhi)
    inc = yhi >= ylo
    a = max(lo, ymin)
    b = min(hi, ymax)
    xa = (xlo if inc else xhi) if a <= ymin else _solve_mono_py(row, a)
    xb = (xhi if inc else xlo) if b >= ymax else _solve_mono_py(row, b)
    return (min(xa, xb), max(xa, xb))


def _preimage_lengths_np(seg, los, his):
    out = np.zeros(los.shape[0])
    for t in range(los.shape[0]):
        total = 0.0
        for srow in seg:
            res = _clip_segment_py(srow, los[t], his[t])
            if res is not None:
                total += res[1] - res[0]
        out[t] = total
    return out


if USING_NUMBA:

    @njit(cache=True)
    def _solve_mono_nb(t0, c0, c1, c2, c3, xlo, xhi, inc, y):
        a = xlo
        b = xhi
        for _ in range(N_BISECT):
            mid = 0.5 * (a + b)
            u = mid - t0
            fm = c0 + u * (c1 + u * (c2 + u * c3)) - y
            if (fm <= 0.0) == inc:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    @njit(cache=True)
    def _preimage_lengths_nb(seg, los, his):
        nt = los.shape[0]
        ns = seg.shape[0]
        out = np.zeros(nt)
        for t in range(nt):
            lo = los[t]
            hi = his[t]
            total = 0.0
            for s in range(ns):
                ylo = seg[s, 7]
                yhi = seg[s, 8]
                ymin = min(ylo, yhi)
                ymax = max(ylo, yhi)
                if ymax < lo or ymin > hi:
                    continue
                xlo = seg[s, 5]
                xhi = seg[s, 6]
                if ymin == ymax:
                    total += xhi - xlo
                    continue
                inc = yhi >= ylo
                a = lo if lo > ymin else ymin
                b = hi if hi < ymax else ymax
                if a <= ymin:
                    xa = xlo if inc else xhi
                else:
                    xa = _solve_mono_nb(
                        seg[s, 0], seg[s, 1], seg[s, 2], seg[s, 3], seg[s, 4], xlo, xhi, inc, a
                    )
                if b >= ymax:
                    xb = xhi if inc else xlo
                else:
                    xb = _solve_mono_nb(
                        seg[s, 0], seg[s, 1], seg[s, 2], seg[s, 3], seg[s, 4], xlo, xhi, inc, b
                    )
                total += abs(xb - xa)
            out[t] = total
        return out


def preimage_lengths(seg, los, his):
    """Total preimage length |phi^-1([lo, hi])| for a batch of targets."""
    seg = np.ascontiguousarray(seg, dtype=np.float64)
    los = np.ascontiguousarray(los, dtype=np.float64)
    his = np.ascontiguousarray(his, dtype=np.float64)
    if seg.shape[0] == 0:
        return np.zeros(los.shape[0])
    if USING_NUMBA:
        return _preimage_lengths_nb(seg, los, his)
    return _preimage_lengths_np(seg, los, his)


def segment_clip(seg_row, lo, hi):
    """Single-segment version of the clip used by preimage_lengths."""
    return _clip_segment_py(np.asarray(seg_row, dtype=np.float64), lo, hi)


# ---------------------------------------------------------------------------
# greedy disjoint-class extraction (splitting lemma)
# ---------------------------------------------------------------------------

def _greedy_classes_py(lefts, rights):
    n = lefts.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    import bisect

    remaining = n
    cls = 0
    while remaining > 0:
        sel_l: list = []
        sel_r: list = []
        for j in range(n):
            if labels[j] >= 0:
                continue
            l, r = lefts[j], rights[j]
            pos = bisect.bisect_left(sel_l, l)
            if pos > 0 and sel_r[pos - 1] >= l:
                continue
            if pos < len(sel_l) and sel_l[pos] <= r:
                continue
            sel_l.insert(pos, l)
            sel_r.insert(pos, r)
            labels[j] = cls
            remaining -= 1
        cls += 1
    return labels


if USING_NUMBA:

    @njit(cache=True)
    def _greedy_classes_nb(lefts, rights):
        n = lefts.shape[0]
        labels = np.full(n, -1, dtype=np.int64)
        sl = np.empty(n)
        sr = np.empty(n)
        remaining = n
        cls = 0
        while remaining > 0:
            k = 0
            for j in range(n):
                if labels[j] >= 0:
                    continue
                l = lefts[j]
                r = rights[j]
                lo = 0
                hi = k
                while lo < hi:
                    mid = (lo + hi) // 2
                    if sl[mid] < l:
                        lo = mid + 1
                    else:
                        hi = mid
                pos = lo
                if pos > 0 and sr[pos - 1] >= l:
                    continue
                if pos < k and sl[pos] <= r:
                    continue
                for t in range(k, pos, -1):
                    sl[t] = sl[t - 1]
                    sr[t] = sr[t - 1]
                sl[pos] = l
                sr[pos] = r
                k += 1
                labels[j] = cls
                remaining -= 1
            cls += 1
        return labels


def greedy_classes(lefts, rights):
    """Label each interval with its class index under the greedy min-index
    extraction rule (closed-interval intersection; touching counts)."""
    lefts = np.ascontiguousarray(lefts, dtype=np.float64)
    rights = np.ascontiguousarray(rights, dtype=np.float64)
    if lefts.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    if USING_NUMBA:
        return _greedy_classes_nb(lefts, rights)
    return _greedy_classes_py(lefts, rights)


def warm_up():
    """Trigger JIT compilation of all kernels (no-op on the numpy path)."""
    s = np.linspace(0.0, 1.0, 8)
    interp_eval(s, 0.0, 1.0, 0.0, 0.0, np.array([0.5, 9.0]))
    shift_difference_batch(s, 0.0, 0.0, np.array([1, 2]), 2)
    seg = np.array([[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0]])
    preimage_lengths(seg, np.array([0.2]), np.array([0.4]))
    greedy_classes(np.array([0.0, 0.5]), np.array([1.0, 1.5]))
