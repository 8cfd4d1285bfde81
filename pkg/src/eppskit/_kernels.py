"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Backend selection: set ``EPPSKIT_NUMBA=0`` in the environment to force the
numpy implementations (useful on platforms without a working numba, and for
benchmarking). Anything else, or leaving the variable unset, uses numba when
it imports cleanly.

Both backends are exposed unconditionally (``*_np`` / ``*_nb``) so the
benchmark script can time them side by side; the unsuffixed names are the
selected aliases the rest of the package imports.
"""

import os

import numpy as np


def _numba_enabled() -> bool:
    if os.environ.get("EPPSKIT_NUMBA", "").strip() in ("0", "false", "off"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _numba_enabled()


# ---------------------------------------------------------------------------
# lagged cross sums: S(x) = sum_t a[t] * b[t + x*step] for x in [-L, L]
# ---------------------------------------------------------------------------

def lagged_cross_sums_np(a, b, max_lag, step):
    n_a = a.shape[0]
    n_b = b.shape[0]
    sums = np.zeros(2 * max_lag + 1)
    counts = np.zeros(2 * max_lag + 1, dtype=np.int64)
    for i, x in enumerate(range(-max_lag, max_lag + 1)):
        k = x * step
        if k >= 0:
            m = min(n_a, n_b - k)
            if m > 0:
                sums[i] = np.dot(a[:m], b[k:k + m])
                counts[i] = m
        else:
            m = min(n_a + k, n_b)
            if m > 0:
                sums[i] = np.dot(a[-k:-k + m], b[:m])
                counts[i] = m
    return sums, counts


def overlap_lengths_np(age_a_t, age_b_t, age_a_s, age_b_s, dt):
    # interval per walker: [gamma(s), gamma(t)] with s = t - dt; time origin at s.
    g_a_t = dt - age_a_t
    g_a_s = np.where(age_a_t < dt, -age_a_s, g_a_t)
    g_b_t = dt - age_b_t
    g_b_s = np.where(age_b_t < dt, -age_b_s, dt - age_b_t)
    lo = np.maximum(g_a_s, g_b_s)
    hi = np.minimum(g_a_t, g_b_t)
    return np.maximum(hi - lo, 0.0)


def previous_tick_values_np(times, values, grid):
    idx = np.searchsorted(times, grid, side="left") - 1
    if idx[0] < 0:
        raise IndexError("grid point precedes first tick")
    return values[idx]


def split_filter_mask_np(logp, max_abs):
    n = logp.shape[0]
    keep = np.ones(n, dtype=np.bool_)
    if n == 0:
        return keep
    last = logp[0]
    for i in range(1, n):
        if abs(logp[i] - last) > max_abs:
            keep[i] = False
        else:
            last = logp[i]
    return keep


if USE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def lagged_cross_sums_nb(a, b, max_lag, step):
        n_a = a.shape[0]
        n_b = b.shape[0]
        sums = np.zeros(2 * max_lag + 1)
        counts = np.zeros(2 * max_lag + 1, dtype=np.int64)
        for i in range(2 * max_lag + 1):
            k = (i - max_lag) * step
            if k >= 0:
                lo_a, lo_b = 0, k
            else:
                lo_a, lo_b = -k, 0
            m = min(n_a - lo_a, n_b - lo_b)
            if m <= 0:
                continue
            s = 0.0
            for t in range(m):
                s += a[lo_a + t] * b[lo_b + t]
            sums[i] = s
            counts[i] = m
        return sums, counts

    @njit(cache=True)
    def overlap_lengths_nb(age_a_t, age_b_t, age_a_s, age_b_s, dt):
        n = age_a_t.shape[0]
        out = np.empty(n)
        for i in range(n):
            g_a_t = dt - age_a_t[i]
            if age_a_t[i] < dt:
                g_a_s = -age_a_s[i]
            else:
                g_a_s = g_a_t
            g_b_t = dt - age_b_t[i]
            if age_b_t[i] < dt:
                g_b_s = -age_b_s[i]
            else:
                g_b_s = g_b_t
            lo = g_a_s if g_a_s > g_b_s else g_b_s
            hi = g_a_t if g_a_t < g_b_t else g_b_t
            d = hi - lo
            out[i] = d if d > 0.0 else 0.0
        return out

    @njit(cache=True)
    def previous_tick_values_nb(times, values, grid):
        n = times.shape[0]
        m = grid.shape[0]
        out = np.empty(m, dtype=values.dtype)
        j = 0
        for k in range(m):
            while j < n and times[j] < grid[k]:
                j += 1
            # ticks strictly before grid[k] are times[:j]
            out[k] = values[j - 1]
        return out

    @njit(cache=True)
    def split_filter_mask_nb(logp, max_abs):
        n = logp.shape[0]
        keep = np.ones(n, dtype=np.bool_)
        if n == 0:
            return keep
        last = logp[0]
        for i in range(1, n):
            if abs(logp[i] - last) > max_abs:
                keep[i] = False
            else:
                last = logp[i]
        return keep

    # lagged_cross_sums stays on numpy: its inner loop is a dot product and
    # BLAS beats the scalar njit loop ~5x (see benchmarks/bench_kernels.py)
    lagged_cross_sums = lagged_cross_sums_np
    overlap_lengths = overlap_lengths_nb
    previous_tick_values = previous_tick_values_nb
    split_filter_mask = split_filter_mask_nb
else:
    lagged_cross_sums = lagged_cross_sums_np
    overlap_lengths = overlap_lengths_np
    previous_tick_values = previous_tick_values_np
    split_filter_mask = split_filter_mask_np
