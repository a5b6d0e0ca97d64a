"""Hot enumeration kernels: numba @njit with a pure-numpy fallback.

Every brute-force sweep in the package funnels through one of the four
kernels below, each a flat loop over discrete-log indices with table
lookups.  The numba path is used by default; set GPCODE_KERNELS=numpy to
force the vectorized fallback (or GPCODE_KERNELS=numba to fail loudly if
numba is unavailable).  Both paths are exact integer computations and
return identical arrays.

All kernels take the trace-on-dlog-line table tr[j] = Tr(omega^j) and
never exploit the coset structure of the index arithmetic, so they stay
independent oracles for the closed-form/coset-based code paths.
"""

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

_CHUNK = 1 << 22  # target elements per numpy fallback block


def use_numba() -> bool:
    flag = os.environ.get("GPCODE_KERNELS", "").strip().lower()
    if flag == "numpy":
        return False
    if flag == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("GPCODE_KERNELS=numba but numba is not importable")
        return True
    return HAVE_NUMBA


# ----------------------------------------------------------------------
# codeword weight tally: for each nonzero gamma = omega^d, the weight of
# the codeword (Tr(gamma * omega^{k i}))_{i<n} is the number of nonzero
# coordinates; out[w] counts gammas of weight w.

if HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _weight_counts_nb(tr_nz, k, n, d_lo, d_hi, out):
        L = tr_nz.shape[0]
        for d in range(d_lo, d_hi):
            w = 0
            idx = d
            for _ in range(n):
                w += tr_nz[idx]
                idx += k
                if idx >= L:
                    idx -= L
            out[w] += 1


def _weight_counts_np(tr_nz, k, n, d_lo, d_hi, out):
    L = tr_nz.shape[0]
    step = max(1, _CHUNK // max(n, 1))
    offs = (np.arange(n, dtype=np.int64) * k) % L
    for start in range(d_lo, d_hi, step):
        d = np.arange(start, min(start + step, d_hi), dtype=np.int64)
        idx = (d[:, None] + offs[None, :]) % L
        w = tr_nz[idx].sum(axis=1, dtype=np.int64)
        out += np.bincount(w, minlength=n + 1)


def weight_counts(tr_nz, k, n, workers=1, impl=None):
    """Histogram of codeword weights over all nonzero gamma.

    tr_nz: uint8[q-1] with tr_nz[j] = 1 iff Tr(omega^j) != 0.
    Returns int64[n+1]; the gamma = 0 row (weight 0) is NOT included.
    """
    L = tr_nz.shape[0]
    fn = _pick(_weight_counts_nb if HAVE_NUMBA else None, _weight_counts_np, impl)
    return _run_partitioned(fn, (tr_nz, k, n), L, n + 1, workers)


# ----------------------------------------------------------------------
# character-sum tally: for gamma = omega^d the eigenvalue of the Cayley
# graph on the k-th powers is sum_{r in R_k} zeta_p^{Tr(gamma r)};
# out[d, t] counts elements r of R_k with Tr(gamma r) = t.

if HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _charsum_counts_nb(tr, k, n, p, d_lo, d_hi, out):
        L = tr.shape[0]
        for d in range(d_lo, d_hi):
            idx = d
            for _ in range(n):
                out[d, tr[idx]] += 1
                idx += k
                if idx >= L:
                    idx -= L


def _charsum_counts_np(tr, k, n, p, d_lo, d_hi, out):
    L = tr.shape[0]
    step = max(1, _CHUNK // max(n, 1))
    offs = (np.arange(n, dtype=np.int64) * k) % L
    for start in range(d_lo, d_hi, step):
        d = np.arange(start, min(start + step, d_hi), dtype=np.int64)
        idx = (d[:, None] + offs[None, :]) % L
        t = tr[idx].astype(np.int64)
        key = (t + d[:, None] * p).ravel()
        flat = np.bincount(key - d[0] * p, minlength=len(d) * p)
        out[d[0] : d[0] + len(d)] += flat.reshape(len(d), p)


def charsum_counts(tr, k, n, p, impl=None):
    """Per-gamma cyclotomic count vectors, int64[q-1, p] (gamma = omega^d rows)."""
    L = tr.shape[0]
    out = np.zeros((L, p), dtype=np.int64)
    fn = _pick(_charsum_counts_nb if HAVE_NUMBA else None, _charsum_counts_np, impl)
    fn(tr, k, n, p, 0, L, out)
    return out


# ----------------------------------------------------------------------
# coset tally for Gaussian periods: out[j mod N, Tr(omega^j)] += 1.

if HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _period_counts_nb(tr, N, p, out):
        L = tr.shape[0]
        j_mod = 0
        for j in range(L):
            out[j_mod, tr[j]] += 1
            j_mod += 1
            if j_mod == N:
                j_mod = 0


def _period_counts_np(tr, N, p, out):
    L = tr.shape[0]
    key = (np.arange(L, dtype=np.int64) % N) * p + tr
    out += np.bincount(key, minlength=N * p).reshape(N, p)


def period_counts(tr, N, p, impl=None):
    """Trace-fiber counts per coset, int64[N, p]."""
    out = np.zeros((N, p), dtype=np.int64)
    fn = _pick(_period_counts_nb if HAVE_NUMBA else None, _period_counts_np, impl)
    fn(tr, N, p, out)
    return out


# ----------------------------------------------------------------------
# Artin-Schreier zero-trace counts: for beta = omega^d, count x in F_q*
# with Tr(beta x^k) = 0 by walking every x (x = 0 handled by callers).

if HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _curve_zero_counts_nb(tr, k, dlogs, out):
        L = tr.shape[0]
        for b in range(dlogs.shape[0]):
            idx = dlogs[b] % L
            c = 0
            for _ in range(L):
                if tr[idx] == 0:
                    c += 1
                idx += k
                if idx >= L:
                    idx -= L
            out[b] = c


def _curve_zero_counts_np(tr, k, dlogs, out):
    L = tr.shape[0]
    zeros = (tr == 0)
    step = max(1, _CHUNK // L)
    offs = (np.arange(L, dtype=np.int64) * k) % L
    for start in range(0, dlogs.shape[0], step):
        d = dlogs[start : start + step, None]
        idx = (d + offs[None, :]) % L
        out[start : start + d.shape[0]] = zeros[idx].sum(axis=1, dtype=np.int64)


def curve_zero_counts(tr, k, dlogs, workers=1, impl=None):
    """For each requested dlog d: #{x in F_q* : Tr(omega^d x^k) = 0}."""
    dlogs = np.ascontiguousarray(dlogs, dtype=np.int64)
    out = np.zeros(dlogs.shape[0], dtype=np.int64)
    fn = _pick(_curve_zero_counts_nb if HAVE_NUMBA else None, _curve_zero_counts_np, impl)
    if workers > 1 and dlogs.shape[0] > 1:
        _run_threads(fn, (tr, k), dlogs, out, workers)
    else:
        fn(tr, k, dlogs, out)
    return out


# ----------------------------------------------------------------------
# dispatch / partitioning helpers

def _pick(nb_fn, np_fn, impl):
    if impl == "numba":
        if nb_fn is None:
            raise RuntimeError("numba implementation unavailable")
        return nb_fn
    if impl == "numpy":
        return np_fn
    return nb_fn if (use_numba() and nb_fn is not None) else np_fn


def _run_partitioned(fn, args, length, out_width, workers):
    # Histogram-style kernels: per-worker tallies merged by addition keep
    # the result independent of the worker count.
    if workers <= 1 or length < 4 * workers:
        out = np.zeros(out_width, dtype=np.int64)
        fn(*args, 0, length, out)
        return out
    from concurrent.futures import ThreadPoolExecutor

    bounds = np.linspace(0, length, workers + 1, dtype=np.int64)
    outs = [np.zeros(out_width, dtype=np.int64) for _ in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futs = [
            pool.submit(fn, *args, int(bounds[i]), int(bounds[i + 1]), outs[i])
            for i in range(workers)
        ]
        for f in futs:
            f.result()
    return sum(outs)


def _run_threads(fn, args, dlogs, out, workers):
    from concurrent.futures import ThreadPoolExecutor

    bounds = np.linspace(0, dlogs.shape[0], workers + 1, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futs = []
        for i in range(workers):
            lo, hi = int(bounds[i]), int(bounds[i + 1])
            if lo < hi:
                futs.append(pool.submit(fn, *args, dlogs[lo:hi], out[lo:hi]))
        for f in futs:
            f.result()
