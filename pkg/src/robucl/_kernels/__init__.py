"""Kernel backend selection and the batch fitting front end.

The compiled extension is preferred when importable; the pure-NumPy
twin is the fallback. Set ROBUCL_PURE=1 to force the fallback. Both
backends share one signature and agree to ~1e-7 (they differ only in
floating-point summation order); each is individually deterministic.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import pure

try:
    from . import _fast
except ImportError:
    _fast = None

if _fast is not None and not os.environ.get("ROBUCL_PURE"):
    _impl = _fast
    BACKEND = "compiled"
else:
    _impl = pure
    BACKEND = "pure"

_SQRT3_OVER_2 = np.sqrt(3.0) / 2.0


def get_backend(name):
    """Backend module by name ("compiled" or "pure"); None if absent."""
    if name == "pure":
        return pure
    if name == "compiled":
        return _fast
    raise ValueError(f"unknown backend {name!r}")


def _prepare(rows):
    """Per-row start values: median and (sqrt(3)/2) * range."""
    rows = np.ascontiguousarray(rows, dtype=np.float64)
    b, n = rows.shape
    srt = np.sort(rows, axis=1)
    if n % 2:
        m0 = srt[:, n // 2].copy()
    else:
        m0 = 0.5 * (srt[:, n // 2 - 1] + srt[:, n // 2])
    eps0 = _SQRT3_OVER_2 * (srt[:, -1] - srt[:, 0])
    return rows, m0, eps0


def fit_rows(rows, tol_m, tol_eps, max_iter, threads=1, backend=None):
    """Fit every row of a (b, n) matrix.

    Returns (m, eps, iterations, converged) arrays of length b. Thread
    count never changes the numbers: rows are fitted independently and
    the split is by contiguous row ranges.
    """
    impl = _impl if backend is None else get_backend(backend)
    if impl is None:
        raise RuntimeError(f"backend {backend!r} is not available")
    rows, m0, eps0 = _prepare(rows)
    b = rows.shape[0]
    out_m = np.empty(b)
    out_eps = np.empty(b)
    out_iters = np.empty(b, dtype=np.int64)
    out_conv = np.empty(b, dtype=np.uint8)

    if threads <= 1 or b < 2 * threads:
        impl.fit_rows_into(rows, m0, eps0, tol_m, tol_eps, max_iter,
                           out_m, out_eps, out_iters, out_conv)
    else:
        bounds = np.linspace(0, b, threads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(impl.fit_rows_into,
                            rows[lo:hi], m0[lo:hi], eps0[lo:hi],
                            tol_m, tol_eps, max_iter,
                            out_m[lo:hi], out_eps[lo:hi],
                            out_iters[lo:hi], out_conv[lo:hi])
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            for f in futures:
                f.result()

    return out_m, out_eps, out_iters, out_conv


def fit_single(values, tol_m, tol_eps, max_iter, backend=None):
    """Fit one sample; returns scalar (m, eps, iterations, converged)."""
    rows = np.asarray(values, dtype=np.float64).reshape(1, -1)
    m, eps, iters, conv = fit_rows(rows, tol_m, tol_eps, max_iter, backend=backend)
    return float(m[0]), float(eps[0]), int(iters[0]), bool(conv[0])
