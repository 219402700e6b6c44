"""Pure-NumPy batch kernel for the most-frequent-value iteration.

Vectorized across rows: every row of the input matrix is an independent
sample fitted to convergence. Rows never interact, so results are
identical no matter how the rows are grouped into batches or threads.
"""

import numpy as np

# the iteration divides by (eps^2 + d^2)^2; ranges below ~DBL_MIN**0.25
# make those weights non-representable, so such rows are numerically
# all-equal and take the degenerate branch
MIN_RANGE = 1e-75

# denominator floor: points closer to the center than sqrt(MIN_DENOM)
# share the maximum representable weight instead of dividing by zero
# when eps^2 underflows mid-iteration (tight cluster plus far outlier)
MIN_DENOM = 1e-150


def fit_rows_into(rows, m0, eps0, tol_m, tol_eps, max_iter,
                  out_m, out_eps, out_iters, out_conv):
    """Fit every row, writing results into the out arrays.

    rows: (b, n) C-contiguous float64. m0/eps0: per-row start values
    (median and initial dihesion). Rows with eps0 below MIN_RANGE
    (all-equal data, up to representability) short-circuit to (m0, 0)
    with zero iterations.
    """
    b = rows.shape[0]
    m = m0.astype(np.float64, copy=True)
    eps2 = (eps0 * eps0).astype(np.float64, copy=True)

    out_m[:b] = m
    out_eps[:b] = 0.0
    out_iters[:b] = 0
    out_conv[:b] = 1

    # rows already converged by degeneracy stay frozen at their start state
    idx = np.flatnonzero(eps0 >= MIN_RANGE)
    if idx.size:
        out_conv[idx] = 0

    it = 0
    while idx.size and it < max_iter:
        it += 1
        x = rows[idx]
        mm = m[idx][:, None]
        d2 = x - mm
        d2 *= d2

        # scale update in eps^2 space from the previous (m, eps)
        a = eps2[idx][:, None] + d2
        np.maximum(a, MIN_DENOM, out=a)
        w = 1.0 / (a * a)
        eps2_new = 3.0 * (d2 * w).sum(axis=1) / w.sum(axis=1)

        # location update from the previous m and the fresh eps
        ai = eps2_new[:, None] + d2
        np.maximum(ai, MIN_DENOM, out=ai)
        wi = 1.0 / ai
        m_new = (x * wi).sum(axis=1) / wi.sum(axis=1)

        dm = np.abs(m_new - m[idx])
        de = np.abs(np.sqrt(eps2_new) - np.sqrt(eps2[idx]))
        m[idx] = m_new
        eps2[idx] = eps2_new
        out_iters[idx] = it

        done = (dm < tol_m) & (de < tol_eps)
        done |= eps2_new == 0.0  # underflow: nothing left to resolve
        if done.any():
            f = idx[done]
            out_m[f] = m[f]
            out_eps[f] = np.sqrt(eps2[f])
            out_conv[f] = 1
            idx = idx[~done]

    if idx.size:  # hit max_iter; report the last state, flagged unconverged
        out_m[idx] = m[idx]
        out_eps[idx] = np.sqrt(eps2[idx])
        out_conv[idx] = 0
