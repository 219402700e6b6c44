# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled batch kernel for the most-frequent-value iteration.

Scalar twin of pure.py: one tight loop per row, GIL released for the
whole batch so row ranges can run on real threads.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

# keep in sync with pure.py: ranges below MIN_RANGE are numerically
# all-equal; denominators are floored at MIN_DENOM so quartic weights
# stay representable when eps^2 underflows mid-iteration
cdef double MIN_RANGE = 1e-75
cdef double MIN_DENOM = 1e-150


cdef void _fit_one(const double* x, Py_ssize_t n, double m0, double eps0,
                   double tol_m, double tol_eps, long max_iter,
                   double* out_m, double* out_eps,
                   cnp.int64_t* out_iters, cnp.uint8_t* out_conv) noexcept nogil:
    cdef double m = m0
    cdef double eps2 = eps0 * eps0
    cdef double d, d2, a, w, wi, num, den, eps2_new, m_new, dm, de
    cdef long it
    cdef Py_ssize_t k

    out_iters[0] = 0
    if eps0 < MIN_RANGE:  # all-equal row (up to representability): fixed point
        out_m[0] = m0
        out_eps[0] = 0.0
        out_conv[0] = 1
        return

    out_conv[0] = 0
    for it in range(1, max_iter + 1):
        # scale update in eps^2 space from the previous (m, eps)
        num = 0.0
        den = 0.0
        for k in range(n):
            d = x[k] - m
            d2 = d * d
            a = eps2 + d2
            if a < MIN_DENOM:
                a = MIN_DENOM
            w = 1.0 / (a * a)
            num += d2 * w
            den += w
        eps2_new = 3.0 * num / den

        # location update from the previous m and the fresh eps
        num = 0.0
        den = 0.0
        for k in range(n):
            d = x[k] - m
            a = eps2_new + d * d
            if a < MIN_DENOM:
                a = MIN_DENOM
            wi = 1.0 / a
            num += x[k] * wi
            den += wi
        m_new = num / den

        dm = fabs(m_new - m)
        de = fabs(sqrt(eps2_new) - sqrt(eps2))
        m = m_new
        eps2 = eps2_new
        out_iters[0] = it
        if (dm < tol_m and de < tol_eps) or eps2 == 0.0:
            out_conv[0] = 1
            break

    out_m[0] = m
    out_eps[0] = sqrt(eps2)


def fit_rows_into(double[:, ::1] rows, double[::1] m0, double[::1] eps0,
                  double tol_m, double tol_eps, long max_iter,
                  double[::1] out_m, double[::1] out_eps,
                  cnp.int64_t[::1] out_iters, cnp.uint8_t[::1] out_conv):
    """Fit every row, writing results into the out arrays."""
    cdef Py_ssize_t b = rows.shape[0]
    cdef Py_ssize_t n = rows.shape[1]
    cdef Py_ssize_t i
    with nogil:
        for i in range(b):
            _fit_one(&rows[i, 0], n, m0[i], eps0[i], tol_m, tol_eps, max_iter,
                     &out_m[i], &out_eps[i], &out_iters[i], &out_conv[i])
