# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled power-split sweep kernels.

Mirrors :mod:`cogbound._pykernels` (same formulas, scan order and tie
handling); see that module for the algorithm documentation.
"""

from libc.math cimport log2, sqrt

import numpy as np

cdef double STEP_FLOOR = 1e-12
cdef double STEP_CAP = 0.25


cdef inline double _halflog2p(double x) noexcept nogil:
    cdef double v = 0.5 * log2(1.0 + x)
    return v if v > 0.0 else 0.0


cdef inline void _caps(bint outer, double a, double b, double p1, double p2,
                       double alpha, double beta, double* out) noexcept nogil:
    # outer: out = [r0, rsum, r2]; inner: out = [r0, r1_leg, r1_cog, r2]
    cdef double cross = sqrt(beta * (1.0 - alpha) * p1 * p2)
    cdef double d0 = 1.0 + b * b * alpha * p2
    out[0] = _halflog2p((beta * p1 + b * b * (1.0 - alpha) * p2 + 2.0 * b * cross) / d0)
    if outer:
        out[1] = _halflog2p((p1 + b * b * (1.0 - alpha) * p2 + 2.0 * b * cross) / d0)
        out[2] = _halflog2p(alpha * p2)
    else:
        out[1] = _halflog2p((1.0 - beta) * p1
                            / (1.0 + beta * p1 + b * b * p2 + 2.0 * b * cross))
        out[2] = _halflog2p(a * a * (1.0 - beta) * p1
                            / (1.0 + a * a * beta * p1 + p2 + 2.0 * a * cross))
        out[3] = _halflog2p(alpha * p2)


cdef inline double _support(bint outer, const double* caps, double mu,
                            double w0, double w1, double w2) noexcept nogil:
    cdef double r0_cap = caps[0]
    cdef double r0m, r1m, v, alt, r1_cap
    if outer:
        r0m = caps[1] / (1.0 + mu)
        if r0_cap < r0m:
            r0m = r0_cap
        if caps[1] > r0_cap * (1.0 + mu):
            r1m = caps[1] - r0_cap
        else:
            r1m = mu * r0m
        v = w0 * r0m + w1 * r1m
        alt = w1 * caps[1]
        if alt > v:
            v = alt
        return v + w2 * caps[2]
    r1_cap = caps[1] if caps[1] < caps[2] else caps[2]
    if mu > 0.0 and mu * r0_cap > r1_cap:
        r0m = r1_cap / mu
    else:
        r0m = r0_cap
    return (w0 * r0m + w1 * r1_cap) + w2 * caps[3]


cdef inline double _support_at(bint outer, double a, double b, double p1, double p2,
                               double mu, double alpha, double beta,
                               double w0, double w1, double w2) noexcept nogil:
    cdef double caps[4]
    _caps(outer, a, b, p1, p2, alpha, beta, caps)
    return _support(outer, caps, mu, w0, w1, w2)


def sweep_support(outer, double a, double b, double p1, double p2, double mu,
                  w0, w1, w2, alphas, betas):
    """Best support per weight direction over the (alpha, beta) grid."""
    cdef bint is_outer = bool(outer)
    cdef double[::1] w0v = np.ascontiguousarray(w0, dtype=np.float64)
    cdef double[::1] w1v = np.ascontiguousarray(w1, dtype=np.float64)
    cdef double[::1] w2v = np.ascontiguousarray(w2, dtype=np.float64)
    cdef double[::1] av = np.ascontiguousarray(alphas, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(betas, dtype=np.float64)
    cdef Py_ssize_t na = av.shape[0], nb = bv.shape[0], n = w0v.shape[0]
    best_np = np.full(n, -np.inf)
    ba_np = np.zeros(n)
    bb_np = np.zeros(n)
    cdef double[::1] best = best_np
    cdef double[::1] ba = ba_np
    cdef double[::1] bb = bb_np
    cdef double caps[4]
    cdef double v
    cdef Py_ssize_t i, j, k
    with nogil:
        for i in range(na):
            # beta descending: ties prefer the larger shared-power fraction
            for j in range(nb - 1, -1, -1):
                _caps(is_outer, a, b, p1, p2, av[i], bv[j], caps)
                for k in range(n):
                    v = _support(is_outer, caps, mu, w0v[k], w1v[k], w2v[k])
                    if v > best[k]:
                        best[k] = v
                        ba[k] = av[i]
                        bb[k] = bv[j]
    return best_np, ba_np, bb_np


cdef void _refine_one(bint outer, double a, double b, double p1, double p2,
                      double mu, double w0, double w1, double w2,
                      double step_a, double step_b, int max_iter,
                      double* io_alpha, double* io_beta, double* io_val) noexcept nogil:
    cdef double x = io_alpha[0]
    cdef double y = io_beta[0]
    cdef double v = _support_at(outer, a, b, p1, p2, mu, x, y, w0, w1, w2)
    cdef double sa = step_a, sb = step_b
    cdef double cx[8]
    cdef double cy[8]
    cdef double a_hi, a_lo, b_hi, b_lo
    cdef double cv, bv
    cdef int it, m, mbest
    for it in range(max_iter):
        a_hi = x + sa if x + sa < 1.0 else 1.0
        a_lo = x - sa if x - sa > 0.0 else 0.0
        b_hi = y + sb if y + sb < 1.0 else 1.0
        b_lo = y - sb if y - sb > 0.0 else 0.0
        cx[0] = a_hi; cy[0] = y
        cx[1] = a_lo; cy[1] = y
        cx[2] = x; cy[2] = b_hi
        cx[3] = x; cy[3] = b_lo
        cx[4] = a_hi; cy[4] = b_hi
        cx[5] = a_hi; cy[5] = b_lo
        cx[6] = a_lo; cy[6] = b_hi
        cx[7] = a_lo; cy[7] = b_lo
        bv = v
        mbest = -1
        for m in range(8):
            cv = _support_at(outer, a, b, p1, p2, mu, cx[m], cy[m], w0, w1, w2)
            if cv > bv:
                bv = cv
                mbest = m
        if mbest >= 0:
            x = cx[mbest]
            y = cy[mbest]
            sa = sa * 2.0 if sa * 2.0 < STEP_CAP else STEP_CAP
            sb = sb * 2.0 if sb * 2.0 < STEP_CAP else STEP_CAP
            v = bv
        else:
            sa *= 0.5
            sb *= 0.5
            if sa < STEP_FLOOR and sb < STEP_FLOOR:
                break
    io_alpha[0] = x
    io_beta[0] = y
    io_val[0] = v


def refine_support(outer, double a, double b, double p1, double p2, double mu,
                   w0, w1, w2, alpha0, beta0,
                   double step_alpha, double step_beta, int max_iter):
    """Pattern search around per-direction grid argmaxes."""
    cdef bint is_outer = bool(outer)
    cdef double[::1] w0v = np.ascontiguousarray(w0, dtype=np.float64)
    cdef double[::1] w1v = np.ascontiguousarray(w1, dtype=np.float64)
    cdef double[::1] w2v = np.ascontiguousarray(w2, dtype=np.float64)
    aa_np = np.array(alpha0, dtype=np.float64, copy=True)
    bb_np = np.array(beta0, dtype=np.float64, copy=True)
    cdef double[::1] aa = aa_np
    cdef double[::1] bb = bb_np
    cdef Py_ssize_t n = w0v.shape[0]
    val_np = np.zeros(n)
    cdef double[::1] val = val_np
    cdef Py_ssize_t k
    with nogil:
        for k in range(n):
            _refine_one(is_outer, a, b, p1, p2, mu, w0v[k], w1v[k], w2v[k],
                        step_alpha, step_beta, max_iter,
                        &aa[k], &bb[k], &val[k])
    return val_np, aa_np, bb_np
