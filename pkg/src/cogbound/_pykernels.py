"""Numpy implementation of the power-split sweep kernels.

This is the fallback selected by :mod:`cogbound.kernels` when the compiled
extension is unavailable, and it is also the reference the extension is
tested against.  Both backends implement the same algorithms with the same
scan order and tie handling:

* ``sweep_support`` scans the (alpha, beta) grid row-major with alpha
  ascending and beta descending; the first cell attaining the per-direction
  maximum wins.  Support ties across beta are common (the surface plateaus
  in beta once the ratio corner binds, and is beta-free at alpha = 1), and
  a full shared-power fraction is always at least as good, so ties resolve
  to the largest beta and then the smallest alpha.
* ``refine_support`` runs a per-direction pattern search probing the four
  axis moves then the four diagonal moves in a fixed order; the first of
  equal-valued probes wins.  Steps double (capped) after an accepted move
  and halve when no probe improves.  Diagonal probes and step expansion
  keep the search from stalling on the kink ridges of the support surface,
  which plain axis-only contraction does.

``region_caps`` is the single source of the rate-cap formulas; the public
bounds constructed in :mod:`cogbound.regions` go through it as well, so
reported caps never depend on the selected backend.
"""

from __future__ import annotations

import numpy as np

STEP_FLOOR = 1e-12  # both pattern-search steps below this mean converged
STEP_CAP = 0.25  # expansion limit, keeps probes near the located basin


def region_caps(outer: bool, a, b, p1, p2, alpha, beta):
    """Rate caps of one member region at the given split(s).

    Returns ``(r0, rsum, r2)`` for the outer kind and
    ``(r0, r1_leg, r1_cog, r2)`` for the inner kind.  Broadcasts over
    ``alpha`` and ``beta``.  Caps are clamped at zero: cross terms with
    ``b < 0`` can round the log argument a few ulp under 1.
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    beta = np.asarray(beta, dtype=np.float64)
    cross = np.sqrt(beta * (1.0 - alpha) * p1 * p2)
    d0 = 1.0 + b * b * alpha * p2
    r0 = _halflog2p((beta * p1 + b * b * (1.0 - alpha) * p2 + 2.0 * b * cross) / d0)
    r2 = _halflog2p(alpha * p2)
    if outer:
        rsum = _halflog2p((p1 + b * b * (1.0 - alpha) * p2 + 2.0 * b * cross) / d0)
        return r0, rsum, r2
    d_leg = 1.0 + beta * p1 + b * b * p2 + 2.0 * b * cross
    d_cog = 1.0 + a * a * beta * p1 + p2 + 2.0 * a * cross
    r1_leg = _halflog2p((1.0 - beta) * p1 / d_leg)
    r1_cog = _halflog2p(a * a * (1.0 - beta) * p1 / d_cog)
    return r0, r1_leg, r1_cog, r2


def _halflog2p(x):
    return np.maximum(0.5 * np.log2(1.0 + x), 0.0)


def support_outer(r0_cap, sum_cap, r2_cap, mu, w0, w1, w2):
    """Support value of the outer polytope {r0<=A, r0+r1<=B, r2<=C, r1>=mu*r0}."""
    r0m = np.minimum(r0_cap, sum_cap / (1.0 + mu))
    r1m = np.where(sum_cap > r0_cap * (1.0 + mu), sum_cap - r0_cap, mu * r0m)
    return np.maximum(w1 * sum_cap, w0 * r0m + w1 * r1m) + w2 * r2_cap


def support_inner(r0_cap, r1_leg, r1_cog, r2_cap, mu, w0, w1, w2):
    """Support value of the inner polytope {r0<=A, r1<=min(L1,L2), r2<=C, r1>=mu*r0}."""
    r1_cap = np.minimum(r1_leg, r1_cog)
    if mu > 0.0:
        r0m = np.where(mu * r0_cap > r1_cap, r1_cap / mu, r0_cap)
    else:
        r0m = r0_cap
    return (w0 * r0m + w1 * r1_cap) + w2 * r2_cap


def _support_at(outer, a, b, p1, p2, mu, alpha, beta, w0, w1, w2):
    caps = region_caps(outer, a, b, p1, p2, alpha, beta)
    if outer:
        return support_outer(*caps, mu, w0, w1, w2)
    return support_inner(*caps, mu, w0, w1, w2)


def support_table(outer, a, b, p1, p2, mu, w0, w1, w2, alphas, betas):
    """Support values for one weight direction on the full grid, shape (na, nb)."""
    return _support_at(outer, a, b, p1, p2, mu,
                       np.asarray(alphas)[:, None], np.asarray(betas)[None, :],
                       w0, w1, w2)


def sweep_support(outer, a, b, p1, p2, mu, w0, w1, w2, alphas, betas):
    """Best support per weight direction over the (alpha, beta) grid.

    Returns ``(values, best_alphas, best_betas)``, one entry per direction.
    """
    alphas = np.ascontiguousarray(alphas, dtype=np.float64)
    betas = np.ascontiguousarray(betas, dtype=np.float64)
    na, nb = alphas.size, betas.size
    agrid = np.repeat(alphas, nb)
    bgrid = np.tile(betas[::-1], na)  # beta descending: ties prefer larger beta
    caps = region_caps(outer, a, b, p1, p2, agrid, bgrid)
    w0c = np.asarray(w0, dtype=np.float64)[:, None]
    w1c = np.asarray(w1, dtype=np.float64)[:, None]
    w2c = np.asarray(w2, dtype=np.float64)[:, None]
    if outer:
        values = support_outer(*caps, mu, w0c, w1c, w2c)
    else:
        values = support_inner(*caps, mu, w0c, w1c, w2c)
    idx = np.argmax(values, axis=1)  # first max == first cell in scan order
    pick = np.arange(idx.size)
    return values[pick, idx], agrid[idx], bgrid[idx]


def refine_support(outer, a, b, p1, p2, mu, w0, w1, w2,
                   alpha0, beta0, step_alpha, step_beta, max_iter):
    """Pattern search around per-direction grid argmaxes.

    Per iteration the eight clamped probes (four axis moves, then four
    diagonals) are evaluated and the best strictly improving one taken,
    after which both steps double up to ``STEP_CAP``; when no probe
    improves, both steps halve.  A direction stops once both steps drop
    below ``STEP_FLOOR`` or after ``max_iter`` iterations.  Running to the
    step floor rather than to an improvement threshold matters at the kink
    ridges of the support surface, where the size of one accepted move
    says nothing about the remaining distance to the apex.
    """
    w0 = np.asarray(w0, dtype=np.float64)
    w1 = np.asarray(w1, dtype=np.float64)
    w2 = np.asarray(w2, dtype=np.float64)
    aa = np.array(alpha0, dtype=np.float64, copy=True)
    bb = np.array(beta0, dtype=np.float64, copy=True)
    n = aa.size
    sa = np.full(n, float(step_alpha))
    sb = np.full(n, float(step_beta))
    val = np.asarray(_support_at(outer, a, b, p1, p2, mu, aa, bb, w0, w1, w2))
    active = np.ones(n, dtype=bool)
    pick = np.arange(n)
    for _ in range(int(max_iter)):
        if not active.any():
            break
        a_hi = np.minimum(aa + sa, 1.0)
        a_lo = np.maximum(aa - sa, 0.0)
        b_hi = np.minimum(bb + sb, 1.0)
        b_lo = np.maximum(bb - sb, 0.0)
        cand_a = np.stack([a_hi, a_lo, aa, aa, a_hi, a_hi, a_lo, a_lo])
        cand_b = np.stack([bb, bb, b_hi, b_lo, b_hi, b_lo, b_hi, b_lo])
        cand_val = _support_at(outer, a, b, p1, p2, mu, cand_a, cand_b, w0, w1, w2)
        best = np.argmax(cand_val, axis=0)  # first max == fixed probe order
        best_val = cand_val[best, pick]
        take = active & (best_val > val)
        aa = np.where(take, cand_a[best, pick], aa)
        bb = np.where(take, cand_b[best, pick], bb)
        val = np.where(take, best_val, val)
        sa = np.where(take, np.minimum(2.0 * sa, STEP_CAP), sa)
        sb = np.where(take, np.minimum(2.0 * sb, STEP_CAP), sb)
        shrink = active & ~take
        sa = np.where(shrink, 0.5 * sa, sa)
        sb = np.where(shrink, 0.5 * sb, sb)
        active &= ~(shrink & (sa < STEP_FLOOR) & (sb < STEP_FLOOR))
    return val, aa, bb
