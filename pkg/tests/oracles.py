"""Independent brute-force oracles the fast paths are tested against.

These deliberately avoid the library's vertex enumeration and kernel code:
support values are recomputed by dense feasibility scans over rate grids,
so agreement is evidence, not circularity.
"""

import numpy as np


def _axis(cap: float, step: float) -> np.ndarray:
    if cap <= 0.0:
        return np.zeros(1)
    return np.linspace(0.0, cap, int(np.ceil(cap / step)) + 1)


def scan_support(rb, w, step=1e-3) -> float:
    """Max of the weighted objective over a dense grid of feasible triples.

    The r2 axis is scanned separately: the constraint set is a product of
    the (r0, r1) polygon and [0, r2_cap], and the objective is separable,
    so the 3-D scan decomposes exactly.
    """
    if rb.kind == "outer":
        r1_hi = rb.sum_cap
    else:
        r1_hi = min(rb.r1_cap_legitimate, rb.r1_cap_cognitive)
    r0 = _axis(rb.r0_cap, step)
    r1 = _axis(r1_hi, step)
    r2 = _axis(rb.r2_cap, step)
    feasible = r1[None, :] >= rb.mu * r0[:, None] - 1e-15
    if rb.kind == "outer":
        feasible &= r0[:, None] + r1[None, :] <= rb.sum_cap + 1e-12
    obj = w.mu0 * r0[:, None] + w.mu1 * r1[None, :]
    best01 = np.max(np.where(feasible, obj, -np.inf))
    return float(best01 + np.max(w.mu2 * r2))


def point_feasible(rb, pt, slack=1e-12) -> bool:
    """Direct constraint check of one rate triple against the caps."""
    r0, r1, r2 = pt.r0, pt.r1, pt.r2
    if r0 < -slack or r1 < -slack or r2 < -slack:
        return False
    if r0 > rb.r0_cap + slack or r2 > rb.r2_cap + slack:
        return False
    if r1 < rb.mu * r0 - slack:
        return False
    if rb.kind == "outer":
        return r0 + r1 <= rb.sum_cap + slack
    return r1 <= min(rb.r1_cap_legitimate, rb.r1_cap_cognitive) + slack
