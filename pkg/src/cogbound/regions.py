"""Rate polytopes of the member regions and hull queries over power splits.

Every power split (alpha, beta) defines one member polytope of rate triples
(r0, r1, r2):

* outer kind:  r0 <= A,  r0 + r1 <= B,  r2 <= C,  r1 >= mu*r0
* inner kind:  r0 <= A,  r1 <= min(L1, L2),  r2 <= C,  r1 >= mu*r0

with the caps A, B, L1, L2, C given by ``_pykernels.region_caps``.  The
region of interest is the convex hull of the union of member polytopes over
the power-split square.  Since the support function of such a hull equals
the maximum of the member supports, weighted-rate queries reduce to a grid
sweep plus a local refinement, which is what ``union_support`` does.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

from . import kernels
from ._pykernels import region_caps, support_table
from .channel import ChannelParams, PowerSplit, RateTriple, Weights

Kind = Literal["outer", "inner"]

SUPPORT_SLACK = 1e-9  # one-sided slack for hull-membership tests
ALPHA_ONE_TOL = 1e-6


class WeakInterferenceRequired(ValueError):
    """Outer-bound query on a channel with |b| >= 1."""


def _check_kind(kind: str) -> bool:
    if kind not in ("outer", "inner"):
        raise ValueError(f"kind must be 'outer' or 'inner', got {kind!r}")
    return kind == "outer"


def _require_weak(ch: ChannelParams) -> None:
    if not ch.weak_interference():
        raise WeakInterferenceRequired(
            f"outer bounds require |b| < 1, got b={ch.b}")


@dataclass(frozen=True)
class GridSpec:
    """Resolution of the (alpha, beta) sweep and of the local refinement.

    The refinement budget covers the worst observed convergence pattern
    (zig-zag onto a kink apex of the support surface takes roughly three
    iterations per halving of the remaining distance).
    """

    alpha_steps: int = 101
    beta_steps: int = 101
    refine_iters: int = 160

    def __post_init__(self):
        if self.alpha_steps < 2 or self.beta_steps < 2:
            raise ValueError("grid needs at least 2 steps per axis")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be >= 0")

    def alphas(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.alpha_steps)

    def betas(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.beta_steps)


@dataclass(frozen=True)
class RegionBounds:
    """Caps of one member polytope, tagged with the split that produced it."""

    kind: Kind
    r0_cap: float
    r2_cap: float
    mu: float
    split: PowerSplit
    sum_cap: Optional[float] = None
    r1_cap_legitimate: Optional[float] = None
    r1_cap_cognitive: Optional[float] = None

    def __post_init__(self):
        _check_kind(self.kind)
        caps = {"r0_cap": self.r0_cap, "r2_cap": self.r2_cap}
        if self.kind == "outer":
            if self.sum_cap is None:
                raise ValueError("outer bounds require sum_cap")
            if self.r1_cap_legitimate is not None or self.r1_cap_cognitive is not None:
                raise ValueError("outer bounds carry no per-receiver r1 caps")
            caps["sum_cap"] = self.sum_cap
        else:
            if self.r1_cap_legitimate is None or self.r1_cap_cognitive is None:
                raise ValueError("inner bounds require both r1 caps")
            if self.sum_cap is not None:
                raise ValueError("inner bounds carry no sum cap")
            caps["r1_cap_legitimate"] = self.r1_cap_legitimate
            caps["r1_cap_cognitive"] = self.r1_cap_cognitive
        for name, value in caps.items():
            if not np.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
        if self.kind == "outer" and self.sum_cap < self.r0_cap:
            raise ValueError("sum_cap must be >= r0_cap")
        if self.mu < 0.0 or not np.isfinite(self.mu):
            raise ValueError(f"mu must be finite and >= 0, got {self.mu}")

    def r1_cap(self) -> float:
        """Effective r1 cap of an inner region: min of the two decoding caps."""
        if self.kind != "inner":
            raise ValueError("r1_cap applies to inner bounds only")
        return min(self.r1_cap_legitimate, self.r1_cap_cognitive)


@dataclass(frozen=True)
class SupportResult:
    """Maximum of a weighted rate objective, with an attaining vertex."""

    value: float
    maximizer: RateTriple
    split: PowerSplit


def outer_bounds(ch: ChannelParams, sp: PowerSplit) -> RegionBounds:
    """Member polytope caps of the outer (converse) region at one split.

    Only valid under weak interference (|b| < 1); raises
    :class:`WeakInterferenceRequired` otherwise.
    """
    _require_weak(ch)
    r0, rsum, r2 = region_caps(True, ch.a, ch.b, ch.p1, ch.p2, sp.alpha, sp.beta)
    return RegionBounds(kind="outer", r0_cap=float(r0), r2_cap=float(r2),
                        mu=ch.mu, split=sp, sum_cap=float(rsum))


def inner_bounds(ch: ChannelParams, sp: PowerSplit) -> RegionBounds:
    """Member polytope caps of the achievable region at one split.

    The coding scheme is defined for any gains, so there is no
    weak-interference gate here.
    """
    r0, r1_leg, r1_cog, r2 = region_caps(
        False, ch.a, ch.b, ch.p1, ch.p2, sp.alpha, sp.beta)
    return RegionBounds(kind="inner", r0_cap=float(r0), r2_cap=float(r2),
                        mu=ch.mu, split=sp,
                        r1_cap_legitimate=float(r1_leg),
                        r1_cap_cognitive=float(r1_cog))


def _bounds_at(ch: ChannelParams, sp: PowerSplit, kind: Kind) -> RegionBounds:
    return outer_bounds(ch, sp) if kind == "outer" else inner_bounds(ch, sp)


def _face_vertices(rb: RegionBounds, mu: float) -> list[tuple[float, float]]:
    """Vertices of the (r0, r1) face polygon, constructed branch-exactly.

    Degenerate coincidences (the ratio line meeting the r0 or sum face at
    the same point) are resolved structurally rather than by tolerance.
    """
    a_cap = rb.r0_cap
    if rb.kind == "outer":
        b_cap = rb.sum_cap
        if b_cap > a_cap * (1.0 + mu):
            return [(0.0, 0.0), (a_cap, mu * a_cap), (a_cap, b_cap - a_cap), (0.0, b_cap)]
        r0m = min(a_cap, b_cap / (1.0 + mu)) if mu > 0.0 else min(a_cap, b_cap)
        return [(0.0, 0.0), (r0m, mu * r0m), (0.0, b_cap)]
    r1_cap = rb.r1_cap()
    if mu > 0.0 and mu * a_cap > r1_cap:
        return [(0.0, 0.0), (r1_cap / mu, r1_cap), (0.0, r1_cap)]
    return [(0.0, 0.0), (a_cap, mu * a_cap), (a_cap, r1_cap), (0.0, r1_cap)]


def _vertices_with_mu(rb: RegionBounds, mu: float) -> list[RateTriple]:
    seen = set()
    out = []
    for r0, r1 in _face_vertices(rb, mu):
        for r2 in (0.0, rb.r2_cap):
            key = (r0, r1, r2)
            if key not in seen:
                seen.add(key)
                out.append(key)
    out.sort()
    return [RateTriple(*v) for v in out]


def polytope_vertices(rb: RegionBounds) -> list[RateTriple]:
    """All vertices of the member polytope, deduplicated, sorted ascending.

    The (r0, r1) face polygon is enumerated by intersecting adjacent active
    constraints; r2 takes the values {0, r2_cap}.
    """
    return _vertices_with_mu(rb, rb.mu)


def _support_with_mu(rb: RegionBounds, w: Weights, mu: float) -> SupportResult:
    best_val = -np.inf
    best = None
    verts = _vertices_with_mu(rb, mu)
    verts.sort(key=RateTriple.as_tuple, reverse=True)
    for v in verts:
        val = w.mu0 * v.r0 + w.mu1 * v.r1 + w.mu2 * v.r2
        if val > best_val:
            best_val = val
            best = v
    return SupportResult(value=float(best_val), maximizer=best, split=rb.split)


def support(rb: RegionBounds, w: Weights) -> SupportResult:
    """Maximize mu0*r0 + mu1*r1 + mu2*r2 over the member polytope.

    The maximizer is an attaining vertex; exact value ties are broken
    lexicographically by (r0, r1, r2) descending, so outputs are stable.
    """
    return _support_with_mu(rb, w, rb.mu)


def _weights_matrix(weights: Sequence[Weights] | np.ndarray) -> np.ndarray:
    if isinstance(weights, np.ndarray):
        mat = np.asarray(weights, dtype=np.float64)
        if mat.ndim != 2 or mat.shape[1] != 3:
            raise ValueError("weights array must have shape (n, 3)")
        return mat
    return np.array([w.as_tuple() for w in weights], dtype=np.float64)


def _as_weights(row: np.ndarray) -> Weights:
    return Weights(float(row[0]), float(row[1]), float(row[2]))


def union_support_many(ch: ChannelParams, weights: Sequence[Weights] | np.ndarray,
                       kind: Kind, grid: GridSpec = GridSpec(), *,
                       unconstrained: bool = False) -> list[SupportResult]:
    """Support of the hull-of-union region for a batch of weight directions.

    All directions share one grid sweep, so this is much cheaper than
    repeated :func:`union_support` calls.
    """
    outer = _check_kind(kind)
    if outer:
        _require_weak(ch)
    mat = _weights_matrix(weights)
    mu_eff = 0.0 if unconstrained else ch.mu
    alphas = grid.alphas()
    betas = grid.betas()
    w0, w1, w2 = mat[:, 0].copy(), mat[:, 1].copy(), mat[:, 2].copy()
    _, a0, b0 = kernels.sweep_support(outer, ch.a, ch.b, ch.p1, ch.p2, mu_eff,
                                      w0, w1, w2, alphas, betas)
    _, aa, bb = kernels.refine_support(
        outer, ch.a, ch.b, ch.p1, ch.p2, mu_eff, w0, w1, w2, a0, b0,
        1.0 / (grid.alpha_steps - 1), 1.0 / (grid.beta_steps - 1),
        grid.refine_iters)
    results = []
    for k in range(mat.shape[0]):
        sp = PowerSplit(float(aa[k]), float(bb[k]))
        rb = _bounds_at(ch, sp, kind)
        results.append(_support_with_mu(rb, _as_weights(mat[k]), mu_eff))
    return results


def union_support(ch: ChannelParams, w: Weights, kind: Kind,
                  grid: GridSpec = GridSpec(), *,
                  unconstrained: bool = False) -> SupportResult:
    """Support of the hull of the union of member regions over all splits.

    Grid sweep followed by a derivative-free pattern search around the
    best cell, run down to a 1e-12 step floor; exact up to that refinement
    resolution because the support of a convex hull of a union is the max
    of the member supports.
    """
    return union_support_many(ch, [w], kind, grid, unconstrained=unconstrained)[0]


def weight_directions(n: int) -> np.ndarray:
    """Deterministic direction sample on the nonnegative octant, shape (n, 3).

    The three coordinate axes come first so axis-aligned face violations
    are always visible; the rest fills the open octant with a golden-angle
    spiral.
    """
    if n < 3:
        raise ValueError("need at least 3 directions")
    axes = np.eye(3)
    m = n - 3
    if m == 0:
        return axes
    golden = (1.0 + np.sqrt(5.0)) / 2.0
    k = np.arange(m) + 0.5
    z = k / m
    r = np.sqrt(1.0 - z * z)
    theta = (np.pi / 2.0) * np.mod(k * golden, 1.0)
    spiral = np.stack([r * np.cos(theta), r * np.sin(theta), z], axis=1)
    return np.vstack([axes, spiral])


def contains(ch: ChannelParams, pt: RateTriple, kind: Kind,
             directions: int = 64, grid: GridSpec = GridSpec()) -> bool:
    """Approximate membership of ``pt`` in the hull-of-union region.

    Checks support dominance over ``directions`` sampled nonnegative weight
    directions.  One-sided: False means provably outside; True means inside
    up to the direction-sampling resolution.
    """
    if directions < 16:
        raise ValueError("directions must be >= 16")
    dirs = weight_directions(directions)
    results = union_support_many(ch, dirs, kind, grid)
    point = np.array(pt.as_tuple())
    for row, res in zip(dirs, results):
        if float(row @ point) > res.value + SUPPORT_SLACK:
            return False
    return True


def _sample_rows(ch: ChannelParams, kind: Kind, alphas: np.ndarray,
                 betas: np.ndarray, i: int) -> list[tuple[PowerSplit, RateTriple]]:
    rows = []
    for j in range(betas.size):
        sp = PowerSplit(float(alphas[i]), float(betas[j]))
        rb = _bounds_at(ch, sp, kind)
        for v in polytope_vertices(rb):
            rows.append((sp, v))
    return rows


def boundary_sample(ch: ChannelParams, kind: Kind, grid: GridSpec = GridSpec(),
                    threads: int = 1) -> list[tuple[PowerSplit, RateTriple]]:
    """All member-polytope vertices over the grid, tagged with their split.

    Ordering is deterministic and independent of ``threads``: row-major in
    alpha then beta, vertices ascending lexicographically.
    """
    outer = _check_kind(kind)
    if outer:
        _require_weak(ch)
    alphas = grid.alphas()
    betas = grid.betas()
    indices = range(alphas.size)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_row = list(pool.map(
                lambda i: _sample_rows(ch, kind, alphas, betas, i), indices))
    else:
        per_row = [_sample_rows(ch, kind, alphas, betas, i) for i in indices]
    out: list[tuple[PowerSplit, RateTriple]] = []
    for rows in per_row:
        out.extend(rows)
    return out
