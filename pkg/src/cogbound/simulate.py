"""Monte Carlo verification of the coding ensemble's second-order statistics.

One channel use of the scheme draws

    x10 ~ N(0, beta*p1)        shared codeword at the legitimate transmitter
    x11 ~ N(0, (1-beta)*p1)    private codeword
    x22 ~ N(0, alpha*p2)       cognitive codeword (dirty-paper encoded)
    z1, z2 ~ N(0, 1)           receiver noises

    x20 = sqrt((1-alpha)*p2 / (beta*p1)) * x10      (shared power at tx 2)
    x1 = x10 + x11,  x2 = x20 + x22
    y1 = x1 + b*x2 + z1,  y2 = a*x1 + x2 + z2

Dirty-paper encoding and decoding are represented by their statistical
signature only: x22 is independent of the known interference a*x10 + x20,
and the final decoding stage at the cognitive receiver sees noise variance
exactly 1.  When beta*p1 = 0 the x20 scaling degenerates; an independent
codeword of power (1-alpha)*p2 realizes the same second-order statistics
and is drawn instead (reusing the x10 draw, which is unused there).

Randomness is counter-based: samples are generated in fixed blocks, block k
reading the Philox(key=seed) stream starting at raw-output offset 5*k*BLOCK,
five draws per sample, normals via the inverse CDF.  Per-sample draws are
therefore a pure function of (seed, sample index), so serial and threaded
runs produce bit-identical statistics.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.random import Philox
from scipy.special import ndtri

from .channel import ChannelParams, PowerSplit

BLOCK_SAMPLES = 65536
DRAWS_PER_SAMPLE = 5
# Philox emits 4 raw 64-bit outputs per counter increment.
_COUNTER_STRIDE = BLOCK_SAMPLES * DRAWS_PER_SAMPLE // 4

_SIGNALS = ("x1", "x2", "y1", "y2", "if_rx1_w1", "residual", "if_rx2_w1", "z2")


class StatsMismatch(RuntimeError):
    """Empirical statistics disagree with the analytic values.

    Carries the full verification report in ``report``.
    """

    def __init__(self, message: str, report: "VerificationReport"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class SimConfig:
    """Channel, split, sample count and seed of one simulation run."""

    ch: ChannelParams
    sp: PowerSplit
    samples: int
    seed: int

    def __post_init__(self):
        if not isinstance(self.samples, int) or isinstance(self.samples, bool):
            raise ValueError("samples must be an integer")
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValueError("seed must be an integer")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class Estimate:
    """A point estimate with its standard error."""

    value: float
    std_error: float


@dataclass(frozen=True)
class SimStats:
    """Empirical second-order statistics of one run.

    Variances are about the empirical mean (ddof=1) with the Gaussian
    fourth-moment standard error var*sqrt(2/(n-1)); the cross-correlation
    is the raw moment mean(x1*x2) with the jointly-Gaussian standard error
    sqrt((var1*var2 + cross^2)/n).  Stage entries are the interference-
    plus-noise variances seen at each decoding step.
    """

    samples: int
    var_x1: Estimate
    var_x2: Estimate
    var_y1: Estimate
    var_y2: Estimate
    cross_x1x2: Estimate
    residual_var: Estimate
    stage_rx1_w1: Estimate
    stage_rx1_w0: Estimate
    stage_rx2_w1: Estimate
    stage_rx2_w2: Estimate


def _block_plan(samples: int) -> list[tuple[int, int]]:
    """(start, count) pairs; fixed by the sample count alone."""
    plan = []
    start = 0
    while start < samples:
        plan.append((start, min(BLOCK_SAMPLES, samples - start)))
        start += BLOCK_SAMPLES
    return plan


def _block_moments(cfg: SimConfig, start: int, count: int) -> np.ndarray:
    """Partial sums of one block: per signal (sum, sum of squares), then sum(x1*x2)."""
    ch, sp = cfg.ch, cfg.sp
    bg = Philox(key=cfg.seed, counter=(start // BLOCK_SAMPLES) * _COUNTER_STRIDE)
    raw = bg.random_raw(count * DRAWS_PER_SAMPLE).reshape(count, DRAWS_PER_SAMPLE)
    # 53-bit uniforms shifted off zero so the inverse CDF stays finite.
    u = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0 ** -53
    z = ndtri(u)
    bp1 = sp.beta * ch.p1
    x10 = math.sqrt(bp1) * z[:, 0]
    x11 = math.sqrt((1.0 - sp.beta) * ch.p1) * z[:, 1]
    x22 = math.sqrt(sp.alpha * ch.p2) * z[:, 2]
    z1 = z[:, 3]
    z2 = z[:, 4]
    if bp1 > 0.0:
        x20 = math.sqrt((1.0 - sp.alpha) * ch.p2 / bp1) * x10
    else:
        x20 = math.sqrt((1.0 - sp.alpha) * ch.p2) * z[:, 0]
    x1 = x10 + x11
    x2 = x20 + x22
    y1 = x1 + ch.b * x2 + z1
    y2 = ch.a * x1 + x2 + z2
    signals = (
        x1, x2, y1, y2,
        y1 - x11,               # interference+noise while decoding w1 at rx1
        y1 - x1 - ch.b * x20,   # dirty-paper-side residual b*x22 + z1
        y2 - ch.a * x11,        # interference+noise while decoding w1 at rx2
        z2,                     # noise floor of the final cognitive stage
    )
    out = np.empty(2 * len(signals) + 1)
    for i, sig in enumerate(signals):
        out[2 * i] = sig.sum()
        out[2 * i + 1] = (sig * sig).sum()
    out[-1] = (x1 * x2).sum()
    return out


def simulate_signals(cfg: SimConfig, threads: int = 1) -> SimStats:
    """Generate the Gaussian ensemble and accumulate all statistics in one pass.

    Deterministic for a given config: the block partition is fixed by the
    sample count, per-block content is a pure function of (seed, block),
    and blocks are merged in index order with compensated summation, so the
    result is independent of ``threads``.
    """
    plan = _block_plan(cfg.samples)
    if threads > 1 and len(plan) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(lambda sc: _block_moments(cfg, *sc), plan))
    else:
        partials = [_block_moments(cfg, *sc) for sc in plan]
    totals = [math.fsum(p[i] for p in partials) for i in range(len(partials[0]))]
    n = cfg.samples

    def var_est(total: float, total_sq: float) -> Estimate:
        if n < 2:
            return Estimate(0.0, math.inf)
        var = max((total_sq - total * total / n) / (n - 1), 0.0)
        return Estimate(var, var * math.sqrt(2.0 / (n - 1)))

    est = {name: var_est(totals[2 * i], totals[2 * i + 1])
           for i, name in enumerate(_SIGNALS)}
    cross = totals[-1] / n
    if n < 2:
        cross_se = math.inf
    else:
        cross_se = math.sqrt(
            max(est["x1"].value * est["x2"].value + cross * cross, 0.0) / n)
    return SimStats(
        samples=n,
        var_x1=est["x1"], var_x2=est["x2"], var_y1=est["y1"], var_y2=est["y2"],
        cross_x1x2=Estimate(cross, cross_se),
        residual_var=est["residual"],
        stage_rx1_w1=est["if_rx1_w1"],
        stage_rx1_w0=est["residual"],  # same composite signal b*x22 + z1
        stage_rx2_w1=est["if_rx2_w1"],
        stage_rx2_w2=est["z2"],
    )


def analytic_stage_values(ch: ChannelParams, sp: PowerSplit) -> dict[str, tuple[float, float]]:
    """(signal power, interference-plus-noise variance) per decoding stage.

    Derived from the ensemble construction: the shared codewords are fully
    correlated with E[x10*x20] = sqrt(beta*p1*(1-alpha)*p2), the cognitive
    codeword is independent of them, and the final cognitive stage sees
    only unit noise.
    """
    e10_20 = math.sqrt(sp.beta * ch.p1 * (1.0 - sp.alpha) * ch.p2)
    return {
        "rx1_w1": ((1.0 - sp.beta) * ch.p1,
                   1.0 + sp.beta * ch.p1 + ch.b ** 2 * ch.p2 + 2.0 * ch.b * e10_20),
        "rx1_w0": (sp.beta * ch.p1 + ch.b ** 2 * (1.0 - sp.alpha) * ch.p2
                   + 2.0 * ch.b * e10_20,
                   1.0 + ch.b ** 2 * sp.alpha * ch.p2),
        "rx2_w1": (ch.a ** 2 * (1.0 - sp.beta) * ch.p1,
                   1.0 + ch.a ** 2 * sp.beta * ch.p1 + ch.p2 + 2.0 * ch.a * e10_20),
        "rx2_w2": (sp.alpha * ch.p2, 1.0),
    }


@dataclass(frozen=True)
class StageCheck:
    """One analytic-vs-empirical comparison."""

    name: str
    analytic: float
    empirical: float
    std_error: float
    tolerance: float
    passed: bool
    one_sided: bool = False


@dataclass(frozen=True)
class VerificationReport:
    """Bundle of stage checks from one verifier."""

    checks: tuple[StageCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.checks if not c.passed)


def _finish(report: VerificationReport) -> VerificationReport:
    if not report.passed:
        raise StatsMismatch(
            "statistics mismatch at stage(s): " + ", ".join(report.failing()),
            report)
    return report


def _two_sided(name, analytic, est: Estimate, rel_floor) -> StageCheck:
    tol = max(rel_floor * analytic, 4.0 * est.std_error)
    return StageCheck(name=name, analytic=analytic, empirical=est.value,
                      std_error=est.std_error, tolerance=tol,
                      passed=abs(est.value - analytic) <= tol)


def verify_sinr(st: SimStats, ch: ChannelParams, sp: PowerSplit) -> VerificationReport:
    """Check every decoding stage's interference-plus-noise variance.

    Each stage passes when the empirical value is within
    max(1%, 4 standard errors) of the analytic one; otherwise
    :class:`StatsMismatch` is raised naming the failing stage(s).
    """
    analytic = analytic_stage_values(ch, sp)
    empirical = {
        "rx1_w1": st.stage_rx1_w1,
        "rx1_w0": st.stage_rx1_w0,
        "rx2_w1": st.stage_rx2_w1,
        "rx2_w2": st.stage_rx2_w2,
    }
    checks = tuple(_two_sided(name, analytic[name][1], empirical[name], 0.01)
                   for name in empirical)
    return _finish(VerificationReport(checks))


def verify_epi_residual(st: SimStats, ch: ChannelParams, sp: PowerSplit) -> VerificationReport:
    """Check the dirty-paper-side residual variance of y1 - x1 - b*x20.

    The Gaussian ensemble attains the entropy-power lower bound with
    equality, so the residual variance must equal 1 + b^2*alpha*p2 within
    max(0.5%, 4 standard errors).
    """
    analytic = 1.0 + ch.b ** 2 * sp.alpha * ch.p2
    return _finish(VerificationReport(
        (_two_sided("dpc_residual", analytic, st.residual_var, 0.005),)))


def verify_cross_correlation(st: SimStats, ch: ChannelParams, sp: PowerSplit) -> VerificationReport:
    """Check the transmit cross-correlation bound and its attainment.

    E[x1*x2] must not exceed sqrt(beta*p1)*sqrt((1-alpha)*p2) (within 4
    standard errors), must attain it within 3 standard errors (the scheme
    is the extremal case), and Var(y1) must respect the induced output
    bound.
    """
    bound = math.sqrt(sp.beta * ch.p1) * math.sqrt((1.0 - sp.alpha) * ch.p2)
    cross = st.cross_x1x2
    y1_bound = (1.0 + ch.p1 + ch.b ** 2 * ch.p2 + 2.0 * ch.b * bound)
    checks = (
        StageCheck(name="cross_upper_bound", analytic=bound, empirical=cross.value,
                   std_error=cross.std_error, tolerance=4.0 * cross.std_error,
                   passed=cross.value <= bound + 4.0 * cross.std_error,
                   one_sided=True),
        StageCheck(name="cross_equality", analytic=bound, empirical=cross.value,
                   std_error=cross.std_error, tolerance=3.0 * cross.std_error,
                   passed=abs(cross.value - bound) <= 3.0 * cross.std_error),
        StageCheck(name="y1_variance_bound", analytic=y1_bound,
                   empirical=st.var_y1.value, std_error=st.var_y1.std_error,
                   tolerance=4.0 * st.var_y1.std_error,
                   passed=st.var_y1.value <= y1_bound + 4.0 * st.var_y1.std_error,
                   one_sided=True),
    )
    return _finish(VerificationReport(checks))
