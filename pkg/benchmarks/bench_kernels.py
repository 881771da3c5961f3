"""Benchmark the compiled sweep kernels against the pure-Python fallback.

Times the two hot operations behind ``union_support`` (grid sweep and
pattern-search refinement) on identical workloads, plus the Monte Carlo
generator for context (it is numpy-based in both modes).

    python benchmarks/bench_kernels.py [--channels N] [--directions D]
"""

import argparse
import time

import numpy as np

from cogbound import ChannelParams, PowerSplit, SimConfig, simulate_signals
from cogbound import _pykernels as pk

try:
    from cogbound import _ckernels as ck
except ImportError:
    ck = None


def workload(n_channels, rng):
    out = []
    for _ in range(n_channels):
        out.append((rng.uniform(0, 3), rng.uniform(-0.999, 0.999),
                    rng.uniform(0, 20), rng.uniform(0, 20),
                    rng.uniform(0.05, 3)))
    return out


def time_backend(impl, channels, dirs, alphas, betas):
    w0, w1, w2 = dirs[:, 0].copy(), dirs[:, 1].copy(), dirs[:, 2].copy()
    t_sweep = 0.0
    t_refine = 0.0
    checksum = 0.0
    for a, b, p1, p2, mu in channels:
        for outer in (True, False):
            t0 = time.perf_counter()
            gv, ga, gb = impl.sweep_support(outer, a, b, p1, p2, mu,
                                            w0, w1, w2, alphas, betas)
            t1 = time.perf_counter()
            rv, _, _ = impl.refine_support(outer, a, b, p1, p2, mu,
                                           w0, w1, w2, ga, gb,
                                           0.01, 0.01, 160)
            t2 = time.perf_counter()
            t_sweep += t1 - t0
            t_refine += t2 - t1
            checksum += float(np.sum(rv))
    return t_sweep, t_refine, checksum


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--channels", type=int, default=20)
    parser.add_argument("--directions", type=int, default=64)
    args = parser.parse_args()

    rng = np.random.default_rng(12345)
    channels = workload(args.channels, rng)
    dirs = np.abs(rng.normal(size=(args.directions, 3)))
    alphas = np.linspace(0, 1, 101)
    betas = np.linspace(0, 1, 101)

    print(f"workload: {args.channels} channels x 2 region kinds x "
          f"{args.directions} directions, 101x101 grid\n")
    header = f"{'backend':<10} {'sweep':>10} {'refine':>10} {'total':>10}"
    print(header)
    print("-" * len(header))

    results = {}
    for name, impl in (("python", pk), ("compiled", ck)):
        if impl is None:
            print(f"{name:<10} {'(extension not built)':>32}")
            continue
        sweep, refine, checksum = time_backend(impl, channels, dirs, alphas, betas)
        results[name] = (sweep, refine, checksum)
        print(f"{name:<10} {sweep:>9.3f}s {refine:>9.3f}s {sweep + refine:>9.3f}s")

    if len(results) == 2:
        ps, pr, pc = results["python"]
        cs, cr, cc = results["compiled"]
        print(f"\nspeedup: sweep {ps / cs:.1f}x, refine {pr / cr:.1f}x, "
              f"total {(ps + pr) / (cs + cr):.1f}x")
        if abs(pc - cc) > 1e-6 * max(abs(pc), 1.0):
            print(f"WARNING: checksums differ: python {pc!r} vs compiled {cc!r}")

    ch = ChannelParams(a=2, b=0.5, p1=6, p2=6, mu=0.5)
    cfg = SimConfig(ch=ch, sp=PowerSplit(0.5, 0.5), samples=10 ** 6, seed=42)
    t0 = time.perf_counter()
    simulate_signals(cfg)
    t1 = time.perf_counter()
    print(f"\nMonte Carlo (numpy path, backend-independent): "
          f"10^6 samples in {t1 - t0:.2f}s")


if __name__ == "__main__":
    main()
