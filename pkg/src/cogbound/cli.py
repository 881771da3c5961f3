"""Command-line surface: config ingestion, subcommands, CSV/JSON/SVG output.

Subcommands:

* ``region``    export all member-polytope vertices over the split grid
* ``optimize``  weighted maximization over both hulls plus the tightness report
* ``check``     individual condition checks (``--remark1``, ``--lemma 5|6|7``)
* ``simulate``  Monte Carlo run plus all statistic verifiers
* ``plot``      SVG of the (r0+r1, r2) trade-off frontier, inner vs outer

Exit codes: 0 success, 1 config parse/validation error, 2 domain violation,
3 output I/O error, 4 simulation verification failure.  All numeric output
is printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import (
    ChannelParams,
    PowerSplit,
    RateTriple,
    Weights,
    validate_channel,
)
from .optimize import (
    OptimalityReport,
    PreconditionViolated,
    _binding_sides,
    check_beta_one_optimal,
    check_cognitive_corner,
    check_sum_tightness,
    maximize_weighted,
    optimality_report,
    r1_binding_at_legitimate,
)
from .regions import GridSpec, WeakInterferenceRequired, boundary_sample
from .simulate import SimConfig, StatsMismatch, simulate_signals, verify_cross_correlation, verify_epi_residual, verify_sinr

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DOMAIN = 2
EXIT_IO = 3
EXIT_VERIFY = 4

DEFAULT_SPLIT = 0.5
DEFAULT_SAMPLES = 1_000_000
DEFAULT_SEED = 42
PLOT_TRADEOFF_STEPS = 41

CSV_HEADER = "alpha,beta,r0,r1,r2,kind"


class ConfigError(ValueError):
    """Bad command line or config file."""


def fmt(x: float) -> str:
    """12-significant-digit text form used for every numeric output."""
    return f"{float(x):.12g}"


def round12(x: float) -> float:
    """Value as re-parsed from its printed form (JSON round-trip stable)."""
    return float(fmt(x))


@dataclass(frozen=True)
class RunConfig:
    """Parsed configuration file plus defaults."""

    channel: ChannelParams
    weights: Weights
    grid: GridSpec
    samples: int
    seed: int
    out_format: Optional[str]
    out_path: Optional[str]


def _strict_section(doc: dict, name: str, allowed: tuple[str, ...]) -> dict:
    section = doc.get(name, {})
    if not isinstance(section, dict):
        raise ConfigError(f"config section {name!r} must be an object")
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown field(s) in {name!r}: {', '.join(unknown)}")
    return section


def load_config(path: str) -> RunConfig:
    """Read and validate the JSON config; unknown fields are rejected."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    unknown = sorted(set(doc) - {"channel", "weights", "grid", "sim", "output"})
    if unknown:
        raise ConfigError(f"unknown config section(s): {', '.join(unknown)}")
    if "channel" not in doc:
        raise ConfigError("config requires a 'channel' section")
    try:
        channel = validate_channel(doc["channel"])
        wsec = _strict_section(doc, "weights", ("mu0", "mu1", "mu2"))
        weights = Weights(wsec.get("mu0", 1.0), wsec.get("mu1", 1.0), wsec.get("mu2", 1.0))
        gsec = _strict_section(doc, "grid", ("alpha_steps", "beta_steps", "refine_iters"))
        grid = GridSpec(gsec.get("alpha_steps", 101), gsec.get("beta_steps", 101),
                        gsec.get("refine_iters", 160))
        ssec = _strict_section(doc, "sim", ("samples", "seed"))
        samples = ssec.get("samples", DEFAULT_SAMPLES)
        seed = ssec.get("seed", DEFAULT_SEED)
        osec = _strict_section(doc, "output", ("format", "path"))
        out_format = osec.get("format")
        if out_format is not None and out_format not in ("csv", "json", "svg"):
            raise ConfigError(f"output format must be csv, json or svg, got {out_format!r}")
        out_path = osec.get("path")
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config value: {exc}") from exc
    return RunConfig(channel=channel, weights=weights, grid=grid,
                     samples=samples, seed=seed,
                     out_format=out_format, out_path=out_path)


def _emit(text: str, args, cfg: RunConfig) -> None:
    path = args.out or cfg.out_path
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _channel_dict(ch: ChannelParams) -> dict:
    return {"a": round12(ch.a), "b": round12(ch.b), "p1": round12(ch.p1),
            "p2": round12(ch.p2), "mu": round12(ch.mu)}


def _split_dict(sp: PowerSplit) -> dict:
    return {"alpha": round12(sp.alpha), "beta": round12(sp.beta)}


def _triple_dict(rt: RateTriple) -> dict:
    return {"r0": round12(rt.r0), "r1": round12(rt.r1), "r2": round12(rt.r2)}


def _weights_dict(w: Weights) -> dict:
    return {"mu0": round12(w.mu0), "mu1": round12(w.mu1), "mu2": round12(w.mu2)}


def _report_dict(rep: OptimalityReport) -> dict:
    out = {
        "weights": _weights_dict(rep.weights),
        "outer_value": round12(rep.outer_value),
        "inner_value": round12(rep.inner_value),
        "gap": round12(rep.gap),
        "outer_split": _split_dict(rep.outer_split),
        "inner_split": _split_dict(rep.inner_split),
        "remark1_holds": rep.binding_ok,
        "cross_condition": rep.cross_condition,
        "ratio_condition": rep.ratio_condition,
        "corner_applicable": rep.corner_applicable,
        "verdict": rep.verdict,
        "corner": _triple_dict(rep.corner) if rep.corner is not None else None,
        "notes": list(rep.notes),
    }
    return out


def _split_from_args(args) -> PowerSplit:
    alpha = DEFAULT_SPLIT if args.alpha is None else args.alpha
    beta = DEFAULT_SPLIT if args.beta is None else args.beta
    try:
        return PowerSplit(alpha, beta)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_region(args, cfg: RunConfig) -> int:
    rows = boundary_sample(cfg.channel, args.kind, cfg.grid, threads=args.threads)
    out_format = cfg.out_format or "csv"
    if out_format == "csv":
        lines = [CSV_HEADER]
        for sp, rt in rows:
            lines.append(",".join((fmt(sp.alpha), fmt(sp.beta), fmt(rt.r0),
                                   fmt(rt.r1), fmt(rt.r2), args.kind)))
        _emit("\n".join(lines) + "\n", args, cfg)
    elif out_format == "json":
        payload = {
            "kind": args.kind,
            "columns": CSV_HEADER.split(","),
            "rows": [{"alpha": round12(sp.alpha), "beta": round12(sp.beta),
                      "r0": round12(rt.r0), "r1": round12(rt.r1),
                      "r2": round12(rt.r2), "kind": args.kind}
                     for sp, rt in rows],
        }
        _emit(_json_text(payload), args, cfg)
    else:
        raise ConfigError("region output supports csv or json")
    return EXIT_OK


def cmd_optimize(args, cfg: RunConfig) -> int:
    rep = optimality_report(cfg.channel, cfg.weights, cfg.grid)
    payload = {"channel": _channel_dict(cfg.channel)}
    payload.update(_report_dict(rep))
    _emit(_json_text(payload), args, cfg)
    return EXIT_OK


def cmd_check(args, cfg: RunConfig) -> int:
    if args.remark1 == (args.lemma is not None):
        raise ConfigError("check requires exactly one of --remark1 or --lemma")
    ch = cfg.channel
    if args.remark1:
        sp = _split_from_args(args)
        sides = _binding_sides(ch, sp)
        payload = {
            "channel": _channel_dict(ch),
            "split": _split_dict(sp),
            "remark1_holds": r1_binding_at_legitimate(ch, sp),
            "cognitive_side": round12(sides[0]) if sides else None,
            "legitimate_side": round12(sides[1]) if sides else None,
        }
    elif args.lemma == 5:
        rep = check_beta_one_optimal(ch, cfg.weights, cfg.grid)
        payload = {
            "channel": _channel_dict(ch),
            "lemma": 5,
            "holds": rep.holds,
            "beta_at_one": rep.beta_at_one,
            "degenerate_tie": rep.degenerate_tie,
            "best_value": round12(rep.best.value),
            "best_split": _split_dict(rep.best.split),
            "witness": None if rep.witness is None else {
                "alpha": round12(rep.witness[0]), "beta": round12(rep.witness[1]),
                "value": round12(rep.witness[2]),
                "beta_one_value": round12(rep.witness[3])},
        }
    else:
        check = check_sum_tightness if args.lemma == 6 else check_cognitive_corner
        rep = check(ch, cfg.weights, cfg.grid)
        payload = {"channel": _channel_dict(ch), "lemma": args.lemma}
        payload.update(_report_dict(rep))
    _emit(_json_text(payload), args, cfg)
    return EXIT_OK


def _stats_dict(st) -> dict:
    fields = ("var_x1", "var_x2", "var_y1", "var_y2", "cross_x1x2",
              "residual_var", "stage_rx1_w1", "stage_rx1_w0",
              "stage_rx2_w1", "stage_rx2_w2")
    out = {"samples": st.samples}
    for name in fields:
        est = getattr(st, name)
        out[name] = {"value": round12(est.value), "std_error": round12(est.std_error)}
    return out


def cmd_simulate(args, cfg: RunConfig) -> int:
    sp = _split_from_args(args)
    samples = cfg.samples if args.samples is None else args.samples
    seed = cfg.seed if args.seed is None else args.seed
    try:
        sim_cfg = SimConfig(ch=cfg.channel, sp=sp, samples=samples, seed=seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    stats = simulate_signals(sim_cfg, threads=args.threads)
    checks = []
    failed = False
    for verifier in (verify_sinr, verify_epi_residual, verify_cross_correlation):
        try:
            report = verifier(stats, cfg.channel, sp)
        except StatsMismatch as exc:
            report = exc.report
            failed = True
        for c in report.checks:
            checks.append({
                "name": c.name,
                "analytic": round12(c.analytic),
                "empirical": round12(c.empirical),
                "std_error": round12(c.std_error),
                "tolerance": round12(c.tolerance),
                "one_sided": c.one_sided,
                "passed": c.passed,
            })
    payload = {
        "channel": _channel_dict(cfg.channel),
        "split": _split_dict(sp),
        "samples": samples,
        "seed": seed,
        "stats": _stats_dict(stats),
        "checks": checks,
        "verdict": "fail" if failed else "pass",
    }
    _emit(_json_text(payload), args, cfg)
    return EXIT_VERIFY if failed else EXIT_OK


def _frontier(ch: ChannelParams, grid: GridSpec, kind: str) -> list[tuple[float, float, float]]:
    pts = []
    for lam in np.linspace(0.0, 1.0, PLOT_TRADEOFF_STEPS):
        w = Weights(lam, lam, 1.0 - lam)
        res = maximize_weighted(ch, w, kind, grid)
        m = res.maximizer
        pts.append((float(lam), m.r0 + m.r1, m.r2))
    return pts


def render_pareto_svg(outer_pts, inner_pts) -> str:
    """Self-contained SVG of the sum-rate vs cognitive-rate frontier.

    The raw data rows are embedded in a <desc> block at full output
    precision so the plot can be audited without re-running.
    """
    width, height = 640, 480
    left, right, top, bottom = 70, 20, 40, 55
    xs = [p[1] for p in outer_pts + inner_pts] + [0.0]
    ys = [p[2] for p in outer_pts + inner_pts] + [0.0]
    xmax = max(max(xs), 1e-12) * 1.05
    ymax = max(max(ys), 1e-12) * 1.05

    def sx(x):
        return left + (width - left - right) * x / xmax

    def sy(y):
        return height - bottom - (height - top - bottom) * y / ymax

    def poly(pts, color, dash=""):
        coords = " ".join(f"{sx(p[1]):.2f},{sy(p[2]):.2f}" for p in pts)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        return (f'<polyline fill="none" stroke="{color}" stroke-width="2"'
                f'{extra} points="{coords}"/>')

    desc_rows = ["lambda,kind,sum_rate,r2"]
    for kind, pts in (("outer", outer_pts), ("inner", inner_pts)):
        for lam, x, y in pts:
            desc_rows.append(f"{fmt(lam)},{kind},{fmt(x)},{fmt(y)}")
    ticks = []
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv, yv = frac * xmax, frac * ymax
        ticks.append(f'<line x1="{sx(xv):.2f}" y1="{height-bottom}" x2="{sx(xv):.2f}" '
                     f'y2="{height-bottom+5}" stroke="black"/>')
        ticks.append(f'<text x="{sx(xv):.2f}" y="{height-bottom+18}" font-size="11" '
                     f'text-anchor="middle">{xv:.3g}</text>')
        ticks.append(f'<line x1="{left-5}" y1="{sy(yv):.2f}" x2="{left}" '
                     f'y2="{sy(yv):.2f}" stroke="black"/>')
        ticks.append(f'<text x="{left-8}" y="{sy(yv)+4:.2f}" font-size="11" '
                     f'text-anchor="end">{yv:.3g}</text>')
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<desc>" + "\n".join(desc_rows) + "</desc>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{height-bottom}" x2="{width-right}" '
        f'y2="{height-bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height-bottom}" stroke="black"/>',
        *ticks,
        poly(outer_pts, "#1f77b4"),
        poly(inner_pts, "#d62728", dash="6,4"),
        f'<text x="{(left + width - right) / 2:.2f}" y="{height-12}" font-size="13" '
        f'text-anchor="middle">sum rate r0 + r1 (bits/use)</text>',
        f'<text x="18" y="{(top + height - bottom) / 2:.2f}" font-size="13" '
        f'text-anchor="middle" transform="rotate(-90 18 {(top + height - bottom) / 2:.2f})">'
        "r2 (bits/use)</text>",
        f'<text x="{width-right-150}" y="{top+12}" font-size="12" fill="#1f77b4">'
        "outer bound</text>",
        f'<text x="{width-right-150}" y="{top+28}" font-size="12" fill="#d62728">'
        "achievable</text>",
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def cmd_plot(args, cfg: RunConfig) -> int:
    outer_pts = _frontier(cfg.channel, cfg.grid, "outer")
    inner_pts = _frontier(cfg.channel, cfg.grid, "inner")
    _emit(render_pareto_svg(outer_pts, inner_pts), args, cfg)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cogbound",
                     description="Capacity-region bounds for the partially "
                                 "cognitive Gaussian interference channel")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p_region = sub.add_parser("region", help="export member-polytope vertices")
    add_common(p_region)
    p_region.add_argument("--kind", choices=("outer", "inner"), default="outer")
    p_region.add_argument("--threads", type=int, default=1)

    p_opt = sub.add_parser("optimize", help="weighted maximization and gap report")
    add_common(p_opt)

    p_check = sub.add_parser("check", help="condition checks")
    add_common(p_check)
    p_check.add_argument("--remark1", action="store_true",
                         help="binding-constraint comparison at --alpha/--beta")
    p_check.add_argument("--lemma", type=int, choices=(5, 6, 7), default=None)
    p_check.add_argument("--alpha", type=float, default=None)
    p_check.add_argument("--beta", type=float, default=None)

    p_sim = sub.add_parser("simulate", help="Monte Carlo verification")
    add_common(p_sim)
    p_sim.add_argument("--alpha", type=float, default=None)
    p_sim.add_argument("--beta", type=float, default=None)
    p_sim.add_argument("--samples", type=int, default=None)
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--threads", type=int, default=1)

    p_plot = sub.add_parser("plot", help="SVG trade-off frontier")
    add_common(p_plot)

    return parser


_COMMANDS = {
    "region": cmd_region,
    "optimize": cmd_optimize,
    "check": cmd_check,
    "simulate": cmd_simulate,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (WeakInterferenceRequired, PreconditionViolated, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
