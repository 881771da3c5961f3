"""Capacity-region bounds for the Gaussian interference channel with a
partially cognitive transmitter: outer (converse) and inner (achievable)
hulls over power splits, weighted-rate optimization, tightness condition
checks, and Monte Carlo verification of the coding ensemble statistics."""

from .channel import (
    ChannelParams,
    NonFiniteParameter,
    NonpositiveMu,
    NonpositivePower,
    PowerSplit,
    RateTriple,
    Weights,
    ratio_constraint_satisfied,
    validate_channel,
)
from .kernels import BACKEND
from .optimize import (
    BetaSweepReport,
    OptimalityReport,
    PreconditionViolated,
    check_beta_one_optimal,
    check_cognitive_corner,
    check_sum_tightness,
    cognitive_corner,
    maximize_weighted,
    optimality_report,
    r1_binding_at_legitimate,
)
from .regions import (
    GridSpec,
    RegionBounds,
    SupportResult,
    WeakInterferenceRequired,
    boundary_sample,
    contains,
    inner_bounds,
    outer_bounds,
    polytope_vertices,
    support,
    union_support,
    union_support_many,
    weight_directions,
)
from .simulate import (
    SimConfig,
    SimStats,
    StatsMismatch,
    VerificationReport,
    analytic_stage_values,
    simulate_signals,
    verify_cross_correlation,
    verify_epi_residual,
    verify_sinr,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BetaSweepReport",
    "ChannelParams",
    "GridSpec",
    "NonFiniteParameter",
    "NonpositiveMu",
    "NonpositivePower",
    "OptimalityReport",
    "PowerSplit",
    "PreconditionViolated",
    "RateTriple",
    "RegionBounds",
    "SimConfig",
    "SimStats",
    "StatsMismatch",
    "SupportResult",
    "VerificationReport",
    "WeakInterferenceRequired",
    "Weights",
    "analytic_stage_values",
    "boundary_sample",
    "check_beta_one_optimal",
    "check_cognitive_corner",
    "check_sum_tightness",
    "cognitive_corner",
    "contains",
    "inner_bounds",
    "maximize_weighted",
    "optimality_report",
    "outer_bounds",
    "polytope_vertices",
    "r1_binding_at_legitimate",
    "ratio_constraint_satisfied",
    "simulate_signals",
    "support",
    "union_support",
    "union_support_many",
    "validate_channel",
    "verify_cross_correlation",
    "verify_epi_residual",
    "verify_sinr",
    "weight_directions",
]
