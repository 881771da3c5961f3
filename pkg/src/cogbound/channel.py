"""Value types shared across the package: channel, power split, rates, weights.

The physical setup is a two-user Gaussian interference channel with
unit-variance noise at both receivers:

    Y1 = X1 + b*X2 + Z1
    Y2 = a*X1 + X2 + Z2

Transmitter 1 (the legitimate user) sends a shared message plus a private
one; transmitter 2 (the cognitive user) knows the shared message and spends
the fraction ``1 - alpha`` of its power reinforcing it.  All rates in this
package are in bits per channel use, i.e. every rate formula is
``0.5 * log2(1 + snr)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

RATIO_TOL = 1e-12

_CHANNEL_FIELDS = ("a", "b", "p1", "p2", "mu")


class NonpositivePower(ValueError):
    """A transmit power is negative."""


class NonpositiveMu(ValueError):
    """The rate-ratio coefficient is zero or negative."""


class NonFiniteParameter(ValueError):
    """A parameter is NaN or infinite."""


def _as_finite(name: str, value) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise NonFiniteParameter(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise NonFiniteParameter(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ChannelParams:
    """Channel gains, powers and the rate-ratio floor.

    ``a``: cross gain from the legitimate transmitter to the cognitive
    receiver.  ``b``: cross gain from the cognitive transmitter to the
    legitimate receiver.  ``p1``, ``p2``: average transmit powers.  ``mu``:
    admissible rate triples must satisfy ``r1 >= mu * r0`` (keeps the
    private rate from being optimized away).

    Negative gains are accepted; the formulas use ``b`` and ``b**2`` as
    written, so ``b < 0`` produces signed cross terms.
    """

    a: float
    b: float
    p1: float
    p2: float
    mu: float

    def __post_init__(self):
        for name in _CHANNEL_FIELDS:
            object.__setattr__(self, name, _as_finite(name, getattr(self, name)))
        if self.p1 < 0.0 or self.p2 < 0.0:
            raise NonpositivePower(f"powers must be >= 0, got p1={self.p1}, p2={self.p2}")
        if self.mu <= 0.0:
            raise NonpositiveMu(f"mu must be > 0, got {self.mu}")

    def weak_interference(self) -> bool:
        """True iff |b| < 1, exactly (gates outer-bound validity, not numerics)."""
        return abs(self.b) < 1.0


def validate_channel(raw) -> ChannelParams:
    """Validate candidate channel parameters.

    Accepts an already-validated :class:`ChannelParams` (idempotent) or a
    mapping with exactly the keys ``a, b, p1, p2, mu``.
    """
    if isinstance(raw, ChannelParams):
        return raw
    if isinstance(raw, Mapping):
        unknown = sorted(set(raw) - set(_CHANNEL_FIELDS))
        if unknown:
            raise ValueError(f"unknown channel fields: {', '.join(unknown)}")
        missing = sorted(set(_CHANNEL_FIELDS) - set(raw))
        if missing:
            raise ValueError(f"missing channel fields: {', '.join(missing)}")
        return ChannelParams(**{k: raw[k] for k in _CHANNEL_FIELDS})
    raise TypeError(f"expected ChannelParams or mapping, got {type(raw).__name__}")


@dataclass(frozen=True)
class PowerSplit:
    """Power split pair: ``alpha`` is the cognitive power fraction spent on
    its own message, ``beta`` the legitimate fraction spent on the shared one."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_finite("alpha", self.alpha))
        object.__setattr__(self, "beta", _as_finite("beta", self.beta))
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")


@dataclass(frozen=True)
class RateTriple:
    """A point (r0, r1, r2), in bits per channel use."""

    r0: float
    r1: float
    r2: float

    def __post_init__(self):
        for name in ("r0", "r1", "r2"):
            value = _as_finite(name, getattr(self, name))
            if value < 0.0:
                raise ValueError(f"{name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.r0, self.r1, self.r2)


@dataclass(frozen=True)
class Weights:
    """Nonnegative objective weights for mu0*r0 + mu1*r1 + mu2*r2."""

    mu0: float
    mu1: float
    mu2: float

    def __post_init__(self):
        for name in ("mu0", "mu1", "mu2"):
            value = _as_finite(name, getattr(self, name))
            if value < 0.0:
                raise ValueError(f"{name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)
        if self.mu0 + self.mu1 + self.mu2 <= 0.0:
            raise ValueError("at least one weight must be positive")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.mu0, self.mu1, self.mu2)


def ratio_constraint_satisfied(rt: RateTriple, ch: ChannelParams) -> bool:
    """True iff r1 >= mu * r0, within an additive tolerance of 1e-12."""
    return rt.r1 >= ch.mu * rt.r0 - RATIO_TOL
