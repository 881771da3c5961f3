import math

import pytest

from cogbound.channel import (
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


def test_validate_weak_channel():
    ch = validate_channel({"a": 2, "b": 0.5, "p1": 6, "p2": 6, "mu": 0.5})
    assert ch.weak_interference() is True


def test_validate_strong_channel():
    ch = validate_channel({"a": 1, "b": 1.5, "p1": 1, "p2": 1, "mu": 1})
    assert ch.weak_interference() is False


def test_negative_power_rejected():
    with pytest.raises(NonpositivePower):
        validate_channel({"a": 1, "b": 0.5, "p1": -1, "p2": 1, "mu": 1})
    with pytest.raises(NonpositivePower):
        ChannelParams(a=1, b=0.5, p1=1, p2=-0.001, mu=1)


def test_zero_power_allowed():
    ch = ChannelParams(a=1, b=0.5, p1=0, p2=0, mu=1)
    assert ch.p1 == 0.0 and ch.p2 == 0.0


def test_nonpositive_mu_rejected():
    for mu in (0.0, -1.0):
        with pytest.raises(NonpositiveMu):
            ChannelParams(a=1, b=0.5, p1=1, p2=1, mu=mu)


def test_nonfinite_fields_rejected():
    for bad in (math.nan, math.inf, -math.inf):
        with pytest.raises(NonFiniteParameter):
            ChannelParams(a=bad, b=0.5, p1=1, p2=1, mu=1)
        with pytest.raises(NonFiniteParameter):
            ChannelParams(a=1, b=0.5, p1=bad, p2=1, mu=1)


def test_validate_unknown_and_missing_fields():
    with pytest.raises(ValueError, match="unknown"):
        validate_channel({"a": 1, "b": 0.5, "p1": 1, "p2": 1, "mu": 1, "c": 2})
    with pytest.raises(ValueError, match="missing"):
        validate_channel({"a": 1, "b": 0.5, "p1": 1})
    with pytest.raises(TypeError):
        validate_channel([1, 2, 3])


def test_validate_idempotent():
    ch = ChannelParams(a=2, b=0.5, p1=6, p2=6, mu=0.5)
    assert validate_channel(ch) is ch
    assert validate_channel(validate_channel(ch)) == ch


def test_weak_interference_exact_boundary():
    # gate is exact: it selects formula applicability, not numerics
    assert not ChannelParams(a=1, b=1.0, p1=1, p2=1, mu=1).weak_interference()
    assert not ChannelParams(a=1, b=-1.0, p1=1, p2=1, mu=1).weak_interference()
    assert ChannelParams(a=1, b=0.9999999, p1=1, p2=1, mu=1).weak_interference()
    assert ChannelParams(a=1, b=-0.9999999, p1=1, p2=1, mu=1).weak_interference()


def test_negative_gains_accepted():
    ch = ChannelParams(a=-2.0, b=-0.5, p1=1, p2=1, mu=1)
    assert ch.a == -2.0 and ch.weak_interference()


def test_power_split_validation():
    sp = PowerSplit(0.0, 1.0)
    assert sp.alpha == 0.0 and sp.beta == 1.0
    for bad in (-0.01, 1.01, math.nan):
        with pytest.raises(ValueError):
            PowerSplit(bad, 0.5)
        with pytest.raises(ValueError):
            PowerSplit(0.5, bad)


def test_rate_triple_validation():
    rt = RateTriple(0, 1.5, 2)
    assert rt.as_tuple() == (0.0, 1.5, 2.0)
    with pytest.raises(ValueError):
        RateTriple(-0.1, 0, 0)
    with pytest.raises(ValueError):
        RateTriple(0, math.inf, 0)


def test_weights_validation():
    w = Weights(0, 0, 1)
    assert w.as_tuple() == (0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        Weights(0, 0, 0)
    with pytest.raises(ValueError):
        Weights(-0.5, 1, 1)


def test_ratio_constraint_examples():
    ch = ChannelParams(a=1, b=0.5, p1=1, p2=1, mu=0.5)
    assert ratio_constraint_satisfied(RateTriple(0, 0, 5), ch)
    assert ratio_constraint_satisfied(RateTriple(1, 0.5, 0), ch)  # boundary
    assert not ratio_constraint_satisfied(RateTriple(1, 0.49, 0), ch)


def test_ratio_constraint_tolerance():
    ch = ChannelParams(a=1, b=0.5, p1=1, p2=1, mu=1.0)
    assert ratio_constraint_satisfied(RateTriple(1.0, 1.0 - 0.5e-12, 0), ch)
    assert not ratio_constraint_satisfied(RateTriple(1.0, 1.0 - 5e-12, 0), ch)
