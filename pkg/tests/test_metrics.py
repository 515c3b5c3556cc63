import numpy as np
import pytest

from noonsim.experiments.metrics import (
    NoFringeError,
    NoTransitionError,
    edge_sharpness,
    estimate_fringe_period,
)


def test_cos2_period():
    theta = np.linspace(0, 2 * np.pi, 128, endpoint=False)
    period = estimate_fringe_period(theta, np.cos(2 * theta))
    assert abs(period - np.pi) < 1e-3


def test_offset_cos4_with_noise():
    theta = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    rng = np.random.default_rng(0)
    series = 1.0 + np.cos(4 * theta + 0.7) + 1e-6 * rng.standard_normal(theta.size)
    period = estimate_fringe_period(theta, series)
    assert abs(period - np.pi / 2) < 1e-3


def test_constant_series_rejected():
    theta = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    with pytest.raises(NoFringeError):
        estimate_fringe_period(theta, np.full(64, 3.7))


def test_nonuniform_sampling_rejected():
    x = np.cumsum(np.random.default_rng(1).uniform(0.5, 1.5, 64))
    with pytest.raises(Exception):
        estimate_fringe_period(x, np.cos(x))


def test_period_of_full_span_fringe():
    # one period over the sweep: harmonic index 1
    theta = np.linspace(0, 4 * np.pi, 128, endpoint=False)
    period = estimate_fringe_period(theta, np.cos(theta))
    assert abs(period - 2 * np.pi) < 1e-3


def test_edge_sharpness_ideal_step():
    s = np.linspace(0, 1, 21)
    y = (s >= 0.5).astype(float)
    d = edge_sharpness(s, y)
    spacing = s[1] - s[0]
    assert d == pytest.approx(0.8 * spacing, rel=1e-12)
    assert d <= spacing


def test_edge_sharpness_linear_ramp():
    s = np.linspace(0, 1, 101)
    d = edge_sharpness(s, s.copy())
    assert d == pytest.approx(0.8, abs=1e-6)


def test_edge_sharpness_logistic():
    w = 0.05
    s = np.linspace(-1, 1, 4001)
    y = 1.0 / (1.0 + np.exp(-s / w))
    d = edge_sharpness(s, y)
    assert d == pytest.approx(w * np.log(81.0), rel=0.01)


def test_edge_sharpness_falling_edge():
    s = np.linspace(0, 1, 101)
    d = edge_sharpness(s, 1.0 - s)
    assert d == pytest.approx(0.8, abs=1e-6)


def test_edge_sharpness_flat_rejected():
    s = np.linspace(0, 1, 32)
    with pytest.raises(NoTransitionError):
        edge_sharpness(s, np.full(32, 2.0))
