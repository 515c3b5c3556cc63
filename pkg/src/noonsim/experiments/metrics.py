"""Fringe-period and edge-sharpness metrics for sweep curves."""

from __future__ import annotations

import numpy as np

from ..errors import NumericalError


class NoFringeError(NumericalError):
    """Series too flat to carry a fringe."""


class NoTransitionError(NumericalError):
    """Series has no monotone 10-90 transition."""


def estimate_fringe_period(sweep_values: np.ndarray, series: np.ndarray) -> float:
    """Dominant period of a uniformly sampled fringe series.

    The mean-removed series is Fourier transformed; the dominant nonzero
    harmonic index is refined by quadratic interpolation of the spectral
    peak, and the period is span / k.  Requires uniform sampling with at
    least ~16 samples per expected period.
    """
    x = np.asarray(sweep_values, dtype=float)
    y = np.asarray(series, dtype=float)
    if x.ndim != 1 or x.shape != y.shape or x.size < 8:
        raise NumericalError("period estimate needs matching 1D arrays (>= 8 pts)")
    steps = np.diff(x)
    if np.max(np.abs(steps - steps[0])) > 1e-9 * abs(steps[0]):
        raise NumericalError("period estimate requires uniform sampling")

    scale = np.max(np.abs(y))
    if scale == 0.0 or (np.max(y) - np.min(y)) < 1e-9 * scale:
        raise NoFringeError("series is flat; no fringe to measure")

    span = x.size * steps[0]
    spectrum = np.abs(np.fft.rfft(y - np.mean(y)))
    spectrum[0] = 0.0
    k = int(np.argmax(spectrum))
    if k == 0:
        raise NoFringeError("no nonzero harmonic found")
    # quadratic refinement of the peak position
    if 1 <= k < spectrum.size - 1:
        a, b, c = spectrum[k - 1], spectrum[k], spectrum[k + 1]
        denom = a - 2.0 * b + c
        if denom != 0.0:
            k = k + 0.5 * (a - c) / denom
    return float(span / k)


def edge_sharpness(s_values: np.ndarray, series: np.ndarray) -> float:
    """10-90% rise distance of the dominant transition in a curve.

    The transition is located from the outermost crossings: the first
    sample at or above the 90% level and the last sample at or below the
    10% level before it (or the mirrored pair for a falling edge).
    Crossing positions are linearly interpolated.
    """
    s = np.asarray(s_values, dtype=float)
    y = np.asarray(series, dtype=float)
    if s.ndim != 1 or s.shape != y.shape or s.size < 5:
        raise NumericalError("edge sharpness needs matching 1D arrays (>= 5 pts)")
    lo_level = np.min(y) + 0.1 * (np.max(y) - np.min(y))
    hi_level = np.min(y) + 0.9 * (np.max(y) - np.min(y))
    if hi_level <= lo_level:
        raise NoTransitionError("series is flat; no transition to measure")

    rising = _rise_distance(s, y, lo_level, hi_level)
    falling = _rise_distance(s[::-1], y[::-1], lo_level, hi_level)
    candidates = [d for d in (rising, falling) if d is not None]
    if not candidates:
        raise NoTransitionError("no monotone 10-90 transition found")
    return float(min(candidates))


def _cross(s0, y0, s1, y1, level):
    if y1 == y0:
        return s0
    return s0 + (level - y0) * (s1 - s0) / (y1 - y0)


def _rise_distance(s, y, lo_level, hi_level):
    above = np.nonzero(y >= hi_level)[0]
    if above.size == 0:
        return None
    i_hi = above[0]
    below = np.nonzero(y[:i_hi] <= lo_level)[0]
    if below.size == 0:
        return None
    i_lo = below[-1]
    # interpolate the exact level crossings inside their sample gaps
    # (y[i_lo + 1] > lo_level and y[i_hi - 1] < hi_level by construction)
    s_lo = _cross(s[i_lo], y[i_lo], s[i_lo + 1], y[i_lo + 1], lo_level)
    s_hi = _cross(s[i_hi - 1], y[i_hi - 1], s[i_hi], y[i_hi], hi_level)
    return abs(s_hi - s_lo)
