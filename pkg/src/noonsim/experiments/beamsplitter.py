"""Analytic slab transfer matrix and 50:50 beam-splitter calibration.

The calibration is deliberately independent of the eigensolver: the slab's
power transmission at normal incidence follows the standard Airy formula
for a lossless dielectric layer, and the thickness is found by bisection on
the first (monotone) branch.
"""

from __future__ import annotations

import numpy as np

from ..errors import CalibrationError, ConfigError

TRANSMISSION_TARGET = 0.5
TRANSMISSION_TOL = 1e-3


def slab_power_transmission(omega: float, eps_slab: float, thickness: float) -> float:
    """|t|^2 of a lossless dielectric slab at normal incidence.

    1 / (1 + F sin^2(n k d)) with F = (n^2 - 1)^2 / (4 n^2), k = omega
    (c = 1), n = sqrt(eps_slab).
    """
    if eps_slab < 1.0:
        raise ConfigError("slab permittivity must be >= 1")
    n = np.sqrt(eps_slab)
    f = (eps_slab - 1.0) ** 2 / (4.0 * eps_slab)
    return float(1.0 / (1.0 + f * np.sin(n * omega * thickness) ** 2))


def calibrate_beamsplitter(
    omega: float, eps_slab: float, max_thickness: float | None = None
) -> float:
    """Slab thickness whose transmission at ``omega`` is 0.5 within 1e-3.

    Bisection runs on the first monotone-decreasing branch of the Airy
    transmission, d in (0, pi / (2 n omega)), which lies inside half a
    vacuum wavelength.  Raises CalibrationError when even the transmission
    minimum stays above 0.5 (permittivity too small).
    """
    if omega <= 0.0:
        raise ConfigError("omega must be positive")
    n = np.sqrt(eps_slab)
    f = (eps_slab - 1.0) ** 2 / (4.0 * eps_slab)
    min_transmission = 1.0 / (1.0 + f)
    if min_transmission > TRANSMISSION_TARGET:
        raise CalibrationError(
            f"eps_slab={eps_slab:g} too small for a 50:50 split: minimum "
            f"transmission {min_transmission:.3f} > {TRANSMISSION_TARGET}"
        )
    hi = np.pi / (2.0 * n * omega)
    if max_thickness is not None:
        hi = min(hi, max_thickness)
    lo = 0.0
    if slab_power_transmission(omega, eps_slab, hi) > TRANSMISSION_TARGET:
        raise CalibrationError("no 50:50 thickness inside the search bracket")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if slab_power_transmission(omega, eps_slab, mid) > TRANSMISSION_TARGET:
            lo = mid
        else:
            hi = mid
    d = 0.5 * (lo + hi)
    t = slab_power_transmission(omega, eps_slab, d)
    if abs(t - TRANSMISSION_TARGET) > TRANSMISSION_TOL:
        raise CalibrationError(
            f"bisection did not converge: |t|^2 = {t:.6f} at d = {d:.3e}"
        )
    return float(d)
