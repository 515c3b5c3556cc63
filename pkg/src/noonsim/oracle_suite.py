"""Randomized closed-form vs brute-force Wick agreement suite.

Deterministic (seeded) draws over small mode bases; reports the maximum
componentwise relative deviation between the closed-form CF and the
exhaustive contraction oracle.
"""

from __future__ import annotations

import time

import numpy as np

from .correlation import CFComponents, noon_cf, noon_cf_oracle
from .grid import Grid, uniform_map
from .modes import ModeBasis, solve_modes
from .operators import build_operators_1d
from .packets import DetectorSpec, SpectralAmplitudes
from .states import NoonStateSpec


def _basis_with_mode_count(kept: int) -> ModeBasis:
    """Real solved basis truncated to the requested mode count."""
    grid = Grid(1, (8,), (1.0,))
    full = solve_modes(build_operators_1d(uniform_map(grid, 1.0)))
    if kept > full.kept_count:
        raise ValueError(f"cannot keep {kept} of {full.kept_count} modes")
    return ModeBasis(
        grid, full.omegas[:kept], full.modes[:, :kept], full.mass_diagonal
    )


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        return 0.0
    return abs(a - b) / scale


def _component_deviation(a: CFComponents, b: CFComponents) -> dict[str, float]:
    return {
        "numerator": _rel(a.numerator, b.numerator),
        "denom_alpha": _rel(a.denom_alpha, b.denom_alpha),
        "denom_beta": _rel(a.denom_beta, b.denom_beta),
        "state_norm": _rel(a.state_norm, b.state_norm),
        "value": _rel(a.value, b.value),
    }


def run_oracle_suite(
    seed: int = 20250810,
    draws: int = 50,
    photon_numbers: tuple[int, ...] = (2, 4),
    mode_counts: tuple[int, ...] = (2, 3, 6),
) -> dict:
    """Max relative deviation noon_cf vs noon_cf_oracle over random draws."""
    rng = np.random.default_rng(seed)
    bases = {k: _basis_with_mode_count(k) for k in mode_counts}
    worst: dict[str, float] = {
        "numerator": 0.0,
        "denom_alpha": 0.0,
        "denom_beta": 0.0,
        "state_norm": 0.0,
        "value": 0.0,
    }
    t0 = time.perf_counter()
    total = 0
    for n in photon_numbers:
        for kept in mode_counts:
            basis = bases[kept]
            for _ in range(draws):
                g_l = rng.normal(size=kept) + 1j * rng.normal(size=kept)
                g_r = rng.normal(size=kept) + 1j * rng.normal(size=kept)
                g_l /= np.linalg.norm(g_l)
                g_r /= np.linalg.norm(g_r)
                theta = float(rng.uniform(0.0, 2.0 * np.pi))
                state = NoonStateSpec(
                    n, SpectralAmplitudes(g_l), SpectralAmplitudes(g_r), theta
                )
                cells = rng.integers(0, basis.n_dof, size=2)
                times = rng.uniform(0.0, 10.0, size=2)
                det_a = DetectorSpec(int(cells[0]), float(times[0]), fold=n // 2)
                det_b = DetectorSpec(int(cells[1]), float(times[1]), fold=n // 2)
                closed = noon_cf(basis, state, det_a, det_b)
                oracle = noon_cf_oracle(basis, state, det_a, det_b)
                dev = _component_deviation(closed, oracle)
                for key, val in dev.items():
                    worst[key] = max(worst[key], val)
                total += 1
    elapsed = time.perf_counter() - t0
    overall = max(worst.values())
    return {
        "seed": seed,
        "draws_per_case": draws,
        "photon_numbers": list(photon_numbers),
        "mode_counts": list(mode_counts),
        "evaluations": total,
        "max_relative_deviation": overall,
        "max_relative_deviation_by_component": worst,
        "elapsed_seconds": elapsed,
    }
