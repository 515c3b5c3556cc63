"""Acceptance suite: one test per release criterion, at pinned tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion.  The heavy default-configuration runs are shared session
fixtures, so the suite performs one 1D solve and one full 2D scan.
"""

import time

import numpy as np
import pytest

from noonsim.cli import run
from noonsim.config import default_config, parse_config_data
from noonsim.correlation import noon_cf, noon_cf_oracle
from noonsim.experiments import (
    GhostGeometry,
    GhostScanConfig,
    estimate_fringe_period,
    run_ghost_scan,
    run_phase_sweep,
)
from noonsim.experiments.metrics import edge_sharpness
from noonsim.experiments.phase import PhaseSweepConfig
from noonsim.grid import Grid, uniform_map
from noonsim.modes import solve_modes
from noonsim.operators import build_operators_1d
from noonsim.oracle_suite import run_oracle_suite
from noonsim.packets import (
    DetectorSpec,
    WavepacketSpec,
    overlap,
    packet_profile,
    project_packet,
)
from noonsim.states import NoonStateSpec

PHASE_TIME_BUDGET = 300.0
ORACLE_TIME_BUDGET = 60.0
GHOST_TIME_BUDGET = 1800.0


def report(criterion: str, detail: str) -> None:
    print(f"PASS {criterion}: {detail}")


@pytest.fixture(scope="session")
def phase_run():
    cfg = PhaseSweepConfig()
    t0 = time.perf_counter()
    result = run_phase_sweep(cfg)
    wall = time.perf_counter() - t0
    return cfg, result, wall


@pytest.fixture(scope="session")
def ghost_run():
    cfg = GhostScanConfig()
    t0 = time.perf_counter()
    results = run_ghost_scan(cfg)
    wall = time.perf_counter() - t0
    return cfg, results, wall


@pytest.fixture(scope="session")
def oracle_report():
    return run_oracle_suite(draws=50, photon_numbers=(2, 4), mode_counts=(2, 3, 6))


def test_criterion_1_super_resolution_fringes(phase_run):
    cfg, result, wall = phase_run
    assert cfg.cells <= 2000, "default 1D config must stay at desk scale"
    assert wall < PHASE_TIME_BUDGET
    details = []
    for n in cfg.photon_numbers:
        period = estimate_fringe_period(
            result.values, result.columns[f"cf_N{n}_norm"]
        )
        target = 2.0 * np.pi / n
        assert abs(period / target - 1.0) <= 0.02, f"N={n} fringe period"
        details.append(f"N={n} period={period:.5f} (2pi/N={target:.5f})")
    classical = estimate_fringe_period(
        result.values, result.columns["classical_norm"]
    )
    assert abs(classical / (2.0 * np.pi) - 1.0) <= 0.02
    report(
        "criterion 1 (super-resolution fringes)",
        "; ".join(details) + f"; classical={classical:.5f}; wall={wall:.1f}s",
    )


def test_criterion_2_fringe_functional_form(phase_run):
    cfg, result, _ = phase_run
    thetas = result.values
    worst = 0.0
    for n in cfg.photon_numbers:
        nums = result.metadata["components"][n]["numerator"]
        design = np.column_stack(
            [np.ones_like(thetas), np.cos(n * thetas), np.sin(n * thetas)]
        )
        coef, *_ = np.linalg.lstsq(design, nums, rcond=None)
        resid = np.max(np.abs(nums - design @ coef)) / np.max(np.abs(nums))
        assert resid < 1e-9, f"N={n} numerator is not A + B cos(N theta + phi)"
        worst = max(worst, resid)
    report(
        "criterion 2 (fringe functional form)",
        f"max relative fit residual {worst:.2e} < 1e-9",
    )


def test_criterion_3_oracle_equivalence(oracle_report):
    rep = oracle_report
    assert rep["max_relative_deviation"] < 1e-10
    assert rep["elapsed_seconds"] < ORACLE_TIME_BUDGET
    assert rep["evaluations"] == 50 * 2 * 3
    report(
        "criterion 3 (oracle equivalence)",
        f"max componentwise deviation {rep['max_relative_deviation']:.2e} "
        f"over {rep['evaluations']} draws in {rep['elapsed_seconds']:.1f}s",
    )


def test_criterion_4_eigenproblem_correctness():
    n, dx = 64, 1.0
    grid = Grid(1, (n,), (dx,))
    ops = build_operators_1d(uniform_map(grid, 1.0))
    basis = solve_modes(ops)
    k = np.arange(1, n)
    analytic = np.sort((2.0 / dx) * np.abs(np.sin(np.pi * k / n)))
    assert basis.kept_count == n - 1
    disp_err = np.max(np.abs(basis.omegas - analytic))
    assert disp_err <= 1e-10
    gram = basis.modes.T @ (ops.mass_diagonal[:, None] * basis.modes)
    gram_err = np.max(np.abs(gram - np.eye(n - 1)))
    assert gram_err <= 1e-10
    ham = basis.modes.T @ ops.stiffness @ basis.modes
    ham_err = np.max(np.abs(ham - np.diag(basis.omegas**2)))
    assert ham_err <= 1e-8 * np.max(basis.omegas**2)
    report(
        "criterion 4 (eigenproblem correctness)",
        f"dispersion {disp_err:.1e}, orthonormality {gram_err:.1e}, "
        f"Hamiltonian diagonalization {ham_err:.1e}",
    )


def test_criterion_5_state_normalization(phase_run):
    cfg, _, _ = phase_run
    # the packet pair as prepared: counter-propagating packets in the
    # uniform medium, published launch parameters
    grid = Grid(1, (cfg.cells,), (cfg.domain_length / cfg.cells,))
    basis = solve_modes(build_operators_1d(uniform_map(grid, 1.0)))
    right = WavepacketSpec(
        (-cfg.launch_offset,), (1.0,), cfg.center_frequency, cfg.spectral_std
    )
    left = WavepacketSpec(
        (cfg.launch_offset,), (-1.0,), cfg.center_frequency, cfg.spectral_std
    )
    g_l = project_packet(basis, packet_profile(right, grid))
    g_r = project_packet(basis, packet_profile(left, grid))
    gamma = overlap(g_l, g_r)
    assert abs(gamma) < 1e-3
    worst_dev = 0.0
    worst_norm = 0.0
    for n in (2, 4):
        state = NoonStateSpec(n, g_l, g_r, theta=0.37)
        det_a = DetectorSpec(10, 0.2, fold=n // 2)
        det_b = DetectorSpec(grid.n_dof - 10, 0.2, fold=n // 2)
        closed = noon_cf(basis, state, det_a, det_b)
        oracle = noon_cf_oracle(basis, state, det_a, det_b)
        dev = abs(closed.state_norm - oracle.state_norm) / abs(oracle.state_norm)
        assert dev <= 1e-10
        assert abs(closed.state_norm - 1.0) < 1e-5
        worst_dev = max(worst_dev, dev)
        worst_norm = max(worst_norm, abs(closed.state_norm - 1.0))
    report(
        "criterion 5 (state normalization)",
        f"|gamma|={abs(gamma):.2e}, closed-vs-oracle {worst_dev:.2e}, "
        f"|norm-1|={worst_norm:.2e}",
    )


def test_criterion_6_ghost_imaging_properties(ghost_run):
    cfg, results, wall = ghost_run
    geom = cfg.geometry
    assert geom.cells_x * geom.cells_y <= 6500
    assert wall < GHOST_TIME_BUDGET
    s = results[0].values
    res0 = next(r for r in results if r.metadata["perturbation"] == 0.0)
    res_minus = next(r for r in results if r.metadata["perturbation"] == -0.1)
    res_plus = next(r for r in results if r.metadata["perturbation"] == 0.1)

    # (a) free passage on both sides: CF stays near zero
    open_mask = np.abs(s) >= geom.transverse_extent(1.1) + 0.004
    assert np.any(open_mask)
    open_worst = max(
        float(res0.columns[f"cf_N{n}"][open_mask].max())
        for n in cfg.photon_numbers
    )
    assert open_worst <= 0.1

    # (b) aimed at the slab interior adjacent to the slit: fully blocked at
    # the gate, resolved through the 0/0 convention
    s_interior = 0.04
    i_int = int(np.argmin(np.abs(s - s_interior)))
    assert geom.slit_width / 2 * 1.1 < s_interior < geom.transverse_extent(1.0)
    blocked_worst = 1.0
    for n in cfg.photon_numbers:
        cf = res0.columns[f"cf_N{n}"]
        flags = res0.metadata["regularized"][n]
        assert flags[i_int], f"N={n} interior point not in the 0/0 window"
        assert cf[i_int] >= 0.9
        blocked_worst = min(blocked_worst, float(cf[i_int]))

    # (c) 10-90 sharpness of the transition bracketing the slit feature is
    # non-increasing in N
    widths = []
    window = (s >= 0.0) & (s <= 0.15)
    for n in cfg.photon_numbers:
        widths.append(
            edge_sharpness(s[window], res0.columns[f"cf_N{n}_norm"][window])
        )
    assert all(w1 >= w2 - 1e-12 for w1, w2 in zip(widths, widths[1:]))

    # (d) slit-width perturbation concentrates near the slit
    near = np.abs(s) <= 0.08
    interior = (np.abs(s) >= 0.10) & (np.abs(s) <= 0.16)
    near_mean = np.mean(
        [
            np.abs(res_plus.columns[f"cf_N{n}"] - res_minus.columns[f"cf_N{n}"])[
                near
            ].mean()
            for n in cfg.photon_numbers
        ]
    )
    interior_mean = np.mean(
        [
            np.abs(res_plus.columns[f"cf_N{n}"] - res_minus.columns[f"cf_N{n}"])[
                interior
            ].mean()
            for n in cfg.photon_numbers
        ]
    )
    assert near_mean > interior_mean
    report(
        "criterion 6 (ghost imaging)",
        f"open<= {open_worst:.1e}, blocked>={blocked_worst:.2f} (regularized), "
        f"edge widths {['%.4f' % w for w in widths]}, perturbation "
        f"near/interior {near_mean:.2e}/{interior_mean:.2e}, wall={wall:.0f}s",
    )


def test_criterion_7_zero_over_zero_convention():
    geom = GhostGeometry(
        eps_slab=100.0,
        slit_width=0.02,
        side_length=0.24,
        thickness=9.67e-2,
        slab_center_x=-0.17,
        domain_x=0.9,
        domain_y=0.52,
        cells_x=45,
        cells_y=33,
    )
    cfg = GhostScanConfig(
        geometry=geom,
        s_max=0.255,
        s_count=11,
        photon_numbers=(2, 4),
        perturbations=(0.0,),
    )
    res = run_ghost_scan(cfg)[0]
    for n in cfg.photon_numbers:
        cf = res.columns[f"cf_N{n}"]
        flags = np.array(res.metadata["regularized"][n])
        assert not np.any(np.isnan(cf))
        assert np.all(flags)
        assert np.all(cf == 1.0)
    report(
        "criterion 7 (0/0 convention)",
        "fully-blocking wall yields regularized CF = 1 at every scan point, "
        "no NaN",
    )


def test_criterion_8_determinism(tmp_path):
    cfg = default_config("phase-sweep")
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    run(cfg, str(out1))
    run(cfg, str(out2))
    csv1 = (out1 / "result_phase-sweep.csv").read_bytes()
    csv2 = (out2 / "result_phase-sweep.csv").read_bytes()
    assert csv1 == csv2

    ghost_cfg = parse_config_data(
        {
            "experiment": "ghost-scan",
            "ghost_scan": {
                "geometry": {"cells_x": 45, "cells_y": 33},
                "s_count": 11,
                "photon_numbers": [2],
                "perturbations": [0.0],
            },
        }
    )
    g1 = tmp_path / "g1"
    g2 = tmp_path / "g2"
    run(ghost_cfg, str(g1))
    run(ghost_cfg, str(g2))
    name = "result_ghost-scan_pert0.csv"
    assert (g1 / name).read_bytes() == (g2 / name).read_bytes()
    report(
        "criterion 8 (determinism)",
        f"byte-identical CSVs across reruns ({len(csv1)} bytes phase, "
        f"{(g1 / name).stat().st_size} bytes ghost)",
    )
