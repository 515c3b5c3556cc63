"""Ghost-imaging scan: a two-path state is launched from the domain center,
the left-moving branch crosses a slitted dielectric slab and lands on a
bucket detector column, the right-moving branch flies free to a pixel
detector that tracks the launch offset, and the N-th order CF is recorded
against the transverse scan position s for each photon number and slit
perturbation.

The image contrast follows the time-gated bucket response: paths through
the object are delayed past the detection gate (the slab's group delay
(n-1) L_t beats the packet length) or consumed by the anti-guiding
subwavelength slit, so the bucket response collapses there and the 0/0
convention pins the CF to 1, while free passage keeps the numerator at the
no-coincidence floor and the CF at 0.  At desk-scale resolution the slab
body leaks a few percent of prompt light past the gate (dispersion smear
and edge waves), so the fully-collapsed plateau hugs the slit-adjacent
core of the object; the geometric footprint column records the full
object for reference.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import factorial

import numpy as np

from ..errors import ConfigError, GeometryError
from ..grid import Grid, PermittivityMap
from ..modes import default_omega_floor, eigen_residual, solve_modes
from ..operators import build_operators_2d_tmz
from ..packets import (
    WavepacketSpec,
    fwhm_to_spectral_std,
    packet_profile,
    project_packets,
)
from .sweep import SweepResult, normalize_column, resolve_sweep_values


@dataclass(frozen=True)
class GhostGeometry:
    """Slitted-slab object and the 2D domain that carries it.

    The slab is centered transversally: two segments of side length
    ``side_length`` flank a gap of ``slit_width`` around y = 0, with
    ``thickness`` along x at ``slab_center_x``.
    """

    eps_slab: float = 4.0
    slit_width: float = 4.33e-2
    side_length: float = 1.70e-1
    thickness: float = 9.67e-2
    slab_center_x: float = -0.17
    domain_x: float = 0.9
    domain_y: float = 0.52
    cells_x: int = 97
    cells_y: int = 67

    def __post_init__(self):
        if self.eps_slab < 1.0:
            raise ConfigError("slab permittivity must be >= 1")
        if not 0.0 < self.slit_width < self.side_length:
            raise GeometryError(
                "slit width must be positive and below the slab side length"
            )
        if self.thickness <= 0.0:
            raise GeometryError("slab thickness must be positive")
        if abs(self.slab_center_x) + self.thickness / 2.0 >= self.domain_x / 2.0:
            raise GeometryError("slab thickness does not fit inside the domain")
        if self.transverse_extent(1.0) >= self.domain_y / 2.0:
            raise GeometryError("slab transverse footprint does not fit the domain")

    def transverse_extent(self, width_factor: float) -> float:
        """Outer |y| edge of the slab for a given slit-width factor."""
        return width_factor * self.slit_width / 2.0 + self.side_length

    def grid(self) -> Grid:
        return Grid(
            2,
            (self.cells_x, self.cells_y),
            (self.domain_x / self.cells_x, self.domain_y / self.cells_y),
        )

    def footprint(self, y: np.ndarray, width_factor: float = 1.0) -> np.ndarray:
        """1 where the slab blocks transverse position y, else 0."""
        half_slit = width_factor * self.slit_width / 2.0
        yy = np.abs(np.asarray(y, dtype=float))
        inside = (yy > half_slit) & (yy <= self.transverse_extent(width_factor))
        return inside.astype(float)


def build_ghost_geometry(
    geom: GhostGeometry, width_factor: float = 1.0
) -> PermittivityMap:
    """Rasterize the slitted slab: cells whose centers fall on the slab
    footprint get eps_slab, no averaging.  ``width_factor`` scales the slit
    width (1.1 = +10 % perturbation); the segments keep their side length,
    so the outer edge moves with the slit edge."""
    if width_factor <= 0.0:
        raise ConfigError("width_factor must be positive")
    if geom.transverse_extent(width_factor) >= geom.domain_y / 2.0:
        raise GeometryError("perturbed slab footprint does not fit the domain")
    grid = geom.grid()
    xs = grid.axis_centers(0)
    ys = grid.axis_centers(1)
    half_slit = width_factor * geom.slit_width / 2.0
    outer = geom.transverse_extent(width_factor)
    in_x = np.abs(xs - geom.slab_center_x) <= geom.thickness / 2.0
    in_y = (np.abs(ys) > half_slit) & (np.abs(ys) <= outer)
    eps = np.ones((geom.cells_x, geom.cells_y))
    eps[np.ix_(in_x, in_y)] = geom.eps_slab
    return PermittivityMap(grid, eps)


@dataclass(frozen=True)
class GhostScanConfig:
    """Scan configuration (lengths in meters, frequencies in rad/m, c = 1).

    The default packet is broader-band than the published one so the pulse
    fits and separates inside the reduced (desk-scale) domain; the
    published value can be restored in the config on a larger grid.
    """

    geometry: GhostGeometry = GhostGeometry()
    center_frequency: float = 50.0
    fwhm_bandwidth: float = 33.0
    transverse_std: float = 5.0e-2
    launch_x: float = 0.0
    bucket_x: float = -0.30
    pixel_x: float = 0.30
    detection_time: float | None = None  # None: pulse-front transit gate
    s_max: float = 0.21
    s_count: int = 211
    photon_numbers: tuple[int, ...] = (2, 4, 8)
    perturbations: tuple[float, ...] = (-0.1, 0.0, 0.1)
    theta: float = 0.0
    eps_reg: float = 1e-2
    den_floor_amp: float = 0.2
    bucket_mode: str = "column"
    bucket_point_y: float = 0.0
    omega_floor: float | None = None
    normalization: str = "max"

    def __post_init__(self):
        geom = self.geometry
        if not self.photon_numbers:
            raise ConfigError("photon_numbers must not be empty")
        for n in self.photon_numbers:
            if n <= 0 or n % 2 != 0:
                raise ConfigError(f"photon numbers must be even positive, got {n}")
        if self.bucket_mode not in ("column", "point"):
            raise ConfigError("bucket_mode must be 'column' or 'point'")
        slab_lo = geom.slab_center_x - geom.thickness / 2.0
        slab_hi = geom.slab_center_x + geom.thickness / 2.0
        if not self.bucket_x < slab_lo:
            raise ConfigError(
                "bucket must sit behind the object (bucket_x < slab front face)"
            )
        if not slab_hi < self.launch_x < self.pixel_x:
            raise ConfigError(
                "launch must sit between the object and the pixel plane"
            )
        if self.s_count < 11 or self.s_count % 2 == 0:
            raise ConfigError("s_count must be an odd integer >= 11")
        worst = max(1.0 + p for p in self.perturbations)
        if self.s_max < geom.transverse_extent(worst):
            raise ConfigError("s range must cover the slit and the slab")
        if self.eps_reg < 0.0 or not 0.0 <= self.den_floor_amp < 1.0:
            raise ConfigError("regularization floors out of range")

    @property
    def spectral_std(self) -> float:
        return fwhm_to_spectral_std(self.fwhm_bandwidth)


def _group_velocity(omega: float, dx: float) -> float:
    arg = omega * dx / 2.0
    if arg >= 1.0:
        raise ConfigError(
            "carrier frequency is beyond the grid's propagation band; refine "
            "the x resolution"
        )
    return float(np.cos(np.arcsin(arg)))


def _detector_coeff_rows(basis, cells: np.ndarray, t: float) -> np.ndarray:
    """Field-coefficient rows for several cells at one time: (cells, modes)."""
    amp = np.sqrt(1.0 / (2.0 * basis.omegas)) * np.exp(-1j * basis.omegas * t)
    return basis.modes[cells, :] * amp[None, :]


def run_ghost_scan(cfg: GhostScanConfig) -> list[SweepResult]:
    """One SweepResult per slit perturbation, in the configured order."""
    geom = cfg.geometry
    grid = geom.grid()
    nx, ny = grid.cell_counts
    dx = grid.cell_sizes[0]
    sigma_w = cfg.spectral_std

    ix_bucket = grid.nearest_cell((cfg.bucket_x, 0.0)) % nx
    ix_pixel = grid.nearest_cell((cfg.pixel_x, 0.0)) % nx
    ix_bucket = int(ix_bucket)
    ix_pixel = int(ix_pixel)
    x_bucket = grid.axis_centers(0)[ix_bucket]
    x_pixel = grid.axis_centers(0)[ix_pixel]

    v_g = _group_velocity(cfg.center_frequency, dx)
    t_bucket = cfg.detection_time
    t_pixel = cfg.detection_time
    if cfg.detection_time is None:
        # pulse-front gate: one envelope sigma before the ballistic arrival,
        # which maximizes the prompt/delayed discrimination at the bucket
        sigma_x = 1.0 / (2.0 * sigma_w)
        t_bucket = abs(x_bucket - cfg.launch_x) / v_g - sigma_x
        t_pixel = abs(x_pixel - cfg.launch_x) / v_g - sigma_x

    if cfg.bucket_mode == "column":
        bucket_iys = np.arange(ny)
    else:
        flat = grid.nearest_cell((cfg.bucket_x, cfg.bucket_point_y))
        bucket_iys = np.array([flat // nx])
    bucket_cells = bucket_iys * nx + ix_bucket

    s_values = np.linspace(-cfg.s_max, cfg.s_max, cfg.s_count)
    results: list[SweepResult] = []

    for pert in cfg.perturbations:
        timings: dict[str, float] = {}
        t0 = time.perf_counter()
        width_factor = 1.0 + pert
        pmap = build_ghost_geometry(geom, width_factor)
        ops = build_operators_2d_tmz(pmap)
        floor = cfg.omega_floor
        if floor is None:
            floor = default_omega_floor(grid)
        basis = solve_modes(ops, floor)
        residual = eigen_residual(ops, basis)
        timings["solve"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        profiles = np.empty((grid.n_dof, 2 * cfg.s_count), dtype=complex)
        for i, s in enumerate(s_values):
            left = WavepacketSpec(
                (cfg.launch_x, s), (-1.0, 0.0), cfg.center_frequency,
                sigma_w, cfg.transverse_std,
            )
            right = WavepacketSpec(
                (cfg.launch_x, s), (1.0, 0.0), cfg.center_frequency,
                sigma_w, cfg.transverse_std,
            )
            profiles[:, 2 * i] = packet_profile(left, grid)
            profiles[:, 2 * i + 1] = packet_profile(right, grid)
        amps = project_packets(basis, profiles)
        timings["project"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        coeff_bucket = _detector_coeff_rows(basis, bucket_cells, t_bucket)
        phase = np.exp(1j * np.asarray(cfg.photon_numbers, float) * cfg.theta)

        nums = {n: np.empty(cfg.s_count) for n in cfg.photon_numbers}
        dens_a = {n: np.empty(cfg.s_count) for n in cfg.photon_numbers}
        dens_b = {n: np.empty(cfg.s_count) for n in cfg.photon_numbers}
        norms = {n: np.empty(cfg.s_count) for n in cfg.photon_numbers}
        captures = np.empty(2 * cfg.s_count)

        for i, s in enumerate(s_values):
            g_left = amps[2 * i]
            g_right = amps[2 * i + 1]
            captures[2 * i] = g_left.capture_fraction
            captures[2 * i + 1] = g_right.capture_fraction
            gamma = complex(np.vdot(g_left.g, g_right.g))

            iy_pix = (grid.nearest_cell((cfg.pixel_x, s)) // nx) % ny
            pixel_cell = np.array([int(iy_pix) * nx + ix_pixel])
            coeff_pixel = _detector_coeff_rows(basis, pixel_cell, t_pixel)

            a_bucket_l = coeff_bucket @ g_left.g
            a_bucket_r = coeff_bucket @ g_right.g
            a_pix_l = complex((coeff_pixel @ g_left.g)[0])
            a_pix_r = complex((coeff_pixel @ g_right.g)[0])

            for k, n in enumerate(cfg.photon_numbers):
                p = n // 2
                ph = phase[k]
                branch_l = (a_bucket_l * a_pix_l) ** p
                branch_r = (a_bucket_r * a_pix_r) ** p
                num_cells = (factorial(n) / 2.0) * np.abs(
                    ph * branch_l + branch_r
                ) ** 2
                pref = factorial(n) / (2.0 * factorial(p))
                cross_a = (
                    ph * np.conj(a_bucket_r) ** p * a_bucket_l**p
                    * np.conj(gamma) ** p
                )
                den_a_cells = pref * (
                    np.abs(a_bucket_l) ** (2 * p)
                    + np.abs(a_bucket_r) ** (2 * p)
                    + 2.0 * cross_a.real
                )
                cross_b = (
                    ph * np.conj(a_pix_r) ** p * a_pix_l**p * np.conj(gamma) ** p
                )
                den_b = pref * (
                    abs(a_pix_l) ** (2 * p)
                    + abs(a_pix_r) ** (2 * p)
                    + 2.0 * cross_b.real
                )
                nums[n][i] = float(np.sum(num_cells))
                dens_a[n][i] = float(np.sum(den_a_cells))
                dens_b[n][i] = float(den_b)
                norms[n][i] = 1.0 + (ph * np.conj(gamma) ** n).real

        columns: dict[str, np.ndarray] = {}
        flags_meta = {}
        components_meta = {}
        for n in cfg.photon_numbers:
            values, flags = resolve_sweep_values(
                n, nums[n], dens_a[n], dens_b[n], norms[n],
                cfg.eps_reg, cfg.den_floor_amp,
            )
            columns[f"cf_N{n}"] = values
            columns[f"cf_N{n}_norm"] = normalize_column(values, cfg.normalization)
            flags_meta[n] = flags
            components_meta[n] = {
                "numerator": nums[n],
                "denom_alpha": dens_a[n],
                "denom_beta": dens_b[n],
                "state_norm": norms[n],
            }
        columns["object_footprint"] = geom.footprint(s_values, width_factor)
        timings["sweep"] = time.perf_counter() - t0

        metadata = {
            "experiment": "ghost-scan",
            "perturbation": pert,
            "width_factor": width_factor,
            "mode_count": basis.kept_count,
            "eigen_residual": residual,
            "capture_fractions": {
                "min": float(np.min(captures)),
                "mean": float(np.mean(captures)),
            },
            "bucket_cells": bucket_cells.tolist(),
            "detector_x": (float(x_bucket), float(x_pixel)),
            "detection_time": (float(t_bucket), float(t_pixel)),
            "group_velocity": v_g,
            "regularized": {n: f.tolist() for n, f in flags_meta.items()},
            "components": components_meta,
            "timings": timings,
        }
        results.append(SweepResult("s", s_values, columns, metadata))
    return results
