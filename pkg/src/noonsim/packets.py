"""Gaussian wavepacket construction and projection onto a mode basis.

A wavepacket is built in real space (envelope times carrier) and projected
onto the structure's normal modes with the permittivity-weighted inner
product; the normalized projection coefficients are the single-photon
spectral amplitudes used by the correlation engine.

All types here are immutable and every operation is a pure function, so
concurrent evaluation over detectors and times is safe with shared inputs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, GeometryError, ProjectionError
from .grid import Grid
from .modes import ModeBasis, field_coefficients

CAPTURE_WARN = 0.99
CAPTURE_ERROR = 0.90

_COMPONENTS = ("x", "y", "z")


@dataclass(frozen=True)
class WavepacketSpec:
    """Quasi-monochromatic Gaussian wavepacket parameters.

    The packet is Gaussian in amplitude with spatial std
    sigma_x = 1/(2 * spectral_std) along the propagation direction.

    Attributes:
        center: launch position (m), one coordinate per grid axis.
        direction: unit propagation vector (+-x in 1D; axis-aligned in 2D).
        center_frequency: carrier frequency omega_g (rad/m, c = 1).
        spectral_std: amplitude spectral std sigma_omega (rad/m).
        transverse_std: transverse amplitude std (m), 2D only.
    """

    center: tuple[float, ...]
    direction: tuple[float, ...]
    center_frequency: float
    spectral_std: float
    transverse_std: float | None = None

    def __post_init__(self):
        center = tuple(float(c) for c in self.center)
        direction = np.asarray(self.direction, dtype=float)
        norm = np.linalg.norm(direction)
        if norm == 0.0:
            raise ConfigError("packet direction must be nonzero")
        direction = direction / norm
        if not (self.spectral_std > 0.0):
            raise ConfigError("spectral_std must be positive")
        if not (self.spectral_std < self.center_frequency / 3.0):
            raise ConfigError(
                "spectral_std must be below center_frequency/3 "
                "(quasi-monochromatic packet)"
            )
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "direction", tuple(direction))

    @property
    def sigma_x(self) -> float:
        """Longitudinal amplitude std (m)."""
        return 1.0 / (2.0 * self.spectral_std)


def fwhm_to_spectral_std(fwhm: float) -> float:
    """Convert an amplitude-spectrum FWHM to the Gaussian std."""
    return float(fwhm) / (2.0 * np.sqrt(2.0 * np.log(2.0)))


@dataclass(frozen=True)
class SpectralAmplitudes:
    """Complex wavepacket coefficients over the retained modes.

    Normalized so sum |g_i|^2 = 1.  ``capture_fraction`` records how much of
    the projected field's eps-weighted norm the retained modes captured.
    """

    g: np.ndarray
    capture_fraction: float = field(default=1.0, compare=False)

    def __post_init__(self):
        g = np.asarray(self.g, dtype=complex)
        if g.ndim != 1 or g.size == 0:
            raise ConfigError("amplitudes must be a nonempty 1D vector")
        total = float(np.sum(np.abs(g) ** 2))
        if abs(total - 1.0) > 1e-12:
            raise ConfigError(f"amplitudes must be unit-norm, got sum|g|^2={total!r}")
        object.__setattr__(self, "g", g)

    def __len__(self) -> int:
        return int(self.g.size)


@dataclass(frozen=True)
class DetectorSpec:
    """A photodetection event: where, when, which field component, how many.

    ``fold`` is the number of photodetections performed at this detector in
    one coincidence (N/2 for the equal-split convention).  The scalar field
    model carries a single component; the label is kept for bookkeeping.
    """

    cell_index: int
    time: float
    component: str = "z"
    fold: int = 1

    def __post_init__(self):
        if self.component not in _COMPONENTS:
            raise ConfigError(f"component must be one of {_COMPONENTS}")
        if int(self.fold) < 1:
            raise ConfigError("fold must be >= 1")
        object.__setattr__(self, "cell_index", int(self.cell_index))
        object.__setattr__(self, "time", float(self.time))
        object.__setattr__(self, "fold", int(self.fold))


def _axis_of(direction: tuple[float, ...]) -> int:
    d = np.asarray(direction)
    axis = int(np.argmax(np.abs(d)))
    if abs(abs(d[axis]) - 1.0) > 1e-12:
        raise ConfigError("packet direction must be axis-aligned")
    return axis


def packet_profile(spec: WavepacketSpec, grid: Grid) -> np.ndarray:
    """Complex field samples of the packet at every cell center.

    psi(r) = exp(-|r_perp|^2 / (4 t_std^2))
           * exp(-(r_par)^2 / (4 sigma_x^2)) * exp(i omega_g r_par)
    with r_par the signed coordinate along the propagation direction,
    measured from the packet center.  1D drops the transverse factor.

    The 4-sigma envelope (width 4 sigma) must fit within the periodic domain
    extent on each axis and the center must lie inside the grid; violating
    either raises GeometryError.
    """
    if len(spec.center) != grid.dimension:
        raise GeometryError(
            f"packet center has {len(spec.center)} coords on a "
            f"{grid.dimension}D grid"
        )
    axis = _axis_of(spec.direction)
    sign = float(np.sign(spec.direction[axis]))
    extents = grid.extents

    for a in range(grid.dimension):
        lo = grid.origin[a]
        if not lo < spec.center[a] < lo + extents[a]:
            raise GeometryError(f"packet center is outside the grid on axis {a}")

    if 4.0 * spec.sigma_x > extents[axis]:
        raise GeometryError(
            f"packet envelope (4 sigma = {4 * spec.sigma_x:.3g} m) exceeds the "
            f"domain extent {extents[axis]:.3g} m along the propagation axis"
        )
    if grid.dimension == 2:
        if spec.transverse_std is None:
            raise ConfigError("transverse_std is required for 2D packets")
        perp = 1 - axis
        if 4.0 * spec.transverse_std > extents[perp]:
            raise GeometryError(
                "packet transverse envelope exceeds the domain extent"
            )

    centers = grid.cell_centers()
    r_par = sign * (centers[:, axis] - spec.center[axis])
    psi = np.exp(-(r_par**2) / (4.0 * spec.sigma_x**2)) * np.exp(
        1j * spec.center_frequency * r_par
    )
    if grid.dimension == 2:
        perp = 1 - axis
        r_perp = centers[:, perp] - spec.center[perp]
        psi = psi * np.exp(-(r_perp**2) / (4.0 * spec.transverse_std**2))
    return psi


def project_packets(
    basis: ModeBasis,
    profiles: np.ndarray,
    capture_warn: float = CAPTURE_WARN,
    capture_error: float = CAPTURE_ERROR,
) -> list[SpectralAmplitudes]:
    """Project a stack of real-space fields (columns) onto the modes.

    For each column psi: raw_i = sum_j eps_j Phi_i(r_j)^* psi(r_j) dV,
    normalized to unit norm.  The capture fraction compares the eps-weighted
    norm of the retained-mode reconstruction against the input field's.
    """
    psis = np.asarray(profiles, dtype=complex)
    if psis.ndim == 1:
        psis = psis[:, None]
    if psis.shape[0] != basis.n_dof:
        raise ProjectionError(
            f"profile length {psis.shape[0]} does not match grid ({basis.n_dof})"
        )
    dvol = basis.grid.cell_volume
    weighted = basis.mass_diagonal[:, None] * psis
    raws = (basis.modes.conj().T @ weighted) * dvol

    norms = np.linalg.norm(raws, axis=0)
    psi_norm2 = np.sum(basis.mass_diagonal[:, None] * np.abs(psis) ** 2, axis=0) * dvol

    out = []
    for col in range(psis.shape[1]):
        norm = float(norms[col])
        if norm < 1e-12:
            raise ProjectionError(
                f"packet {col} projects to (numerically) nothing"
            )
        capture = float(np.sum(np.abs(raws[:, col]) ** 2) / dvol / psi_norm2[col])
        if capture < capture_error:
            raise ProjectionError(
                f"retained modes capture only {capture:.3f} of packet {col}"
            )
        if capture < capture_warn:
            warnings.warn(
                f"retained modes capture {capture:.4f} < {capture_warn} of "
                f"packet {col}",
                stacklevel=2,
            )
        out.append(SpectralAmplitudes(raws[:, col] / norm, capture_fraction=capture))
    return out


def project_packet(
    basis: ModeBasis,
    profile: np.ndarray,
    capture_warn: float = CAPTURE_WARN,
    capture_error: float = CAPTURE_ERROR,
) -> SpectralAmplitudes:
    """Single-packet form of project_packets."""
    psi = np.asarray(profile, dtype=complex)
    if psi.ndim != 1:
        raise ProjectionError("profile must be a 1D field; see project_packets")
    return project_packets(basis, psi, capture_warn, capture_error)[0]


def reconstruct_packet(basis: ModeBasis, amps: SpectralAmplitudes) -> np.ndarray:
    """Real-space synthesis sum_i g_i Phi_i(r) of a spectral amplitude vector."""
    if len(amps) != basis.kept_count:
        raise ProjectionError("amplitude length does not match basis")
    return basis.modes @ amps.g


def overlap(a: SpectralAmplitudes, b: SpectralAmplitudes) -> complex:
    """Single-photon overlap gamma = sum_i a_i^* b_i; |gamma| <= 1."""
    if len(a) != len(b):
        raise ConfigError(f"amplitude lengths differ: {len(a)} vs {len(b)}")
    return complex(np.vdot(a.g, b.g))


def detector_amplitude(
    basis: ModeBasis, amps: SpectralAmplitudes, det: DetectorSpec
) -> complex:
    """Positive-frequency field amplitude of a wavepacket at a detection event.

    alpha = sum_i c_i(r_det, t_det) g_i with c_i the per-mode field
    coefficient.
    """
    if len(amps) != basis.kept_count:
        raise ConfigError("amplitude length does not match basis")
    coeffs = field_coefficients(basis, det.cell_index, det.time)
    return complex(np.dot(coeffs, amps.g))
