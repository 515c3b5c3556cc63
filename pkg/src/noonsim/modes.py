"""Normal-mode bases from the generalized Hermitian eigenproblem.

``solve_modes`` performs a full dense decomposition of S phi = omega^2 M phi,
normalizes the eigenvectors so Phi^H M Phi = I, fixes a deterministic sign
convention, and discards near-zero (DC) modes.  A mode basis is immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NotPositiveSemidefiniteError, NumericalError
from .grid import Grid
from .operators import DiscreteOperators

EIGENVALUE_CLIP = -1e-9  # numerical negatives beyond this are rejected

# Multiplier on machine epsilon used to keep roundoff-sized eigenvalues out
# of the retained spectrum; see default_omega_floor.
_ROUNDOFF_GUARD = 64.0


@dataclass(frozen=True)
class ModeBasis:
    """Eigenfrequencies and M-orthonormal mode vectors of a structure.

    Attributes:
        grid: the grid the modes live on.
        omegas: ascending positive eigenfrequencies, shape (kept,). rad/m,
            units with c = 1.
        modes: eigenvector matrix, shape (n_dof, kept); column i is the mode
            with frequency omegas[i], normalized so Phi^H M Phi = I.
        mass_diagonal: permittivity per DOF (the diagonal of M).
    """

    grid: Grid
    omegas: np.ndarray
    modes: np.ndarray
    mass_diagonal: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.omegas, dtype=float)
        phi = np.asarray(self.modes)
        m = np.asarray(self.mass_diagonal, dtype=float)
        if phi.shape != (self.grid.n_dof, w.size):
            raise NumericalError(
                f"modes shape {phi.shape} != ({self.grid.n_dof}, {w.size})"
            )
        if np.any(w <= 0.0):
            raise NumericalError("retained eigenfrequencies must be positive")
        if np.any(np.diff(w) < 0.0):
            raise NumericalError("eigenfrequencies must be ascending")
        object.__setattr__(self, "omegas", w)
        object.__setattr__(self, "modes", phi)
        object.__setattr__(self, "mass_diagonal", m)

    @property
    def kept_count(self) -> int:
        return int(self.omegas.size)

    @property
    def n_dof(self) -> int:
        return int(self.modes.shape[0])


def uniform_omega_extrema(grid: Grid) -> tuple[float, float]:
    """Smallest nonzero and largest eigenfrequency of the vacuum grid.

    Analytic values for the periodic central-difference stencil with
    eps = 1: omega(k) = (2/dx)|sin(pi k / n)| per axis.
    """
    mins = []
    lam_max = 0.0
    for axis in range(grid.dimension):
        n = grid.cell_counts[axis]
        d = grid.cell_sizes[axis]
        mins.append((2.0 / d) * np.sin(np.pi / n))
        lam_max += 4.0 / d**2
    return float(min(mins)), float(np.sqrt(lam_max))


def default_omega_floor(grid: Grid) -> float:
    """Frequency floor below which modes are discarded.

    1e-6 of the smallest analytic nonzero vacuum frequency, raised to a
    roundoff guard when the eigensolver's absolute eigenvalue noise
    (~eps_machine * lambda_max) would otherwise leak the DC mode past the
    floor.
    """
    omega_min, omega_max = uniform_omega_extrema(grid)
    guard = np.sqrt(_ROUNDOFF_GUARD * np.finfo(float).eps) * omega_max
    return float(max(1e-6 * omega_min, guard))


def solve_modes(ops: DiscreteOperators, omega_floor: float | None = None) -> ModeBasis:
    """Full dense generalized Hermitian eigendecomposition of (S, M).

    Eigenvalues within EIGENVALUE_CLIP of zero are clipped to zero; more
    negative ones raise NotPositiveSemidefiniteError.  Modes with
    omega <= omega_floor are discarded.  Each retained eigenvector is
    normalized against M and phased so its largest-magnitude entry is
    real-positive (deterministic sign convention).
    """
    if omega_floor is None:
        omega_floor = default_omega_floor(ops.grid)
    if omega_floor < 0.0:
        raise NumericalError("omega_floor must be >= 0")

    eigvals, vecs = scipy.linalg.eigh(ops.stiffness, ops.mass_matrix())

    if eigvals[0] < EIGENVALUE_CLIP:
        raise NotPositiveSemidefiniteError(
            f"stiffness eigenvalue {eigvals[0]:.3e} below clip {EIGENVALUE_CLIP:.0e}"
        )
    eigvals = np.clip(eigvals, 0.0, None)
    omegas = np.sqrt(eigvals)

    keep = omegas > omega_floor
    omegas = omegas[keep]
    vecs = vecs[:, keep]
    if omegas.size == 0:
        raise NumericalError("no modes retained above the frequency floor")

    # enforce M-orthonormal columns (eigh already returns them; renormalize
    # defensively so the contract holds bit-exactly in the basis object)
    m = ops.mass_diagonal
    norms = np.sqrt(np.einsum("ij,i,ij->j", vecs.conj(), m, vecs).real)
    if np.any(norms <= 0.0) or not np.all(np.isfinite(norms)):
        raise NumericalError("degenerate normalization failure in eigenvectors")
    vecs = vecs / norms

    # deterministic sign/phase: largest-magnitude entry real-positive
    lead = np.argmax(np.abs(vecs), axis=0)
    lead_vals = vecs[lead, np.arange(vecs.shape[1])]
    if np.iscomplexobj(vecs):
        phases = lead_vals / np.abs(lead_vals)
        vecs = vecs * np.conj(phases)
    else:
        vecs = vecs * np.sign(lead_vals)

    return ModeBasis(ops.grid, omegas, vecs, m.copy())


def field_coefficients(basis: ModeBasis, cell_index: int, time: float) -> np.ndarray:
    """Per-mode field coefficient vector sqrt(1/(2 omega)) Phi(r) e^{-i omega t}.

    This is the coefficient of the annihilation operator of each mode in the
    positive-frequency field operator at the given grid cell and time
    (hbar = 1, c = 1; time in meters).
    """
    n = basis.n_dof
    if not 0 <= cell_index < n:
        raise IndexError(f"cell_index {cell_index} out of range [0, {n})")
    amp = np.sqrt(1.0 / (2.0 * basis.omegas))
    return amp * basis.modes[cell_index, :] * np.exp(-1j * basis.omegas * time)


def field_coefficient(
    basis: ModeBasis, cell_index: int, time: float, mode_index: int
) -> complex:
    """Single-mode field coefficient c_i(r_j, t); see field_coefficients."""
    k = basis.kept_count
    if not 0 <= mode_index < k:
        raise IndexError(f"mode_index {mode_index} out of range [0, {k})")
    return complex(field_coefficients(basis, cell_index, time)[mode_index])


def eigen_residual(ops: DiscreteOperators, basis: ModeBasis) -> float:
    """Relative Frobenius residual ||S Phi - M Phi diag(w^2)|| / ||S Phi||."""
    s_phi = ops.stiffness @ basis.modes
    m_phi = ops.mass_diagonal[:, None] * basis.modes
    resid = s_phi - m_phi * basis.omegas[None, :] ** 2
    denom = np.linalg.norm(s_phi)
    if denom == 0.0:
        return float(np.linalg.norm(resid))
    return float(np.linalg.norm(resid) / denom)
