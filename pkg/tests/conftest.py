import numpy as np
import pytest

from noonsim.grid import Grid, PermittivityMap, uniform_map
from noonsim.modes import ModeBasis, solve_modes
from noonsim.operators import build_operators_1d


def make_grid_1d(n=32, dx=1.0, origin=None):
    return Grid(1, (n,), (dx,), origin if origin is None else (origin,))


def make_uniform_basis(n=32, dx=1.0, eps=1.0):
    grid = make_grid_1d(n, dx)
    ops = build_operators_1d(uniform_map(grid, eps))
    return solve_modes(ops)


def make_synthetic_basis(kept=3, seed=0, n_cells=8):
    """An M-orthonormal basis with crafted random columns and frequencies.

    Used by algebra-level tests that only need a valid ModeBasis object,
    not physically meaningful modes.
    """
    rng = np.random.default_rng(seed)
    grid = make_grid_1d(n_cells, 1.0)
    mat = rng.normal(size=(n_cells, kept))
    q, _ = np.linalg.qr(mat)
    omegas = np.sort(rng.uniform(0.5, 3.0, size=kept))
    return ModeBasis(grid, omegas, q, np.ones(n_cells))


def random_unit_amplitudes(kept, rng):
    g = rng.normal(size=kept) + 1j * rng.normal(size=kept)
    g /= np.linalg.norm(g)
    return g


@pytest.fixture(scope="session")
def uniform_basis_32():
    return make_uniform_basis(32)


def leapfrog_transit(pmap: PermittivityMap, psi0: np.ndarray, omega_carrier,
                     t_end, dt=None):
    """Classical second-order wave-equation stepper (independent oracle).

    Steps eps * u_tt = laplacian(u) with the same periodic stencil, starting
    from the real part of the analytic signal psi0 with carrier
    omega_carrier.  Returns (final u, final u at previous step, dt, steps).
    """
    from noonsim.operators import build_operators

    ops = build_operators(pmap)
    s = ops.stiffness
    eps = ops.mass_diagonal
    dx_min = min(pmap.grid.cell_sizes)
    if dt is None:
        dt = 0.35 * dx_min * np.sqrt(eps.min()) / np.sqrt(pmap.grid.dimension)
    steps = max(1, int(round(t_end / dt)))
    dt = t_end / steps
    u_prev = np.real(psi0 * np.exp(1j * omega_carrier * dt))  # u(-dt)
    u = np.real(psi0)
    for _ in range(steps):
        u_next = 2.0 * u - u_prev - dt**2 * (s @ u) / eps
        u_prev, u = u, u_next
    return u, u_prev, dt, steps


def envelope_energy(u, u_prev, dt, eps, omega_carrier):
    """Smooth envelope proxy eps*v^2 + (omega*u)^2 for a leapfrogged field."""
    v = (u - u_prev) / dt
    return eps * v**2 + (omega_carrier * u) ** 2
