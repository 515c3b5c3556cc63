import numpy as np
import pytest

from noonsim.errors import NotPositiveSemidefiniteError
from noonsim.grid import PermittivityMap, uniform_map
from noonsim.modes import (
    ModeBasis,
    default_omega_floor,
    eigen_residual,
    field_coefficient,
    field_coefficients,
    solve_modes,
)
from noonsim.operators import DiscreteOperators, build_operators_1d

from conftest import make_grid_1d, make_uniform_basis


def analytic_periodic_omegas(n, dx, eps=1.0):
    """Nonzero eigenfrequencies of the periodic stencil on a uniform medium."""
    k = np.arange(1, n)
    return np.sort((2.0 / dx) * np.abs(np.sin(np.pi * k / n)) / np.sqrt(eps))


@pytest.mark.parametrize("n,dx", [(16, 1.0), (33, 0.25)])
def test_uniform_dispersion_matches_analytic(n, dx):
    grid = make_grid_1d(n, dx)
    basis = solve_modes(build_operators_1d(uniform_map(grid, 1.0)))
    expected = analytic_periodic_omegas(n, dx)
    assert basis.kept_count == n - 1  # only DC discarded
    assert np.max(np.abs(basis.omegas - expected)) <= 1e-10
    # each nonzero value below the band edge is doubly degenerate
    interior = expected[expected < (2.0 / dx) * (1 - 1e-12)]
    vals, counts = np.unique(np.round(interior, 9), return_counts=True)
    assert np.all(counts == 2)


def test_orthonormality_and_hamiltonian_diagonalization():
    grid = make_grid_1d(24, 0.5)
    eps = np.ones(24)
    eps[8:12] = 6.0
    ops = build_operators_1d(PermittivityMap(grid, eps))
    basis = solve_modes(ops)
    gram = basis.modes.T @ (ops.mass_diagonal[:, None] * basis.modes)
    assert np.max(np.abs(gram - np.eye(basis.kept_count))) <= 1e-10
    ham = basis.modes.T @ ops.stiffness @ basis.modes
    target = np.diag(basis.omegas**2)
    scale = np.max(basis.omegas**2)
    assert np.max(np.abs(ham - target)) <= 1e-8 * scale


def test_eigen_residual_bound():
    grid = make_grid_1d(20, 0.3)
    eps = np.ones(20)
    eps[4] = 12.0
    ops = build_operators_1d(PermittivityMap(grid, eps))
    basis = solve_modes(ops)
    assert eigen_residual(ops, basis) <= 1e-8


def test_eps_scaling_halves_frequencies():
    b1 = make_uniform_basis(16, 1.0, eps=1.0)
    b4 = make_uniform_basis(16, 1.0, eps=4.0)
    assert b1.kept_count == b4.kept_count
    assert np.max(np.abs(b4.omegas - b1.omegas / 2.0)) <= 1e-10


def test_spectral_scaling_property_structured_map():
    grid = make_grid_1d(18, 0.7)
    eps = np.ones(18)
    eps[3:7] = 2.5
    alpha = 3.0
    b = solve_modes(build_operators_1d(PermittivityMap(grid, eps)))
    b_scaled = solve_modes(
        build_operators_1d(PermittivityMap(grid, alpha**2 * eps))
    )
    assert np.max(np.abs(b_scaled.omegas - b.omegas / alpha)) <= 1e-10


def test_negative_spectrum_rejected():
    grid = make_grid_1d(8)
    s = -np.eye(8)
    ops = DiscreteOperators(grid, s, np.ones(8))
    with pytest.raises(NotPositiveSemidefiniteError):
        solve_modes(ops)


def test_omega_floor_discards_low_modes():
    grid = make_grid_1d(16, 1.0)
    ops = build_operators_1d(uniform_map(grid, 1.0))
    full = solve_modes(ops)
    floor = full.omegas[3]
    cropped = solve_modes(ops, omega_floor=floor)
    assert cropped.kept_count == full.kept_count - 4
    assert np.all(cropped.omegas > floor)


def test_default_floor_above_roundoff_below_physics():
    grid = make_grid_1d(1507, 1.5 / 1507)
    floor = default_omega_floor(grid)
    first_physical = (2.0 * 1507 / 1.5) * np.sin(np.pi / 1507)
    assert floor < 0.01 * first_physical
    # roundoff-scale DC eigenvalues stay below the floor
    lam_dc_bound = 16 * np.finfo(float).eps * (2.0 * 1507 / 1.5) ** 2
    assert np.sqrt(lam_dc_bound) < floor


def test_sign_convention_deterministic_and_positive_lead():
    basis_a = make_uniform_basis(16)
    basis_b = make_uniform_basis(16)
    assert np.array_equal(basis_a.modes, basis_b.modes)
    lead = np.argmax(np.abs(basis_a.modes), axis=0)
    lead_vals = basis_a.modes[lead, np.arange(basis_a.kept_count)]
    assert np.all(lead_vals > 0)


def test_field_coefficient_values_and_periodicity():
    basis = make_uniform_basis(16)
    i = 4
    w = basis.omegas[i]
    c0 = field_coefficient(basis, 2, 0.0, i)
    assert c0 == pytest.approx(np.sqrt(1.0 / (2.0 * w)) * basis.modes[2, i])
    assert c0.imag == 0.0
    c_period = field_coefficient(basis, 2, 2.0 * np.pi / w, i)
    assert abs(c_period - c0) < 1e-12
    # magnitude independent of time
    c_t = field_coefficient(basis, 2, 0.37, i)
    assert abs(abs(c_t) - abs(c0)) < 1e-14


def test_plane_wave_magnitude_uniform_over_cells():
    basis = make_uniform_basis(32)
    # pick one member of a degenerate pair; |cos|/|sin| columns are not
    # individually uniform, but the pair's summed intensity is
    w = basis.omegas
    pairs = {}
    for i, wi in enumerate(w):
        pairs.setdefault(round(wi, 9), []).append(i)
    for wi, idxs in pairs.items():
        if len(idxs) != 2:
            continue
        c1 = np.array([field_coefficient(basis, j, 0.1, idxs[0]) for j in (3, 17)])
        c2 = np.array([field_coefficient(basis, j, 0.1, idxs[1]) for j in (3, 17)])
        intensity = np.abs(c1) ** 2 + np.abs(c2) ** 2
        assert intensity[0] == pytest.approx(intensity[1], rel=1e-10)
        break


def test_field_coefficient_index_errors():
    basis = make_uniform_basis(16)
    with pytest.raises(IndexError):
        field_coefficient(basis, 99, 0.0, 0)
    with pytest.raises(IndexError):
        field_coefficient(basis, 0, 0.0, 99)
    with pytest.raises(IndexError):
        field_coefficients(basis, -1, 0.0)


def test_mode_basis_validation():
    basis = make_uniform_basis(8)
    with pytest.raises(Exception):
        ModeBasis(basis.grid, -basis.omegas, basis.modes, basis.mass_diagonal)
