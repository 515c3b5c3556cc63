"""Discrete stiffness and mass operators for the scalar wave equation.

The stiffness matrix is the symmetric central-difference discretisation of
-d2/dx2 (1D) or -(d2/dx2 + d2/dy2) (2D, single z-polarised component) with
plain periodic closure.  The mass matrix is diagonal with the relative
permittivity per cell, so the pair (S, M) defines the generalized
eigenproblem S phi = omega^2 M phi in units where c = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .grid import Grid, PermittivityMap, require_dimension


@dataclass(frozen=True)
class DiscreteOperators:
    """Dense Hermitian stiffness S (1/m^2) and diagonal mass M (eps per DOF)."""

    grid: Grid
    stiffness: np.ndarray
    mass_diagonal: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.stiffness, dtype=float)
        m = np.asarray(self.mass_diagonal, dtype=float)
        n = self.grid.n_dof
        if s.shape != (n, n):
            raise NumericalError(f"stiffness shape {s.shape} != ({n}, {n})")
        if m.shape != (n,):
            raise NumericalError(f"mass diagonal shape {m.shape} != ({n},)")
        if np.any(m <= 0.0):
            raise NumericalError("mass diagonal must be strictly positive")
        object.__setattr__(self, "stiffness", s)
        object.__setattr__(self, "mass_diagonal", m)

    @property
    def n_dof(self) -> int:
        return self.grid.n_dof

    def mass_matrix(self) -> np.ndarray:
        return np.diag(self.mass_diagonal)


def build_operators_1d(pmap: PermittivityMap) -> DiscreteOperators:
    """Periodic 3-point Laplacian stiffness and diagonal mass for a 1D map."""
    require_dimension(pmap.dimension, 1, "build_operators_1d")
    grid = pmap.grid
    n = grid.cell_counts[0]
    dx = grid.cell_sizes[0]
    inv = 1.0 / dx**2
    idx = np.arange(n)
    s = np.zeros((n, n))
    s[idx, idx] = 2.0 * inv
    s[idx, (idx + 1) % n] = -inv
    s[idx, (idx - 1) % n] = -inv
    return DiscreteOperators(grid, s, pmap.eps_flat().copy())


def build_operators_2d_tmz(pmap: PermittivityMap) -> DiscreteOperators:
    """Periodic 5-point Laplacian stiffness and diagonal mass for a 2D map.

    DOF ordering is x-fastest (flat = iy*nx + ix); the stencil is assembled
    symmetrically so S equals its transpose bit-exactly.
    """
    require_dimension(pmap.dimension, 2, "build_operators_2d_tmz")
    grid = pmap.grid
    nx, ny = grid.cell_counts
    dx, dy = grid.cell_sizes
    invx = 1.0 / dx**2
    invy = 1.0 / dy**2
    n = nx * ny
    s = np.zeros((n, n))
    flat = np.arange(n)
    ix = flat % nx
    iy = flat // nx
    s[flat, flat] = 2.0 * invx + 2.0 * invy
    right = iy * nx + (ix + 1) % nx
    left = iy * nx + (ix - 1) % nx
    up = ((iy + 1) % ny) * nx + ix
    down = ((iy - 1) % ny) * nx + ix
    s[flat, right] = -invx
    s[flat, left] = -invx
    s[flat, up] += -invy
    s[flat, down] += -invy
    return DiscreteOperators(grid, s, pmap.eps_flat().copy())


def build_operators(pmap: PermittivityMap) -> DiscreteOperators:
    """Dispatch to the 1D or 2D builder based on the map's dimension."""
    if pmap.dimension == 1:
        return build_operators_1d(pmap)
    return build_operators_2d_tmz(pmap)
