"""Uniform periodic grids and relative-permittivity maps.

Conventions (fixed, relied on by the operator builders):
  * Units are chosen with c = 1, so frequencies are stored in rad/m and
    times in meters.
  * ``origin`` is the low corner of the domain; the center of cell ``i``
    along an axis sits at ``origin + (i + 0.5) * cell_size``.
  * In 2D the flat degree-of-freedom index runs x-fastest:
    ``flat = iy * nx + ix``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DimensionMismatchError

MIN_CELLS_PER_AXIS = 8


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid in one or two dimensions.

    Attributes:
        dimension: 1 or 2.
        cell_counts: cells per axis, length == dimension.
        cell_sizes: cell edge lengths in meters, length == dimension.
        origin: low corner of the domain per axis, in meters.
    """

    dimension: int
    cell_counts: tuple[int, ...]
    cell_sizes: tuple[float, ...]
    origin: tuple[float, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ConfigError(f"grid dimension must be 1 or 2, got {self.dimension}")
        counts = tuple(int(n) for n in self.cell_counts)
        sizes = tuple(float(s) for s in self.cell_sizes)
        if len(counts) != self.dimension or len(sizes) != self.dimension:
            raise ConfigError("cell_counts/cell_sizes length must equal dimension")
        for n in counts:
            if n < MIN_CELLS_PER_AXIS:
                raise ConfigError(
                    f"cell count per axis must be >= {MIN_CELLS_PER_AXIS}, got {n}"
                )
        for s in sizes:
            if not (s > 0.0) or not np.isfinite(s):
                raise ConfigError(f"cell size must be positive and finite, got {s}")
        origin = self.origin
        if origin is None:
            # default: domain centered on 0
            origin = tuple(-n * s / 2.0 for n, s in zip(counts, sizes))
        origin = tuple(float(x) for x in origin)
        if len(origin) != self.dimension:
            raise ConfigError("origin length must equal dimension")
        object.__setattr__(self, "cell_counts", counts)
        object.__setattr__(self, "cell_sizes", sizes)
        object.__setattr__(self, "origin", origin)

    @property
    def n_dof(self) -> int:
        return int(np.prod(self.cell_counts))

    @property
    def extents(self) -> tuple[float, ...]:
        return tuple(n * s for n, s in zip(self.cell_counts, self.cell_sizes))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.cell_sizes))

    def axis_centers(self, axis: int) -> np.ndarray:
        """Cell-center coordinates along one axis."""
        n = self.cell_counts[axis]
        return self.origin[axis] + (np.arange(n) + 0.5) * self.cell_sizes[axis]

    def cell_centers(self) -> np.ndarray:
        """Cell-center coordinates for every degree of freedom.

        Returns an (n_dof, dimension) array in flat-index order
        (x-fastest in 2D).
        """
        if self.dimension == 1:
            return self.axis_centers(0)[:, None]
        xs = self.axis_centers(0)
        ys = self.axis_centers(1)
        yy, xx = np.meshgrid(ys, xs, indexing="ij")  # shape (ny, nx)
        return np.column_stack([xx.ravel(), yy.ravel()])

    def flat_index(self, ix: int, iy: int = 0) -> int:
        """Flat DOF index of cell (ix, iy); x runs fastest."""
        nx = self.cell_counts[0]
        if not 0 <= ix < nx:
            raise IndexError(f"ix={ix} out of range [0, {nx})")
        if self.dimension == 1:
            if iy != 0:
                raise IndexError("iy must be 0 on a 1D grid")
            return int(ix)
        ny = self.cell_counts[1]
        if not 0 <= iy < ny:
            raise IndexError(f"iy={iy} out of range [0, {ny})")
        return int(iy) * nx + int(ix)

    def nearest_cell(self, position) -> int:
        """Flat index of the cell whose center is nearest to ``position``.

        Ties round away from the domain center so mirrored positions snap
        to mirrored cells.
        """
        pos = np.atleast_1d(np.asarray(position, dtype=float))
        if pos.shape != (self.dimension,):
            raise ConfigError(
                f"position must have {self.dimension} coordinate(s), got {pos.shape}"
            )
        idx = []
        for axis in range(self.dimension):
            lo = self.origin[axis]
            n = self.cell_counts[axis]
            s = self.cell_sizes[axis]
            mid = lo + n * s / 2.0
            rel = (pos[axis] - lo) / s - 0.5
            # round half away from the domain midpoint for mirror symmetry
            if pos[axis] >= mid:
                i = int(np.floor(rel + 0.5))
            else:
                i = int(np.ceil(rel - 0.5))
            if not 0 <= i < n:
                raise ConfigError(
                    f"position {pos[axis]} lies outside axis {axis} domain"
                )
            idx.append(i)
        if self.dimension == 1:
            return idx[0]
        return self.flat_index(idx[0], idx[1])


@dataclass(frozen=True)
class PermittivityMap:
    """Relative permittivity sampled at cell centers.

    ``eps`` has shape (nx,) in 1D or (nx, ny) in 2D. Values must be finite
    and >= 1 (lossless dielectric).
    """

    grid: Grid
    eps: np.ndarray

    def __post_init__(self):
        eps = np.asarray(self.eps, dtype=float)
        expected = tuple(self.grid.cell_counts)
        if eps.shape != expected:
            raise ConfigError(f"eps shape {eps.shape} does not match grid {expected}")
        if not np.all(np.isfinite(eps)):
            raise ConfigError("eps must be finite everywhere")
        if np.any(eps < 1.0):
            raise ConfigError("eps must be >= 1 everywhere (lossless dielectric)")
        object.__setattr__(self, "eps", eps)

    @property
    def dimension(self) -> int:
        return self.grid.dimension

    def eps_flat(self) -> np.ndarray:
        """Permittivity per degree of freedom in flat-index order."""
        if self.dimension == 1:
            return self.eps
        # flat = iy*nx + ix, eps indexed [ix, iy]
        return self.eps.T.ravel()


def uniform_map(grid: Grid, eps_value: float = 1.0) -> PermittivityMap:
    """Homogeneous permittivity map on ``grid``."""
    if grid.dimension == 1:
        eps = np.full(grid.cell_counts[0], float(eps_value))
    else:
        eps = np.full(grid.cell_counts, float(eps_value))
    return PermittivityMap(grid, eps)


def require_dimension(obj_dim: int, wanted: int, what: str) -> None:
    if obj_dim != wanted:
        raise DimensionMismatchError(f"{what} requires a {wanted}D map, got {obj_dim}D")
