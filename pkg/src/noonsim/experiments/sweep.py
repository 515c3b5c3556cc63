"""Sweep result container and the sweep-level 0/0 regularization pass.

Drivers first evaluate raw CF components at every sweep point, then resolve
values in a second pass so the floors can be anchored to the sweep peaks:

  * numerator floor: eps_reg * max(peak responses)^2
  * denominator floors: den_floor_amp^N * max(peak responses)

Both floors anchor on the larger of the two detectors' sweep peaks so that
a path that is blocked at every sweep point (its own peak is noise-level)
still registers as blocked rather than indeterminate.  The denominator
floor is expressed per photodetection amplitude (den_floor_amp) and raised
to the N-th power so a single dimensionless knob behaves consistently
across photon numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..correlation import assemble_cf_value
from ..errors import IndeterminateCFError


@dataclass
class SweepResult:
    """Columns of one experiment sweep plus run metadata.

    ``columns`` maps column name -> array, all the same length as
    ``values``; insertion order is the CSV column order.  ``metadata``
    carries config hash, mode count, capture fractions, per-point
    regularization flags and the raw CF components per photon number.
    """

    sweep_name: str
    values: np.ndarray
    columns: dict[str, np.ndarray]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.values.size
        for name, col in self.columns.items():
            if np.asarray(col).shape != (n,):
                raise ValueError(f"column {name!r} length != sweep length {n}")

    def header(self) -> list[str]:
        return [self.sweep_name, *self.columns.keys()]


def normalize_column(values: np.ndarray, mode: str = "max") -> np.ndarray:
    """Peak-normalized copy of a column ('max') or an unscaled copy ('raw')."""
    col = np.asarray(values, dtype=float)
    if mode == "raw":
        return col.copy()
    if mode != "max":
        raise ValueError(f"unknown normalization mode {mode!r}")
    peak = np.max(col) if col.size else 0.0
    if peak <= 0.0:
        return col.copy()
    return col / peak


def resolve_sweep_values(
    n_photons: int,
    numerators: np.ndarray,
    denoms_alpha: np.ndarray,
    denoms_beta: np.ndarray,
    state_norms: np.ndarray,
    eps_reg: float,
    den_floor_amp: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Second pass: normalized CF values and regularization flags.

    Raises IndeterminateCFError with the sweep point index when a point is
    genuinely indeterminate.
    """
    peak_a = float(np.max(denoms_alpha))
    peak_b = float(np.max(denoms_beta))
    anchor = max(peak_a, peak_b)
    num_floor = eps_reg * anchor**2
    amp_floor = float(den_floor_amp) ** n_photons * anchor
    floor_alpha = amp_floor
    floor_beta = amp_floor

    values = np.empty_like(numerators, dtype=float)
    flags = np.zeros(numerators.shape, dtype=bool)
    for i in range(numerators.size):
        try:
            values[i], flags[i] = assemble_cf_value(
                float(numerators[i]),
                float(denoms_alpha[i]),
                float(denoms_beta[i]),
                float(state_norms[i]),
                num_floor=num_floor,
                den_floor_alpha=floor_alpha,
                den_floor_beta=floor_beta,
            )
        except IndeterminateCFError as err:
            raise IndeterminateCFError(
                f"indeterminate CF at sweep point {i} (N={n_photons}): {err}"
            ) from err
    return values, flags
