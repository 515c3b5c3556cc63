"""Deterministic CSV and JSON emission.

All numeric output uses 17 significant digits with '.' decimals and LF
line endings, so identical runs produce byte-identical files and values
round-trip through re-parsing exactly.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ConfigError
from .experiments.sweep import SweepResult


def format_value(x: float) -> str:
    return format(float(x), ".17g")


def emit_csv(result: SweepResult, path: str) -> None:
    """Write a sweep result as UTF-8 comma-separated text."""
    header = ",".join(result.header())
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(header + "\n")
        cols = [result.values, *result.columns.values()]
        for i in range(result.values.size):
            f.write(",".join(format_value(c[i]) for c in cols) + "\n")


def load_csv(path: str) -> tuple[list[str], np.ndarray]:
    """Read back an emitted CSV: (header names, data array rows x cols)."""
    with open(path, encoding="utf-8") as f:
        header = f.readline().strip()
        names = header.split(",")
        rows = [line.strip().split(",") for line in f if line.strip()]
    if rows:
        data = np.array([[float(v) for v in row] for row in rows])
    else:
        data = np.empty((0, len(names)))
    return names, data


def emit_json(payload: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def save_eps_csv(eps: np.ndarray, path: str) -> None:
    """Dense permittivity map: header 'eps1d,nx' or 'eps2d,nx,ny', then the
    row-major values of the (nx,) or (nx, ny) array."""
    eps = np.asarray(eps, dtype=float)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        if eps.ndim == 1:
            f.write(f"eps1d,{eps.shape[0]}\n")
        elif eps.ndim == 2:
            f.write(f"eps2d,{eps.shape[0]},{eps.shape[1]}\n")
        else:
            raise ConfigError("eps array must be 1D or 2D")
        for v in eps.ravel(order="C"):
            f.write(format_value(v) + "\n")


def load_eps_csv(path: str) -> np.ndarray:
    """Inverse of save_eps_csv."""
    with open(path, encoding="utf-8") as f:
        header = f.readline().strip().split(",")
        values = [float(line) for line in f if line.strip()]
    if header[0] == "eps1d" and len(header) == 2:
        shape: tuple[int, ...] = (int(header[1]),)
    elif header[0] == "eps2d" and len(header) == 3:
        shape = (int(header[1]), int(header[2]))
    else:
        raise ConfigError(
            f"{path}: expected header 'eps1d,nx' or 'eps2d,nx,ny', got "
            f"{','.join(header)!r}"
        )
    expected = int(np.prod(shape))
    if len(values) != expected:
        raise ConfigError(
            f"{path}: expected {expected} values for shape {shape}, got "
            f"{len(values)}"
        )
    return np.array(values).reshape(shape)


def export_mode_basis(basis, omegas_path: str, modes_path: str) -> None:
    """Debug export: omegas.csv (one per line, 'omega' header) and
    modes.csv (row-major n_dof x kept, no header)."""
    with open(omegas_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("omega\n")
        for w in basis.omegas:
            f.write(format_value(w) + "\n")
    with open(modes_path, "w", encoding="utf-8", newline="\n") as f:
        for row in np.asarray(basis.modes):
            f.write(",".join(format_value(v) for v in row.real) + "\n")
