"""Readers for the simulator's sweep CSV schemas.

This package consumes CF values only; it never recomputes physics.
"""

from __future__ import annotations

import numpy as np


class SchemaError(ValueError):
    """CSV does not follow the documented sweep schema."""


def read_sweep_csv(path: str) -> tuple[list[str], np.ndarray]:
    """Read a sweep CSV: (column names, data rows x cols)."""
    with open(path, encoding="utf-8") as f:
        header = f.readline().strip()
        if not header:
            raise SchemaError(f"{path}: empty file")
        names = header.split(",")
        rows = []
        for line in f:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(names):
                raise SchemaError(
                    f"{path}: row has {len(parts)} fields, header has "
                    f"{len(names)}"
                )
            rows.append([float(v) for v in parts])
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return names, np.asarray(rows)


def cf_columns(names: list[str], normalized: bool = True) -> dict[int, int]:
    """Map photon number -> column index for cf_N* columns."""
    suffix = "_norm" if normalized else ""
    out: dict[int, int] = {}
    for i, name in enumerate(names):
        if not name.startswith("cf_N"):
            continue
        body = name[len("cf_N"):]
        if normalized:
            if not body.endswith("_norm"):
                continue
            body = body[: -len("_norm")]
        elif body.endswith("_norm"):
            continue
        try:
            out[int(body)] = i
        except ValueError as err:
            raise SchemaError(f"unparseable CF column {name!r}") from err
    if not out:
        raise SchemaError(
            f"no cf_N*{suffix} columns among {names}"
        )
    return out


def load_fringe_csv(path: str):
    """Phase-sweep file: theta, per-N normalized CF, classical baseline."""
    names, data = read_sweep_csv(path)
    if names[0] != "theta":
        raise SchemaError(f"{path}: first column must be 'theta', got {names[0]!r}")
    if "classical_norm" not in names:
        raise SchemaError(f"{path}: missing 'classical_norm' column")
    per_n = cf_columns(names, normalized=True)
    theta = data[:, 0]
    curves = {n: data[:, i] for n, i in sorted(per_n.items())}
    classical = data[:, names.index("classical_norm")]
    return theta, curves, classical


def load_ghost_csv(path: str):
    """Ghost-scan file: s, per-N normalized CF, object footprint."""
    names, data = read_sweep_csv(path)
    if names[0] != "s":
        raise SchemaError(f"{path}: first column must be 's', got {names[0]!r}")
    if "object_footprint" not in names:
        raise SchemaError(f"{path}: missing 'object_footprint' column")
    per_n = cf_columns(names, normalized=True)
    s = data[:, 0]
    curves = {n: data[:, i] for n, i in sorted(per_n.items())}
    footprint = data[:, names.index("object_footprint")]
    return s, curves, footprint
