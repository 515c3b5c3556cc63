"""Configuration parsing with strict validation and default tracking.

Config files are JSON with nested sections per experiment.  Unknown keys,
duplicate keys and out-of-range values are rejected with the offending key
named; every default that fills a missing key is recorded so the manifest
can echo it.  The effective config (defaults materialized) round-trips
through emit/parse exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .errors import ConfigError
from .experiments.ghost import GhostGeometry, GhostScanConfig
from .experiments.phase import PhaseSweepConfig

EXPERIMENT_KINDS = ("phase-sweep", "ghost-scan", "oracle-check", "modes")


def _positive(x):
    return x > 0


def _nonnegative(x):
    return x >= 0


def _key(section: str, name: str) -> str:
    return f"{section}.{name}" if section else name


class _Spec:
    """One config key: expected type, default, and range check."""

    def __init__(self, types, default, check=None, describe=""):
        self.types = types
        self.default = default
        self.check = check
        self.describe = describe


def _validate_section(
    section_name: str,
    data: dict,
    schema: dict[str, "_Spec"],
    defaults_applied: dict[str, Any],
) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key in data:
        if key not in schema:
            raise ConfigError(
                f"unknown key {_key(section_name, key)!r}; accepted: "
                f"{sorted(schema)}"
            )
    for key, spec in schema.items():
        full = _key(section_name, key)
        if key in data:
            value = data[key]
        else:
            value = spec.default
            defaults_applied[full] = value
        if value is None:
            if type(None) not in spec.types:
                raise ConfigError(f"{full} must not be null")
        else:
            if bool in spec.types and isinstance(value, bool):
                pass
            elif isinstance(value, bool) or not isinstance(
                value, tuple(t for t in spec.types if t is not type(None))
            ):
                raise ConfigError(
                    f"{full} has type {type(value).__name__}; expected "
                    f"{'/'.join(t.__name__ for t in spec.types)}"
                )
            if isinstance(value, float) or isinstance(value, int):
                if spec.check is not None and not spec.check(value):
                    raise ConfigError(
                        f"{full} = {value!r} out of range ({spec.describe})"
                    )
            if isinstance(value, list):
                if spec.check is not None and not spec.check(value):
                    raise ConfigError(
                        f"{full} = {value!r} invalid ({spec.describe})"
                    )
        out[key] = value
    return out


def _even_positive_list(values):
    return (
        len(values) > 0
        and all(isinstance(v, int) and v > 0 and v % 2 == 0 for v in values)
    )


_PHASE_SCHEMA = {
    "domain_length": _Spec((float, int), 1.5, _positive, "> 0"),
    "cells": _Spec((int,), 1507, lambda x: x >= 8, ">= 8"),
    "launch_offset": _Spec((float, int), 0.375, _positive, "> 0"),
    "center_frequency": _Spec((float, int), 526.0, _positive, "> 0"),
    "spectral_std": _Spec((float, int), 1.59, _positive, "> 0"),
    "bs_eps": _Spec((float, int), 12.0, lambda x: x >= 1, ">= 1"),
    "bs_center": _Spec((float, int), 0.0),
    "bs_thickness": _Spec((float, int, type(None)), None, _positive, "> 0"),
    "detector_position": _Spec((float, int), 0.7, _positive, "> 0"),
    "detection_time": _Spec((float, int, type(None)), None, _positive, "> 0"),
    "photon_numbers": _Spec(
        (list,), [2, 4, 6], _even_positive_list, "even positive integers"
    ),
    "theta_samples": _Spec((int,), 192, lambda x: x >= 16, ">= 16"),
    "theta_offset": _Spec((float, int), 0.0),
    "eps_reg": _Spec((float, int), 1e-9, _nonnegative, ">= 0"),
    "den_floor_amp": _Spec((float, int), 1e-6, lambda x: 0 <= x < 1, "[0, 1)"),
    "coherent_mean_photons": _Spec((float, int), 1.0, _positive, "> 0"),
    "omega_floor": _Spec((float, int, type(None)), None, _nonnegative, ">= 0"),
}

_GHOST_GEOMETRY_SCHEMA = {
    "eps_slab": _Spec((float, int), 4.0, lambda x: x >= 1, ">= 1"),
    "slit_width": _Spec((float, int), 4.33e-2, _positive, "> 0"),
    "side_length": _Spec((float, int), 1.70e-1, _positive, "> 0"),
    "thickness": _Spec((float, int), 9.67e-2, _positive, "> 0"),
    "slab_center_x": _Spec((float, int), -0.17),
    "domain_x": _Spec((float, int), 0.9, _positive, "> 0"),
    "domain_y": _Spec((float, int), 0.52, _positive, "> 0"),
    "cells_x": _Spec((int,), 97, lambda x: x >= 8, ">= 8"),
    "cells_y": _Spec((int,), 67, lambda x: x >= 8, ">= 8"),
}

_GHOST_SCHEMA = {
    "center_frequency": _Spec((float, int), 50.0, _positive, "> 0"),
    "fwhm_bandwidth": _Spec((float, int), 33.0, _positive, "> 0"),
    "transverse_std": _Spec((float, int), 5.0e-2, _positive, "> 0"),
    "launch_x": _Spec((float, int), 0.0),
    "bucket_x": _Spec((float, int), -0.30),
    "pixel_x": _Spec((float, int), 0.30),
    "detection_time": _Spec((float, int, type(None)), None, _positive, "> 0"),
    "s_max": _Spec((float, int), 0.21, _positive, "> 0"),
    "s_count": _Spec((int,), 211, lambda x: x >= 11 and x % 2 == 1, "odd >= 11"),
    "photon_numbers": _Spec(
        (list,), [2, 4, 8], _even_positive_list, "even positive integers"
    ),
    "perturbations": _Spec(
        (list,), [-0.1, 0.0, 0.1],
        lambda v: len(v) > 0 and all(isinstance(x, (int, float)) and x > -1 for x in v),
        "fractions > -1",
    ),
    "theta": _Spec((float, int), 0.0),
    "eps_reg": _Spec((float, int), 1e-2, _nonnegative, ">= 0"),
    "den_floor_amp": _Spec((float, int), 0.2, lambda x: 0 <= x < 1, "[0, 1)"),
    "bucket_mode": _Spec((str,), "column", lambda s: True),
    "bucket_point_y": _Spec((float, int), 0.0),
    "omega_floor": _Spec((float, int, type(None)), None, _nonnegative, ">= 0"),
}

_MODES_SCHEMA = {
    "dimension": _Spec((int,), 1, lambda x: x in (1, 2), "1 or 2"),
    "domain_length": _Spec((float, int), 1.5, _positive, "> 0"),
    "cells": _Spec((int,), 64, lambda x: x >= 8, ">= 8"),
    "domain_x": _Spec((float, int), 0.9, _positive, "> 0"),
    "domain_y": _Spec((float, int), 0.52, _positive, "> 0"),
    "cells_x": _Spec((int,), 32, lambda x: x >= 8, ">= 8"),
    "cells_y": _Spec((int,), 24, lambda x: x >= 8, ">= 8"),
    "eps": _Spec((float, int), 1.0, lambda x: x >= 1, ">= 1"),
    "eps_csv": _Spec((str, type(None)), None),
    "omega_floor": _Spec((float, int, type(None)), None, _nonnegative, ">= 0"),
}

_ORACLE_SCHEMA = {
    "seed": _Spec((int,), 20250810, _nonnegative, ">= 0"),
    "draws": _Spec((int,), 50, _positive, "> 0"),
    "photon_numbers": _Spec(
        (list,), [2, 4],
        lambda v: _even_positive_list(v) and all(n <= 4 for n in v),
        "even integers <= 4",
    ),
    "mode_counts": _Spec(
        (list,), [2, 3, 6],
        lambda v: len(v) > 0 and all(isinstance(x, int) and 2 <= x <= 7 for x in v),
        "integers in [2, 7]",
    ),
    "tolerance": _Spec((float, int), 1e-10, _positive, "> 0"),
}

_TOP_SCHEMA_KEYS = (
    "experiment",
    "normalization",
    "phase_sweep",
    "ghost_scan",
    "modes",
    "oracle_check",
)


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration with defaults materialized."""

    experiment: str
    normalization: str
    effective: dict
    defaults_applied: dict = field(compare=False)

    @property
    def config_hash(self) -> str:
        return hash_config(self.effective)

    def section(self) -> dict:
        key = self.experiment.replace("-", "_")
        if key == "oracle_check":
            return self.effective["oracle_check"]
        return self.effective[key]


def hash_config(effective: dict) -> str:
    canonical = json.dumps(effective, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _reject_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} in config")
        seen[key] = value
    return seen


def parse_config_data(data: dict) -> RunConfig:
    """Validate an already-decoded config mapping."""
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    defaults: dict[str, Any] = {}
    for key in data:
        if key not in _TOP_SCHEMA_KEYS:
            raise ConfigError(
                f"unknown key {key!r}; accepted: {sorted(_TOP_SCHEMA_KEYS)}"
            )
    experiment = data.get("experiment")
    if experiment is None:
        raise ConfigError("config must name an 'experiment'")
    if experiment not in EXPERIMENT_KINDS:
        raise ConfigError(
            f"experiment = {experiment!r}; accepted: {EXPERIMENT_KINDS}"
        )
    normalization = data.get("normalization")
    if normalization is None:
        normalization = "max"
        defaults["normalization"] = "max"
    if normalization not in ("max", "raw"):
        raise ConfigError("normalization must be 'max' or 'raw'")

    effective: dict[str, Any] = {
        "experiment": experiment,
        "normalization": normalization,
    }
    if experiment == "phase-sweep":
        section = data.get("phase_sweep", {})
        effective["phase_sweep"] = _validate_section(
            "phase_sweep", section, _PHASE_SCHEMA, defaults
        )
    elif experiment == "ghost-scan":
        section = dict(data.get("ghost_scan", {}))
        geometry = section.pop("geometry", {})
        if not isinstance(geometry, dict):
            raise ConfigError("ghost_scan.geometry must be an object")
        validated = _validate_section("ghost_scan", section, _GHOST_SCHEMA, defaults)
        validated["geometry"] = _validate_section(
            "ghost_scan.geometry", geometry, _GHOST_GEOMETRY_SCHEMA, defaults
        )
        effective["ghost_scan"] = validated
    elif experiment == "modes":
        section = data.get("modes", {})
        effective["modes"] = _validate_section(
            "modes", section, _MODES_SCHEMA, defaults
        )
    else:
        section = data.get("oracle_check", {})
        effective["oracle_check"] = _validate_section(
            "oracle_check", section, _ORACLE_SCHEMA, defaults
        )

    cfg = RunConfig(experiment, normalization, effective, defaults)
    # construct the driver configs now so invariant violations surface as
    # config errors before any solve
    build_driver_config(cfg)
    return cfg


def parse_config(path: str) -> RunConfig:
    """Read and validate a JSON config file."""
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f, object_pairs_hook=_reject_duplicates)
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"config {path} is not valid JSON: {err}") from err
    return parse_config_data(data)


def default_config(experiment: str) -> RunConfig:
    return parse_config_data({"experiment": experiment})


def emit_config(cfg: RunConfig, path: str) -> None:
    """Write the effective config; parse_config(path) reproduces it."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(cfg.effective, f, indent=2, sort_keys=True)
        f.write("\n")


def build_driver_config(cfg: RunConfig):
    """Turn the validated mapping into the experiment driver's config."""
    if cfg.experiment == "phase-sweep":
        s = cfg.effective["phase_sweep"]
        try:
            driver = PhaseSweepConfig(
                domain_length=float(s["domain_length"]),
                cells=int(s["cells"]),
                launch_offset=float(s["launch_offset"]),
                center_frequency=float(s["center_frequency"]),
                spectral_std=float(s["spectral_std"]),
                bs_eps=float(s["bs_eps"]),
                bs_center=float(s["bs_center"]),
                bs_thickness=None
                if s["bs_thickness"] is None
                else float(s["bs_thickness"]),
                detector_position=float(s["detector_position"]),
                detection_time=None
                if s["detection_time"] is None
                else float(s["detection_time"]),
                photon_numbers=tuple(s["photon_numbers"]),
                theta_samples=int(s["theta_samples"]),
                theta_offset=float(s["theta_offset"]),
                eps_reg=float(s["eps_reg"]),
                den_floor_amp=float(s["den_floor_amp"]),
                coherent_mean_photons=float(s["coherent_mean_photons"]),
                omega_floor=None
                if s["omega_floor"] is None
                else float(s["omega_floor"]),
                normalization=cfg.normalization,
            )
        except ConfigError:
            raise
        # geometry-level invariants (detector clear of the slab) surface
        # before any solve; the map build is cheap
        from .experiments.phase import build_phase_map

        build_phase_map(driver)
        return driver
    if cfg.experiment == "ghost-scan":
        s = cfg.effective["ghost_scan"]
        g = s["geometry"]
        geometry = GhostGeometry(
            eps_slab=float(g["eps_slab"]),
            slit_width=float(g["slit_width"]),
            side_length=float(g["side_length"]),
            thickness=float(g["thickness"]),
            slab_center_x=float(g["slab_center_x"]),
            domain_x=float(g["domain_x"]),
            domain_y=float(g["domain_y"]),
            cells_x=int(g["cells_x"]),
            cells_y=int(g["cells_y"]),
        )
        if s["bucket_mode"] not in ("column", "point"):
            raise ConfigError("ghost_scan.bucket_mode must be 'column' or 'point'")
        return GhostScanConfig(
            geometry=geometry,
            center_frequency=float(s["center_frequency"]),
            fwhm_bandwidth=float(s["fwhm_bandwidth"]),
            transverse_std=float(s["transverse_std"]),
            launch_x=float(s["launch_x"]),
            bucket_x=float(s["bucket_x"]),
            pixel_x=float(s["pixel_x"]),
            detection_time=None
            if s["detection_time"] is None
            else float(s["detection_time"]),
            s_max=float(s["s_max"]),
            s_count=int(s["s_count"]),
            photon_numbers=tuple(s["photon_numbers"]),
            perturbations=tuple(float(p) for p in s["perturbations"]),
            theta=float(s["theta"]),
            eps_reg=float(s["eps_reg"]),
            den_floor_amp=float(s["den_floor_amp"]),
            bucket_mode=s["bucket_mode"],
            bucket_point_y=float(s["bucket_point_y"]),
            omega_floor=None
            if s["omega_floor"] is None
            else float(s["omega_floor"]),
            normalization=cfg.normalization,
        )
    # modes and oracle-check are handled directly by the CLI layer
    return dict(cfg.section())
