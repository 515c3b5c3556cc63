"""Command-line surface: modes | phase-sweep | ghost-scan | oracle-check.

Each subcommand reads an optional JSON config (defaults apply without one),
writes result files plus a manifest into the output directory, and maps
errors to exit codes: 2 config, 3 numerical, 4 I/O.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .config import (
    RunConfig,
    build_driver_config,
    default_config,
    emit_config,
    parse_config,
)
from .errors import ConfigError, NoonSimError
from .experiments.ghost import run_ghost_scan
from .experiments.phase import run_phase_sweep
from .fileio import emit_csv, emit_json, export_mode_basis, load_eps_csv
from .grid import Grid, PermittivityMap, uniform_map
from .modes import eigen_residual, solve_modes
from .operators import build_operators
from .oracle_suite import run_oracle_suite

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _pert_label(pert: float) -> str:
    if pert == 0.0:
        return "0"
    return f"{int(round(pert * 100)):+d}"


def _manifest_base(cfg: RunConfig) -> dict:
    return {
        "tool_version": __version__,
        "experiment": cfg.experiment,
        "config_hash": cfg.config_hash,
        "defaults_applied": cfg.defaults_applied,
    }


def _run_phase(cfg: RunConfig, outdir: str) -> dict:
    driver_cfg = build_driver_config(cfg)
    result = run_phase_sweep(driver_cfg)
    csv_path = os.path.join(outdir, "result_phase-sweep.csv")
    emit_csv(result, csv_path)
    meta = result.metadata
    manifest = _manifest_base(cfg)
    manifest.update(
        {
            "mode_count": meta["mode_count"],
            "eigen_residual": meta["eigen_residual"],
            "capture_fractions": meta["capture_fractions"],
            "overlap_gamma_abs": meta["overlap_gamma_abs"],
            "bs_thickness": meta["bs_thickness"],
            "detection_time": meta["detection_time"],
            "regularized_points": {
                str(n): [i for i, f in enumerate(flags) if f]
                for n, flags in meta["regularized"].items()
            },
            "timings": meta["timings"],
            "outputs": [os.path.basename(csv_path)],
        }
    )
    return manifest


def _run_ghost(cfg: RunConfig, outdir: str) -> dict:
    driver_cfg = build_driver_config(cfg)
    results = run_ghost_scan(driver_cfg)
    outputs = []
    per_pert = {}
    for res in results:
        label = _pert_label(res.metadata["perturbation"])
        csv_path = os.path.join(outdir, f"result_ghost-scan_pert{label}.csv")
        emit_csv(res, csv_path)
        outputs.append(os.path.basename(csv_path))
        per_pert[label] = {
            "mode_count": res.metadata["mode_count"],
            "eigen_residual": res.metadata["eigen_residual"],
            "capture_fractions": res.metadata["capture_fractions"],
            "detection_time": res.metadata["detection_time"],
            "regularized_points": {
                str(n): [i for i, f in enumerate(flags) if f]
                for n, flags in res.metadata["regularized"].items()
            },
            "timings": res.metadata["timings"],
        }
    manifest = _manifest_base(cfg)
    manifest.update({"perturbations": per_pert, "outputs": outputs})
    return manifest


def _run_modes(cfg: RunConfig, outdir: str) -> dict:
    section = cfg.section()
    t0 = time.perf_counter()
    if section["eps_csv"] is not None:
        eps = load_eps_csv(section["eps_csv"])
        if eps.ndim != section["dimension"]:
            raise ConfigError(
                f"modes.eps_csv is {eps.ndim}D but modes.dimension = "
                f"{section['dimension']}"
            )
        if eps.ndim == 1:
            grid = Grid(1, eps.shape, (section["domain_length"] / eps.shape[0],))
        else:
            grid = Grid(
                2,
                eps.shape,
                (
                    section["domain_x"] / eps.shape[0],
                    section["domain_y"] / eps.shape[1],
                ),
            )
        pmap = PermittivityMap(grid, eps)
    elif section["dimension"] == 1:
        grid = Grid(
            1, (section["cells"],), (section["domain_length"] / section["cells"],)
        )
        pmap = uniform_map(grid, section["eps"])
    else:
        grid = Grid(
            2,
            (section["cells_x"], section["cells_y"]),
            (
                section["domain_x"] / section["cells_x"],
                section["domain_y"] / section["cells_y"],
            ),
        )
        pmap = uniform_map(grid, section["eps"])
    ops = build_operators(pmap)
    floor = section["omega_floor"]
    basis = solve_modes(ops, None if floor is None else float(floor))
    residual = eigen_residual(ops, basis)
    omegas_path = os.path.join(outdir, "omegas.csv")
    modes_path = os.path.join(outdir, "modes.csv")
    export_mode_basis(basis, omegas_path, modes_path)
    manifest = _manifest_base(cfg)
    manifest.update(
        {
            "mode_count": basis.kept_count,
            "n_dof": basis.n_dof,
            "eigen_residual": residual,
            "omega_range": [float(basis.omegas[0]), float(basis.omegas[-1])],
            "timings": {"solve": time.perf_counter() - t0},
            "outputs": ["omegas.csv", "modes.csv"],
        }
    )
    return manifest


def _run_oracle_check(cfg: RunConfig, outdir: str) -> dict:
    section = cfg.section()
    report = run_oracle_suite(
        seed=section["seed"],
        draws=section["draws"],
        photon_numbers=tuple(section["photon_numbers"]),
        mode_counts=tuple(section["mode_counts"]),
    )
    tolerance = float(section["tolerance"])
    report["tolerance"] = tolerance
    report["pass"] = bool(report["max_relative_deviation"] < tolerance)
    emit_json(report, os.path.join(outdir, "oracle_report.json"))
    manifest = _manifest_base(cfg)
    manifest.update(
        {
            "max_relative_deviation": report["max_relative_deviation"],
            "pass": report["pass"],
            "timings": {"suite": report["elapsed_seconds"]},
            "outputs": ["oracle_report.json"],
        }
    )
    if not report["pass"]:
        raise NoonSimError(
            f"oracle deviation {report['max_relative_deviation']:.3e} exceeds "
            f"tolerance {tolerance:.1e}"
        )
    return manifest


_RUNNERS = {
    "phase-sweep": _run_phase,
    "ghost-scan": _run_ghost,
    "modes": _run_modes,
    "oracle-check": _run_oracle_check,
}


def run(cfg: RunConfig, outdir: str) -> None:
    """Execute a validated config: result files + manifest.json in outdir."""
    os.makedirs(outdir, exist_ok=True)
    t0 = time.perf_counter()
    manifest = _RUNNERS[cfg.experiment](cfg, outdir)
    manifest.setdefault("timings", {})["total"] = time.perf_counter() - t0
    emit_config(cfg, os.path.join(outdir, "config_effective.json"))
    emit_json(manifest, os.path.join(outdir, "manifest.json"))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="noonsim",
        description=(
            "Frequency-domain simulator for two-path multi-photon "
            "interference and coincidence imaging on dielectric grids"
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in _RUNNERS:
        p = sub.add_parser(kind, help=f"run the {kind} experiment")
        p.add_argument("--config", help="JSON config file (defaults if omitted)")
        p.add_argument("--out", default="out", help="output directory")
    args = parser.parse_args(argv)

    try:
        if args.config:
            cfg = parse_config(args.config)
            if cfg.experiment != args.command:
                raise ConfigError(
                    f"config is for {cfg.experiment!r}, subcommand is "
                    f"{args.command!r}"
                )
        else:
            cfg = default_config(args.command)
        run(cfg, args.out)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except NoonSimError as err:
        print(f"numerical error ({args.command}): {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
