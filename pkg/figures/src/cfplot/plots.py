"""Fringe and banded-scan figures from sweep CSVs.

Each plot function is a pure function of its input files: it returns the
plotted arrays (used by the tests) and optionally renders them to an image.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .io import SchemaError, load_fringe_csv, load_ghost_csv  # noqa: E402


@dataclass(frozen=True)
class PlotJob:
    """One figure: input CSVs, output image path, kind, style options."""

    inputs: tuple[str, ...]
    output: str
    kind: str  # "fringes" | "ghost"
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("fringes", "ghost"):
            raise ValueError(f"unknown plot kind {self.kind!r}")
        if not self.inputs:
            raise ValueError("plot job needs at least one input CSV")


def prep_fringes(path: str) -> dict:
    """Arrays for a fringe figure, restricted to theta in [0, 2 pi]."""
    theta, curves, classical = load_fringe_csv(path)
    mask = (theta >= 0.0) & (theta <= 2.0 * np.pi)
    if not np.any(mask):
        raise SchemaError(f"{path}: no samples inside [0, 2 pi]")
    return {
        "theta": theta[mask],
        "curves": {n: c[mask] for n, c in curves.items()},
        "classical": classical[mask],
    }


def plot_fringes(job: PlotJob) -> dict:
    """Fringe figure: one curve per photon number plus the classical
    baseline; normalized y in [0, 1]."""
    if len(job.inputs) != 1:
        raise SchemaError("fringes takes exactly one phase-sweep CSV")
    data = prep_fringes(job.inputs[0])
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for n, curve in data["curves"].items():
        ax.plot(data["theta"], curve, label=f"N = {n}", linewidth=1.4)
    ax.plot(
        data["theta"],
        data["classical"],
        "k--",
        label="classical",
        linewidth=1.2,
    )
    ax.set_xlim(0.0, 2.0 * np.pi)
    ax.set_ylim(-0.02, 1.05)
    ax.set_xlabel(r"phase $\theta$ (rad)")
    ax.set_ylabel("normalized CF")
    ax.legend(loc="upper right", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(job.output, dpi=job.options.get("dpi", 150))
    plt.close(fig)
    return data


def prep_ghost(paths: tuple[str, ...]) -> dict:
    """Arrays for a banded scan figure from (minus, base, plus) CSVs.

    The band is the pointwise min/max envelope of the perturbed curves; the
    scan grids of all files must coincide.
    """
    if len(paths) != 3:
        raise SchemaError("ghost takes exactly three CSVs: minus, base, plus")
    s_ref = None
    loaded = []
    for path in paths:
        s, curves, footprint = load_ghost_csv(path)
        if s_ref is None:
            s_ref = s
        elif s.shape != s_ref.shape or not np.array_equal(s, s_ref):
            raise SchemaError(f"{path}: scan grid differs from {paths[0]}")
        loaded.append((curves, footprint))
    (c_minus, _), (c_base, fp_base), (c_plus, _) = loaded
    keys = sorted(c_base)
    if sorted(c_minus) != keys or sorted(c_plus) != keys:
        raise SchemaError("perturbation files carry different photon numbers")
    bands = {
        n: (
            np.minimum(c_minus[n], c_plus[n]),
            np.maximum(c_minus[n], c_plus[n]),
        )
        for n in keys
    }
    return {
        "s": s_ref,
        "base": c_base,
        "bands": bands,
        "footprint": fp_base,
    }


def plot_ghost(job: PlotJob) -> dict:
    """Banded scan figure: solid unperturbed curves, min/max shading from
    the +-10% files, footprint reference as a step line."""
    data = prep_ghost(job.inputs)
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for i, (n, base) in enumerate(sorted(data["base"].items())):
        color = colors[i % len(colors)]
        lo, hi = data["bands"][n]
        ax.fill_between(data["s"], lo, hi, color=color, alpha=0.25, linewidth=0)
        ax.plot(data["s"], base, color=color, label=f"N = {n}", linewidth=1.4)
    ax.step(
        data["s"],
        data["footprint"],
        where="mid",
        color="green",
        linewidth=1.0,
        label="object footprint",
    )
    ax.set_xlabel("scan position s (m)")
    ax.set_ylabel("normalized CF")
    ax.legend(loc="upper right", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(job.output, dpi=job.options.get("dpi", 150))
    plt.close(fig)
    return data
