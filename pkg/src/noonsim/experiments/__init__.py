"""End-to-end experiment drivers and their geometry/metric helpers."""

from .beamsplitter import calibrate_beamsplitter, slab_power_transmission
from .ghost import (
    GhostGeometry,
    GhostScanConfig,
    build_ghost_geometry,
    run_ghost_scan,
)
from .metrics import edge_sharpness, estimate_fringe_period
from .phase import PhaseSweepConfig, run_phase_sweep
from .sweep import SweepResult

__all__ = [
    "GhostGeometry",
    "GhostScanConfig",
    "PhaseSweepConfig",
    "SweepResult",
    "build_ghost_geometry",
    "calibrate_beamsplitter",
    "edge_sharpness",
    "estimate_fringe_period",
    "run_ghost_scan",
    "run_phase_sweep",
    "slab_power_transmission",
]
