"""Figure generation for simulator sweep CSVs (no physics recomputation)."""

__version__ = "0.1.0"

from .io import SchemaError, load_fringe_csv, load_ghost_csv
from .plots import PlotJob, plot_fringes, plot_ghost, prep_fringes, prep_ghost

__all__ = [
    "PlotJob",
    "SchemaError",
    "__version__",
    "load_fringe_csv",
    "load_ghost_csv",
    "plot_fringes",
    "plot_ghost",
    "prep_fringes",
    "prep_ghost",
]
