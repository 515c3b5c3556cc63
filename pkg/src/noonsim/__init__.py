"""noonsim: frequency-domain quantum-optics simulation on dielectric grids.

Builds discrete stiffness/mass operators for 1D and 2D permittivity maps,
solves the generalized Hermitian eigenproblem for normal modes, constructs
quasi-monochromatic wavepacket states, and evaluates N-th order coincidence
correlation functions for two-path N-photon states both in closed form and
via a brute-force contraction oracle.

Units: c = 1 and hbar = 1 throughout.  Frequencies are stored in rad/m,
times in meters; the normalized correlation function is a dimensionless
ratio, so no physical constants enter the numerics.
"""

__version__ = "0.1.0"

from .correlation import (
    CFComponents,
    LadderForm,
    coherent_baseline,
    noon_cf,
    noon_cf_oracle,
    vacuum_expectation,
)
from .grid import Grid, PermittivityMap, uniform_map
from .modes import ModeBasis, default_omega_floor, field_coefficient, solve_modes
from .operators import (
    DiscreteOperators,
    build_operators,
    build_operators_1d,
    build_operators_2d_tmz,
)
from .packets import (
    DetectorSpec,
    SpectralAmplitudes,
    WavepacketSpec,
    detector_amplitude,
    overlap,
    packet_profile,
    project_packet,
    project_packets,
    reconstruct_packet,
)
from .states import CoherentStateSpec, NoonStateSpec

__all__ = [
    "CFComponents",
    "CoherentStateSpec",
    "DetectorSpec",
    "DiscreteOperators",
    "Grid",
    "LadderForm",
    "ModeBasis",
    "NoonStateSpec",
    "PermittivityMap",
    "SpectralAmplitudes",
    "WavepacketSpec",
    "__version__",
    "build_operators",
    "build_operators_1d",
    "build_operators_2d_tmz",
    "coherent_baseline",
    "default_omega_floor",
    "detector_amplitude",
    "field_coefficient",
    "noon_cf",
    "noon_cf_oracle",
    "overlap",
    "packet_profile",
    "project_packet",
    "project_packets",
    "reconstruct_packet",
    "solve_modes",
    "uniform_map",
    "vacuum_expectation",
]
