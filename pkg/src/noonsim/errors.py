"""Exception hierarchy shared by all noonsim modules.

Exit-code mapping used by the CLI:
  ConfigError -> 2, NumericalError and subclasses -> 3, OS/IO errors -> 4.
"""


class NoonSimError(Exception):
    """Base class for all errors raised by noonsim."""


class ConfigError(NoonSimError):
    """Invalid configuration: bad key, bad type, or violated invariant."""


class DimensionMismatchError(NoonSimError):
    """Operand built for a different grid dimensionality."""


class GeometryError(NoonSimError):
    """Geometry that cannot be realized on the requested grid."""


class NumericalError(NoonSimError):
    """Numerical failure inside a solver or evaluation."""


class NotPositiveSemidefiniteError(NumericalError):
    """Stiffness spectrum has an eigenvalue below the clip window."""


class ProjectionError(NumericalError):
    """Wavepacket projection failed or captured too little of the field."""


class CalibrationError(NumericalError):
    """Beam-splitter calibration has no solution in the search bracket."""


class OracleSizeError(NoonSimError):
    """Ladder-operator sequence exceeds the brute-force oracle guard."""


class IndeterminateCFError(NumericalError):
    """Correlation-function denominator vanished outside the 0/0 window."""
