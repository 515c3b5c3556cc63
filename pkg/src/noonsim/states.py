"""Quantum state specifications built from wavepacket amplitudes."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .packets import SpectralAmplitudes


@dataclass(frozen=True)
class NoonStateSpec:
    """Two-path N-photon state: all N photons ride the left or the right
    wavepacket, with a phase factor e^{i N theta} on the left branch.

    N must be even so each of the two detectors performs N/2
    photodetections.
    """

    n_photons: int
    g_left: SpectralAmplitudes
    g_right: SpectralAmplitudes
    theta: float = 0.0

    def __post_init__(self):
        n = int(self.n_photons)
        if n <= 0 or n % 2 != 0:
            raise ConfigError(f"photon number must be a positive even integer, got {n}")
        if len(self.g_left) != len(self.g_right):
            raise ConfigError("left/right amplitudes must share one mode basis")
        object.__setattr__(self, "n_photons", n)
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def fold(self) -> int:
        """Photodetections per detector under the equal-split convention."""
        return self.n_photons // 2


@dataclass(frozen=True)
class CoherentStateSpec:
    """Classical-limit two-path coherent state with a phase on the left arm."""

    mean_photon_number: float
    g_left: SpectralAmplitudes
    g_right: SpectralAmplitudes
    theta: float = 0.0

    def __post_init__(self):
        if not (self.mean_photon_number > 0.0):
            raise ConfigError("mean_photon_number must be positive")
        if len(self.g_left) != len(self.g_right):
            raise ConfigError("left/right amplitudes must share one mode basis")
        object.__setattr__(self, "mean_photon_number", float(self.mean_photon_number))
        object.__setattr__(self, "theta", float(self.theta))
