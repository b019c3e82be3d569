"""Ballistic transport through a 2D quantum wire.

Transverse confinement in a wire of width ``w`` splits the electron
spectrum into subbands; each open subband contributes one conductance
quantum, which produces the familiar conductance staircase as the wire
is widened.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .physconst import (
    CODATA2018,
    ELECTRON_MASS,
    PhysicalConstants,
    check_finite,
    electric_conductance_quantum,
    require,
)

# relative window inside which 2w/lambda_F is snapped to the nearest integer
_SNAP = 8 * np.finfo(float).eps


@dataclass(frozen=True)
class WireGeometry:
    w: float
    L: float = 1e-6

    def __post_init__(self):
        check_finite(w=self.w, L=self.L)
        require(self.w > 0 and self.L > 0, "wire width and length must be positive")


@dataclass(frozen=True)
class SubbandSpectrum:
    mass: float
    w: float
    levels: Tuple[Tuple[int, float], ...]

    def __post_init__(self):
        energies = [e for _, e in self.levels]
        require(all(b > a for a, b in zip(energies, energies[1:])),
                "transverse energies must increase with j")


def _transverse_energy(j, w, mass, const):
    return (const.hbar * math.pi * j) ** 2 / (2 * mass * w * w)


def subband_energy(k: float, j: int, geom: WireGeometry, mass: float = ELECTRON_MASS,
                   const: PhysicalConstants = CODATA2018) -> float:
    """Energy of the state with longitudinal wavenumber ``k`` in subband ``j`` (J)."""
    require(int(j) == j and j >= 1, "subband index j must be a positive integer")
    require(mass > 0, "mass must be positive")
    return (const.hbar * k) ** 2 / (2 * mass) + _transverse_energy(j, geom.w, mass, const)


def subband_spectrum(geom: WireGeometry, n_levels: int, mass: float = ELECTRON_MASS,
                     const: PhysicalConstants = CODATA2018) -> SubbandSpectrum:
    require(n_levels >= 1, "need at least one level")
    require(mass > 0, "mass must be positive")
    levels = tuple((j, _transverse_energy(j, geom.w, mass, const)) for j in range(1, n_levels + 1))
    return SubbandSpectrum(mass=mass, w=geom.w, levels=levels)


def channel_counts(w, lambda_F: float) -> np.ndarray:
    """Vectorized ``floor(2w / lambda_F)``.

    Ratios within a few ulp of an integer are snapped to it so that the
    plateau edges do not depend on how (w, lambda_F) happen to be scaled.
    """
    w = np.asarray(w, dtype=float)
    require(lambda_F > 0 and np.all(w > 0), "width and Fermi wavelength must be positive")
    ratio = 2.0 * w / lambda_F
    nearest = np.rint(ratio)
    snapped = np.abs(ratio - nearest) <= _SNAP * nearest
    n = np.where(snapped, nearest, np.floor(ratio))
    return np.maximum(n, 0).astype(np.int64)


def channel_count(w: float, lambda_F: float) -> int:
    """Number of open channels in a wire of width ``w`` at Fermi wavelength ``lambda_F``."""
    check_finite(w=w, lambda_F=lambda_F)
    return int(channel_counts(w, lambda_F))


def density_of_states_per_channel(v_j: float, const: PhysicalConstants = CODATA2018) -> float:
    """Spin-degenerate 1D density of states 2/(h v_j), per J per m."""
    check_finite(v_j=v_j)
    require(v_j > 0, "velocity must be positive")
    return 2.0 / (const.h * v_j)


def total_current(N: int, V: float, const: PhysicalConstants = CODATA2018,
                  spin_degeneracy: int = 2) -> float:
    require(int(N) == N and N >= 0, "channel count must be a non-negative integer")
    return electric_conductance_quantum(const, spin_degeneracy) * int(N) * V


def conductance_staircase(w_min: float, w_max: float, steps: int, lambda_F: float,
                          const: PhysicalConstants = CODATA2018,
                          spin_degeneracy: int = 2) -> Tuple[np.ndarray, np.ndarray]:
    """Sweep the wire width and return ``(w, G)`` arrays.

    G only takes values N * G0 with G0 the conductance quantum.
    """
    check_finite(w_min=w_min, w_max=w_max, lambda_F=lambda_F)
    require(0 < w_min < w_max, "need 0 < w_min < w_max")
    require(int(steps) == steps and steps >= 2, "steps must be an integer >= 2")
    require(lambda_F > 0, "Fermi wavelength must be positive")
    w = np.linspace(w_min, w_max, int(steps))
    G0 = electric_conductance_quantum(const, spin_degeneracy)
    return w, channel_counts(w, lambda_F) * G0
