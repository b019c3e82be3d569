"""Entropy currents and entropy production carried by heat and by single quanta.

Scalar formulas built from the constants go through
:func:`~qentropy.physconst.exact_ratio`, so they are correctly rounded.
The local field quantities (heat flux, densities) accept numpy arrays.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .physconst import (
    CODATA2018,
    ExactRatio,
    PhysicalConstants,
    check_finite,
    entropy_conductance_quantum,
    exact_prefactor,
    exact_ratio,
    require,
)


@dataclass(frozen=True)
class QuantumPacket:
    """A single energy quantum of frequency ``nu`` (Hz)."""

    nu: float
    const: PhysicalConstants = CODATA2018

    def __post_init__(self):
        check_finite(nu=self.nu)
        require(self.nu > 0, "packet frequency must be positive")

    @property
    def energy(self) -> float:
        return self.const.h * self.nu


@dataclass(frozen=True)
class EntropyBalance:
    """dS/dt = -I_S + Sigma; ``dS_dt`` is derived and cannot be set."""

    I_S: float
    Sigma: float
    dS_dt: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "dS_dt", -self.I_S + self.Sigma)


def heat_flux(lambda_th, grad_T):
    """Fourier's law, J_q = -lambda grad T (W/m^2)."""
    require(np.all(np.asarray(lambda_th) > 0), "thermal conductivity must be positive")
    return -lambda_th * grad_T


def entropy_current_density(J_q, T):
    require(np.all(np.asarray(T) > 0), "temperature must be positive")
    return J_q / T


def entropy_production_density(grad_T, T, lambda_th):
    """Local entropy production lambda (grad T / T)^2, never negative."""
    require(np.all(np.asarray(T) > 0), "temperature must be positive")
    require(np.all(np.asarray(lambda_th) > 0), "thermal conductivity must be positive")
    return lambda_th * (grad_T / T) ** 2


def pendry_max_heat_rate(T: float, const: PhysicalConstants = CODATA2018) -> float:
    """Upper bound on single-channel heat flow, pi k_B^2 T^2 / (3 hbar) (W)."""
    check_finite(T=T)
    require(T >= 0, "temperature must be non-negative")
    return exact_ratio([math.pi, const.k_B, const.k_B, T, T], [3, const.hbar])


def pendry_max_entropy_rate(T: float, const: PhysicalConstants = CODATA2018) -> float:
    """Upper bound on single-channel entropy flow, pi k_B^2 T / (3 hbar) (W/K).

    Twice the thermal conductance quantum at the same temperature.
    """
    check_finite(T=T)
    require(T >= 0, "temperature must be non-negative")
    return exact_ratio([math.pi, const.k_B, const.k_B, T], [3, const.hbar])


def lorenz_number(const: PhysicalConstants = CODATA2018) -> float:
    """Sommerfeld value (pi^2/3)(k_B/e)^2 in W Ohm / K^2."""
    return exact_ratio([math.pi, math.pi, const.k_B, const.k_B], [3, const.e, const.e])


def wiedemann_franz_lambda(sigma_el: float, T: float, const: PhysicalConstants = CODATA2018) -> float:
    """Electronic thermal conductivity from the electric one."""
    check_finite(sigma_el=sigma_el, T=T)
    require(sigma_el >= 0 and T >= 0, "conductivity and temperature must be non-negative")
    return exact_ratio([math.pi, math.pi, const.k_B, const.k_B, T, sigma_el],
                       [3, const.e, const.e])


def entropy_current_from_energy(epsilon: float, const: PhysicalConstants = CODATA2018) -> float:
    """Entropy current of a packet of energy ``epsilon`` with epsilon = k_B dT."""
    check_finite(epsilon=epsilon)
    require(epsilon > 0, "packet energy must be positive")
    return exact_ratio([math.pi, math.pi, const.k_B, epsilon], [3, const.h])


def entropy_current_from_packet(packet: QuantumPacket) -> float:
    """pi^2 k_B nu / 3, independent of temperature."""
    return exact_ratio([exact_prefactor((math.pi, math.pi, packet.const.k_B), (3,)), packet.nu])


def packet_entropy_production(packet: QuantumPacket, T: float) -> float:
    """(1/T)(pi^2/3) h nu^2 in W/K."""
    check_finite(T=T)
    require(T > 0, "temperature must be positive")
    return exact_ratio([production_numerator(packet)], [T])


def production_numerator(packet: QuantumPacket) -> ExactRatio:
    """Unrounded (pi^2/3) h nu^2, shared by the per-temperature productions."""
    pre = exact_prefactor((math.pi, math.pi, packet.const.h), (3,))
    p, q = packet.nu.as_integer_ratio()
    return ExactRatio(pre.p * p * p, pre.q * q * q)


def transferred_entropy(phi: float, phi0: float, const: PhysicalConstants = CODATA2018) -> float:
    """Entropy moved by a potential drop phi - phi0 (K s), in J/K."""
    return entropy_conductance_quantum(const) * (phi - phi0)


def entropy_balance(I_S: float, Sigma: float) -> EntropyBalance:
    return EntropyBalance(I_S=I_S, Sigma=Sigma)
