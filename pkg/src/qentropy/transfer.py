"""Entropy bookkeeping for a single quantum passed between two subdomains,
and the spin-lattice relaxation special case.

Rates are instantaneous; nothing here integrates in time.
"""

import math
from dataclasses import dataclass

from .entropyq import QuantumPacket, entropy_current_from_packet, production_numerator
from .physconst import (
    CODATA2018,
    ExactRatio,
    PhysicalConstants,
    check_finite,
    exact_difference,
    exact_prefactor,
    exact_ratio,
    exact_sum,
    require,
)


@dataclass(frozen=True)
class Subdomain:
    label: str
    T: float

    def __post_init__(self):
        check_finite(T=self.T)
        require(self.T > 0, f"subdomain {self.label!r}: temperature must be positive")


@dataclass(frozen=True)
class TransferLedger:
    """Per-subdomain entropy rates (W/K) for one emitted and absorbed packet.

    ``emitter_*`` refers to the subdomain that creates the packet and
    ``absorber_*`` to the one that absorbs it. Currents are stored with
    the sign they carry into that subdomain's dS/dt.
    """

    emitter_current: float
    emitter_production: float
    absorber_current: float
    absorber_production: float
    emitter_rate: float
    absorber_rate: float
    net_rate: float

    def rows(self):
        return [
            ("emitter_current", self.emitter_current),
            ("emitter_production", self.emitter_production),
            ("emitter_rate", self.emitter_rate),
            ("absorber_current", self.absorber_current),
            ("absorber_production", self.absorber_production),
            ("absorber_rate", self.absorber_rate),
            ("net_rate", self.net_rate),
        ]


def net_entropy_rate(T_emitter: float, T_absorber: float, nu: float,
                     const: PhysicalConstants = CODATA2018) -> float:
    """(1/T_absorber - 1/T_emitter)(pi^2/3) h nu^2, with an exact sign.

    Written as (T_e - T_a)/(T_e T_a) and evaluated exactly so the sign
    follows the temperature ordering even for nearly equal temperatures.
    """
    num = production_numerator(QuantumPacket(nu, const))
    return _net_rate(num, T_emitter, T_absorber)


def _net_rate(num: ExactRatio, T_emitter: float, T_absorber: float) -> float:
    return exact_ratio([num, exact_difference(T_emitter, T_absorber)], [T_emitter, T_absorber])


def single_packet_transfer(hot: Subdomain, cold: Subdomain, packet: QuantumPacket) -> TransferLedger:
    """Ledger for a packet created in ``hot`` and absorbed in ``cold``.

    No temperature ordering is enforced; pass the colder subdomain as
    ``hot`` to book a cold-to-hot emission.
    """
    current = entropy_current_from_packet(packet)
    # Subdomain already guarantees finite positive temperatures
    num = production_numerator(packet)
    p_emit = exact_ratio([num], [hot.T])
    p_absorb = exact_ratio([num], [cold.T])
    # creating the quantum books a negative production in the emitter
    emitter_current, emitter_production = -current, -p_emit
    absorber_current, absorber_production = current, p_absorb
    return TransferLedger(
        emitter_current=emitter_current,
        emitter_production=emitter_production,
        absorber_current=absorber_current,
        absorber_production=absorber_production,
        emitter_rate=emitter_current + emitter_production,
        absorber_rate=absorber_current + absorber_production,
        net_rate=_net_rate(num, hot.T, cold.T),
    )


def second_law_check(ledger: TransferLedger) -> bool:
    return ledger.net_rate >= 0


def reciprocal_exchange(hot: Subdomain, cold: Subdomain, nu_hot_to_cold: float,
                        nu_cold_to_hot: float, const: PhysicalConstants = CODATA2018) -> float:
    """Net entropy rate when each side emits one packet toward the other.

    Sum of the two single-packet rates in factored form,
    (pi^2/3) h (1/T_c - 1/T_h)(nu_h^2 - nu_c^2); it is non-negative exactly
    when the hotter side emits the higher frequency.
    """
    require(hot.T != cold.T, "reciprocal exchange needs distinct temperatures")
    check_finite(nu_hot_to_cold=nu_hot_to_cold, nu_cold_to_hot=nu_cold_to_hot)
    require(nu_hot_to_cold > 0 and nu_cold_to_hot > 0, "frequencies must be positive")
    nh, nc = nu_hot_to_cold, nu_cold_to_hot
    dT = exact_difference(hot.T, cold.T)
    pre = exact_prefactor((math.pi, math.pi, const.h), (3,))
    return exact_ratio([pre, dT, exact_difference(nh, nc), exact_sum(nh, nc)], [hot.T, cold.T])


@dataclass(frozen=True)
class SpinSystem:
    """Nuclear or electron spin with gyromagnetic ratio ``gamma`` (rad s^-1 T^-1)
    in a static field ``B0`` (T), coupled to a lattice at ``T`` (K)."""

    gamma: float
    B0: float
    T: float

    def __post_init__(self):
        check_finite(gamma=self.gamma, B0=self.B0, T=self.T)
        require(self.gamma != 0, "gyromagnetic ratio must be non-zero")
        require(self.B0 >= 0, "field must be non-negative")
        require(self.T > 0, "temperature must be positive")


@dataclass(frozen=True)
class SpinRelaxationReport:
    nu: float
    I_S: float
    Sigma: float
    # the same quantities written directly in gamma and B0
    I_S_from_field: float
    Sigma_from_field: float


def angular_larmor_frequency(spin: SpinSystem) -> float:
    return abs(spin.gamma) * spin.B0


def larmor_frequency(spin: SpinSystem) -> float:
    """|gamma| B0 / (2 pi) in Hz; the sign of gamma never enters."""
    return exact_ratio([abs(spin.gamma), spin.B0], [2, math.pi])


def zeeman_splitting(spin: SpinSystem, const: PhysicalConstants = CODATA2018) -> float:
    """Level spacing |gamma| hbar B0 in J, with hbar taken as h/(2 pi)."""
    return exact_ratio([abs(spin.gamma), const.h, spin.B0], [2, math.pi])


def spin_relaxation_report(spin: SpinSystem, const: PhysicalConstants = CODATA2018) -> SpinRelaxationReport:
    """Entropy current and production of one spin flip at the Larmor frequency.

    Both quantities are evaluated twice: through the frequency and directly
    from gamma and B0. The first current is exactly what
    :func:`entropy_current_from_packet` returns for the Larmor packet.
    """
    g, B = abs(spin.gamma), spin.B0
    nu = larmor_frequency(spin)
    if nu > 0:
        I_S = entropy_current_from_packet(QuantumPacket(nu, const))
    else:
        I_S = 0.0
    # nu kept as the exact ratio g B / (2 pi) so the square adds no rounding
    Sigma = exact_ratio([math.pi, math.pi, const.h, g, B, g, B], [3, spin.T, 2, math.pi, 2, math.pi])
    I_S_field = exact_ratio([math.pi, const.k_B, g, B], [6])
    Sigma_field = exact_ratio([const.h, g, g, B, B], [12, spin.T])
    return SpinRelaxationReport(nu=nu, I_S=I_S, Sigma=Sigma,
                                I_S_from_field=I_S_field, Sigma_from_field=Sigma_field)
