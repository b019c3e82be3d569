"""Quantized conductances, entropy currents and entropy production of single
energy quanta, with a variational (potential) formulation of heat conduction."""

from .physconst import (
    CODATA2018,
    PhysicalConstants,
    critical_temperature,
    electric_conductance_quantum,
    entropy_conductance_quantum,
    thermal_conductance_quantum,
)
from .entropyq import QuantumPacket
from .heatfield import MaterialParams, NumericalRangeError, SpectralPotentialField, TemperatureField
from .transfer import SpinSystem, Subdomain, TransferLedger

__version__ = "0.1.0"
