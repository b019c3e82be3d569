"""Fundamental constants and the conductance quanta derived from them.

All values are SI. The defaults are the CODATA 2018 exact defined values,
so every derived number below is reproducible bit-for-bit.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Union

Number = Union[float, int, Fraction, "ExactRatio"]

#: Electron rest mass (kg), CODATA 2018. Not exact, but only used as a default.
ELECTRON_MASS = 9.1093837015e-31


def exact_ratio(numerator: Iterable[Number], denominator: Iterable[Number] = ()) -> float:
    """Evaluate prod(numerator) / prod(denominator) exactly and round once.

    Every float is a dyadic rational, so the products are carried out on
    Python integers and the final ``int / int`` division is correctly
    rounded. Algebraically equal formulas therefore give results at most
    one ulp apart regardless of operation order.
    """
    num, den = 1, 1
    for f in numerator:
        p, q = f.as_integer_ratio()
        num *= p
        den *= q
    for f in denominator:
        p, q = f.as_integer_ratio()
        num *= q
        den *= p
    if den == 0:
        raise ZeroDivisionError("zero factor in denominator")
    return num / den


class ExactRatio(NamedTuple):
    """Integer pair p/q usable as an :func:`exact_ratio` factor."""

    p: int
    q: int

    def as_integer_ratio(self):
        return self.p, self.q


def exact_difference(a: Number, b: Number) -> ExactRatio:
    """a - b with no rounding."""
    pa, qa = a.as_integer_ratio()
    pb, qb = b.as_integer_ratio()
    return ExactRatio(pa * qb - pb * qa, qa * qb)


def exact_sum(a: Number, b: Number) -> ExactRatio:
    pa, qa = a.as_integer_ratio()
    pb, qb = b.as_integer_ratio()
    return ExactRatio(pa * qb + pb * qa, qa * qb)


@lru_cache(maxsize=None)
def exact_prefactor(numerator: tuple, denominator: tuple = ()) -> ExactRatio:
    """Unrounded product of constant factors, cached for reuse in hot paths."""
    num, den = 1, 1
    for f in numerator:
        p, q = f.as_integer_ratio()
        num, den = num * p, den * q
    for f in denominator:
        p, q = f.as_integer_ratio()
        num, den = num * q, den * p
    return ExactRatio(num, den)


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def check_finite(**values: float) -> None:
    for name, v in values.items():
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class PhysicalConstants:
    """Immutable record of k_B (J/K), h (J s), e (C) and the derived hbar."""

    k_B: float = 1.380649e-23
    h: float = 6.62607015e-34
    e: float = 1.602176634e-19
    hbar: float = field(init=False)

    def __post_init__(self):
        for name in ("k_B", "h", "e"):
            v = float(getattr(self, name))
            require(math.isfinite(v) and v > 0, f"{name} must be positive and finite")
            object.__setattr__(self, name, v)
        object.__setattr__(self, "hbar", self.h / (2 * math.pi))


CODATA2018 = PhysicalConstants()


def electric_conductance_quantum(const: PhysicalConstants = CODATA2018, spin_degeneracy: int = 2) -> float:
    """Conductance of one ballistic channel, ``g e^2 / h`` (S).

    ``spin_degeneracy=2`` gives the electronic 2e^2/h; 1 gives e^2/h.
    """
    require(spin_degeneracy in (1, 2), "spin_degeneracy must be 1 or 2")
    return exact_ratio([spin_degeneracy, const.e, const.e], [const.h])


def thermal_conductance_quantum(T: float, const: PhysicalConstants = CODATA2018) -> float:
    """Single-mode thermal conductance pi^2 k_B^2 T / (3h) in W/K."""
    check_finite(T=T)
    require(T >= 0, "temperature must be non-negative")
    return exact_ratio([math.pi, math.pi, const.k_B, const.k_B, T], [3, const.h])


def entropy_conductance_quantum(const: PhysicalConstants = CODATA2018) -> float:
    """Temperature-independent entropy conductance pi^2 k_B^2 / (3h), J K^-2 s^-1."""
    return exact_ratio([math.pi, math.pi, const.k_B, const.k_B], [3, const.h])


def critical_temperature(v: float, w: float, const: PhysicalConstants = CODATA2018) -> float:
    """Temperature below which only the lowest transverse modes of a width-``w``
    waveguide with sound speed ``v`` are populated: pi hbar v / (k_B w)."""
    check_finite(v=v, w=w)
    require(v > 0 and w > 0, "speed and width must be positive")
    return exact_ratio([math.pi, const.hbar, v], [const.k_B, w])


def constants_table(const: PhysicalConstants = CODATA2018):
    """Rows ``(name, value, unit)`` for every constant and quantum."""
    return [
        ("k_B", const.k_B, "J/K"),
        ("h", const.h, "J*s"),
        ("hbar", const.hbar, "J*s"),
        ("e", const.e, "C"),
        ("electric_conductance_quantum", electric_conductance_quantum(const), "S"),
        ("electric_conductance_quantum_single_spin", electric_conductance_quantum(const, 1), "S"),
        ("thermal_conductance_quantum_per_K", thermal_conductance_quantum(1.0, const), "W/K^2"),
        ("entropy_conductance_quantum", entropy_conductance_quantum(const), "J/(K^2*s)"),
    ]
