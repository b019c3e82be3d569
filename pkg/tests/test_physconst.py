import dataclasses
import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qentropy.physconst import (
    CODATA2018,
    PhysicalConstants,
    critical_temperature,
    electric_conductance_quantum,
    entropy_conductance_quantum,
    exact_ratio,
    thermal_conductance_quantum,
)

mpmath.mp.dps = 40
KB, H, E = (mpmath.mpf(s) for s in ("1.380649e-23", "6.62607015e-34", "1.602176634e-19"))


def test_codata_values():
    assert CODATA2018.h == 6.62607015e-34
    assert CODATA2018.e == 1.602176634e-19
    assert CODATA2018.k_B == 1.380649e-23


def test_hbar_within_one_ulp():
    assert abs(CODATA2018.hbar * 2 * math.pi - CODATA2018.h) <= math.ulp(CODATA2018.h)


def test_constants_are_immutable():
    with pytest.raises(dataclasses.FrozenInstanceError):
        CODATA2018.h = 1.0


@pytest.mark.parametrize("field", ["k_B", "h", "e"])
def test_constants_must_be_positive(field):
    with pytest.raises(ValueError):
        PhysicalConstants(**{field: -1.0})


def test_electric_quantum():
    g0 = electric_conductance_quantum()
    assert g0 == pytest.approx(7.75e-5, rel=1e-3)
    assert g0 == pytest.approx(float(2 * E ** 2 / H), rel=1e-15)
    assert g0 == pytest.approx(7.7480917e-5, rel=1e-8)
    assert g0 / electric_conductance_quantum(spin_degeneracy=1) == 2.0


def test_thermal_quantum():
    assert thermal_conductance_quantum(1.0) == pytest.approx(9.46e-13, rel=1e-3)
    assert thermal_conductance_quantum(0.0) == 0.0
    assert thermal_conductance_quantum(0.080) == pytest.approx(7.57e-14, rel=1e-3)
    assert thermal_conductance_quantum(0.080) == pytest.approx(0.080 * thermal_conductance_quantum(1.0), rel=1e-15)
    with pytest.raises(ValueError):
        thermal_conductance_quantum(-1.0)


def test_entropy_quantum():
    lam_s = entropy_conductance_quantum()
    assert lam_s == pytest.approx(9.46e-13, rel=1e-3)
    assert lam_s == pytest.approx(float(mpmath.pi ** 2 * KB ** 2 / (3 * H)), rel=1e-15)
    for T in (0.1, 1.0, 300.0):
        assert thermal_conductance_quantum(T) / T == pytest.approx(lam_s, rel=2e-16)
    assert 16 * lam_s * 1.0 == pytest.approx(1.514e-11, rel=1e-3)


def test_pure_calls_bit_identical():
    assert electric_conductance_quantum() == electric_conductance_quantum()
    assert entropy_conductance_quantum() == entropy_conductance_quantum()


def test_critical_temperature():
    tc = critical_temperature(6000.0, 200e-9)
    oracle = float(mpmath.pi * (H / (2 * mpmath.pi)) * 6000 / (KB * mpmath.mpf("200e-9")))
    assert tc == pytest.approx(oracle, rel=1e-15)
    assert tc == pytest.approx(0.720, abs=5e-4)
    assert abs(tc - 0.8) / 0.8 <= 0.15
    assert critical_temperature(6000.0, 400e-9) == pytest.approx(tc / 2, rel=1e-15)
    for bad in [(0, 1e-7), (6000, 0), (-1, 1e-7)]:
        with pytest.raises(ValueError):
            critical_temperature(*bad)


@given(T=st.floats(1e-6, 1e6), a=st.floats(1e-3, 1e3))
def test_thermal_quantum_homogeneous(T, a):
    assert thermal_conductance_quantum(a * T) == pytest.approx(a * thermal_conductance_quantum(T), rel=1e-15)


@given(st.lists(st.floats(1e-30, 1e30), min_size=1, max_size=6),
       st.lists(st.floats(1e-30, 1e30), max_size=6))
def test_exact_ratio_is_correctly_rounded(num, den):
    from fractions import Fraction
    ref = Fraction(1)
    for x in num:
        ref *= Fraction(x)
    for x in den:
        ref /= Fraction(x)
    assert exact_ratio(num, den) == float(ref)


def test_perturbed_constants_propagate():
    doubled = PhysicalConstants(h=2 * CODATA2018.h)
    assert entropy_conductance_quantum(doubled) == pytest.approx(entropy_conductance_quantum() / 2, rel=1e-15)
