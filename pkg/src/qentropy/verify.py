"""Acceptance checks, shared by ``qentropy verify`` and the test suite.

Each check returns a :class:`CheckResult`; none of them raise on failure.
All random draws come from fixed seeds, so results are reproducible.
"""

import math
import time
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from . import channels, heatfield, physconst, transfer
from .entropyq import QuantumPacket, pendry_max_entropy_rate

# published rounded values the computed ones are held against
QUOTED_G0 = 7.75e-5          # S
QUOTED_THERMAL_QUANTUM = 9.46e-13   # W/K at 1 K
QUOTED_ENTROPY_QUANTUM = 9.46e-13   # J K^-2 s^-1
QUOTED_TC = 0.8              # K, for v = 6000 m/s, w = 200 nm


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail} ({self.seconds:.2f} s)"


def _rel(a, b):
    return abs(a - b) / abs(b)


def check_constants() -> CheckResult:
    g0 = physconst.electric_conductance_quantum()
    lam = physconst.thermal_conductance_quantum(1.0)
    lam_s = physconst.entropy_conductance_quantum()
    errs = [_rel(g0, QUOTED_G0), _rel(lam, QUOTED_THERMAL_QUANTUM), _rel(lam_s, QUOTED_ENTROPY_QUANTUM)]
    return CheckResult(
        "constants", max(errs) <= 1e-3,
        f"G0={g0:.6e} S, Lambda(1K)={lam:.6e} W/K, Lambda_s={lam_s:.6e}; max rel err {max(errs):.2e} (tol 1e-3)")


def check_critical_temperature() -> CheckResult:
    tc = physconst.critical_temperature(6000.0, 200e-9)
    err = _rel(tc, QUOTED_TC)
    return CheckResult(
        "critical_temperature", err <= 0.15,
        f"computed {tc:.4f} K vs quoted {QUOTED_TC} K, discrepancy {100 * err:.1f}% (tol 15%)")


def check_pendry_factor() -> CheckResult:
    worst = max(abs(pendry_max_entropy_rate(T) / physconst.thermal_conductance_quantum(T) - 2) / 2
                for T in (0.01, 1.0, 100.0))
    return CheckResult("pendry_factor", worst <= 1e-12, f"max rel deviation from 2: {worst:.2e} (tol 1e-12)")


def check_staircase() -> CheckResult:
    lam_F = 40e-9
    w, G = channels.conductance_staircase(1e-9, 400e-9, 10_000, lam_F)
    ratio = G / physconst.electric_conductance_quantum()
    integer = bool(np.all(ratio >= 0) and np.all(np.abs(ratio - np.rint(ratio)) <= 1e-12 * np.maximum(ratio, 1)))
    monotone = bool(np.all(np.diff(G) >= 0))
    return CheckResult("staircase", integer and monotone,
                       f"10^4 widths, {len(np.unique(G))} plateaus, integer={integer}, monotone={monotone}")


def _random_temperature_field(rng, L=1.0, T0=1.0, max_modes=16):
    m = int(rng.integers(1, max_modes + 1))
    n = rng.choice(np.arange(1, 33), size=m, replace=False)
    return heatfield.TemperatureField(L, T0, n, rng.normal(scale=0.1, size=m))


def check_representation_equivalence(seed: int = 1) -> CheckResult:
    rng = np.random.default_rng(seed)
    D = 1e-2
    worst = 0.0
    for _ in range(20):
        field = _random_temperature_field(rng)
        phi = heatfield.potential_for_temperature(field, D)
        k1 = field.k.min()
        for t in np.linspace(0.0, 2.0 / (D * k1 ** 2), 50):
            ref = heatfield.evolve_fourier(field, D, t).amplitude
            rec = heatfield.temperature_from_potential(heatfield.evolve_potential(phi, D, t), D).amplitude
            scale = np.max(np.abs(ref))
            if scale > 0:
                worst = max(worst, float(np.max(np.abs(rec - ref)) / scale))
    return CheckResult("representation_equivalence", worst <= 1e-10,
                       f"20 fields x 50 times, max rel diff {worst:.2e} (tol 1e-10)")


def check_gauge_null_mode(seed: int = 2) -> CheckResult:
    rng = np.random.default_rng(seed)
    D = 1e-2
    worst = 0.0
    for _ in range(20):
        field = _random_temperature_field(rng)
        phi = heatfield.potential_for_temperature(field, D)
        t_end = 2.0 / (D * field.k.min() ** 2)
        # growing content only on modes whose exponent stays under the cap
        cap_ok = D * field.k ** 2 * t_end <= heatfield.EXPONENT_CAP
        b = np.where(cap_ok, rng.normal(scale=10.0, size=len(field.n)), 0.0)
        gauged = phi.with_growing(b)
        for t in np.linspace(0.0, t_end, 20):
            ref = heatfield.temperature_from_potential(heatfield.evolve_potential(phi, D, t), D)
            new = heatfield.temperature_from_potential(heatfield.evolve_potential(gauged, D, t), D)
            x = np.linspace(0, field.domain_length, 33)
            Tr, Tn = ref.evaluate(x), new.evaluate(x)
            worst = max(worst, float(np.max(np.abs(Tn - Tr) / np.abs(Tr))))
    return CheckResult("gauge_null_mode", worst < 1e-12,
                       f"20 potentials with random growing branches, max rel change {worst:.2e} (tol 1e-12)")


MINIMALITY_STEP_FACTOR = 3e-5


def check_action_minimality(seed: int = 3) -> CheckResult:
    rng = np.random.default_rng(seed)
    D, L = 1.0, 2 * np.pi
    eps = np.linspace(-1.0, 1.0, 11)
    worst_lin, min_curv, ok_min = 0.0, math.inf, True
    for _ in range(10):
        m = int(rng.integers(1, 9))
        n = rng.choice(np.arange(1, 17), size=m, replace=False)
        phi = heatfield.SpectralPotentialField(L, 1.0, n, rng.normal(size=m), rng.normal(size=m))
        k_max = phi.k.max()
        times = heatfield.time_grid(D, k_max, 2.0 / (D * k_max ** 2), MINIMALITY_STEP_FACTOR)
        traj = heatfield.sample_trajectory(phi, D, times)
        for _ in range(5):
            eta = heatfield.sine_perturbation(traj, rng.normal(size=(4, m)))
            scan = heatfield.perturbation_action_scan(traj, eta, eps, D)
            c0, c1, c2 = heatfield.fit_parabola(scan)
            worst_lin = max(worst_lin, abs(c1) / c2 if c2 > 0 else math.inf)
            min_curv = min(min_curv, c2)
            actions = [a for _, a in scan]
            ok_min &= int(np.argmin(actions)) == 5 and all(a >= actions[5] for a in actions)
    passed = min_curv > 0 and worst_lin <= 1e-8 and ok_min
    return CheckResult("action_minimality", passed,
                       f"50 scans, min c2 {min_curv:.3e}, max |c1|/c2 {worst_lin:.2e} (tol 1e-8), "
                       f"minimum at eps=0: {ok_min}")


def check_residual_convergence() -> CheckResult:
    D, L = 1.0, 2 * np.pi
    phi = heatfield.SpectralPotentialField(L, 1.0, [1, 2, 3], [1.0, -0.5, 0.25], [0.1, 0.0, -0.05])
    k_max = phi.k.max()
    t_end = 1.0 / (D * k_max ** 2)
    residuals = []
    for level in range(5):
        steps = 10 * 2 ** level
        traj = heatfield.sample_trajectory(phi, D, np.linspace(0.0, t_end, steps + 1))
        residuals.append(heatfield.euler_lagrange_residual(traj, D))
    factors = [a / b for a, b in zip(residuals, residuals[1:])]
    return CheckResult("residual_convergence", min(factors) >= 3.6,
                       "reduction per halving " + ", ".join(f"{f:.3f}" for f in factors) + " (need >= 3.6)")


def check_second_law(seed: int = 4, samples: int = 100_000) -> CheckResult:
    rng = np.random.default_rng(seed)
    T1 = 10 ** rng.uniform(-3, 3, samples)
    T2 = 10 ** rng.uniform(-3, 3, samples)
    nu = 10 ** rng.uniform(3, 15, samples)
    # ties and near-ties, where the sign is hardest to get right
    T2[::10] = T1[::10]
    T2[5::10] = np.nextafter(T1[5::10], np.inf)
    bad = 0
    worst_tie = 0.0
    for a, b, f in zip(T1.tolist(), T2.tolist(), nu.tolist()):
        ledger = transfer.single_packet_transfer(transfer.Subdomain("1", a), transfer.Subdomain("2", b),
                                                 QuantumPacket(f))
        if np.sign(ledger.net_rate) != np.sign(a - b):
            bad += 1
        if a == b:
            worst_tie = max(worst_tie, abs(ledger.net_rate))
    passed = bad == 0 and worst_tie <= 1e-15
    return CheckResult("second_law", passed,
                       f"{samples} triples, sign mismatches {bad}, max |net| at T1=T2 {worst_tie:.1e} (tol 1e-15)")


def check_reciprocal_exchange() -> CheckResult:
    hot, cold = transfer.Subdomain("hot", 2.0), transfer.Subdomain("cold", 1.0)
    grid = np.linspace(1e8, 1e10, 100).tolist()
    mismatches = 0
    for nh in grid:
        for nc in grid:
            rate = transfer.reciprocal_exchange(hot, cold, nh, nc)
            if (rate >= 0) != (nh >= nc):
                mismatches += 1
    return CheckResult("reciprocal_exchange", mismatches == 0,
                       f"100x100 grid, iff-condition violations {mismatches}")


def _ulps(a, b):
    if a == b:
        return 0.0
    return abs(a - b) / math.ulp(max(abs(a), abs(b)))


def check_spin_identities(seed: int = 5, samples: int = 10_000) -> CheckResult:
    rng = np.random.default_rng(seed)
    gam = 10 ** rng.uniform(6, 11, samples) * rng.choice([-1, 1], samples)
    B0 = 10 ** rng.uniform(-3, 2, samples)
    T = 10 ** rng.uniform(-3, 3, samples)
    worst_I, worst_S = 0.0, 0.0
    for g, b, t in zip(gam.tolist(), B0.tolist(), T.tolist()):
        r = transfer.spin_relaxation_report(transfer.SpinSystem(g, b, t))
        worst_I = max(worst_I, _ulps(r.I_S, r.I_S_from_field))
        worst_S = max(worst_S, _ulps(r.Sigma, r.Sigma_from_field))
    return CheckResult("spin_identities", worst_I <= 1 and worst_S <= 1,
                       f"{samples} spins, max ulp gap I_S {worst_I:g}, Sigma {worst_S:g} (tol 1)")


CHECKS: List[Callable[[], CheckResult]] = [
    check_constants,
    check_critical_temperature,
    check_pendry_factor,
    check_staircase,
    check_representation_equivalence,
    check_gauge_null_mode,
    check_action_minimality,
    check_residual_convergence,
    check_second_law,
    check_reciprocal_exchange,
    check_spin_identities,
]


def run_check(check: Callable[[], CheckResult]) -> CheckResult:
    start = time.perf_counter()
    result = check()
    result.seconds = time.perf_counter() - start
    return result


def run_all() -> List[CheckResult]:
    return [run_check(c) for c in CHECKS]
