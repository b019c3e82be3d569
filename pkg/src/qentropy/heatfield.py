"""Heat conduction in one periodic dimension, in two equivalent pictures.

Temperature picture: the Fourier equation rho c_v dT/dt = lambda d2T/dx2,
whose cosine modes decay as exp(-D k^2 t).

Potential picture: a generating potential phi with

    T - T0 = -dphi/dt - D d2phi/dx2

obeys the fourth-order field equation d2phi/dt2 = D^2 d4phi/dx4, the
Euler-Lagrange equation of the Lagrangian density

    L = 1/2 (dphi/dt)^2 + 1/2 D^2 (d2phi/dx2)^2.

Each potential mode has a decaying branch ``a exp(-D k^2 t)`` and a
growing branch ``b exp(+D k^2 t)``. The growing branch maps to zero
temperature and is pure gauge.

Fields are expanded in ``cos(k x)`` with ``k = 2 pi n / domain_length``,
``n >= 1``; the uniform (n = 0) part of T lives in ``reference_T0``.
Spatial integrals over one period of ``cos^2`` contribute
``domain_length / 2``.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .physconst import CODATA2018, PhysicalConstants, check_finite, entropy_conductance_quantum, require

#: Largest D k^2 t allowed when a growing branch is present.
EXPONENT_CAP = 700.0

#: Default bound on D k_max^2 dt for generated time grids.
DEFAULT_STEP_FACTOR = 0.1


class NumericalRangeError(ArithmeticError):
    """An evolution would overflow the floating-point range."""


@dataclass(frozen=True)
class MaterialParams:
    lambda_th: float
    rho: float
    c_v: float

    def __post_init__(self):
        check_finite(lambda_th=self.lambda_th, rho=self.rho, c_v=self.c_v)
        require(self.lambda_th > 0 and self.rho > 0 and self.c_v > 0,
                "conductivity, density and specific heat must be positive")

    @property
    def diffusivity(self) -> float:
        return diffusivity(self)


def diffusivity(mat: MaterialParams) -> float:
    """Thermal diffusivity lambda / (rho c_v), m^2/s."""
    return mat.lambda_th / (mat.rho * mat.c_v)


def _mode_indices(n) -> np.ndarray:
    n = np.asarray(n)
    require(n.ndim == 1, "mode indices must be one-dimensional")
    require(np.all(n == np.round(n)) and np.all(n >= 1), "mode indices must be integers >= 1")
    n = n.astype(np.int64)
    require(len(np.unique(n)) == len(n), "mode indices must be distinct")
    return n


def _amplitudes(x, size, name) -> np.ndarray:
    x = np.array(x, dtype=float)
    require(x.shape == (size,), f"{name} must have one entry per mode")
    require(bool(np.all(np.isfinite(x))), f"{name} must be finite")
    x.setflags(write=False)
    return x


def _check_D(D):
    check_finite(D=D)
    require(D > 0, "diffusivity must be positive")


def _check_t(t):
    check_finite(t=t)
    require(t >= 0, "evolution time must be non-negative")


@dataclass(frozen=True, eq=False)
class TemperatureField:
    """T(x) = reference_T0 + sum_n amplitude_n cos(k_n x)."""

    domain_length: float
    reference_T0: float
    n: np.ndarray
    amplitude: np.ndarray

    def __post_init__(self):
        check_finite(domain_length=self.domain_length, reference_T0=self.reference_T0)
        require(self.domain_length > 0, "domain length must be positive")
        n = _mode_indices(self.n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "amplitude", _amplitudes(self.amplitude, len(n), "amplitude"))

    @property
    def k(self) -> np.ndarray:
        return 2 * np.pi * self.n / self.domain_length

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self.reference_T0 + np.cos(np.multiply.outer(x, self.k)) @ self.amplitude


@dataclass(frozen=True, eq=False)
class SpectralPotentialField:
    """phi(x) = sum_n (a_n + b_n) cos(k_n x) at the field's own time origin.

    ``a`` multiplies the decaying branch and ``b`` the growing one.
    """

    domain_length: float
    reference_T0: float
    n: np.ndarray
    a: np.ndarray
    b: Optional[np.ndarray] = None

    def __post_init__(self):
        check_finite(domain_length=self.domain_length, reference_T0=self.reference_T0)
        require(self.domain_length > 0, "domain length must be positive")
        n = _mode_indices(self.n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", _amplitudes(self.a, len(n), "a"))
        b = np.zeros(len(n)) if self.b is None else self.b
        object.__setattr__(self, "b", _amplitudes(b, len(n), "b"))

    @property
    def k(self) -> np.ndarray:
        return 2 * np.pi * self.n / self.domain_length

    @property
    def values(self) -> np.ndarray:
        return self.a + self.b

    def rate(self, D: float) -> np.ndarray:
        """Per-mode dphi/dt implied by the branch decomposition."""
        g = D * self.k ** 2
        return g * self.b - g * self.a

    def with_growing(self, b) -> "SpectralPotentialField":
        return SpectralPotentialField(self.domain_length, self.reference_T0, self.n, self.a, b)


def evolve_fourier(field: TemperatureField, D: float, t: float) -> TemperatureField:
    """Exact solution of the heat equation after time ``t``."""
    _check_D(D)
    _check_t(t)
    decay = np.exp(-D * field.k ** 2 * t)
    return TemperatureField(field.domain_length, field.reference_T0, field.n, field.amplitude * decay)


def evolve_potential(phi: SpectralPotentialField, D: float, t: float,
                     exponent_cap: float = EXPONENT_CAP) -> SpectralPotentialField:
    """Exact solution of the potential field equation after time ``t``.

    Raises NumericalRangeError if a non-zero growing branch would need an
    exponent above ``exponent_cap``.
    """
    _check_D(D)
    _check_t(t)
    g = D * phi.k ** 2 * t
    if np.any((phi.b != 0) & (g > exponent_cap)):
        raise NumericalRangeError(
            f"growing branch exponent {g.max():.3g} exceeds the cap {exponent_cap:g}")
    with np.errstate(over="ignore"):
        b = np.where(phi.b != 0, phi.b * np.exp(np.where(phi.b != 0, g, 0.0)), 0.0)
    if not np.all(np.isfinite(b)):
        raise NumericalRangeError("growing branch overflowed")
    return SpectralPotentialField(phi.domain_length, phi.reference_T0, phi.n, phi.a * np.exp(-g), b)


def temperature_from_potential(phi: SpectralPotentialField, D: float,
                               phi_rate=None) -> TemperatureField:
    """Reconstruct T - T0 = -dphi/dt + D k^2 phi mode by mode.

    Without ``phi_rate`` the rate follows from the branch decomposition and
    each branch is mapped separately, so the growing branch contributes an
    exact zero. With an explicit ``phi_rate`` the formula is applied to the
    summed mode values.
    """
    _check_D(D)
    g = D * phi.k ** 2
    if phi_rate is None:
        rate_a, rate_b = -g * phi.a, g * phi.b
        amp = (-rate_a + g * phi.a) + (-rate_b + g * phi.b)
    else:
        rate = np.asarray(phi_rate, dtype=float)
        require(rate.shape == phi.n.shape, "phi_rate must match the potential's mode set")
        amp = -rate + g * phi.values
    return TemperatureField(phi.domain_length, phi.reference_T0, phi.n, amp)


def potential_for_temperature(field: TemperatureField, D: float) -> SpectralPotentialField:
    """Decaying-branch potential whose reconstructed temperature is ``field``."""
    _check_D(D)
    return SpectralPotentialField(field.domain_length, field.reference_T0, field.n,
                                  field.amplitude / (2 * D * field.k ** 2))


# ---------------------------------------------------------------------------
# Trajectories, residual and action
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PotentialTrajectory:
    """Per-mode potential values and rates sampled on a uniform time grid.

    ``values`` and ``rates`` have shape ``(len(times), len(n))``.
    """

    domain_length: float
    reference_T0: float
    n: np.ndarray
    times: np.ndarray
    values: np.ndarray
    rates: np.ndarray

    def __post_init__(self):
        n = _mode_indices(self.n)
        times = np.asarray(self.times, dtype=float)
        require(times.ndim == 1 and len(times) >= 1, "need at least one time sample")
        if len(times) > 1:
            steps = np.diff(times)
            require(bool(np.all(steps > 0)), "times must increase")
            require(np.allclose(steps, steps[0], rtol=1e-9, atol=0), "time step must be uniform")
        values = np.asarray(self.values, dtype=float)
        rates = np.asarray(self.rates, dtype=float)
        require(values.shape == (len(times), len(n)) and rates.shape == values.shape,
                "values and rates must have shape (n_times, n_modes)")
        for name, v in (("n", n), ("times", times), ("values", values), ("rates", rates)):
            object.__setattr__(self, name, v)

    @property
    def k(self) -> np.ndarray:
        return 2 * np.pi * self.n / self.domain_length

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0]) if len(self.times) > 1 else 0.0

    def _same_grid(self, other):
        require(np.array_equal(self.n, other.n) and np.array_equal(self.times, other.times)
                and self.domain_length == other.domain_length,
                "trajectories must share modes and time grid")

    def __add__(self, other: "PotentialTrajectory") -> "PotentialTrajectory":
        self._same_grid(other)
        return PotentialTrajectory(self.domain_length, self.reference_T0, self.n, self.times,
                                   self.values + other.values, self.rates + other.rates)

    def __mul__(self, s: float) -> "PotentialTrajectory":
        return PotentialTrajectory(self.domain_length, self.reference_T0, self.n, self.times,
                                   s * self.values, s * self.rates)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def temperatures(self, D: float) -> np.ndarray:
        """Temperature mode amplitudes, shape ``(n_times, n_modes)``."""
        return -self.rates + D * self.k ** 2 * self.values


def time_grid(D: float, k_max: float, t_end: float, step_factor: float = DEFAULT_STEP_FACTOR,
              t_start: float = 0.0) -> np.ndarray:
    """Uniform grid on [t_start, t_end] with D k_max^2 dt <= step_factor."""
    _check_D(D)
    require(t_end > t_start, "need t_end > t_start")
    steps = max(2, int(np.ceil(D * k_max ** 2 * (t_end - t_start) / step_factor)))
    return np.linspace(t_start, t_end, steps + 1)


def sample_trajectory(phi: SpectralPotentialField, D: float, times,
                      exponent_cap: float = EXPONENT_CAP) -> PotentialTrajectory:
    """Exact potential trajectory through ``phi`` (taken at t = 0)."""
    _check_D(D)
    times = np.asarray(times, dtype=float)
    require(bool(np.all(times >= 0)), "sample times must be non-negative")
    g = D * phi.k ** 2
    gt = np.multiply.outer(times, g)
    growing = phi.b != 0
    if np.any(growing & (gt > exponent_cap)):
        raise NumericalRangeError("growing branch exceeds the exponent cap on this time grid")
    dec = phi.a * np.exp(-gt)
    with np.errstate(over="ignore"):
        gro = np.where(growing, phi.b * np.exp(np.where(growing, gt, 0.0)), 0.0)
        rates = g * gro - g * dec
    if not (np.all(np.isfinite(gro)) and np.all(np.isfinite(rates))):
        raise NumericalRangeError("growing branch overflowed")
    return PotentialTrajectory(phi.domain_length, phi.reference_T0, phi.n, times,
                               dec + gro, rates)


def euler_lagrange_residual(trajectory: PotentialTrajectory, D: float) -> float:
    """Discrete L2 norm of phi_tt - D^2 k^4 phi over modes and interior times.

    phi_tt uses the three-point central difference. The norm is weighted
    by dt and by domain_length/2 per mode, so a residual ``r`` constant in
    time has norm ``|r| sqrt(measure)`` with
    ``measure = (n_times - 2) dt domain_length / 2``.
    """
    _check_D(D)
    require(len(trajectory.times) >= 3, "need at least three time samples")
    v = trajectory.values
    dt = trajectory.dt
    phi_tt = (v[2:] - 2 * v[1:-1] + v[:-2]) / dt ** 2
    r = phi_tt - (D * trajectory.k ** 2) ** 2 * v[1:-1]
    return float(np.sqrt(dt * trajectory.domain_length / 2 * np.sum(r * r)))


def _trapezoid(f: np.ndarray, dt: float) -> float:
    if len(f) < 2:
        return 0.0
    return float(dt * (np.sum(f) - 0.5 * (f[0] + f[-1])))


def lagrangian(trajectory: PotentialTrajectory, D: float) -> np.ndarray:
    """Spatially integrated Lagrangian at every sample time."""
    _check_D(D)
    g = D * trajectory.k ** 2
    dens = 0.5 * trajectory.rates ** 2 + 0.5 * (g * trajectory.values) ** 2
    return trajectory.domain_length / 2 * dens.sum(axis=1)


def _window(trajectory, t1, t2):
    times = trajectory.times
    t1 = times[0] if t1 is None else t1
    t2 = times[-1] if t2 is None else t2
    require(t1 < t2, "need t1 < t2")
    tol = 1e-9 * max(abs(times[-1]), trajectory.dt, 1e-300)
    if t1 < times[0] - tol or t2 > times[-1] + tol:
        raise ValueError(f"trajectory covers [{times[0]}, {times[-1]}], not [{t1}, {t2}]")
    i1 = int(np.argmin(np.abs(times - t1)))
    i2 = int(np.argmin(np.abs(times - t2)))
    require(abs(times[i1] - t1) <= tol and abs(times[i2] - t2) <= tol,
            "t1 and t2 must be sample times")
    return i1, i2


def action(trajectory: PotentialTrajectory, D: float, t1: Optional[float] = None,
           t2: Optional[float] = None) -> float:
    """Trapezoid-rule time integral of the Lagrangian over [t1, t2]."""
    i1, i2 = _window(trajectory, t1, t2)
    return _trapezoid(lagrangian(trajectory, D)[i1:i2 + 1], trajectory.dt)


def sine_perturbation(template: PotentialTrajectory, coefficients) -> PotentialTrajectory:
    """Admissible perturbation vanishing at both ends of the template's grid.

    ``coefficients[m-1, j]`` multiplies ``sin(m pi s)`` in mode ``j``, with
    ``s`` the normalized time in [0, 1].
    """
    c = np.asarray(coefficients, dtype=float)
    require(c.ndim == 2 and c.shape[1] == len(template.n), "coefficients must be (n_terms, n_modes)")
    t0, span = template.times[0], template.times[-1] - template.times[0]
    s = (template.times - t0) / span
    m = np.arange(1, c.shape[0] + 1)
    arg = np.pi * np.multiply.outer(s, m)
    values = np.sin(arg) @ c
    rates = (np.cos(arg) * (np.pi * m / span)) @ c
    # sin(m pi) is not exactly zero in floating point
    values[0] = 0.0
    values[-1] = 0.0
    return PotentialTrajectory(template.domain_length, template.reference_T0, template.n,
                               template.times, values, rates)


def perturbation_action_scan(optimal: PotentialTrajectory, eta: PotentialTrajectory,
                             epsilons: Sequence[float], D: float,
                             endpoint_tol: float = 1e-12) -> List[Tuple[float, float]]:
    """Action of ``optimal + eps * eta`` for each ``eps``.

    ``eta`` must vanish at the first and last sample, relative to its
    largest value.
    """
    optimal._same_grid(eta)
    scale = float(np.max(np.abs(eta.values))) if eta.values.size else 0.0
    ends = np.abs(np.concatenate([eta.values[0], eta.values[-1]]))
    if np.any(ends > endpoint_tol * scale):
        raise ValueError("perturbation must vanish at both endpoints")
    return [(float(eps), action(optimal + eps * eta, D)) for eps in epsilons]


def fit_parabola(scan: Sequence[Tuple[float, float]]) -> Tuple[float, float, float]:
    """Least-squares ``(c0, c1, c2)`` of action = c0 + c1 eps + c2 eps^2."""
    eps, act = np.asarray(scan, dtype=float).T
    require(len(eps) >= 3, "need at least three scan points")
    c2, c1, c0 = np.polyfit(eps, act, 2)
    return float(c0), float(c1), float(c2)


# ---------------------------------------------------------------------------
# Equalization action
# ---------------------------------------------------------------------------

def equalization_action(times, temperatures, T0: float, cumulative: bool = False):
    """Trapezoid integral of 1/2 (T - T0)^2 dt, in K^2 s.

    With ``cumulative=True`` returns the running integral at every sample.
    """
    times = np.asarray(times, dtype=float)
    T = np.asarray(temperatures, dtype=float)
    require(times.size > 0, "temperature trajectory is empty")
    require(times.shape == T.shape and times.ndim == 1, "times and temperatures must match")
    require(bool(np.all(np.diff(times) > 0)), "times must increase")
    f = 0.5 * (T - T0) ** 2
    pieces = np.diff(times) * 0.5 * (f[1:] + f[:-1])
    if cumulative:
        return np.concatenate([[0.0], np.cumsum(pieces)])
    return float(np.sum(pieces))


def transferred_energy(equalization_action_value: float, const: PhysicalConstants = CODATA2018) -> float:
    """Entropy conductance quantum times an equalization action value."""
    check_finite(value=equalization_action_value)
    require(equalization_action_value >= 0, "equalization action must be non-negative")
    return entropy_conductance_quantum(const) * equalization_action_value


# ---------------------------------------------------------------------------
# Finite-difference cross-check
# ---------------------------------------------------------------------------

# sixth-order central second derivative
_LAPLACE6 = np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])


def evolve_fourier_fd(field: TemperatureField, D: float, t: float, nx: int = 256,
                      stability: float = 0.2) -> Tuple[np.ndarray, np.ndarray]:
    """Grid solution of the heat equation, for cross-checking :func:`evolve_fourier`.

    Sixth-order periodic finite differences in space, classical RK4 in
    time with ``D dt / dx^2 <= stability``. Returns ``(x, T)``.
    """
    _check_D(D)
    _check_t(t)
    require(nx >= 8, "need at least 8 grid points")
    dx = field.domain_length / nx
    x = np.arange(nx) * dx
    u = field.evaluate(x) - field.reference_T0
    if t == 0:
        return x, u + field.reference_T0
    n_steps = max(1, int(np.ceil(t * D / (stability * dx * dx))))
    dt = t / n_steps
    coef = D / dx ** 2

    def rhs(v):
        out = _LAPLACE6[3] * v
        for s in (1, 2, 3):
            out = out + _LAPLACE6[3 + s] * (np.roll(v, s) + np.roll(v, -s))
        return coef * out

    for _ in range(n_steps):
        k1 = rhs(u)
        k2 = rhs(u + 0.5 * dt * k1)
        k3 = rhs(u + 0.5 * dt * k2)
        k4 = rhs(u + dt * k3)
        u = u + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return x, u + field.reference_T0
