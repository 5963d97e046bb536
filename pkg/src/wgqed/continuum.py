"""Continuum limit: the field equation

    d/dt psi(x, t) = -gamma * int dy K(x - y) psi(y, t) n(y)

with K = exp(i|x - y|) (bidirectional) or the forward-only exp(i(x - y)) for
y < x (chiral). Positions are optical phases; n integrates to the atom number.

The exponential kernel is semiseparable, so the integral splits into a forward
and a backward running sum. Each evaluation is O(len(x)) with the trapezoid
rule, and time stepping is classical RK4 with a fixed step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .analytic import bessel_j
from .dynamics import DecayCurve
from .kernels import WaveguideKind

MAX_PHASE_PER_CELL = 0.5
DEFAULT_SPACING = 0.1
DEFAULT_KAPPA_STEP = 0.05


@dataclass(frozen=True)
class UniformInterval:
    """Atoms spread evenly over the phase interval [0, sigma_phase]."""

    sigma_phase: float
    total: float

    def __post_init__(self):
        _check_profile(self)

    def density(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= 0) & (x <= self.sigma_phase)
        return np.where(inside, self.total / self.sigma_phase, 0.0)

    def support(self):
        return 0.0, self.sigma_phase


@dataclass(frozen=True)
class GaussianProfile:
    """Gaussian density of width sigma_phase centred at zero."""

    sigma_phase: float
    total: float
    width_cutoff: float = 6.0

    def __post_init__(self):
        _check_profile(self)

    def density(self, x):
        x = np.asarray(x, dtype=float)
        s = self.sigma_phase
        return self.total * np.exp(-0.5 * (x / s) ** 2) / (np.sqrt(2 * np.pi) * s)

    def support(self):
        return -self.width_cutoff * self.sigma_phase, self.width_cutoff * self.sigma_phase


DensityProfile = Union[UniformInterval, GaussianProfile]


def _check_profile(profile):
    if not (np.isfinite(profile.sigma_phase) and profile.sigma_phase > 0):
        raise ValueError("sigma_phase must be positive")
    if not (np.isfinite(profile.total) and profile.total > 0):
        raise ValueError("total atom number must be positive")


@dataclass(frozen=True)
class ContinuumField:
    x_grid: np.ndarray
    t_grid: np.ndarray
    psi: np.ndarray  # shape (len(t_grid), len(x_grid))
    gamma: float = 1.0


def default_x_grid(profile: DensityProfile, spacing: float = DEFAULT_SPACING,
                   min_points: int = 401) -> np.ndarray:
    """Uniform grid over the profile support, no coarser than ``spacing``."""
    lo, hi = profile.support()
    n = max(min_points, int(np.ceil((hi - lo) / spacing)) + 1)
    return np.linspace(lo, hi, n)


def _trapezoid_weights(x: np.ndarray) -> np.ndarray:
    h = np.diff(x)
    w = np.zeros_like(x)
    w[:-1] += h / 2
    w[1:] += h / 2
    return w


class _FieldOperator:
    """Discretized right-hand side of the field equation."""

    def __init__(self, x, density, gamma, kind):
        self.half_h = np.diff(x) / 2
        self.density = density
        self.gamma = gamma
        self.e_plus = np.exp(1j * x)
        self.e_minus = self.e_plus.conj()
        self.chiral = kind is WaveguideKind.CHIRAL

    def _running(self, g):
        # trapezoid integral of g from x[0] to x[i]
        out = np.empty_like(g)
        out[0] = 0
        np.cumsum(self.half_h * (g[:-1] + g[1:]), out=out[1:])
        return out

    def __call__(self, psi):
        f = psi * self.density
        result = self.e_plus * self._running(self.e_minus * f)
        if not self.chiral:
            back = self._running(self.e_plus * f)
            result += self.e_minus * (back[-1] - back)
        return -self.gamma * result


def solve_continuum(profile: DensityProfile, gamma: float, x_grid, t_grid,
                    kind="bidirectional", max_step: float | None = None) -> ContinuumField:
    """Integrate the continuum field equation from the plane wave psi(x, 0) = e^{ix}.

    ``max_step`` defaults to 0.05 / kappa. Grids whose spacing exceeds 0.5 rad
    of kernel phase are rejected as under-resolved.
    """
    kind = WaveguideKind.parse(kind)
    if not (np.isfinite(gamma) and gamma > 0):
        raise ValueError("gamma must be positive")
    x = np.asarray(x_grid, dtype=float)
    t = np.asarray(t_grid, dtype=float)
    if x.ndim != 1 or x.size < 2 or np.any(np.diff(x) <= 0):
        raise ValueError("x_grid must be strictly increasing with at least 2 points")
    if np.max(np.diff(x)) > MAX_PHASE_PER_CELL:
        raise ValueError(
            f"x_grid under-resolved: spacing {np.max(np.diff(x)):.3g} exceeds "
            f"{MAX_PHASE_PER_CELL} rad of kernel phase per cell"
        )
    if t.ndim != 1 or t.size < 1 or t[0] < 0 or np.any(np.diff(t) <= 0):
        raise ValueError("t_grid must be non-negative and strictly increasing")

    kappa = gamma * profile.total
    if max_step is None:
        max_step = DEFAULT_KAPPA_STEP / kappa
    op = _FieldOperator(x, profile.density(x), gamma, kind)

    psi = np.exp(1j * x)
    out = np.empty((t.size, x.size), dtype=complex)
    now = 0.0
    for i, target in enumerate(t):
        span = target - now
        if span > 0:
            steps = int(np.ceil(span / max_step - 1e-12))
            dt = span / steps
            for _ in range(steps):
                k1 = op(psi)
                k2 = op(psi + 0.5 * dt * k1)
                k3 = op(psi + 0.5 * dt * k2)
                k4 = op(psi + dt * k3)
                psi = psi + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i] = psi
        now = target
    return ContinuumField(x_grid=x, t_grid=t, psi=out, gamma=float(gamma))


def analytic_continuum_field(x, t, kappa: float, sigma_phase: float):
    """Large-sample field for a uniform interval, e^{ix} J0(2 sqrt(kappa t x / sigma))."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if not (kappa > 0 and sigma_phase > 0):
        raise ValueError("kappa and sigma_phase must be positive")
    if np.any(x < 0) or np.any(x > sigma_phase):
        raise ValueError("x must lie in [0, sigma_phase]")
    if np.any(t < 0):
        raise ValueError("t must be non-negative")
    arg = 2 * np.sqrt(kappa * t * x / sigma_phase)
    return np.exp(1j * x) * bessel_j(0, arg)


def pw_from_field(field: ContinuumField, profile: DensityProfile) -> DecayCurve:
    """Bright-state and total populations of a continuum field.

    P_W = |(1/N) int n e^{-ix} psi|^2 and P_exc = (1/N) int n |psi|^2, both
    with the solver's trapezoid rule.
    """
    x = field.x_grid
    if field.psi.shape != (field.t_grid.size, x.size):
        raise ValueError("field array does not match its grids")
    w = _trapezoid_weights(x) * profile.density(x) / profile.total
    overlap = field.psi @ (w * np.exp(-1j * x))
    p_exc = np.abs(field.psi) ** 2 @ w
    return DecayCurve(
        times=field.t_grid, p_w=np.abs(overlap) ** 2, p_exc=p_exc,
        gamma=field.gamma, n_atoms=profile.total,
    )
