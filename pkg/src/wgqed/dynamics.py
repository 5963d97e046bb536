"""Single-excitation time evolution under the effective non-Hermitian Hamiltonian.

States are complex amplitude vectors ``c_j`` over the atoms; ``|c|^2`` is the
probability that the excitation has not yet been emitted into the waveguide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .kernels import AtomEnsemble, KernelMatrices, build_kernels

EIG_COND_LIMIT = 1e8
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class DecayCurve:
    """Populations sampled on a time grid.

    ``times`` are physical times; ``gamma_t`` and ``kappa_t`` give the
    dimensionless axes.
    """

    times: np.ndarray
    p_w: np.ndarray
    p_exc: np.ndarray
    gamma: float
    n_atoms: int
    p_d: Optional[np.ndarray] = None

    @property
    def gamma_t(self) -> np.ndarray:
        return self.gamma * self.times

    @property
    def kappa_t(self) -> np.ndarray:
        return self.n_atoms * self.gamma * self.times


def bright_state(ensemble: AtomEnsemble) -> np.ndarray:
    """State excited by a forward plane wave, c_j = exp(i theta_j) / sqrt(N)."""
    return np.exp(1j * ensemble.phases) / np.sqrt(ensemble.n_atoms)


def dark_state_two_atoms(ensemble: AtomEnsemble) -> np.ndarray:
    """The N = 2 state orthogonal to the bright state."""
    if ensemble.n_atoms != 2:
        raise ValueError(f"dark state is defined for N=2, got N={ensemble.n_atoms}")
    th1, th2 = ensemble.phases
    return np.array([1.0, -np.exp(1j * (th2 - th1))]) / np.sqrt(2)


def _check_times(times) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if np.any(~np.isfinite(times)):
        raise ValueError("times must be finite")
    if np.any(times < 0):
        raise ValueError("times must be non-negative")
    return times


class Evolver:
    """Reusable propagator exp(-i H_eff t) for one set of kernels.

    The eigendecomposition of H_eff is used when its eigenvector matrix is
    well conditioned enough to meet ``atol``; otherwise every time point goes
    through a dense Pade matrix exponential. Instances are immutable after
    construction and can be shared between threads.
    """

    def __init__(self, kernels: KernelMatrices | np.ndarray, atol: float = 1e-10):
        H = kernels.H_eff if isinstance(kernels, KernelMatrices) else np.asarray(kernels)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise ValueError("H_eff must be a square matrix")
        self.H = np.asarray(H, dtype=complex)
        self.atol = float(atol)
        self.eigvals = None
        self.eigvecs = None
        self.cond = np.inf
        w, V = np.linalg.eig(self.H)
        cond = np.linalg.cond(V)
        if np.isfinite(cond) and cond <= min(EIG_COND_LIMIT, self.atol / _EPS):
            self.eigvals, self.eigvecs, self.cond = w, V, cond

    @property
    def uses_eig(self) -> bool:
        return self.eigvals is not None

    def propagate(self, state, times) -> np.ndarray:
        """Amplitudes at each time, shape ``(len(times), N)``."""
        state = np.asarray(state, dtype=complex)
        if state.shape != (self.H.shape[0],):
            raise ValueError(
                f"state has shape {state.shape}, expected ({self.H.shape[0]},)"
            )
        times = np.atleast_1d(_check_times(times))
        if self.uses_eig:
            coeffs = np.linalg.solve(self.eigvecs, state)
            phases = np.exp(-1j * np.outer(times, self.eigvals))
            return (phases * coeffs) @ self.eigvecs.T
        out = np.empty((times.size, state.size), dtype=complex)
        for i, t in enumerate(times):
            out[i] = scipy.linalg.expm(-1j * t * self.H) @ state
        return out


def evolve(kernels: KernelMatrices, state, t: float, atol: float = 1e-10) -> np.ndarray:
    """exp(-i H_eff t) applied to ``state``."""
    t = float(t)
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    if t == 0:
        state = np.asarray(state, dtype=complex)
        if state.shape != (kernels.n_atoms,):
            raise ValueError("state dimension does not match kernels")
        return state.copy()
    return Evolver(kernels, atol=atol).propagate(state, [t])[0]


def simulate_decay(ensemble: AtomEnsemble, times, atol: float = 1e-10) -> DecayCurve:
    """Bright-state, total and (for N = 2) dark-state populations over ``times``.

    The system starts in the bright state.
    """
    times = _check_times(times)
    if times.ndim != 1 or np.any(np.diff(times) <= 0):
        raise ValueError("times must be a strictly increasing 1D grid")
    w = bright_state(ensemble)
    amps = Evolver(build_kernels(ensemble), atol=atol).propagate(w, times)
    p_w = np.abs(amps @ w.conj()) ** 2
    p_exc = np.sum(np.abs(amps) ** 2, axis=1)
    p_d = None
    if ensemble.n_atoms == 2:
        d = dark_state_two_atoms(ensemble)
        p_d = np.abs(amps @ d.conj()) ** 2
    return DecayCurve(
        times=times, p_w=p_w, p_exc=p_exc, p_d=p_d,
        gamma=ensemble.gamma, n_atoms=ensemble.n_atoms,
    )


def two_atom_bidirectional_analytic(d: float, gamma: float, t):
    """Bright and dark populations for two atoms on a bidirectional waveguide.

    ``d = |theta_1 - theta_2|``; the single-atom rate is Gamma = 2 gamma.
    Returns ``(rho_ww, rho_dd)``.
    """
    if not (np.isfinite(d) and d >= 0):
        raise ValueError("separation must be finite and non-negative")
    if not (np.isfinite(gamma) and gamma > 0):
        raise ValueError("gamma must be positive")
    t = _check_times(t)
    big_gamma = 2 * gamma
    z = 0.5 * big_gamma * t * np.exp(1j * d)
    decay = np.exp(-big_gamma * t)
    rho_ww = decay * np.abs(np.cosh(z) - np.cos(d) * np.sinh(z)) ** 2
    rho_dd = decay * np.sin(d) ** 2 * np.abs(np.sinh(z)) ** 2
    return rho_ww, rho_dd


def two_atom_chiral_analytic(gamma: float, t):
    """Bright and dark populations for two atoms on a chiral waveguide.

    rho_ww = e^{-gamma t} (gamma t - 2)^2 / 4, rho_dd = e^{-gamma t} (gamma t)^2 / 4.
    The squared bracket in rho_ww is required for rho_ww(0) = 1.
    """
    t = _check_times(t)
    x = gamma * t
    decay = np.exp(-x)
    return 0.25 * decay * (x - 2) ** 2, 0.25 * decay * x**2


def default_time_grid(t_max: float, n_points: int = 300, scale: str = "linear",
                      t_min: Optional[float] = None) -> np.ndarray:
    """Uniform (or log-spaced) time grid ending at ``t_max``."""
    if not (np.isfinite(t_max) and t_max > 0):
        raise ValueError("t_max must be positive")
    if n_points < 2:
        raise ValueError("need at least two time points")
    if scale == "linear":
        return np.linspace(0.0, t_max, n_points)
    if scale == "log":
        t_min = t_max * 1e-3 if t_min is None else t_min
        if not 0 < t_min < t_max:
            raise ValueError("log grid needs 0 < t_min < t_max")
        return np.geomspace(t_min, t_max, n_points)
    raise ValueError(f"unknown time scale {scale!r}")

