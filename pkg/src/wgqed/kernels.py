"""Photon-propagator coupling kernels for atoms on a 1D waveguide.

Atom positions are stored as optical phases ``theta_j = k x_j``. Rates are in
units of the per-mode coupling ``gamma`` and hbar = 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class WaveguideKind(enum.Enum):
    CHIRAL = "chiral"
    BIDIRECTIONAL = "bidirectional"

    @classmethod
    def parse(cls, value: "WaveguideKind | str") -> "WaveguideKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(
                f"unknown waveguide kind {value!r}; expected 'chiral' or 'bidirectional'"
            ) from None


@dataclass(frozen=True)
class AtomEnsemble:
    """N two-level atoms at optical phases ``phases`` on a waveguide."""

    phases: np.ndarray
    gamma: float = 1.0
    kind: WaveguideKind = WaveguideKind.CHIRAL

    def __post_init__(self) -> None:
        phases = np.atleast_1d(np.asarray(self.phases, dtype=float)).copy()
        if phases.ndim != 1 or phases.size == 0:
            raise ValueError("ensemble needs a 1D array of at least one phase")
        if not np.all(np.isfinite(phases)):
            raise ValueError("phases must be finite")
        if not (np.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        phases.setflags(write=False)
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "kind", WaveguideKind.parse(self.kind))

    @property
    def n_atoms(self) -> int:
        return self.phases.size

    @property
    def kappa(self) -> float:
        """Collectively enhanced rate N*gamma."""
        return self.n_atoms * self.gamma


@dataclass(frozen=True)
class KernelMatrices:
    J: np.ndarray
    Gamma: np.ndarray

    @property
    def H_eff(self) -> np.ndarray:
        return self.J - 0.5j * self.Gamma

    @property
    def n_atoms(self) -> int:
        return self.J.shape[0]


def _heaviside_half(x):
    return np.heaviside(x, 0.5)


def propagator(kind, theta_j, theta_l):
    """Photon propagator G(x_j, x_l) between two atoms, broadcasting over arrays.

    Chiral: ``i exp(i(theta_j - theta_l)) H(theta_j - theta_l)`` with H(0) = 1/2.
    Bidirectional: ``i exp(i|theta_j - theta_l|)``.
    """
    kind = WaveguideKind.parse(kind)
    delta = np.subtract(theta_j, theta_l, dtype=float)
    if kind is WaveguideKind.CHIRAL:
        return 1j * np.exp(1j * delta) * _heaviside_half(delta)
    return 1j * np.exp(1j * np.abs(delta))


def kernels_from_propagator(ensemble: AtomEnsemble) -> KernelMatrices:
    """J and Gamma from the general propagator relations.

    J_jl = -gamma (G*(l, j) + G(j, l)) / 2 and
    Gamma_jl = i gamma (G*(l, j) - G(j, l)).
    """
    th = ensemble.phases
    G = propagator(ensemble.kind, th[:, None], th[None, :])
    Gt = G.T.conj()
    J = -ensemble.gamma * (Gt + G) / 2
    Gamma = 1j * ensemble.gamma * (Gt - G)
    return KernelMatrices(J=J, Gamma=Gamma)


def build_kernels(ensemble: AtomEnsemble) -> KernelMatrices:
    """Closed-form exchange and decay matrices for ``ensemble``.

    Uses sign(0) = 0, so coincident atoms have no coherent exchange.
    """
    th = ensemble.phases
    g = ensemble.gamma
    delta = th[:, None] - th[None, :]
    if ensemble.kind is WaveguideKind.CHIRAL:
        phase = np.exp(1j * delta)
        J = (g / 2j) * np.sign(delta) * phase
        Gamma = g * phase
    else:
        dist = np.abs(delta)
        J = (g * np.sin(dist)).astype(complex)
        Gamma = (2 * g * np.cos(dist)).astype(complex)
    return KernelMatrices(J=J, Gamma=Gamma)
