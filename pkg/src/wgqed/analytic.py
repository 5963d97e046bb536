"""Closed-form bright-state populations and the special functions behind them.

All populations are functions of ``gamma * t`` or ``kappa * t`` with
``kappa = N * gamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)


@dataclass(frozen=True)
class AsymptoticParams:
    kappa: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.kappa) and self.kappa > 0):
            raise ValueError(f"kappa must be finite and positive, got {self.kappa}")


def _kappa(params) -> float:
    if isinstance(params, AsymptoticParams):
        return params.kappa
    return AsymptoticParams(float(params)).kappa


def _check_nonneg_times(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(t < 0):
        raise ValueError("times must be finite and non-negative")
    return t


# --------------------------------------------------------------------------
# Laguerre polynomials
# --------------------------------------------------------------------------

def laguerre_gen(n: int, alpha: int, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x) by upward recurrence.

    Raises OverflowError when the recurrence leaves the float range; use
    :func:`pw_chiral_exact` (which rescales internally) or the Bessel limit
    for such arguments.
    """
    n = int(n)
    alpha = int(alpha)
    if n < 0 or alpha < 0:
        raise ValueError("n and alpha must be non-negative integers")
    if n > 10**6:
        raise ValueError("n above 1e6 is not supported")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("x must be finite")

    prev = np.ones_like(x)
    if n == 0:
        return prev if x.ndim else float(prev)
    cur = 1.0 + alpha - x
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, n):
            prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    if not np.all(np.isfinite(cur)):
        raise OverflowError(
            f"L_{n}^({alpha}) overflows for the given x; use the asymptotic form"
        )
    return cur if x.ndim else float(cur)


def _log_abs_laguerre1(n: int, x: np.ndarray) -> np.ndarray:
    """log|L_n^(1)(x)| with per-element rescaling, safe for any n and x >= 0."""
    log_scale = np.zeros_like(x)
    prev = np.ones_like(x)
    cur = 2.0 - x if n > 0 else prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 2 - x) * cur - (k + 1) * prev) / (k + 1)
        big = np.abs(cur) > _RESCALE
        if np.any(big):
            cur[big] /= _RESCALE
            prev[big] /= _RESCALE
            log_scale[big] += _LOG_RESCALE
    with np.errstate(divide="ignore"):
        return np.log(np.abs(cur)) + log_scale


# --------------------------------------------------------------------------
# Bessel functions J0 and J1
# --------------------------------------------------------------------------

_SERIES_MAX_X = 5.0


def _bessel_series(order: int, x: np.ndarray) -> np.ndarray:
    # terms peak near k ~ x/2; 40 terms reach 1e-30 relative for x <= 5
    q = -(x * x) / 4.0
    term = np.ones_like(x) if order == 0 else x / 2.0
    total = term.copy()
    for k in range(1, 40):
        term = term * q / (k * (k + order))
        total += term
    return total


def _bessel_miller(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """J0, J1 by Miller's backward recurrence normalized with J0 + 2 sum J_2k = 1."""
    xmax = float(np.max(x))
    m = int(xmax + 30 + 12 * xmax ** (1 / 3))
    m += m % 2
    j_next = np.zeros_like(x)
    j_cur = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    j0 = j1 = None
    for k in range(m, 0, -1):
        j_prev = (2 * k / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        # j_cur now holds J_{k-1}
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2 * j_cur
        if k - 1 == 1:
            j1 = j_cur.copy()
        big = np.abs(j_cur) > 1e250
        if np.any(big):
            j_cur[big] *= 1e-250
            j_next[big] *= 1e-250
            norm[big] *= 1e-250
            if j1 is not None:
                j1[big] *= 1e-250
    j0 = j_cur
    norm = norm + j0
    return j0 / norm, j1 / norm


def bessel_j(order: int, x):
    """Bessel function of the first kind, orders 0 and 1, for real x >= 0.

    Power series below x = 5, Miller backward recurrence above; absolute
    error stays below 1e-12 well past x = 50.
    """
    if order not in (0, 1):
        raise ValueError("only orders 0 and 1 are implemented")
    xa = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(xa)) or np.any(xa < 0):
        raise ValueError("x must be finite and non-negative")
    flat = np.atleast_1d(xa).ravel()
    out = np.empty_like(flat)
    small = flat <= _SERIES_MAX_X
    if np.any(small):
        out[small] = _bessel_series(order, flat[small])
    if np.any(~small):
        j0, j1 = _bessel_miller(flat[~small])
        out[~small] = j0 if order == 0 else j1
    out = out.reshape(xa.shape)
    return out if xa.ndim else float(out)


# --------------------------------------------------------------------------
# Bright-state populations
# --------------------------------------------------------------------------

def pw_chiral_exact(n_atoms: int, gamma: float, t):
    """Exact chiral bright-state population (1/N^2) e^{-gamma t} [L_{N-1}^(1)(gamma t)]^2."""
    n_atoms = int(n_atoms)
    if n_atoms < 1:
        raise ValueError("need at least one atom")
    if not (np.isfinite(gamma) and gamma > 0):
        raise ValueError("gamma must be positive")
    t = _check_nonneg_times(t)
    x = np.atleast_1d(gamma * t).astype(float)
    log_l = _log_abs_laguerre1(n_atoms - 1, x)
    with np.errstate(under="ignore"):
        pw = np.exp(2 * (log_l - math.log(n_atoms)) - x)
    pw = pw.reshape(t.shape)
    return pw if t.ndim else float(pw)


def _j1_ratio_series(u: np.ndarray) -> np.ndarray:
    # J1(2 sqrt(u)) / sqrt(u) = sum_k (-u)^k / (k! (k+1)!)
    term = np.ones_like(u)
    total = term.copy()
    for k in range(1, 30):
        term = term * (-u) / (k * (k + 1))
        total += term
    return total


def pw_chiral_asymptotic(params, t):
    """N -> infinity bright-state population J1(2 sqrt(kappa t))^2 / (kappa t).

    ``params`` is an :class:`AsymptoticParams` or a bare kappa.
    """
    kappa = _kappa(params)
    t = _check_nonneg_times(t)
    u = np.atleast_1d(kappa * t).astype(float)
    ratio = np.empty_like(u)
    small = u <= 1.0
    ratio[small] = _j1_ratio_series(u[small])
    big = ~small
    ratio[big] = bessel_j(1, 2 * np.sqrt(u[big])) / np.sqrt(u[big])
    pw = (ratio**2).reshape(t.shape)
    return pw if t.ndim else float(pw)


def pw_longtime(params, t):
    """Long-time algebraic law cos^2(2 sqrt(kappa t) - 3 pi/4) / (pi (kappa t)^{3/2}).

    Valid for kappa t >= 1 only.
    """
    kappa = _kappa(params)
    t = np.asarray(t, dtype=float)
    u = kappa * t
    if np.any(~np.isfinite(u)) or np.any(u < 1):
        raise ValueError("long-time law requires kappa t >= 1")
    pw = np.cos(2 * np.sqrt(u) - 0.75 * np.pi) ** 2 / (np.pi * u**1.5)
    return pw if t.ndim else float(pw)


def pw_superradiant(params, t):
    """Single-photon superradiant decay e^{-2 kappa t} of a sub-wavelength sample."""
    kappa = _kappa(params)
    t = _check_nonneg_times(t)
    pw = np.exp(-2 * kappa * t)
    return pw if t.ndim else float(pw)


def local_maxima(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Interior strict local maxima of a sampled curve."""
    x = np.asarray(x)
    y = np.asarray(y)
    idx = np.flatnonzero((y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:])) + 1
    return x[idx], y[idx]
