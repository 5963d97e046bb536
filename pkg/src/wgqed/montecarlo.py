"""Disorder-averaged decay curves over random atomic configurations.

Each realization draws its positions from its own generator keyed by
``(seed, realization index)``, so results do not depend on execution order or
on the number of worker threads.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .dynamics import DecayCurve, simulate_decay
from .kernels import AtomEnsemble, WaveguideKind

THREADS_ENV = "WGQED_THREADS"


@dataclass(frozen=True)
class Gaussian:
    mean: float = 0.0
    sigma_phase: float = 1.0

    def __post_init__(self):
        if not self.sigma_phase > 0:
            raise ValueError("Gaussian sigma_phase must be positive")


@dataclass(frozen=True)
class Uniform:
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        if not self.hi > self.lo:
            raise ValueError("Uniform needs hi > lo")


@dataclass(frozen=True)
class Fixed:
    phases: tuple

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))


PositionDistribution = Union[Gaussian, Uniform, Fixed]


@dataclass
class AverageResult:
    mean_curve: DecayCurve
    stderr_p_w: np.ndarray
    m_realizations: int
    seed: int
    per_realization: Optional[list] = None


def realization_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based generator for one realization."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(ss))


def sample_positions(dist: PositionDistribution, n: int, rng: np.random.Generator) -> np.ndarray:
    if n < 1:
        raise ValueError("need at least one atom")
    if isinstance(dist, Fixed):
        if len(dist.phases) != n:
            raise ValueError(f"Fixed distribution has {len(dist.phases)} phases, need {n}")
        return np.array(dist.phases, dtype=float)
    if isinstance(dist, Gaussian):
        return rng.normal(dist.mean, dist.sigma_phase, size=n)
    if isinstance(dist, Uniform):
        return rng.uniform(dist.lo, dist.hi, size=n)
    raise TypeError(f"unsupported distribution {dist!r}")


def default_workers() -> int:
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {value!r}") from None
    return 1


def average_decay(
    kind,
    dist: PositionDistribution,
    n: int,
    m: int,
    times: Sequence[float],
    seed: int,
    gamma: float = 1.0,
    keep_realizations: bool = False,
    workers: Optional[int] = None,
    atol: float = 1e-10,
) -> AverageResult:
    """Average ``m`` independent :func:`simulate_decay` runs on sampled ensembles."""
    kind = WaveguideKind.parse(kind)
    if m < 1:
        raise ValueError("need at least one realization")
    times = np.asarray(times, dtype=float)
    workers = default_workers() if workers is None else max(1, int(workers))

    def one(index: int) -> DecayCurve:
        phases = sample_positions(dist, n, realization_rng(seed, index))
        return simulate_decay(AtomEnsemble(phases, gamma, kind), times, atol=atol)

    if workers > 1 and m > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            curves = list(pool.map(one, range(m)))
    else:
        curves = [one(i) for i in range(m)]

    def mean_and_se(rows):
        # (T, m) contiguous so the reduction is numpy's pairwise sum in index order
        stack = np.ascontiguousarray(np.array(rows).T)
        mean = stack.sum(axis=1) / m
        if m > 1:
            se = np.sqrt(((stack - mean[:, None]) ** 2).sum(axis=1) / (m - 1) / m)
        else:
            se = np.zeros_like(mean)
        return mean, se

    p_w, se_w = mean_and_se([c.p_w for c in curves])
    p_exc, _ = mean_and_se([c.p_exc for c in curves])
    p_d = mean_and_se([c.p_d for c in curves])[0] if n == 2 else None
    mean_curve = DecayCurve(times=times, p_w=p_w, p_exc=p_exc, p_d=p_d,
                            gamma=float(gamma), n_atoms=n)
    return AverageResult(
        mean_curve=mean_curve,
        stderr_p_w=se_w,
        m_realizations=m,
        seed=int(seed),
        per_realization=curves if keep_realizations else None,
    )
