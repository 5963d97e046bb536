import numpy as np
import pytest

from wgqed.analytic import bessel_j, pw_chiral_asymptotic
from wgqed.continuum import (
    GaussianProfile,
    UniformInterval,
    analytic_continuum_field,
    default_x_grid,
    pw_from_field,
    solve_continuum,
)
from wgqed.montecarlo import Gaussian, average_decay

N = 100.0
KAPPA = N  # gamma = 1


def kappa_grid(kt_max, n):
    return np.linspace(0, kt_max, n) / KAPPA


def test_analytic_field_special_values():
    x = np.linspace(0, 50, 11)
    assert np.allclose(analytic_continuum_field(x, 0.0, 2.0, 50.0), np.exp(1j * x))
    assert np.allclose(analytic_continuum_field(0.0, np.linspace(0, 9, 5), 2.0, 50.0), 1.0)
    with pytest.raises(ValueError):
        analytic_continuum_field(60.0, 1.0, 2.0, 50.0)
    with pytest.raises(ValueError):
        analytic_continuum_field(10.0, -1.0, 2.0, 50.0)


def test_initial_column_is_plane_wave():
    prof = UniformInterval(200.0, N)
    x = default_x_grid(prof)
    field = solve_continuum(prof, 1.0, x, [0.0, 0.01])
    assert np.max(np.abs(field.psi[0] - np.exp(1j * x))) <= 1e-14
    assert pw_from_field(field, prof).p_w[0] == pytest.approx(1.0, abs=1e-12)


def test_under_resolved_grid_rejected():
    prof = UniformInterval(100.0, N)
    with pytest.raises(ValueError, match="under-resolved"):
        solve_continuum(prof, 1.0, np.linspace(0, 100, 101), [0.0, 0.01])


def test_bad_time_grid_rejected():
    prof = UniformInterval(10.0, N)
    with pytest.raises(ValueError):
        solve_continuum(prof, 1.0, default_x_grid(prof), [0.0, 0.02, 0.01])


def test_small_sample_limit():
    prof = UniformInterval(1e-3, N)
    x = default_x_grid(prof)
    t = kappa_grid(3, 31)
    field = solve_continuum(prof, 1.0, x, t)
    expected = np.exp(1j * x)[None, :] * np.exp(-KAPPA * t)[:, None]
    assert np.max(np.abs(field.psi - expected)) <= 1e-3
    assert np.max(np.abs(pw_from_field(field, prof).p_w - np.exp(-2 * KAPPA * t))) <= 1e-3


@pytest.fixture(scope="module")
def uniform_solution():
    prof = UniformInterval(5000.0, N)
    x = default_x_grid(prof, 0.2)
    t = kappa_grid(4, 21)
    return prof, x, t, solve_continuum(prof, 1.0, x, t)


def test_uniform_field_matches_bessel_solution(uniform_solution):
    prof, x, t, field = uniform_solution
    exact = analytic_continuum_field(x[-1], t[-1], KAPPA, prof.sigma_phase)
    assert exact == pytest.approx(np.exp(1j * x[-1]) * bessel_j(0, 4.0))
    assert abs(field.psi[-1, -1] - exact) <= 1e-3


def test_uniform_bright_population(uniform_solution):
    prof, x, t, field = uniform_solution
    curve = pw_from_field(field, prof)
    i = np.argmin(np.abs(KAPPA * t - 1.0))
    assert curve.p_w[i] == pytest.approx(bessel_j(1, 2.0) ** 2, abs=1e-4)
    assert np.max(np.abs(curve.p_w - pw_chiral_asymptotic(KAPPA, t))) <= 1e-4
    assert np.all(np.diff(curve.p_exc) <= 1e-9)


def test_field_magnitude_bounded_for_smooth_profile():
    prof = GaussianProfile(500.0, N)
    field = solve_continuum(prof, 1.0, default_x_grid(prof, 0.2), kappa_grid(20, 21))
    assert np.max(np.abs(field.psi)) <= 1 + 1e-6


def test_time_step_converged(uniform_solution):
    prof, x, t, field = uniform_solution
    finer = solve_continuum(prof, 1.0, x, t, max_step=0.025 / KAPPA)
    assert np.max(np.abs(finer.psi - field.psi)) <= 1e-6


def test_quadrature_convergence():
    prof = UniformInterval(1000.0, N)
    t = kappa_grid(20, 41)
    p = [pw_from_field(solve_continuum(prof, 1.0, default_x_grid(prof, h), t), prof).p_w
         for h in (0.1, 0.05)]
    assert np.max(np.abs(p[0] - p[1])) <= 1e-4


def test_distribution_independence():
    t = kappa_grid(20, 41)
    curves = []
    for prof in (UniformInterval(2000.0, N), GaussianProfile(1000.0, N)):
        field = solve_continuum(prof, 1.0, default_x_grid(prof, 0.2), t)
        curves.append(pw_from_field(field, prof).p_w)
    assert np.sqrt(np.mean((curves[0] - curves[1]) ** 2)) <= 0.02


def test_chiral_kernel_reproduces_bessel_field():
    # forward-only kernel has the Bessel field as its exact solution at any sample size
    prof = UniformInterval(300.0, N)
    x = default_x_grid(prof, 0.05)
    t = kappa_grid(10, 11)
    field = solve_continuum(prof, 1.0, x, t, kind="chiral")
    exact = analytic_continuum_field(x[None, :], t[:, None], KAPPA, prof.sigma_phase)
    assert np.max(np.abs(field.psi - exact)) <= 1e-4


def test_continuum_matches_disorder_average():
    t = kappa_grid(20, 41)
    prof = GaussianProfile(1000.0, N)
    field = solve_continuum(prof, 1.0, default_x_grid(prof, 0.2), t)
    cont = pw_from_field(field, prof).p_w
    mc = average_decay("bidirectional", Gaussian(0, 1000.0), int(N), 100, t, seed=4)
    assert np.sqrt(np.mean((cont - mc.mean_curve.p_w) ** 2)) <= 0.05


def test_profile_validation():
    with pytest.raises(ValueError):
        UniformInterval(0.0, 10.0)
    with pytest.raises(ValueError):
        GaussianProfile(1.0, -2.0)
