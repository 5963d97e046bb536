import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wgqed.kernels import (
    AtomEnsemble,
    WaveguideKind,
    build_kernels,
    kernels_from_propagator,
    propagator,
)

CHIRAL = WaveguideKind.CHIRAL
BIDI = WaveguideKind.BIDIRECTIONAL

phase_arrays = arrays(
    float, st.integers(1, 12),
    elements=st.floats(-50, 50, allow_nan=False, allow_infinity=False),
)


def test_propagator_coincident_atoms():
    assert propagator(CHIRAL, 0.3, 0.3) == pytest.approx(0.5j)
    assert propagator(BIDI, 0.3, 0.3) == pytest.approx(1j)


def test_propagator_chiral_half_wave():
    expected = 1j * np.exp(1j * np.pi)
    assert abs(propagator(CHIRAL, np.pi, 0.0) - expected) < 1e-15
    assert abs(propagator(CHIRAL, np.pi, 0.0) - (-1j)) < 1e-15
    # backward pair is not coupled
    assert propagator(CHIRAL, 0.0, np.pi) == 0


def test_propagator_bidirectional_symmetric():
    assert propagator(BIDI, 2.0, 0.5) == propagator(BIDI, 0.5, 2.0)


def test_bidirectional_close_pair():
    k = build_kernels(AtomEnsemble([0.0, 1e-9], 1.0, BIDI))
    assert abs(k.J[0, 1]) < 1e-8
    assert k.Gamma[0, 1] == pytest.approx(2.0)


@pytest.mark.parametrize("phases", [[0.0], [3.0, -1.0, 7.5], [0.0, 0.0, 2.0]])
def test_diagonal_decay_rates(phases):
    g = 0.7
    assert np.allclose(np.diag(build_kernels(AtomEnsemble(phases, g, CHIRAL)).Gamma), g)
    assert np.allclose(np.diag(build_kernels(AtomEnsemble(phases, g, BIDI)).Gamma), 2 * g)


def test_chiral_heff_direct_form():
    rng = np.random.default_rng(5)
    th = rng.uniform(-10, 10, 3)
    g = 1.3
    k = build_kernels(AtomEnsemble(th, g, CHIRAL))
    d = th[:, None] - th[None, :]
    direct = (g / 2j) * (np.sign(d) + 1) * np.exp(1j * d)
    assert np.max(np.abs(k.H_eff - direct)) < 1e-14


@pytest.mark.parametrize("kind", [CHIRAL, BIDI])
def test_closed_form_matches_propagator_relations(kind):
    th = np.random.default_rng(1).normal(0, 20, 9)
    th[3] = th[4]  # coincident pair
    ens = AtomEnsemble(th, 0.9, kind)
    a, b = build_kernels(ens), kernels_from_propagator(ens)
    assert np.allclose(a.J, b.J, atol=1e-14)
    assert np.allclose(a.Gamma, b.Gamma, atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(phases=phase_arrays, kind=st.sampled_from([CHIRAL, BIDI]),
       gamma=st.floats(0.01, 10))
def test_hermitian_and_psd(phases, kind, gamma):
    k = build_kernels(AtomEnsemble(phases, gamma, kind))
    scale = max(1.0, np.abs(k.J).max())
    assert np.max(np.abs(k.J - k.J.conj().T)) <= 1e-14 * scale
    assert np.max(np.abs(k.Gamma - k.Gamma.conj().T)) <= 1e-14 * np.abs(k.Gamma).max()
    eig = np.linalg.eigvalsh(k.Gamma)
    assert eig.min() >= -1e-12 * np.linalg.norm(k.Gamma, 2)
    assert np.array_equal(k.H_eff, k.J - 0.5j * k.Gamma)


@settings(max_examples=40, deadline=None)
@given(phases=phase_arrays)
def test_chiral_gamma_rank_one(phases):
    g = 1.0
    k = build_kernels(AtomEnsemble(phases, g, CHIRAL))
    sv = np.linalg.svd(k.Gamma, compute_uv=False)
    if sv.size > 1:
        assert sv[1] <= 1e-12 * g * phases.size


@settings(max_examples=40, deadline=None)
@given(phases=phase_arrays)
def test_bidirectional_gamma_rank_two(phases):
    k = build_kernels(AtomEnsemble(phases, 1.0, BIDI))
    sv = np.linalg.svd(k.Gamma, compute_uv=False)
    if sv.size > 2:
        assert sv[2] <= 1e-12 * 2 * phases.size


def test_chiral_gauge_depends_only_on_order():
    rng = np.random.default_rng(3)
    a = np.sort(rng.uniform(0, 100, 6))
    b = np.sort(rng.uniform(-40, 5, 6))

    def gauged(th):
        H = build_kernels(AtomEnsemble(th, 1.0, CHIRAL)).H_eff
        U = np.diag(np.exp(1j * th))
        return U.conj().T @ H @ U

    assert np.allclose(gauged(a), gauged(b), atol=1e-13)


@pytest.mark.parametrize("bad", [dict(phases=[]), dict(phases=[0.0], gamma=0.0),
                                 dict(phases=[0.0], gamma=-1.0),
                                 dict(phases=[np.nan])])
def test_invalid_ensembles(bad):
    with pytest.raises(ValueError):
        AtomEnsemble(**bad)


def test_kind_parsing():
    assert WaveguideKind.parse("Chiral") is CHIRAL
    with pytest.raises(ValueError):
        WaveguideKind.parse("sideways")
