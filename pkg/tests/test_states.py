"""Unit tests for phase-space state construction and transforms."""

import math

import numpy as np
import pytest

from qlight import (
    GaussianState,
    StateError,
    displace,
    gaussian_p_function,
    make_state,
    marginal,
    parity_wigner_origin,
    photon_distribution,
    to_husimi,
    wigner,
)
from qlight.states import fock_expansion, husimi_overlap, position_density


def grid_value(grid, x, p):
    ix = int(np.argmin(np.abs(grid.x_axis - x)))
    ip = int(np.argmin(np.abs(grid.p_axis - p)))
    return grid.values[ix, ip]


def test_vacuum_state_and_heisenberg_guard():
    vac = make_state("vacuum")
    assert np.allclose(vac.cov, 0.25 * np.eye(2))
    with pytest.raises(StateError):
        GaussianState(np.zeros(2), 0.1 * np.eye(2))


def test_wigner_grids_normalize():
    for state in (make_state("vacuum"),
                  make_state("coherent", alpha=1 + 1j),
                  make_state("thermal", nbar=1.0),
                  make_state("fock", n=2),
                  make_state("cat", alpha=2.0)):
        w = wigner(state)
        assert w.integral() == pytest.approx(1.0, abs=2e-3)


def test_fock1_wigner_closed_form():
    axis = np.linspace(-4.0, 4.0, 321)
    w = wigner(make_state("fock", n=1), axis, axis)
    for x in (0.0, 0.25, 0.5):
        for p in (0.0, 0.3):
            r2 = x * x + p * p
            want = (2.0 / math.pi) * (4.0 * r2 - 1.0) * math.exp(-2.0 * r2)
            assert grid_value(w, x, p) == pytest.approx(want, abs=1e-9)


def test_coherent_wigner_peak():
    axis = np.linspace(-4.0, 4.0, 321)
    w = wigner(make_state("coherent", alpha=1 + 1j), axis, axis)
    assert grid_value(w, 1.0, 1.0) == pytest.approx(2.0 / math.pi, abs=1e-6)


def test_husimi_vacuum_origin():
    q = to_husimi(make_state("vacuum"))
    assert grid_value(q, 0.0, 0.0) == pytest.approx(1.0 / math.pi, abs=1e-6)


def test_husimi_fock_matches_overlap_oracle():
    state = make_state("fock", n=1)
    q = to_husimi(state)
    exact = husimi_overlap(state, q.x_axis, q.p_axis)
    assert np.max(np.abs(q.values - exact)) < 2e-3


def test_marginal_is_position_density():
    state = make_state("cat", alpha=2.0)
    w = wigner(state)
    m = marginal(w, 0.0)
    want = position_density(state, m.s_axis)
    assert np.max(np.abs(m.density - want)) < 2e-3
    # fringes on the orthogonal quadrature
    perp = marginal(w, math.pi / 2.0)
    assert np.min(np.diff(np.sign(np.diff(perp.density)))) < 0  # oscillates


def test_marginal_normalization():
    w = wigner(make_state("thermal", nbar=0.5))
    for theta in (0.0, 0.7, math.pi / 2):
        m = marginal(w, theta)
        ds = m.s_axis[1] - m.s_axis[0]
        assert float(np.sum(m.density) * ds) == pytest.approx(1.0, abs=2e-3)


def test_photon_distribution_kinds():
    pd = photon_distribution(make_state("coherent", alpha=2.0))
    assert pd.mean() == pytest.approx(4.0, abs=1e-8)
    assert pd.variance() == pytest.approx(4.0, abs=1e-6)
    pd = photon_distribution(make_state("thermal", nbar=1.5))
    assert pd.mean() == pytest.approx(1.5, abs=1e-6)
    assert pd.variance() == pytest.approx(1.5 + 1.5 ** 2, abs=1e-4)
    pd = photon_distribution(make_state("squeezed_vacuum", epsilon=0.5))
    assert np.allclose(pd.probs[1::2], 0.0)  # odd numbers absent
    pd = photon_distribution(make_state("fock", n=3))
    assert pd.probs[3] == pytest.approx(1.0)


def test_displaced_vacuum_is_coherent():
    fv = fock_expansion(make_state("vacuum"))
    disp = displace(fv, 1.0 + 0.5j)
    want = fock_expansion(make_state("coherent", alpha=1.0 + 0.5j))
    phase = disp.amps[0] / want.amps[0]
    assert np.max(np.abs(disp.amps - phase * want.amps)) < 1e-10


def test_displace_gaussian_shifts_mean_only():
    st = make_state("squeezed_vacuum", epsilon=0.25)
    out = displace(st, 2.0 - 1.0j)
    assert np.allclose(out.mean, [2.0, -1.0])
    assert np.allclose(out.cov, st.cov)


def test_p_function_classification():
    assert gaussian_p_function(make_state("coherent", alpha=1.0)).classical
    assert gaussian_p_function(make_state("thermal", nbar=0.3)).classical
    assert not gaussian_p_function(
        make_state("squeezed_vacuum", epsilon=0.5)).classical


def test_parity_matches_wigner_origin():
    for state in (make_state("fock", n=2), make_state("thermal", nbar=1.0)):
        pd = photon_distribution(state)
        w = wigner(state)
        assert parity_wigner_origin(pd) == pytest.approx(
            grid_value(w, 0.0, 0.0), abs=1e-6)


def test_fock_expansion_round_trip():
    fv = fock_expansion(make_state("coherent", alpha=1.2))
    pd = photon_distribution(fv)
    assert pd.mean() == pytest.approx(1.44, abs=1e-8)
    fv = fock_expansion(make_state("squeezed_vacuum", epsilon=0.5))
    assert np.allclose(fv.amps[1::2], 0.0)


def test_admixture_matches_hand_built_vector():
    eps = 0.05
    st = make_state("admixture", epsilon=eps, k=2)
    want = np.zeros(st.amps.size)
    want[0] = 1.0
    want[2] = eps
    want /= np.linalg.norm(want)
    assert np.allclose(st.amps, want)


def test_make_state_rejects_bad_input():
    with pytest.raises(StateError):
        make_state("nope")
    with pytest.raises(StateError):
        make_state("thermal", nbar=-1.0)
    with pytest.raises(StateError):
        make_state("squeezed_vacuum", epsilon=0.0)
    with pytest.raises(StateError):
        make_state("fock", n=-1)
