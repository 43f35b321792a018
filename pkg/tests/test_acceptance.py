"""Acceptance gate: one test per release criterion.

Each test states its tolerance inline and asserts it directly, so the
pytest -v report reads as a pass/fail line per criterion.  Criterion 3 is
split into its two independently checkable clauses; the clause asserting
that the summed two-sided decay field shares the one-sided fields'
spectrum is known to fail (see the repository notes outside this package
for the analysis) and is intentionally left failing rather than loosened.
"""

import math

import numpy as np
import pytest

from qlight import classical as cl
from qlight import (
    GaussianState,
    apply_beam_splitter,
    apply_channel,
    epr_commutator_check,
    g2_zero,
    g2_zero_fock,
    make_beam_splitter,
    make_channel,
    make_state,
    noise_figure,
    noise_figure_numeric,
    ordering_energy_table,
    parity_wigner_origin,
    photon_distribution,
    reconstruct_wigner,
    sample_direct,
    sample_heterodyne,
    sample_homodyne,
    sideband_state,
    simulate_tomography,
    sym_moments_fock,
    sym_moments_gaussian,
    unbalanced_interferometer,
    wigner,
)
from qlight.fockspace import destroy
from qlight.multimode import two_mode_product
from qlight.ordering import OrderingError
from qlight.states import displace, fock_expansion


def grid_value(grid, x, p):
    ix = int(np.argmin(np.abs(grid.x_axis - x)))
    ip = int(np.argmin(np.abs(grid.p_axis - p)))
    return grid.values[ix, ip]


def test_criterion_01_white_fm_linewidth_within_10pct():
    # 100 seeds, S_nu0 = 5, 10 s at dt = 1e-4; FWHM within 10% of 5 pi
    s_nu0 = 5.0
    acc = None
    for seed in range(100):
        field = cl.synthesize_field("white_fm", 10.0, 1e-4, seed=seed,
                                    s_nu0=s_nu0)
        spec = cl.field_spectrum(field)
        acc = spec.values if acc is None else acc + spec.values
    fitted = cl.fit_lorentzian_fwhm(
        cl.SpectralDensity(spec.freqs, acc / 100.0, "field"))
    assert abs(fitted - math.pi * s_nu0) <= 0.1 * math.pi * s_nu0


def test_criterion_02_lineshape_pipeline_l1_within_3pct():
    # lineshape_from_noise vs the closed-form Lorentzian, L1 <= 3% of power
    s_nu0 = 5.0
    f = np.linspace(1e-3, 2e3, 50000)
    s_phi = cl.SpectralDensity(f, s_nu0 / f ** 2, "phase")
    lags = np.arange(-2048, 2049) * 5e-4
    amp = cl.CorrelationFunction(lags, np.ones(lags.size), "amplitude")
    line = cl.lineshape_from_noise(amp, s_phi, 0.0)
    hw = math.pi * s_nu0 / 2.0
    closed = (s_nu0 / 2.0) / (line.freqs ** 2 + hw ** 2)
    df = line.freqs[1] - line.freqs[0]
    l1 = float(np.sum(np.abs(line.values - closed)) * df)
    assert l1 <= 0.03  # total power is 1


def test_criterion_03_decay_field_spectra_and_correlations():
    # passing clauses: the two one-sided decay fields share a spectrum to
    # 1% of peak, while their two-photon correlations differ by > 10%
    e1 = cl.synthesize_field("e1", 60.0, 0.005, gamma=1.0)
    e2 = cl.synthesize_field("e2", 60.0, 0.005, gamma=1.0)
    s1 = cl.field_spectrum(e1)
    s2 = cl.field_spectrum(e2)
    peak = np.max(s1.values)
    assert np.max(np.abs(s1.values - s2.values)) <= 0.01 * peak
    c1 = cl.correlation(e1, "G2_TP", 10.0)
    c3 = cl.correlation(cl.synthesize_field("e3", 60.0, 0.005, gamma=1.0),
                        "G2_TP", 10.0)
    cpk = np.max(np.abs(c1.values))
    assert np.max(np.abs(c1.values - c3.values)) > 0.10 * cpk


def test_criterion_03_summed_field_spectrum_matches():
    # the summed field e3 = e1 + e2 is asserted by the release checklist
    # to share their spectrum pointwise to 1% of peak
    e1 = cl.synthesize_field("e1", 60.0, 0.005, gamma=1.0)
    e3 = cl.synthesize_field("e3", 60.0, 0.005, gamma=1.0)
    s1 = cl.field_spectrum(e1)
    s3 = cl.field_spectrum(e3)
    peak = np.max(s1.values)
    assert np.max(np.abs(s1.values - s3.values)) <= 0.01 * peak


def test_criterion_04_wigner_closed_forms():
    # quoted origin values to 1e-6; coherent peak and cat normalization
    w0 = wigner(make_state("vacuum"))
    assert grid_value(w0, 0, 0) == pytest.approx(2.0 / math.pi, abs=1e-6)
    w1 = wigner(make_state("fock", n=1))
    assert grid_value(w1, 0, 0) == pytest.approx(-2.0 / math.pi, abs=1e-6)
    wth = wigner(make_state("thermal", nbar=1.0))
    assert grid_value(wth, 0, 0) == pytest.approx(1.0 / (1.5 * math.pi),
                                                  abs=1e-6)
    axis = np.linspace(-4.0, 4.0, 321)
    wc = wigner(make_state("coherent", alpha=1 + 1j), axis, axis)
    assert grid_value(wc, 1.0, 1.0) == pytest.approx(2.0 / math.pi, abs=1e-6)
    wcat = wigner(make_state("cat", alpha=2.0))
    assert wcat.integral() == pytest.approx(1.0, abs=1e-3)


def test_criterion_05_parity_sum_identity():
    # parity sum equals W(0,0) to 1e-6; displaced scan to 1e-4 on a cross
    for state in (make_state("vacuum"), make_state("fock", n=1),
                  make_state("thermal", nbar=0.5),
                  make_state("thermal", nbar=2.0)):
        pd = photon_distribution(state)
        w = wigner(state)
        assert parity_wigner_origin(pd) == pytest.approx(
            grid_value(w, 0, 0), abs=1e-6)
    fock1 = fock_expansion(make_state("fock", n=1))
    cross = [(0.0, 0.0)] + [(s, 0.0) for s in (-0.5, -0.25, 0.25, 0.5)] \
        + [(0.0, s) for s in (-0.5, -0.25, 0.25, 0.5)]
    for x, p in cross:
        moved = displace(fock1, -(x + 1j * p))
        scanned = parity_wigner_origin(photon_distribution(moved))
        r2 = x * x + p * p
        closed = (2.0 / math.pi) * (4.0 * r2 - 1.0) * math.exp(-2.0 * r2)
        assert scanned == pytest.approx(closed, abs=1e-4)


def test_criterion_06_photon_counting_statistics():
    # 1e5 shots: coherent Fano 1 +- 3%, thermal variance 20 +- 5%
    coh = sample_direct(make_state("coherent", alpha=3.0), 100000, seed=1)
    assert coh.var() / coh.mean() == pytest.approx(1.0, abs=0.03)
    th = sample_direct(make_state("thermal", nbar=4.0), 100000, seed=2)
    assert th.var() == pytest.approx(20.0, rel=0.05)


def test_criterion_07_heterodyne_homodyne_ordering_gap():
    # heterodyne adds exactly half a vacuum unit: gap 1/4 +- 10%
    states = (make_state("vacuum"),
              make_state("coherent", alpha=1.0 + 0.5j),
              make_state("thermal", nbar=0.5))
    for i, state in enumerate(states):
        hom = sample_homodyne(state, 0.0, 100000, seed=10 + i).values.var()
        het = sample_heterodyne(state, 100000, seed=20 + i)[:, 0].var()
        assert het - hom == pytest.approx(0.25, rel=0.10)
    for n in (0, 1, 7):
        assert ordering_energy_table(n) == (n, n + 0.5, n + 1.0)


def test_criterion_08_tomography_vacuum_and_single_photon():
    # vacuum 16 x 1e4: L1(W) <= 0.1; fock(1) 32 x 1e5: W(0,0) < 0
    data = simulate_tomography(make_state("vacuum"), 16, 10000, seed=0)
    rec = reconstruct_wigner(data)
    truth = wigner(make_state("vacuum"), rec.grid.x_axis, rec.grid.p_axis)
    l1 = float(np.sum(np.abs(rec.grid.values - truth.values))
               * rec.grid.dx * rec.grid.dp)
    assert l1 <= 0.1
    data = simulate_tomography(make_state("fock", n=1), 32, 100000, seed=1)
    rec = reconstruct_wigner(data)
    assert grid_value(rec.grid, 0.0, 0.0) < 0.0


def test_criterion_09_g2_table():
    # coherent 1, thermal 2 (exact); squeezed 0.5 -> 11 vs Fock oracle to
    # 1e-6; fock(1) -> 0; vacuum raises
    assert g2_zero(sym_moments_gaussian(
        make_state("coherent", alpha=1.0))) == pytest.approx(1.0, abs=1e-12)
    assert g2_zero(sym_moments_gaussian(
        make_state("thermal", nbar=1.0))) == pytest.approx(2.0, abs=1e-12)
    sq = make_state("squeezed_vacuum", epsilon=0.5)
    analytic = g2_zero(sym_moments_gaussian(sq))
    oracle = g2_zero(sym_moments_fock(fock_expansion(sq)))
    assert analytic == pytest.approx(11.0, abs=1e-10)
    assert abs(analytic - oracle) <= 1e-6
    assert g2_zero_fock(make_state("fock", n=1)) == pytest.approx(0.0,
                                                                  abs=1e-14)
    with pytest.raises(OrderingError):
        g2_zero(sym_moments_gaussian(make_state("vacuum")))


def test_criterion_10_weak_admixture_squeezing():
    # |0> + eps|2>: quadrature variance (1 + 2 sqrt(2) eps)/4 + O(eps^2),
    # mean amplitude unchanged (zero)
    eps = 0.05
    state = make_state("admixture", epsilon=eps, k=2)
    dim = state.amps.size
    a = destroy(dim)
    x = (a + a.conj().T) / 2.0
    psi = state.amps
    mean_x = float(np.real(psi.conj() @ x @ psi))
    var_x = float(np.real(psi.conj() @ (x @ x) @ psi)) - mean_x ** 2
    assert abs(mean_x) <= 1e-12
    drift = var_x - (1.0 + 2.0 * math.sqrt(2.0) * eps) / 4.0
    assert abs(drift) <= 2.0 * eps ** 2


def test_criterion_11_stokes_and_epr():
    # Stokes relations to 1e-12 with reflection phases summing to pi
    for kind in ("symmetric", "asymmetric"):
        bs = make_beam_splitter(kind, 0.5)
        assert abs(np.conj(bs.r1) * bs.r1 + np.conj(bs.t1) * bs.t2
                   - 1.0) <= 1e-12
        assert abs(np.conj(bs.r1) * bs.t1 + np.conj(bs.t1) * bs.r2) <= 1e-12
        p1, p2 = bs.reflection_phases()
        assert (p1 + p2) % (2.0 * math.pi) == pytest.approx(math.pi,
                                                            abs=1e-12)
    # truncated-operator commutators to 1e-10
    assert max(epr_commutator_check(dim=12).values()) <= 1e-10
    # coherent inputs give uncorrelated outputs to 1e-12
    bs = make_beam_splitter("symmetric", 0.5)
    joint = two_mode_product(make_state("coherent", alpha=1.0),
                             make_state("coherent", alpha=0.7j))
    out = apply_beam_splitter(bs, joint)
    assert np.max(np.abs(out.cov[:2, 2:])) <= 1e-12
    # twin eps = 0.1 squeezed inputs: Var(X3 + X4) = 0.05 exactly
    eps = 0.1
    p_sq = GaussianState(np.zeros(2), np.diag([1.0 / (4 * eps), eps / 4.0]))
    x_sq = make_state("squeezed_vacuum", epsilon=eps)
    out = apply_beam_splitter(make_beam_splitter("asymmetric", 0.5),
                              two_mode_product(p_sq, x_sq))
    sum_x = np.array([1.0, 0.0, 1.0, 0.0])
    assert sum_x @ out.cov @ sum_x == pytest.approx(eps / 2.0, abs=1e-12)


def test_criterion_12_channel_noise_figures():
    # closed forms vs numeric SNR to 1e-12 on 20 parameters
    params = []
    for g in np.linspace(1.0, 10.0, 5):
        params += [("attenuation", 1.0 / g), ("amplification", g),
                   ("squeezing", g), ("phase_conjugation", g)]
    assert len(params) == 20
    for kind, p in params:
        assert abs(noise_figure(kind, p)
                   - noise_figure_numeric(kind, p)) <= 1e-12
    # the 3 dB quantum limit at G = 1e3, within 1e-3 of 1/2
    assert noise_figure("amplification", 1e3) == pytest.approx(0.5, abs=1e-3)
    assert noise_figure("phase_conjugation", 1e3) == pytest.approx(0.5,
                                                                   abs=1e-3)
    # phase-sensitive gain keeps the minimum uncertainty product 1/16
    for g in (1.5, 4.0, 100.0):
        out = apply_channel(make_channel("squeezing", g), make_state("vacuum"))
        assert out.cov[0, 0] * out.cov[1, 1] == pytest.approx(1.0 / 16.0,
                                                              rel=1e-12)


def test_criterion_13_sideband_interferometer():
    omega0 = 2.0 * math.pi * 3e14
    omega_s = 2.0 * math.pi * 1e7
    rep = unbalanced_interferometer(sideband_state(1.0, 0.1), omega0, omega_s)
    assert rep.output1_variance > 0.25
    assert rep.output2_variance > 0.25
    assert rep.difference_variance < 0.25
    flat = unbalanced_interferometer(sideband_state(1.0, 1.0), omega0,
                                     omega_s)
    for v in (flat.output1_variance, flat.output2_variance,
              flat.difference_variance):
        assert v == pytest.approx(0.25, abs=1e-12)
