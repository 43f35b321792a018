"""Stochastic classical light fields: synthesis, spectra, and correlations.

Conventions used throughout this module:
  * Time series are uniformly sampled complex envelopes relative to a
    carrier at carrier_freq (Hz).
  * Spectral densities are one-sided in f >= 0 and per-Hz, so that
    integral_0^inf S_x(f) df = Var(x) for a band-limited fluctuation x.
    Field spectra are the exception: they live on an absolute frequency
    axis around the carrier and integrate to the mean power <|E|^2>.
  * With this normalization white frequency noise of level S_nu0 produces
    a Lorentzian field spectrum of full width pi * S_nu0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import signal
from scipy.integrate import trapezoid

SPECTRUM_KINDS = ("field", "intensity", "amplitude", "phase", "frequency")
CORRELATION_KINDS = ("G1", "G2_I", "G2_TP", "amplitude", "phase")


class FieldError(ValueError):
    """Invalid time series, spectrum, or model specification."""


@dataclass(frozen=True)
class ComplexTimeSeries:
    """Uniformly sampled complex envelope; t_n = t0 + n*dt."""

    samples: np.ndarray
    dt: float
    carrier_freq: float = 0.0
    t0: float = 0.0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size < 2:
            raise FieldError("need at least 2 samples")
        if not self.dt > 0:
            raise FieldError("dt must be positive")
        if not np.all(np.isfinite(samples)):
            raise FieldError("samples must be finite")

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.samples.size)

    @property
    def duration(self) -> float:
        return self.dt * self.samples.size


@dataclass(frozen=True)
class SpectralDensity:
    """One-sided spectral density tagged by the quantity it describes."""

    freqs: np.ndarray
    values: np.ndarray
    kind: str

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "values", values)
        if self.kind not in SPECTRUM_KINDS:
            raise FieldError("unknown spectrum kind %r" % self.kind)
        if freqs.ndim != 1 or freqs.size != values.size:
            raise FieldError("freqs and values must be 1D and equal length")
        if np.any(np.diff(freqs) <= 0):
            raise FieldError("freqs must be strictly ascending")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise FieldError("spectral values must be finite and >= 0")


@dataclass(frozen=True)
class CorrelationFunction:
    """Two-sided lag correlation tagged by kind."""

    lags: np.ndarray
    values: np.ndarray
    kind: str

    def __post_init__(self):
        lags = np.asarray(self.lags, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "values", values)
        if self.kind not in CORRELATION_KINDS:
            raise FieldError("unknown correlation kind %r" % self.kind)
        if lags.size != values.size:
            raise FieldError("lags and values must match")
        izero = np.argmin(np.abs(lags))
        if self.kind in ("G1", "G2_I") and abs(np.imag(values[izero])) > 1e-9 * (
                1 + abs(values[izero])):
            raise FieldError("%s must be real at zero lag" % self.kind)
        if self.kind == "G2_I":
            if np.any(np.abs(np.imag(values)) > 1e-9 * (1 + np.abs(values))):
                raise FieldError("G2_I must be real")
            if np.any(np.real(values) < -1e-12):
                raise FieldError("G2_I must be non-negative")


# ---------------------------------------------------------------------------
# synthesis

def _centered_grid(duration: float, dt: float) -> np.ndarray:
    n = int(round(duration / dt))
    if n % 2 == 0:
        n += 1
    return (np.arange(n) - (n - 1) / 2.0) * dt


def synthesize_field(model: str, duration: float, dt: float, seed: int = 0,
                     *, amplitude: float = 1.0, s_nu0: float = 0.0,
                     s_a0: float = 0.0, gamma: float = 1.0,
                     amp_sigma: float = 0.1, amp_tau: float = 1.0,
                     carrier_freq: float = 0.0) -> ComplexTimeSeries:
    """Generate a complex field record from one of the built-in noise models.

    Models: "constant", "white_fm" (white frequency noise of one-sided
    level s_nu0), "delta_amplitude" (delta-correlated real amplitude of
    one-sided level s_a0), "gaussian_amplitude_white_fm" (OU amplitude
    fluctuations on top of a white-FM phase), and the deterministic decay
    fields "e1", "e2", "e3".
    """
    if dt <= 0 or duration <= 0:
        raise FieldError("duration and dt must be positive")
    if duration < 100 * dt:
        raise FieldError("record too short: need duration >= 100 dt")
    if s_nu0 < 0:
        raise FieldError("frequency-noise level must be >= 0")
    rng = np.random.default_rng(seed)
    n = int(round(duration / dt))

    if model == "constant":
        return ComplexTimeSeries(np.full(n, amplitude, dtype=complex), dt,
                                 carrier_freq)
    if model == "white_fm":
        phi = _white_fm_phase(rng, n, dt, s_nu0)
        return ComplexTimeSeries(amplitude * np.exp(1j * phi), dt, carrier_freq)
    if model == "delta_amplitude":
        a = rng.normal(0.0, math.sqrt(s_a0 / (2.0 * dt)), n)
        return ComplexTimeSeries(a.astype(complex), dt, carrier_freq)
    if model == "gaussian_amplitude_white_fm":
        phi = _white_fm_phase(rng, n, dt, s_nu0)
        rho = math.exp(-dt / amp_tau)
        a = np.empty(n)
        a[0] = rng.normal(0.0, amp_sigma)
        kicks = rng.normal(0.0, amp_sigma * math.sqrt(1 - rho * rho), n - 1)
        for i in range(1, n):
            a[i] = rho * a[i - 1] + kicks[i - 1]
        return ComplexTimeSeries((amplitude + a) * np.exp(1j * phi), dt,
                                 carrier_freq)
    if model in ("e1", "e2", "e3"):
        t = _centered_grid(duration, dt)
        # step convention: theta(0) = 1 on both branches, so e3(0) = 2
        e1 = np.where(t <= 0, np.exp(gamma * t), 0.0)
        e2 = np.where(t >= 0, np.exp(-gamma * t), 0.0)
        env = {"e1": e1, "e2": e2, "e3": e1 + e2}[model]
        return ComplexTimeSeries(env.astype(complex), dt, carrier_freq,
                                 t0=float(t[0]))
    raise FieldError("unknown model %r" % model)


def _white_fm_phase(rng, n: int, dt: float, s_nu0: float) -> np.ndarray:
    """Phase random walk with <Delta phi^2(tau)> = 2 pi^2 s_nu0 tau."""
    nu = rng.normal(0.0, math.sqrt(s_nu0 / (2.0 * dt)), n)
    phi = np.empty(n)
    phi[0] = 0.0
    np.cumsum(2.0 * np.pi * nu[:-1] * dt, out=phi[1:])
    return phi


# ---------------------------------------------------------------------------
# spectra

def field_spectrum(series: ComplexTimeSeries) -> SpectralDensity:
    """Power spectrum of the field around its carrier.

    Computed as the transform of the circular autocorrelation of the
    record, which coincides with the periodogram |E~(f)|^2 dt / N.  The
    grid integral over the absolute-frequency axis equals <|E|^2>.
    """
    e = series.samples
    if e.size < 4:
        raise FieldError("need at least 4 samples for a spectrum")
    spec = np.fft.fftshift(np.abs(np.fft.fft(e)) ** 2) * series.dt / e.size
    freqs = series.carrier_freq + np.fft.fftshift(np.fft.fftfreq(e.size, series.dt))
    return SpectralDensity(freqs, spec, "field")


def _one_sided_periodogram(x: np.ndarray, dt: float, window: bool = False):
    """One-sided per-Hz periodogram of a real fluctuation (mean removed).

    The optional Hann window (power-normalized) tames the leakage of
    nonstationary records such as a phase random walk, whose endpoint
    mismatch otherwise contaminates every bin.
    """
    n = x.size
    x = x - np.mean(x)
    scale = 1.0
    if window:
        win = np.hanning(n)
        x = x * win
        scale = n / np.sum(win ** 2)
    xt = np.fft.rfft(x)
    freqs = np.fft.rfftfreq(n, dt)
    pwr = 2.0 * np.abs(xt) ** 2 * dt / n * scale
    if n % 2 == 0:
        pwr[-1] /= 2.0
    return freqs[1:], pwr[1:]


def unwrap_phase(series: ComplexTimeSeries) -> np.ndarray:
    """Continuous phase of the record; rejects under-sampled records."""
    if np.any(np.abs(series.samples) == 0):
        raise FieldError("phase undefined: record contains zero samples")
    wrapped = np.angle(series.samples)
    step = np.angle(np.exp(1j * np.diff(wrapped)))
    if np.any(np.abs(step) > np.pi / 2):
        raise FieldError("phase under-sampled: per-sample jump exceeds pi/2")
    return wrapped[0] + np.concatenate(([0.0], np.cumsum(step)))


def spectral_density(series: ComplexTimeSeries, kind: str) -> SpectralDensity:
    """One-sided spectrum of intensity, amplitude, phase, or frequency.

    The frequency spectrum is obtained from the phase spectrum through the
    exact differentiation rule S_nu(f) = f^2 S_phi(f), so the two are
    consistent bin by bin on any record.
    """
    if kind == "intensity":
        x = np.abs(series.samples) ** 2
    elif kind == "amplitude":
        x = np.abs(series.samples)
    elif kind in ("phase", "frequency"):
        x = unwrap_phase(series)
    else:
        raise FieldError("unknown spectrum kind %r" % kind)
    freqs, pwr = _one_sided_periodogram(np.asarray(x, float), series.dt,
                                        window=(kind in ("phase", "frequency")))
    if kind == "frequency":
        return SpectralDensity(freqs, freqs ** 2 * pwr, "frequency")
    return SpectralDensity(freqs, pwr, kind)


# ---------------------------------------------------------------------------
# correlations

def correlation(series: ComplexTimeSeries, kind: str,
                max_lag: float) -> CorrelationFunction:
    """Finite-record correlation estimate on a two-sided lag grid.

    Unbiased normalization: each lag is divided by its overlap count.
    G1(tau) = <E*(t) E(t+tau)>, G2_I = <I(t) I(t+tau)>,
    G2_TP(tau) = <E*^2(t+tau) E^2(t)>.
    """
    if max_lag >= series.duration / 4.0:
        raise FieldError("max_lag must be below a quarter of the record")
    k = int(round(max_lag / series.dt))
    n = series.samples.size
    if k >= n:
        raise FieldError("lag grid exceeds the record")
    e = series.samples
    if kind == "G1":
        a, b = e, e
    elif kind == "G2_I":
        a = b = (np.abs(e) ** 2).astype(complex)
    elif kind == "G2_TP":
        a, b = np.conj(e) ** 2, np.conj(e) ** 2
    elif kind == "amplitude":
        a = b = np.abs(e).astype(complex)
    elif kind == "phase":
        a = b = unwrap_phase(series).astype(complex)
    else:
        raise FieldError("unknown correlation kind %r" % kind)
    # raw[k] = sum_t conj(a[t]) b[t+k] for k = -(n-1)..(n-1)
    raw = signal.fftconvolve(np.conj(a)[::-1], b, mode="full")
    counts = n - np.abs(np.arange(-(n - 1), n))
    full = raw / counts
    mid = n - 1
    vals = full[mid - k: mid + k + 1]
    lags = series.dt * np.arange(-k, k + 1)
    if kind in ("G2_I", "amplitude", "phase"):
        vals = np.real(vals).astype(complex)
        vals = np.where(np.real(vals) < 0, 0.0, vals) if kind == "G2_I" else vals
    return CorrelationFunction(lags, vals, kind)


def amplitude_corr_from_intensity(g2i: CorrelationFunction,
                                  mean_intensity: float) -> CorrelationFunction:
    """Invert the Gaussian fourth-moment relation
    <I(t)I(t+tau)> = <I>^2 + 2 <A(t)A(t+tau)>^2 for the amplitude correlation."""
    if g2i.kind != "G2_I":
        raise FieldError("expected a G2_I correlation")
    radicand = (np.real(g2i.values) - mean_intensity ** 2) / 2.0
    bad = np.flatnonzero(radicand < -1e-12 * max(1.0, mean_intensity ** 2))
    if bad.size:
        raise FieldError("not Gaussian-consistent: G2_I below <I>^2 at lag "
                         "%g s" % g2i.lags[bad[0]])
    vals = np.sqrt(np.clip(radicand, 0.0, None))
    return CorrelationFunction(g2i.lags, vals, "amplitude")


def gaussian_even_moment(n: int, var: float) -> float:
    """<x^(2n)> = (2n-1)!! var^n for a centered Gaussian variable."""
    if n < 1 or var < 0:
        raise FieldError("need n >= 1 and var >= 0")
    return float(math.factorial(2 * n) / (2 ** n * math.factorial(n)) * var ** n)


# ---------------------------------------------------------------------------
# lineshape

def coherence_factor(phase_sd: SpectralDensity, tau: float) -> float:
    """<exp(i Delta phi(tau))> = exp(-int_0^inf df S_phi(f)(1 - cos 2 pi f tau))
    for Gaussian phase noise, by trapezoid quadrature on the stored grid."""
    if phase_sd.kind != "phase":
        raise FieldError("expected a phase spectral density")
    if tau == 0.0:
        return 1.0
    f, s = phase_sd.freqs, phase_sd.values
    if f.size >= 2 and s[0] > 0 and s[1] > 0 and f[0] > 0:
        slope = -math.log(s[1] / s[0]) / math.log(f[1] / f[0])
        if slope >= 3.0:
            raise FieldError("phase spectrum diverges too fast at low "
                             "frequency: coherence integral does not converge")
    integrand = s * (1.0 - np.cos(2.0 * np.pi * f * tau))
    return float(math.exp(-trapezoid(integrand, f)))


def lineshape_from_noise(amp_corr: CorrelationFunction,
                         phase_sd: SpectralDensity,
                         carrier: float) -> SpectralDensity:
    """Field spectrum of a field with uncorrelated amplitude and phase noise:
    transform of <A(t+tau)A(t)> times the Gaussian phase coherence factor."""
    if amp_corr.kind != "amplitude":
        raise FieldError("expected an amplitude correlation")
    lags = amp_corr.lags
    dlag = lags[1] - lags[0]
    if np.max(np.abs(np.diff(lags) - dlag)) > 1e-9 * dlag:
        raise FieldError("lag grid must be uniform")
    coh = np.array([coherence_factor(phase_sd, t) for t in np.abs(lags)])
    g1 = np.real(amp_corr.values) * coh
    m = lags.size
    spec = np.real(np.fft.fftshift(np.fft.fft(np.fft.ifftshift(g1)))) * dlag
    spec = np.clip(spec, 0.0, None)
    freqs = carrier + np.fft.fftshift(np.fft.fftfreq(m, dlag))
    return SpectralDensity(freqs, spec, "field")


@dataclass(frozen=True)
class LinewidthSummary:
    hwhm: float
    fwhm: float
    cutoff_fc: float
    residual_phase_var: float
    degenerate: bool


def white_fm_linewidth(s_nu0: float) -> LinewidthSummary:
    """Lorentzian linewidth of a white-frequency-noise field, plus the cutoff
    frequency above which the phase modulation index drops below one and the
    residual phase variance carried by that high-frequency tail."""
    if s_nu0 < 0:
        raise FieldError("noise level must be >= 0")
    return LinewidthSummary(
        hwhm=math.pi * s_nu0 / 2.0,
        fwhm=math.pi * s_nu0,
        cutoff_fc=math.pi ** 2 * s_nu0,
        residual_phase_var=1.0 / math.pi ** 2,
        degenerate=(s_nu0 == 0.0),
    )


def _half_power_crossings(f, v):
    ipk = int(np.argmax(v))
    half = v[ipk] / 2.0
    left = right = None
    for i in range(ipk, 0, -1):
        if v[i - 1] < half <= v[i]:
            left = f[i - 1] + (f[i] - f[i - 1]) * (half - v[i - 1]) / (v[i] - v[i - 1])
            break
    for i in range(ipk, f.size - 1):
        if v[i + 1] < half <= v[i]:
            right = f[i] + (f[i + 1] - f[i]) * (v[i] - half) / (v[i] - v[i + 1])
            break
    if left is None or right is None:
        raise FieldError("no half-power crossings found")
    return left, right


def fit_lorentzian_fwhm(spec: SpectralDensity) -> float:
    """Full width at half maximum of a single-peaked spectrum.

    A least-squares Lorentzian fit (peak, center, half-width), seeded from
    the half-power crossings; the fit is robust against the peak-bin bias
    that plagues a direct crossing read-out on noisy periodograms.
    """
    from scipy.optimize import curve_fit

    f = spec.freqs
    v = spec.values
    # seed the fit from a lightly smoothed copy so a single noisy bin
    # cannot masquerade as the peak
    width = max(1, v.size // 400)
    kernel = np.ones(2 * width + 1) / (2 * width + 1)
    smooth = np.convolve(v, kernel, mode="same")
    left, right = _half_power_crossings(f, smooth)
    hwhm0 = (right - left) / 2.0
    c0 = (right + left) / 2.0

    def lorentz(x, peak, center, hw):
        return peak * hw ** 2 / ((x - center) ** 2 + hw ** 2)

    sel = np.abs(f - c0) < 20 * hwhm0
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            popt, _ = curve_fit(lorentz, f[sel], v[sel],
                                p0=[np.max(v), c0, hwhm0], maxfev=5000)
        return float(2.0 * abs(popt[2]))
    except RuntimeError:
        return float(right - left)


# ---------------------------------------------------------------------------
# absorption

def absorption_rate(series: ComplexTimeSeries, omega0: float, gamma: float,
                    dipole2: float) -> float:
    """Perturbative excitation rate of a two-level absorber with decay gamma,
    detuned by omega0 (rad/s) from the carrier:
    R = dipole2 * Re int_0^T dtau exp(i omega0 tau - gamma tau) G1(tau)."""
    if gamma < 0:
        raise FieldError("decay rate must be >= 0")
    max_lag = series.duration / 4.0 - 2 * series.dt
    g1 = correlation(series, "G1", max_lag)
    pos = g1.lags >= 0
    tau = g1.lags[pos]
    integrand = np.exp((1j * omega0 - gamma) * tau) * g1.values[pos]
    return float(dipole2 * np.real(trapezoid(integrand, tau)))
