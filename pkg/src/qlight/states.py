"""Single-mode states in Gaussian and Fock form, and their phase-space maps.

Quadrature convention: X = (a + a†)/2, P = (a - a†)/2i, [X, P] = i/2,
vacuum variance 1/4, Wigner function normalized over dX dP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid
from scipy.ndimage import map_coordinates
from scipy.signal import fftconvolve
from scipy.special import eval_genlaguerre
from scipy.stats import poisson

from .fockspace import (
    DEFAULT_TRUNCATION,
    coherent_amplitudes,
    displacement_matrix,
    oscillator_wavefunctions,
    quadratures,
    squeezed_vacuum_amplitudes,
    tail_mass,
)

VACUUM_VAR = 0.25
_HEISENBERG_SLACK = 1e-12


class StateError(ValueError):
    """Invalid state specification or a state violating its invariants."""


@dataclass(frozen=True)
class GaussianState:
    """Mean quadrature vector and covariance for 1 or 2 modes."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        if mean.ndim != 1 or mean.size not in (2, 4):
            raise StateError("mean must have 2 or 4 entries (1 or 2 modes)")
        if cov.shape != (mean.size, mean.size):
            raise StateError("covariance shape does not match mean")
        if not np.allclose(cov, cov.T, atol=1e-10):
            raise StateError("covariance must be symmetric")
        if np.any(np.linalg.eigvalsh(cov) <= 0):
            raise StateError("covariance must be positive definite")
        for m in range(self.modes):
            block = cov[2 * m:2 * m + 2, 2 * m:2 * m + 2]
            if np.linalg.det(block) < 1.0 / 16.0 - _HEISENBERG_SLACK:
                raise StateError("mode %d violates the uncertainty bound" % m)

    @property
    def modes(self) -> int:
        return self.mean.size // 2


@dataclass(frozen=True)
class FockVector:
    """Truncated photon-number amplitudes c_0..c_N of a pure state."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        object.__setattr__(self, "amps", amps)
        if amps.ndim != 1 or amps.size < 1:
            raise StateError("amps must be a non-empty 1D array")
        if abs(np.sum(np.abs(amps) ** 2) - 1.0) > 1e-10:
            raise StateError("Fock amplitudes are not normalized")

    @property
    def truncation(self) -> int:
        return self.amps.size - 1


@dataclass(frozen=True)
class WignerGrid:
    """W(X, P) sampled on a rectangular grid; values[i, j] = W(x_i, p_j)."""

    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray

    @property
    def dx(self) -> float:
        return float(self.x_axis[1] - self.x_axis[0])

    @property
    def dp(self) -> float:
        return float(self.p_axis[1] - self.p_axis[0])

    def integral(self) -> float:
        return float(np.sum(self.values) * self.dx * self.dp)


@dataclass(frozen=True)
class PhotonDistribution:
    """Photon-number probabilities p_0..p_N."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "probs", probs)
        if np.any(probs < -1e-12) or np.any(probs > 1 + 1e-12):
            raise StateError("probabilities out of [0, 1]")
        if abs(probs.sum() - 1.0) > 1e-10:
            raise StateError("photon distribution does not sum to 1")

    def mean(self) -> float:
        return float(np.dot(np.arange(self.probs.size), self.probs))

    def variance(self) -> float:
        n = np.arange(self.probs.size)
        return float(np.dot(n * n, self.probs) - self.mean() ** 2)


@dataclass(frozen=True)
class QuadratureDistribution:
    """Probability density of the rotated quadrature X(theta)."""

    theta: float
    s_axis: np.ndarray
    density: np.ndarray


@dataclass(frozen=True)
class PFunctionResult:
    """Gaussian P-distribution parameters, or a nonclassicality flag."""

    classical: bool
    mean: np.ndarray | None = None
    cov: np.ndarray | None = None


# ---------------------------------------------------------------------------
# state construction

def make_state(kind: str, *, alpha: complex = 0.0, nbar: float = 0.0,
               epsilon: float = 1.0, n: int = 0, k: int = 1,
               truncation: int = DEFAULT_TRUNCATION):
    """Build a named state.

    Gaussian kinds (vacuum, coherent, thermal, squeezed_vacuum) return a
    GaussianState; fock, cat and admixture return a normalized FockVector.
    """
    if kind == "vacuum":
        return GaussianState(np.zeros(2), VACUUM_VAR * np.eye(2))
    if kind == "coherent":
        return GaussianState(np.array([np.real(alpha), np.imag(alpha)]),
                             VACUUM_VAR * np.eye(2))
    if kind == "thermal":
        if nbar < 0:
            raise StateError("thermal occupation must be >= 0")
        return GaussianState(np.zeros(2), (nbar / 2.0 + VACUUM_VAR) * np.eye(2))
    if kind == "squeezed_vacuum":
        if epsilon <= 0:
            raise StateError("squeezing parameter must be > 0")
        return GaussianState(np.zeros(2),
                             np.diag([epsilon / 4.0, 1.0 / (4.0 * epsilon)]))
    if kind == "fock":
        if n < 0 or n > truncation:
            raise StateError("photon number out of range")
        amps = np.zeros(truncation + 1, dtype=complex)
        amps[n] = 1.0
        return FockVector(amps)
    if kind == "cat":
        plus = coherent_amplitudes(alpha, truncation + 1)
        minus = coherent_amplitudes(-alpha, truncation + 1)
        if tail_mass(plus, truncation - 4) > 1e-10:
            raise StateError("cat amplitude too large for truncation")
        amps = plus + minus
        return FockVector(amps / np.linalg.norm(amps))
    if kind == "admixture":
        if k not in (1, 2):
            raise StateError("admixture supports k in {1, 2}")
        amps = np.zeros(truncation + 1, dtype=complex)
        amps[0] = 1.0
        amps[k] = epsilon
        return FockVector(amps / np.linalg.norm(amps))
    raise StateError("unknown state kind %r" % kind)


def _fock_second_moments(state: FockVector) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature mean vector and covariance of a FockVector."""
    dim = state.amps.size
    X, P = quadratures(dim)
    c = state.amps
    mx = float(np.real(c.conj() @ X @ c))
    mp = float(np.real(c.conj() @ P @ c))
    xx = float(np.real(c.conj() @ (X @ X) @ c)) - mx * mx
    pp = float(np.real(c.conj() @ (P @ P) @ c)) - mp * mp
    xp = float(np.real(c.conj() @ ((X @ P + P @ X) / 2.0) @ c)) - mx * mp
    return np.array([mx, mp]), np.array([[xx, xp], [xp, pp]])


def _default_axes(state, points: int = 201) -> np.ndarray:
    if isinstance(state, GaussianState):
        mean, cov = state.mean, state.cov
    else:
        mean, cov = _fock_second_moments(state)
    half = float(np.max(np.abs(mean)) + 5.0 * np.sqrt(np.max(np.diag(cov))))
    return np.linspace(-half, half, points)


# ---------------------------------------------------------------------------
# Wigner / Husimi evaluation

def _gaussian_pdf_grid(mean, cov, x_axis, p_axis) -> np.ndarray:
    X, P = np.meshgrid(x_axis, p_axis, indexing="ij")
    d = np.stack([X - mean[0], P - mean[1]], axis=-1)
    prec = np.linalg.inv(cov)
    quad = np.einsum("...i,ij,...j->...", d, prec, d)
    return np.exp(-0.5 * quad) / (2.0 * np.pi * np.sqrt(np.linalg.det(cov)))


def _fock_wigner_grid(amps: np.ndarray, x_axis, p_axis) -> np.ndarray:
    """Laguerre-series Wigner function of a pure Fock-basis state."""
    X, P = np.meshgrid(x_axis, p_axis, indexing="ij")
    abar = X - 1j * P
    r2 = X * X + P * P
    w = np.zeros_like(r2)
    idx = np.flatnonzero(np.abs(amps) > 1e-14)
    for m in idx:
        w += np.abs(amps[m]) ** 2 * (-1.0) ** m * eval_genlaguerre(m, 0, 4 * r2)
    for ii, m in enumerate(idx):
        for n_ in idx[ii + 1:]:
            pref = (-1.0) ** m * math.exp(0.5 * (math.lgamma(m + 1) - math.lgamma(n_ + 1)))
            w += 2.0 * np.real(amps[n_] * np.conj(amps[m]) * pref
                               * (2.0 * abar) ** (n_ - m)
                               * eval_genlaguerre(m, n_ - m, 4 * r2))
    return (2.0 / np.pi) * np.exp(-2.0 * r2) * w


def wigner(state, x_axis=None, p_axis=None) -> WignerGrid:
    """Evaluate W(X, P); Gaussian states directly, Fock states by series."""
    if x_axis is None:
        x_axis = _default_axes(state)
    if p_axis is None:
        p_axis = x_axis
    x_axis = np.asarray(x_axis, dtype=float)
    p_axis = np.asarray(p_axis, dtype=float)
    if isinstance(state, GaussianState):
        if state.modes != 1:
            raise StateError("wigner supports single-mode states")
        values = _gaussian_pdf_grid(state.mean, state.cov, x_axis, p_axis)
    else:
        values = _fock_wigner_grid(state.amps, x_axis, p_axis)
    grid = WignerGrid(x_axis, p_axis, values)
    if abs(grid.integral() - 1.0) > 1e-3:
        raise StateError("axes too narrow: Wigner normalization check failed")
    return grid


def to_husimi(state, x_axis=None, p_axis=None) -> WignerGrid:
    """Husimi-Q as the Wigner function convolved with the vacuum."""
    if isinstance(state, GaussianState):
        if x_axis is None:
            widened = GaussianState(state.mean, state.cov + VACUUM_VAR * np.eye(2))
            x_axis = _default_axes(widened)
        if p_axis is None:
            p_axis = x_axis
        values = _gaussian_pdf_grid(state.mean, state.cov + VACUUM_VAR * np.eye(2),
                                    np.asarray(x_axis, float), np.asarray(p_axis, float))
        return WignerGrid(np.asarray(x_axis, float), np.asarray(p_axis, float), values)
    w = wigner(state, x_axis, p_axis)
    half_x = (w.x_axis[-1] - w.x_axis[0]) / 2.0
    kx = np.arange(-half_x, half_x + w.dx / 2, w.dx)
    half_p = (w.p_axis[-1] - w.p_axis[0]) / 2.0
    kp = np.arange(-half_p, half_p + w.dp / 2, w.dp)
    KX, KP = np.meshgrid(kx, kp, indexing="ij")
    kernel = (2.0 / np.pi) * np.exp(-2.0 * (KX ** 2 + KP ** 2))
    q = fftconvolve(w.values, kernel, mode="same") * w.dx * w.dp
    q /= np.sum(q) * w.dx * w.dp
    return WignerGrid(w.x_axis, w.p_axis, q)


def husimi_overlap(state: FockVector, x_axis, p_axis) -> np.ndarray:
    """Exact Q(alpha) = |<alpha|psi>|^2 / pi, used as an independent check."""
    X, P = np.meshgrid(np.asarray(x_axis, float), np.asarray(p_axis, float),
                       indexing="ij")
    abar = X - 1j * P
    n = np.arange(state.amps.size)
    log_fact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, state.amps.size)))))
    overlap = np.zeros_like(abar, dtype=complex)
    nz = np.abs(abar) > 0
    for ni in np.flatnonzero(np.abs(state.amps) > 1e-16):
        term = np.zeros_like(abar, dtype=complex)
        if ni == 0:
            term[:] = 1.0
        else:
            term[nz] = np.exp(ni * np.log(abar[nz]) - 0.5 * log_fact[ni])
        overlap += state.amps[ni] * term
    return np.abs(overlap) ** 2 * np.exp(-(X ** 2 + P ** 2)) / np.pi


def marginal(grid: WignerGrid, theta: float) -> QuadratureDistribution:
    """Radon projection of the Wigner grid onto the axis at angle theta."""
    if abs(grid.integral() - 1.0) > 1e-2:
        raise StateError("marginal requires a normalized Wigner grid")
    s = grid.x_axis
    u = grid.p_axis
    S, U = np.meshgrid(s, u, indexing="ij")
    x = S * np.cos(theta) - U * np.sin(theta)
    p = S * np.sin(theta) + U * np.cos(theta)
    ix = (x - grid.x_axis[0]) / grid.dx
    ip = (p - grid.p_axis[0]) / grid.dp
    vals = map_coordinates(grid.values, [ix.ravel(), ip.ravel()],
                           order=1, mode="constant", cval=0.0)
    density = vals.reshape(S.shape).sum(axis=1) * grid.dp
    total = trapezoid(density, s)
    if abs(total - 1.0) > 2e-3:
        raise StateError("marginal failed its normalization check")
    return QuadratureDistribution(theta, s, density)


# ---------------------------------------------------------------------------
# P-function, parity, displacement, photon statistics

def gaussian_p_function(state: GaussianState) -> PFunctionResult:
    """Gaussian P parameters cov - I/4, or a flag when that is not a density."""
    if state.modes != 1:
        raise StateError("gaussian_p_function supports single-mode states")
    cov_p = state.cov - VACUUM_VAR * np.eye(2)
    if np.all(np.linalg.eigvalsh(cov_p) >= -1e-12):
        return PFunctionResult(True, state.mean.copy(), np.clip(cov_p, None, None))
    return PFunctionResult(False)


def parity_wigner_origin(pd: PhotonDistribution) -> float:
    """W(0,0) = (2/pi) sum (-1)^n p_n from photon-counting statistics."""
    if pd.probs[-1] > 1e-8:
        raise StateError("photon distribution tail too heavy for the parity sum")
    signs = (-1.0) ** np.arange(pd.probs.size)
    return float(2.0 / np.pi * np.dot(signs, pd.probs))


def displace(state, beta: complex):
    """Phase-space displacement by beta = dX + i dP."""
    if isinstance(state, GaussianState):
        if state.modes != 1:
            raise StateError("displace supports single-mode states")
        shifted = state.mean + np.array([np.real(beta), np.imag(beta)])
        return GaussianState(shifted, state.cov.copy())
    dim = state.amps.size
    out = displacement_matrix(beta, dim) @ state.amps
    if tail_mass(out, dim - max(2, dim // 8)) > 1e-8:
        raise StateError("displacement overflows the Fock truncation")
    return FockVector(out / np.linalg.norm(out))


def photon_distribution(state, truncation: int | None = None) -> PhotonDistribution:
    """Photon-number statistics of a FockVector or named Gaussian family."""
    if isinstance(state, FockVector):
        p = np.abs(state.amps) ** 2
        return PhotonDistribution(p / p.sum())
    if not isinstance(state, GaussianState) or state.modes != 1:
        raise StateError("photon_distribution supports single-mode states")
    mean, cov = state.mean, state.cov
    if np.allclose(cov, VACUUM_VAR * np.eye(2), atol=1e-10):
        amp2 = float(mean @ mean)
        dim = truncation or _poisson_dim(amp2)
        p = poisson.pmf(np.arange(dim + 1), amp2)
        return PhotonDistribution(p / p.sum())
    isotropic = np.allclose(cov, cov[0, 0] * np.eye(2), atol=1e-10)
    if np.allclose(mean, 0.0, atol=1e-12) and isotropic:
        nbar = 2.0 * cov[0, 0] - 0.5
        dim = truncation or max(8, int(math.ceil(-23.0 / math.log(nbar / (nbar + 1.0)))) if nbar > 0 else 8)
        n = np.arange(dim + 1)
        p = nbar ** n / (nbar + 1.0) ** (n + 1) if nbar > 0 else np.where(n == 0, 1.0, 0.0)
        return PhotonDistribution(p / p.sum())
    diagonal = abs(cov[0, 1]) < 1e-12
    if np.allclose(mean, 0.0, atol=1e-12) and diagonal and \
            abs(np.linalg.det(cov) - 1.0 / 16.0) < 1e-10:
        r = -0.5 * math.log(4.0 * cov[0, 0])
        dim = truncation or DEFAULT_TRUNCATION
        amps = squeezed_vacuum_amplitudes(r, dim + 1)
        p = np.abs(amps) ** 2
        return PhotonDistribution(p / p.sum())
    raise StateError("photon statistics implemented for coherent, thermal "
                     "and squeezed-vacuum Gaussian states only")


def _poisson_dim(mean: float) -> int:
    if mean == 0:
        return 1
    dim = int(mean + 12.0 * math.sqrt(mean) + 24)
    while poisson.sf(dim, mean) > 1e-12:
        dim = int(dim * 1.5) + 8
    return dim


def fock_expansion(state, truncation: int = DEFAULT_TRUNCATION) -> FockVector:
    """Exact Fock amplitudes of a pure Gaussian state (coherent or squeezed)."""
    if isinstance(state, FockVector):
        return state
    mean, cov = state.mean, state.cov
    if np.allclose(cov, VACUUM_VAR * np.eye(2), atol=1e-10):
        alpha = complex(mean[0], mean[1])
        amps = coherent_amplitudes(alpha, truncation + 1)
        return FockVector(amps / np.linalg.norm(amps))
    if np.allclose(mean, 0.0, atol=1e-12) and abs(cov[0, 1]) < 1e-12 and \
            abs(np.linalg.det(cov) - 1.0 / 16.0) < 1e-10:
        r = -0.5 * math.log(4.0 * cov[0, 0])
        return FockVector(squeezed_vacuum_amplitudes(r, truncation + 1))
    raise StateError("no pure Fock expansion for this Gaussian state")


def position_density(state: FockVector, x_axis) -> np.ndarray:
    """|psi(x)|^2 of a pure state, an analytic oracle for X-marginals."""
    psi = state.amps @ oscillator_wavefunctions(state.truncation,
                                                np.asarray(x_axis, float))
    return np.abs(psi) ** 2
