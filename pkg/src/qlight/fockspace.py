"""Truncated Fock-space numerics shared by the state and multimode modules.

Conventions: X = (a + a†)/2, P = (a - a†)/2i, [X, P] = i/2, vacuum
quadrature variance 1/4.  Oscillator wavefunctions and ladder matrices are
expressed in these units throughout.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

DEFAULT_TRUNCATION = 64


def destroy(dim: int) -> np.ndarray:
    """Annihilation operator a on a Fock space truncated at dim levels."""
    return np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(complex)


def create(dim: int) -> np.ndarray:
    """Creation operator a† on a Fock space truncated at dim levels."""
    return destroy(dim).conj().T


def quadratures(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Return the (X, P) matrices with [X, P] = i/2 (exact below the cutoff)."""
    a = destroy(dim)
    ad = a.conj().T
    return (a + ad) / 2.0, (a - ad) / 2.0j


def number_op(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim)).astype(complex)


def displacement_matrix(beta: complex, dim: int) -> np.ndarray:
    """Matrix exponential of beta a† - beta* a on the truncated space."""
    a = destroy(dim)
    return expm(beta * a.conj().T - np.conj(beta) * a)


def oscillator_wavefunctions(n_max: int, x: np.ndarray) -> np.ndarray:
    """Position wavefunctions psi_n(x) for n = 0..n_max, vacuum variance 1/4.

    psi_0(x) = (2/pi)^(1/4) exp(-x^2); higher levels by the stable Hermite
    recurrence.  Returns an array of shape (n_max + 1, len(x)).
    """
    x = np.asarray(x, dtype=float)
    psi = np.zeros((n_max + 1, x.size))
    psi[0] = (2.0 / np.pi) ** 0.25 * np.exp(-x * x)
    if n_max >= 1:
        # psi_n = sqrt(2/n) * (sqrt(2) x) psi_{n-1} - sqrt((n-1)/n) psi_{n-2}
        psi[1] = 2.0 * x * psi[0]
        for n in range(2, n_max + 1):
            psi[n] = (np.sqrt(2.0 / n) * (np.sqrt(2.0) * x) * psi[n - 1]
                      - np.sqrt((n - 1.0) / n) * psi[n - 2])
    return psi


def coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    """Fock amplitudes of |alpha>: c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!)."""
    n = np.arange(dim)
    log_fact = np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, dim)))))
    mag = np.exp(-0.5 * abs(alpha) ** 2 + n * np.log(abs(alpha)) - 0.5 * log_fact) \
        if alpha != 0 else np.where(n == 0, 1.0, 0.0)
    phase = np.exp(1j * n * np.angle(alpha)) if alpha != 0 else np.ones(dim)
    return mag * phase


def squeezed_vacuum_amplitudes(r: float, dim: int) -> np.ndarray:
    """Fock amplitudes of the squeezed vacuum with <X^2> = e^{-2r}/4.

    Only even photon numbers are populated:
    c_2m = (sqrt((2m)!) / (2^m m!)) (tanh r)^m / sqrt(cosh r), with the sign
    chosen so that positive r squeezes X.
    """
    c = np.zeros(dim, dtype=complex)
    t = np.tanh(r)
    c[0] = 1.0 / np.sqrt(np.cosh(r))
    for m in range(1, (dim - 1) // 2 + 1):
        # ratio c_{2m} / c_{2(m-1)} = -t * sqrt((2m-1)/(2m)) with our phase
        c[2 * m] = c[2 * m - 2] * (-t) * np.sqrt((2 * m - 1) / (2.0 * m))
    norm = np.linalg.norm(c)
    return c / norm


def tail_mass(amps: np.ndarray, keep: int) -> float:
    """Probability mass carried by amplitudes at index >= keep."""
    return float(np.sum(np.abs(amps[keep:]) ** 2))
