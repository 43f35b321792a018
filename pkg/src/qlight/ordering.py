"""Operator-ordering calculus for photon-number moments and g2(0).

Symmetric ordering averages an operator product over all orderings:
Sym(n) = n + 1/2 and Sym(n^2) = n^2 + n + 1/2.  Wigner-function moments
are symmetric-ordered, which is what makes <X^2> + <P^2> the right
phase-space estimate of the energy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import FockVector, GaussianState, PhotonDistribution


class OrderingError(ValueError):
    pass


@dataclass(frozen=True)
class OrderingMoments:
    """Photon-number moments in symmetric and normal order."""

    sym_n: float
    sym_n2: float
    n: float
    n2: float

    def __post_init__(self):
        if self.sym_n < 0.5 - 1e-12:
            raise OrderingError("sym_n below the vacuum floor 1/2")
        if abs(self.n - (self.sym_n - 0.5)) > 1e-9 * (1 + abs(self.n)):
            raise OrderingError("inconsistent moments: n != sym_n - 1/2")
        if abs(self.n2 - (self.sym_n2 - self.n - 0.5)) > 1e-9 * (1 + abs(self.n2)):
            raise OrderingError("inconsistent moments: n2 != sym_n2 - n - 1/2")
        if self.n2 < -1e-12:
            raise OrderingError("n2 must be >= 0")

    @classmethod
    def from_symmetric(cls, sym_n: float, sym_n2: float) -> "OrderingMoments":
        return cls(sym_n, sym_n2, sym_n - 0.5, sym_n2 - sym_n)


def sym_moments_gaussian(state: GaussianState, k: int = 2) -> OrderingMoments:
    """Symmetric-ordered <n> and <n^2> of a single-mode Gaussian state.

    <Sym n> is the raw second moment <X^2> + <P^2>; <Sym n^2> is
    <(X^2 + P^2)^2> expanded by the Gaussian (Isserlis) factorization with
    mean terms retained.
    """
    if state.modes != 1:
        raise OrderingError("single-mode states only")
    if k not in (1, 2):
        raise OrderingError("symmetric powers implemented for k <= 2")
    mx, mp = state.mean
    cxx, cxp = state.cov[0]
    _, cpp = state.cov[1]
    sym_n = mx * mx + cxx + mp * mp + cpp
    if k == 1:
        return OrderingMoments.from_symmetric(sym_n, sym_n * sym_n)
    x4 = mx ** 4 + 6 * mx ** 2 * cxx + 3 * cxx ** 2
    p4 = mp ** 4 + 6 * mp ** 2 * cpp + 3 * cpp ** 2
    x2p2 = (mx ** 2 * mp ** 2 + mx ** 2 * cpp + mp ** 2 * cxx
            + 4 * mx * mp * cxp + cxx * cpp + 2 * cxp ** 2)
    return OrderingMoments.from_symmetric(sym_n, x4 + 2 * x2p2 + p4)


def sym_moments_fock(state: FockVector | PhotonDistribution) -> OrderingMoments:
    """Exact symmetric moments from photon-number statistics."""
    if isinstance(state, FockVector):
        probs = np.abs(state.amps) ** 2
    else:
        probs = state.probs
    n_axis = np.arange(probs.size)
    n = float(np.dot(n_axis, probs))
    n2 = float(np.dot(n_axis ** 2, probs))
    return OrderingMoments(n + 0.5, n2 + n + 0.5, n, n2)


def g2_zero(moments: OrderingMoments) -> float:
    """Zero-delay intensity correlation from symmetric moments:
    g2(0) = (<Sym n^2> - 2 <Sym n> + 1/2) / (<Sym n> - 1/2)^2."""
    if moments.sym_n <= 0.5 + 1e-12:
        raise OrderingError("g2(0) undefined for vacuum: no photons to "
                            "correlate")
    return (moments.sym_n2 - 2.0 * moments.sym_n + 0.5) / (moments.sym_n - 0.5) ** 2


def g2_zero_fock(state: FockVector | PhotonDistribution) -> float:
    """Exact g2(0) = sum n(n-1) p_n / (sum n p_n)^2."""
    if isinstance(state, FockVector):
        probs = np.abs(state.amps) ** 2
    else:
        probs = state.probs
    n_axis = np.arange(probs.size)
    mean = float(np.dot(n_axis, probs))
    if mean <= 0:
        raise OrderingError("g2(0) undefined: zero mean photon number")
    return float(np.dot(n_axis * (n_axis - 1), probs)) / mean ** 2


def g2_zero_gaussian(state: GaussianState) -> float:
    """g2(0) of a Gaussian state through the Wigner-moment route."""
    return g2_zero(sym_moments_gaussian(state))


def erroneous_g2_unordered(moments: OrderingMoments) -> float:
    """The mistake of skipping normal ordering: <n^2>/<n>^2, which is
    1 + 1/<n> even for a coherent state."""
    if moments.n <= 0:
        raise OrderingError("undefined for zero mean photon number")
    return moments.n2 / moments.n ** 2


def ordering_energy_table(n: int) -> tuple[float, float, float]:
    """Energy of Fock level n under normal, symmetric, and anti-normal
    ordering: (n, n + 1/2, n + 1)."""
    if n < 0:
        raise OrderingError("photon number must be >= 0")
    return (float(n), n + 0.5, n + 1.0)


def squeezed_g2_law(sym_n: float) -> float:
    """Squeezed-vacuum relation g2(0) = 3 + 1/(<Sym n> - 1/2)."""
    if sym_n <= 0.5:
        raise OrderingError("needs sym_n > 1/2")
    return 3.0 + 1.0 / (sym_n - 0.5)
