"""Two-mode linear optics: beam splitters, Bogoliubov channels, sidebands.

A beam splitter is a passive unitary on two modes; a Bogoliubov map is the
general linear mixing of (a, b, a-dagger, b-dagger) that preserves the
commutator, covering attenuation, amplification, phase-sensitive gain, and
phase conjugation as special cases.  Quadrature convention as everywhere
in this package: vacuum variance 1/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import ComplexTimeSeries
from .fockspace import destroy
from .states import GaussianState, VACUUM_VAR

C_LIGHT = 299792458.0

TwoModeGaussianState = GaussianState


class ModeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# beam splitters

@dataclass(frozen=True)
class BeamSplitter:
    """Amplitude coefficients: out1 = t1 in1 + r1 in2, out2 = r2 in1 + t2 in2."""

    t1: complex
    t2: complex
    r1: complex
    r2: complex

    def __post_init__(self):
        for t, r in ((self.t1, self.r1), (self.t2, self.r2)):
            if abs(abs(t) ** 2 + abs(r) ** 2 - 1.0) > 1e-12:
                raise ModeError("|r|^2 + |t|^2 must equal 1")
        s1 = np.conj(self.r1) * self.r1 + np.conj(self.t1) * self.t2
        s2 = np.conj(self.r1) * self.t1 + np.conj(self.t1) * self.r2
        if abs(s1 - 1.0) > 1e-12 or abs(s2) > 1e-12:
            raise ModeError("coefficients violate the Stokes relations")

    @property
    def mode_matrix(self) -> np.ndarray:
        return np.array([[self.t1, self.r1], [self.r2, self.t2]])

    def reflection_phases(self) -> tuple[float, float]:
        """Phases of r1, r2 relative to the transmission coefficients."""
        rho1 = float(np.angle(self.r1) - np.angle(self.t1))
        rho2 = float(np.angle(self.r2) - np.angle(self.t2))
        return rho1, rho2


def make_beam_splitter(kind: str, transmittance: float) -> BeamSplitter:
    """Build a symmetric (r = i|r|) or asymmetric (r1 = -r2 real) splitter."""
    if not 0.0 <= transmittance <= 1.0:
        raise ModeError("transmittance must lie in [0, 1]")
    t = math.sqrt(transmittance)
    r = math.sqrt(1.0 - transmittance)
    if kind == "symmetric":
        return BeamSplitter(t, t, 1j * r, 1j * r)
    if kind == "asymmetric":
        return BeamSplitter(t, t, r, -r)
    raise ModeError("unknown beam splitter kind %r" % kind)


def _complex_to_quadrature(u: np.ndarray) -> np.ndarray:
    """Real 2n x 2n quadrature representation of a complex n x n mode map."""
    n = u.shape[0]
    m = np.zeros((2 * n, 2 * n))
    for i in range(n):
        for j in range(n):
            m[2 * i, 2 * j] = u[i, j].real
            m[2 * i, 2 * j + 1] = -u[i, j].imag
            m[2 * i + 1, 2 * j] = u[i, j].imag
            m[2 * i + 1, 2 * j + 1] = u[i, j].real
    return m


def apply_beam_splitter(bs: BeamSplitter,
                        state: TwoModeGaussianState) -> TwoModeGaussianState:
    """Transform a two-mode Gaussian state through the splitter."""
    if state.modes != 2:
        raise ModeError("expected a two-mode state")
    m = _complex_to_quadrature(bs.mode_matrix)
    return GaussianState(m @ state.mean, m @ state.cov @ m.T)


def two_mode_product(a: GaussianState, b: GaussianState) -> TwoModeGaussianState:
    """Uncorrelated product of two single-mode states."""
    if a.modes != 1 or b.modes != 1:
        raise ModeError("expected single-mode factors")
    mean = np.concatenate([a.mean, b.mean])
    cov = np.zeros((4, 4))
    cov[:2, :2] = a.cov
    cov[2:, 2:] = b.cov
    return GaussianState(mean, cov)


def epr_commutator_check(dim: int = 12) -> dict:
    """Evaluate the EPR commutators on truncated two-mode ladder matrices.

    Output modes a3 = (a + i b)/sqrt(2), a4 = (i a + b)/sqrt(2) from a
    symmetric 50:50 splitter.  All commutators are evaluated on the
    interior of the Fock cutoff (both occupations <= dim - 2), where the
    truncation is exact.  Reports operator-norm deviations.
    """
    a = np.kron(destroy(dim), np.eye(dim))
    b = np.kron(np.eye(dim), destroy(dim))
    a3 = (a + 1j * b) / math.sqrt(2.0)
    a4 = (1j * a + b) / math.sqrt(2.0)

    def quads(op):
        return (op + op.conj().T) / 2.0, (op - op.conj().T) / 2.0j

    x3, p3 = quads(a3)
    x4, p4 = quads(a4)
    na = np.kron(np.arange(dim), np.ones(dim))
    nb = np.kron(np.ones(dim), np.arange(dim))
    interior = (na <= dim - 2) & (nb <= dim - 2)
    proj = np.flatnonzero(interior)

    def comm_dev(u, v, expect):
        c = (u @ v - v @ u)[np.ix_(proj, proj)]
        return float(np.linalg.norm(c - expect * np.eye(proj.size), ord=2))

    return {
        "[X3,P3] - i/2": comm_dev(x3, p3, 0.5j),
        "[X4,P4] - i/2": comm_dev(x4, p4, 0.5j),
        "[X3,P4]": comm_dev(x3, p4, 0.0),
        "[X4,P3]": comm_dev(x4, p3, 0.0),
        "[X3,X4]": comm_dev(x3, x4, 0.0),
        "[X3+X4, P3-P4]": comm_dev(x3 + x4, p3 - p4, 0.0),
    }


# ---------------------------------------------------------------------------
# Bogoliubov channels

@dataclass(frozen=True)
class BogoliubovMap:
    """Output operator c = a1*a + a2*b + a3*adag + a4*bdag."""

    coeffs: tuple
    validate: bool = True

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != 4:
            raise ModeError("need exactly four coefficients")
        if self.validate and abs(self.commutator_defect()) > 1e-12:
            raise ModeError("not a valid field operator: [c, c-dagger] = %g "
                            "instead of 1" % (1.0 + self.commutator_defect()))

    def commutator_defect(self) -> float:
        a1, a2, a3, a4 = self.coeffs
        return float(abs(a1) ** 2 + abs(a2) ** 2 - abs(a3) ** 2 - abs(a4) ** 2 - 1.0)

    def quadrature_map(self) -> np.ndarray:
        """2x4 real map from (Xa, Pa, Xb, Pb) to (Xc, Pc)."""
        a1, a2, a3, a4 = self.coeffs
        gam = [a1 + a3, 1j * (a1 - a3), a2 + a4, 1j * (a2 - a4)]
        return np.array([[g.real for g in gam], [g.imag for g in gam]])


def make_channel(kind: str, param: float) -> BogoliubovMap:
    """The four canonical channels, plus the invalid single-mode split.

    attenuation(eta):        c = sqrt(eta) a + sqrt(1-eta) b
    amplification(G):        c = sqrt(G) a + sqrt(G-1) bdag
    squeezing(G):            c = sqrt(G) a + sqrt(G-1) adag (phase-sensitive)
    phase_conjugation(G):    c = sqrt(G) adag + sqrt(G+1) b
    electronic(G):           alias of phase_conjugation (measure-and-recreate)
    single_mode_attenuation: c = sqrt(eta) a + sqrt(1-eta) a, rejected by the
                             commutator check for every eta in (0, 1)
    """
    if kind == "attenuation":
        if not 0.0 <= param <= 1.0:
            raise ModeError("eta must lie in [0, 1]")
        return BogoliubovMap((math.sqrt(param), math.sqrt(1 - param), 0, 0))
    if kind == "amplification":
        if param < 1.0:
            raise ModeError("gain must be >= 1")
        return BogoliubovMap((math.sqrt(param), 0, 0, math.sqrt(param - 1)))
    if kind == "squeezing":
        if param < 1.0:
            raise ModeError("gain must be >= 1")
        return BogoliubovMap((math.sqrt(param), 0, math.sqrt(param - 1), 0))
    if kind in ("phase_conjugation", "electronic"):
        if param <= 0.0:
            raise ModeError("gain must be > 0")
        return BogoliubovMap((0, math.sqrt(param + 1), math.sqrt(param), 0))
    if kind == "single_mode_attenuation":
        if not 0.0 <= param <= 1.0:
            raise ModeError("eta must lie in [0, 1]")
        return BogoliubovMap((math.sqrt(param) + math.sqrt(1 - param), 0, 0, 0))
    raise ModeError("unknown channel kind %r" % kind)


def apply_channel(bmap: BogoliubovMap, state: GaussianState,
                  ancilla: GaussianState | None = None) -> GaussianState:
    """Push a Gaussian state through the channel; ancilla defaults to vacuum."""
    if state.modes == 1:
        if ancilla is None:
            ancilla = GaussianState(np.zeros(2), VACUUM_VAR * np.eye(2))
        joint = two_mode_product(state, ancilla)
    elif state.modes == 2:
        if ancilla is not None:
            raise ModeError("two-mode input already carries the ancilla")
        joint = state
    else:
        raise ModeError("unsupported mode count")
    m = bmap.quadrature_map()
    return GaussianState(m @ joint.mean, m @ joint.cov @ m.T)


def noise_figure(kind: str, param: float) -> float:
    """SNR_out / SNR_in for a coherent input with vacuum ancilla.

    Closed forms: attenuation eta; amplification G/(2G-1); phase-sensitive
    squeezing 1; phase conjugation (and its electronic-repeater alias)
    G/(2G+1).  The attenuation value is not a quoted result but follows
    from signal power scaling as eta against an unchanged vacuum noise
    floor.
    """
    if kind == "attenuation":
        if not 0.0 <= param <= 1.0:
            raise ModeError("eta must lie in [0, 1]")
        return float(param)
    if kind == "amplification":
        if param < 1.0:
            raise ModeError("gain must be >= 1")
        return param / (2.0 * param - 1.0)
    if kind == "squeezing":
        if param < 1.0:
            raise ModeError("gain must be >= 1")
        return 1.0
    if kind in ("phase_conjugation", "electronic"):
        if param <= 0.0:
            raise ModeError("gain must be > 0")
        return param / (2.0 * param + 1.0)
    raise ModeError("unknown channel kind %r" % kind)


def noise_figure_numeric(kind: str, param: float,
                         signal_mean: float = 1.0) -> float:
    """Same quantity via apply_channel on an explicit coherent state."""
    bmap = make_channel(kind, param)
    coherent = GaussianState(np.array([signal_mean, 0.0]), VACUUM_VAR * np.eye(2))
    out = apply_channel(bmap, coherent)
    snr_in = signal_mean ** 2 / VACUUM_VAR
    snr_out = out.mean[0] ** 2 / out.cov[0, 0]
    return float(snr_out / snr_in)


def time_reverse(obj):
    """Time reversal as phase conjugation.

    On a ComplexTimeSeries: reverse the samples and conjugate (maps the
    causal decay onto the anti-causal growth and back).  On a
    BogoliubovMap: conjugate coefficients and swap the roles of the
    annihilation and creation parts; the result is generally not a valid
    forward channel, so it is left unvalidated.  Applying the map twice is
    the identity.
    """
    if isinstance(obj, ComplexTimeSeries):
        rev = np.conj(obj.samples[::-1])
        t_end = obj.t0 + (obj.samples.size - 1) * obj.dt
        return ComplexTimeSeries(rev, obj.dt, obj.carrier_freq, t0=-t_end)
    if isinstance(obj, BogoliubovMap):
        a1, a2, a3, a4 = obj.coeffs
        return BogoliubovMap((np.conj(a3), np.conj(a4), np.conj(a1),
                              np.conj(a2)), validate=False)
    raise ModeError("time_reverse supports time series and Bogoliubov maps")


# ---------------------------------------------------------------------------
# sidebands and the unbalanced interferometer

@dataclass(frozen=True)
class SidebandState:
    """Carrier amplitude plus the two-mode Gaussian sideband state
    (mode order: upper = X+, P+, lower = X-, P-)."""

    state: TwoModeGaussianState
    carrier_x0: float
    epsilon: float


def sideband_state(carrier_x0: float, epsilon: float) -> SidebandState:
    """Two-mode squeezed vacuum sidebands around a classical carrier.

    The joint quadratures X+ + X- and P+ - P- have variance epsilon/2;
    the orthogonal combinations have variance 1/(2 epsilon); each sideband
    alone carries variance (epsilon + 1/epsilon)/8 >= 1/4.
    """
    if not 0.0 < epsilon <= 1.0:
        raise ModeError("epsilon must lie in (0, 1]")
    v = (epsilon + 1.0 / epsilon) / 8.0
    c = (epsilon - 1.0 / epsilon) / 8.0
    cov = np.array([
        [v, 0.0, c, 0.0],
        [0.0, v, 0.0, -c],
        [c, 0.0, v, 0.0],
        [0.0, -c, 0.0, v],
    ])
    return SidebandState(GaussianState(np.zeros(4), cov), carrier_x0, epsilon)


def rotate_sidebands(sb: SidebandState, omega_t: float) -> SidebandState:
    """Free evolution in the carrier frame: the upper sideband rotates by
    +omega_t in its quadrature plane, the lower by -omega_t."""
    cu, su = math.cos(omega_t), math.sin(omega_t)
    m = np.zeros((4, 4))
    m[:2, :2] = [[cu, -su], [su, cu]]
    m[2:, 2:] = [[cu, su], [-su, cu]]
    st = sb.state
    return SidebandState(GaussianState(m @ st.mean, m @ st.cov @ m.T),
                         sb.carrier_x0, sb.epsilon)


def solve_interferometer_length(omega0: float, omega_s: float,
                                tol: float = 1e-6) -> float:
    """Arm-length imbalance satisfying Omega L / c = pi/2 and
    omega0 L / c = pi/2 (mod 2 pi), both within tol radians."""
    if omega_s <= 0 or omega0 <= 0:
        raise ModeError("frequencies must be positive")
    m = round((math.pi * omega0 / (2.0 * omega_s) - math.pi / 2.0) / (2.0 * math.pi))
    length = (math.pi / 2.0 + 2.0 * math.pi * m) * C_LIGHT / omega0
    err_s = abs(omega_s * length / C_LIGHT - math.pi / 2.0)
    err_c = abs(_principal(omega0 * length / C_LIGHT - math.pi / 2.0))
    if err_s > tol or err_c > tol:
        raise ModeError("no arm length satisfies both phase conditions "
                        "within %g rad (errors %g, %g)" % (tol, err_c, err_s))
    return length


def _principal(angle: float) -> float:
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


@dataclass(frozen=True)
class InterferometerReport:
    length: float
    output1_variance: float
    output2_variance: float
    difference_variance: float
    vacuum_benchmark: float


def unbalanced_interferometer(sb: SidebandState, omega0: float,
                              omega_s: float,
                              length: float | None = None) -> InterferometerReport:
    """Separate the two correlated sidebands onto distinct outputs.

    Each output port beats its surviving signal sideband (plus the vacuum
    sideband admitted through the open port) against the carrier it
    carries.  Variances are reported normalized so that an all-vacuum
    input reads exactly the shot-noise benchmark 1/4.
    """
    if length is None:
        length = solve_interferometer_length(omega0, omega_s)
    phi_c = omega0 * length / C_LIGHT
    phi_u = (omega0 + omega_s) * length / C_LIGHT
    phi_l = (omega0 - omega_s) * length / C_LIGHT

    # input modes: s+, s-, w+, w- (w = vacuum entering the open port)
    def out_coeffs(j: int, phi: float) -> np.ndarray:
        a = 0.5 * (1.0 + np.exp(1j * phi))
        b = 0.5 * (1.0 - np.exp(1j * phi))
        return np.array([a, b] if j == 1 else [b, a])

    cov = np.zeros((8, 8))
    cov[:4, :4] = sb.state.cov
    cov[4:, 4:] = VACUUM_VAR * np.eye(4)
    vac = VACUUM_VAR * np.eye(8)

    def beat_vector(j: int) -> np.ndarray:
        carrier = 0.5 * (1.0 + np.exp(1j * phi_c)) if j == 1 else \
            0.5 * (1.0 - np.exp(1j * phi_c))
        theta = float(np.angle(carrier))
        cu = out_coeffs(j, phi_u)   # weights of (s+, w+)
        clo = out_coeffs(j, phi_l)  # weights of (s-, w-)
        v = np.zeros(8)
        for weight, base in ((cu[0], 0), (clo[0], 2), (cu[1], 4), (clo[1], 6)):
            w = weight * np.exp(-1j * theta)
            v[base] += w.real
            v[base + 1] -= w.imag
        return v

    v1 = beat_vector(1)
    v2 = beat_vector(2)

    def norm_var(v: np.ndarray) -> float:
        return float(VACUUM_VAR * (v @ cov @ v) / (v @ vac @ v))

    return InterferometerReport(
        length=length,
        output1_variance=norm_var(v1),
        output2_variance=norm_var(v2),
        difference_variance=norm_var(v1 + v2),
        vacuum_benchmark=VACUUM_VAR,
    )
