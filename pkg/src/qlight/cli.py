"""Command-line front end: reproducible seeded experiments as CSV/JSON tables.

Subcommands: spectra, wigner, tomo, g2, channels.  Exit codes: 0 success,
2 configuration error, 3 numerical self-check failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import classical as cl
from . import detection as det
from . import io as qio
from . import multimode as mm
from . import ordering as od
from . import states as st

EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(ValueError):
    pass


class NumericCheckError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# state spec parsing

def parse_state(spec: str):
    """State specs: vacuum | coherent:RE[+IMj] | thermal:NBAR | squeezed:EPS |
    fock:N | cat:ALPHA | admixture:EPS:K."""
    parts = spec.split(":")
    name = parts[0]
    try:
        if name == "vacuum":
            return st.make_state("vacuum")
        if name == "coherent":
            return st.make_state("coherent", alpha=complex(parts[1]))
        if name == "thermal":
            return st.make_state("thermal", nbar=float(parts[1]))
        if name == "squeezed":
            return st.make_state("squeezed_vacuum", epsilon=float(parts[1]))
        if name == "fock":
            return st.make_state("fock", n=int(parts[1]))
        if name == "cat":
            return st.make_state("cat", alpha=complex(parts[1]))
        if name == "admixture":
            k = int(parts[2]) if len(parts) > 2 else 1
            return st.make_state("admixture", epsilon=float(parts[1]), k=k)
    except (IndexError, ValueError, st.StateError) as exc:
        raise ConfigError("bad state spec %r: %s" % (spec, exc))
    raise ConfigError("unknown state %r" % spec)


def _out(args, name: str) -> str:
    ext = "json" if args.format == "json" else "csv"
    return "%s/%s.%s" % (args.out.rstrip("/"), name, ext)


# ---------------------------------------------------------------------------
# spectra

def cmd_spectra(args) -> int:
    meta = {"command": "spectra", "model": args.model, "seed": args.seed,
            "seconds": args.seconds, "dt": args.dt, "snu0": args.snu0,
            "sa0": args.sa0, "gamma": args.gamma, "format": args.format}
    try:
        series = cl.synthesize_field(
            args.model.replace("-", "_"), args.seconds, args.dt, args.seed,
            s_nu0=args.snu0, s_a0=args.sa0, gamma=args.gamma)
    except cl.FieldError as exc:
        raise ConfigError(str(exc))
    qio.write_timeseries(_out(args, "timeseries"), series, meta, args.format)
    qio.write_spectrum(_out(args, "spectrum_field"), cl.field_spectrum(series),
                       meta, args.format)
    for kind in ("intensity", "amplitude", "phase", "frequency"):
        try:
            spec = cl.spectral_density(series, kind)
        except cl.FieldError:
            continue
        qio.write_spectrum(_out(args, "spectrum_" + kind), spec, meta,
                           args.format)
    if args.model in ("white-fm", "white_fm"):
        summary = cl.white_fm_linewidth(args.snu0)
        acc = None
        for k in range(args.ensemble):
            member = cl.synthesize_field("white_fm", args.seconds, args.dt,
                                         seed=(args.seed * 10007 + k),
                                         s_nu0=args.snu0)
            fs = cl.field_spectrum(member)
            acc = fs.values if acc is None else acc + fs.values
        avg = cl.SpectralDensity(fs.freqs, acc / args.ensemble, "field")
        fitted = cl.fit_lorentzian_fwhm(avg)
        qio.write_table(_out(args, "linewidth"),
                        ["fitted_fwhm_hz", "predicted_fwhm_hz", "hwhm_hz",
                         "cutoff_hz", "residual_phase_var"],
                        [(fitted, summary.fwhm, summary.hwhm,
                          summary.cutoff_fc, summary.residual_phase_var)],
                        meta, args.format)
        if summary.fwhm > 0 and abs(fitted - summary.fwhm) > 0.25 * summary.fwhm:
            raise NumericCheckError("fitted linewidth %g deviates from "
                                    "prediction %g" % (fitted, summary.fwhm))
    if args.model == "e3":
        rows = []
        specs = {}
        for name in ("e1", "e2", "e3"):
            member = cl.synthesize_field(name, args.seconds, args.dt,
                                         gamma=args.gamma)
            specs[name] = cl.field_spectrum(member).values
        peak = specs["e3"].max()
        for a, b in (("e1", "e2"), ("e1", "e3"), ("e2", "e3")):
            dev = float(np.max(np.abs(specs[a] - specs[b])) / peak)
            rows.append((a, b, dev))
        qio.write_table(_out(args, "spectrum_equality"),
                        ["first", "second", "max_rel_deviation"], rows, meta,
                        args.format)
    return 0


# ---------------------------------------------------------------------------
# wigner

def cmd_wigner(args) -> int:
    meta = {"command": "wigner", "state": args.state, "seed": args.seed,
            "format": args.format}
    state = parse_state(args.state)
    try:
        grid = st.wigner(state)
        q = st.to_husimi(state, grid.x_axis, grid.p_axis)
    except st.StateError as exc:
        raise ConfigError(str(exc))
    qio.write_wigner_grid(_out(args, "wigner"), grid, meta, args.format)
    qio.write_wigner_grid(_out(args, "husimi"), q, meta, args.format)
    for deg in _parse_angles(args.marginals):
        dist = st.marginal(grid, math.radians(deg))
        qio.write_table(_out(args, "marginal_%g" % deg), ["s", "density"],
                        list(zip(dist.s_axis, dist.density)), meta, args.format)
    i0 = int(np.argmin(np.abs(grid.x_axis)))
    j0 = int(np.argmin(np.abs(grid.p_axis)))
    w00 = float(grid.values[i0, j0])
    try:
        pd = st.photon_distribution(state, truncation=200)
        parity = st.parity_wigner_origin(pd)
    except st.StateError:
        parity = float("nan")
    qio.write_table(_out(args, "parity"),
                    ["w_origin_grid", "w_origin_parity", "difference"],
                    [(w00, parity, w00 - parity)], meta, args.format)
    if np.isfinite(parity) and abs(w00 - parity) > 1e-3:
        raise NumericCheckError("parity sum disagrees with the Wigner grid "
                                "at the origin: %g vs %g" % (w00, parity))
    return 0


def _parse_angles(text: str):
    if not text:
        return []
    try:
        return [float(tok) for tok in text.split(",")]
    except ValueError:
        raise ConfigError("bad angle list %r" % text)


# ---------------------------------------------------------------------------
# tomography

def cmd_tomography(args) -> int:
    meta = {"command": "tomo", "state": args.state, "angles": args.angles,
            "shots": args.shots, "seed": args.seed, "format": args.format}
    if args.angles < 8:
        raise ConfigError("tomography needs >= 8 angles")
    if args.shots < 1000:
        raise ConfigError("tomography needs >= 1000 shots per angle")
    state = parse_state(args.state)
    data = det.simulate_tomography(state, args.angles, args.shots,
                                   seed=args.seed)
    rec = det.reconstruct_wigner(data)
    grid = rec.grid
    qio.write_wigner_grid(_out(args, "reconstruction"), grid, meta, args.format)
    truth = st.wigner(state, grid.x_axis, grid.p_axis)
    l1 = float(np.sum(np.abs(grid.values - truth.values)) * grid.dx * grid.dp)
    X, P = np.meshgrid(grid.x_axis, grid.p_axis, indexing="ij")
    da = grid.dx * grid.dp
    mx = float(np.sum(grid.values * X) * da)
    mp = float(np.sum(grid.values * P) * da)
    cxx = float(np.sum(grid.values * X * X) * da - mx * mx)
    cpp = float(np.sum(grid.values * P * P) * da - mp * mp)
    qio.write_table(_out(args, "report"),
                    ["l1_error", "scale_factor", "mean_x", "mean_p",
                     "cov_xx", "cov_pp"],
                    [(l1, rec.scale_factor, mx, mp, cxx, cpp)], meta,
                    args.format)
    if l1 > 0.5:
        raise NumericCheckError("reconstruction L1 error %g too large" % l1)
    return 0


# ---------------------------------------------------------------------------
# g2

def cmd_g2(args) -> int:
    meta = {"command": "g2", "state": args.state, "seed": args.seed,
            "format": args.format}
    rows = []
    failures = 0
    if args.state:
        targets = [(args.state, parse_state(args.state))]
    else:
        targets = [("coherent:1", parse_state("coherent:1")),
                   ("thermal:1", parse_state("thermal:1")),
                   ("squeezed:0.5", parse_state("squeezed:0.5"))]
    for label, state in targets:
        try:
            if isinstance(state, st.GaussianState):
                moments = od.sym_moments_gaussian(state)
                value = od.g2_zero(moments)
                oracle = od.g2_zero_fock(st.photon_distribution(state, 128))
                sym_n = moments.sym_n
            else:
                value = od.g2_zero_fock(state)
                oracle = value
                sym_n = od.sym_moments_fock(state).sym_n
            rows.append((label, sym_n, value, oracle))
        except od.OrderingError as exc:
            rows.append((label, 0.5, "undefined", "undefined"))
            failures += 1
            if not args.lenient:
                sys.stderr.write("g2 undefined for %s: %s\n" % (label, exc))
    qio.write_table(_out(args, "g2_table"),
                    ["state", "sym_n", "g2", "g2_fock_oracle"], rows, meta,
                    args.format)
    if failures and not args.lenient:
        raise NumericCheckError("g2 undefined for %d state(s)" % failures)
    return 0


# ---------------------------------------------------------------------------
# channels

def cmd_channels(args) -> int:
    meta = {"command": "channels", "gmin": args.gmin, "gmax": args.gmax,
            "points": args.points, "epsilon": args.epsilon,
            "seed": args.seed, "format": args.format}
    if args.gmax < args.gmin or args.gmin < 1.0:
        raise ConfigError("need 1 <= gmin <= gmax")
    gains = np.linspace(args.gmin, args.gmax, args.points)
    rows = []
    for g in gains:
        for kind in ("attenuation", "amplification", "squeezing",
                     "phase_conjugation", "electronic"):
            param = 1.0 / g if kind == "attenuation" else float(g)
            closed = mm.noise_figure(kind, param)
            numeric = mm.noise_figure_numeric(kind, param)
            rows.append((kind, param, closed, numeric))
            if abs(closed - numeric) > 1e-10:
                raise NumericCheckError(
                    "noise figure mismatch for %s(%g)" % (kind, param))
    qio.write_table(_out(args, "channels_nf"),
                    ["kind", "param", "nf_closed", "nf_numeric"], rows, meta,
                    args.format)

    eps = args.epsilon
    sq = st.make_state("squeezed_vacuum", epsilon=eps)
    sq_p = st.GaussianState(np.zeros(2), np.diag([1.0 / (4 * eps), eps / 4.0]))
    bs = mm.make_beam_splitter("asymmetric", 0.5)
    out = mm.apply_beam_splitter(bs, mm.two_mode_product(sq_p, sq))
    var_sum = float(out.cov[0, 0] + out.cov[2, 2] + 2 * out.cov[0, 2])
    var_dif = float(out.cov[1, 1] + out.cov[3, 3] - 2 * out.cov[1, 3])
    qio.write_table(_out(args, "epr"),
                    ["quantity", "variance", "vacuum_benchmark"],
                    [("var_x3_plus_x4", var_sum, 0.5),
                     ("var_p3_minus_p4", var_dif, 0.5)], meta, args.format)

    sb = mm.sideband_state(1.0, eps)
    rep = mm.unbalanced_interferometer(sb, args.omega0, args.omega_s)
    qio.write_table(_out(args, "interferometer"),
                    ["output", "variance", "benchmark"],
                    [("output1", rep.output1_variance, rep.vacuum_benchmark),
                     ("output2", rep.output2_variance, rep.vacuum_benchmark),
                     ("difference", rep.difference_variance,
                      rep.vacuum_benchmark)], meta, args.format)
    return 0


# ---------------------------------------------------------------------------
# plumbing

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qlight")
    ap.add_argument("--config", help="JSON file providing default options")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default="qlight-out")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("spectra")
    common(p)
    p.add_argument("--model", default="white-fm")
    p.add_argument("--snu0", type=float, default=1.0)
    p.add_argument("--sa0", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--seconds", type=float, default=10.0)
    p.add_argument("--dt", type=float, default=1e-4)
    p.add_argument("--ensemble", type=int, default=100)
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("wigner")
    common(p)
    p.add_argument("--state", default="vacuum")
    p.add_argument("--marginals", default="")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("tomo")
    common(p)
    p.add_argument("--state", default="vacuum")
    p.add_argument("--angles", type=int, default=16)
    p.add_argument("--shots", type=int, default=10000)
    p.set_defaults(func=cmd_tomography)

    p = sub.add_parser("g2")
    common(p)
    p.add_argument("--state", default="")
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=cmd_g2)

    p = sub.add_parser("channels")
    common(p)
    p.add_argument("--gmin", type=float, default=1.0)
    p.add_argument("--gmax", type=float, default=10.0)
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--omega0", type=float, default=2 * math.pi * 3e14)
    p.add_argument("--omega-s", dest="omega_s", type=float,
                   default=2 * math.pi * 1e7)
    p.set_defaults(func=cmd_channels)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = ap.parse_args(argv)
    if args.config:
        try:
            with open(args.config) as fh:
                overrides = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            sys.stderr.write("config error: %s\n" % exc)
            return EXIT_CONFIG
        for key, value in overrides.items():
            if not hasattr(args, key):
                sys.stderr.write("config error: unknown key %r\n" % key)
                return EXIT_CONFIG
            # explicit command-line flags win over the config file
            if "--" + key.replace("_", "-") not in argv:
                setattr(args, key, value)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write("config error: %s\n" % exc)
        return EXIT_CONFIG
    except NumericCheckError as exc:
        sys.stderr.write("numerical check failed: %s\n" % exc)
        return EXIT_NUMERIC
    except (cl.FieldError, st.StateError, det.DetectionError,
            mm.ModeError, od.OrderingError) as exc:
        sys.stderr.write("config error: %s\n" % exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
