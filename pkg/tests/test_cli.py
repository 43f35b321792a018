"""End-to-end tests of the command-line interface."""

import json
import os

import numpy as np
import pytest

from qlight.cli import main
from qlight.io import read_table, read_wigner_grid


def rows_as_floats(path, col_from=1):
    _, cols, rows = read_table(path)
    return cols, [[r[0]] + [float(v) for v in r[col_from:]] for r in rows]


def test_g2_table_default(tmp_path):
    out = str(tmp_path / "o")
    assert main(["g2", "--out", out]) == 0
    _, cols, rows = read_table(os.path.join(out, "g2_table.csv"))
    assert cols == ["state", "sym_n", "g2", "g2_fock_oracle"]
    table = {r[0]: [float(v) for v in r[1:]] for r in rows}
    assert table["coherent:1"][1] == pytest.approx(1.0, abs=1e-10)
    assert table["thermal:1"][1] == pytest.approx(2.0, abs=1e-10)
    assert table["squeezed:0.5"][1] == pytest.approx(11.0, abs=1e-6)
    assert table["squeezed:0.5"][2] == pytest.approx(11.0, abs=1e-6)


def test_g2_vacuum_exit_codes(tmp_path):
    out = str(tmp_path / "o")
    assert main(["g2", "--state", "vacuum", "--out", out]) == 3
    assert main(["g2", "--state", "vacuum", "--lenient", "--out", out]) == 0


def test_bad_state_spec_is_config_error(tmp_path):
    out = str(tmp_path / "o")
    assert main(["g2", "--state", "florp:1", "--out", out]) == 2
    assert main(["wigner", "--state", "coherent:zzz", "--out", out]) == 2


def test_config_file_merging(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"state": "fock:1"}))
    out = str(tmp_path / "o")
    assert main(["--config", str(cfg), "wigner", "--out", out]) == 0
    meta, x, p, vals = read_wigner_grid(os.path.join(out, "wigner.csv"))
    assert meta["state"] == "fock:1"
    ix = int(np.argmin(np.abs(x)))
    ip = int(np.argmin(np.abs(p)))
    assert vals[ix, ip] == pytest.approx(-2.0 / np.pi, abs=1e-6)


def test_wigner_marginals_and_parity(tmp_path):
    out = str(tmp_path / "o")
    assert main(["wigner", "--state", "cat:2", "--marginals", "0,90",
                 "--out", out]) == 0
    assert os.path.exists(os.path.join(out, "marginal_0.csv"))
    assert os.path.exists(os.path.join(out, "marginal_90.csv"))
    assert os.path.exists(os.path.join(out, "parity.csv"))


def test_spectra_constant_runs(tmp_path):
    out = str(tmp_path / "o")
    assert main(["spectra", "--model", "constant", "--seconds", "1",
                 "--dt", "0.001", "--out", out]) == 0
    assert os.path.exists(os.path.join(out, "timeseries.csv"))
    assert os.path.exists(os.path.join(out, "spectrum_field.csv"))


def test_spectra_e3_reports_pairwise_deviations(tmp_path):
    out = str(tmp_path / "o")
    assert main(["spectra", "--model", "e3", "--seconds", "20",
                 "--dt", "0.01", "--out", out]) == 0
    assert os.path.exists(os.path.join(out, "spectrum_equality.csv"))


def test_tomo_runs_and_is_reproducible(tmp_path):
    out1 = str(tmp_path / "a")
    out2 = str(tmp_path / "b")
    args = ["tomo", "--state", "vacuum", "--angles", "8",
            "--shots", "2000", "--seed", "5"]
    assert main(args + ["--out", out1]) == 0
    assert main(args + ["--out", out2]) == 0
    with open(os.path.join(out1, "report.csv")) as f1, \
            open(os.path.join(out2, "report.csv")) as f2:
        assert f1.read() == f2.read()


def test_json_format(tmp_path):
    out = str(tmp_path / "o")
    assert main(["g2", "--format", "json", "--out", out]) == 0
    with open(os.path.join(out, "g2_table.json")) as fh:
        doc = json.load(fh)
    assert doc["columns"][0] in ("state", "label")
    assert len(doc["rows"]) >= 3


def test_channels_outputs(tmp_path):
    out = str(tmp_path / "o")
    assert main(["channels", "--points", "3", "--out", out]) == 0
    _, cols, rows = read_table(os.path.join(out, "epr.csv"))
    table = {r[0]: float(r[1]) for r in rows}
    assert table["var_x3_plus_x4"] == pytest.approx(0.05, abs=1e-12)
    _, cols, rows = read_table(os.path.join(out, "interferometer.csv"))
    table = {r[0]: float(r[1]) for r in rows}
    assert table["output1"] > 0.25
    assert table["difference"] < 0.25
