"""CSV/JSON table export with embedded run metadata.

Every file starts with its resolved configuration so the producing
command can be re-run from the artifact alone.  Floats are written with
17 significant digits, which round-trips IEEE doubles exactly, so a
rerun with the same seed produces byte-identical files.
"""

from __future__ import annotations

import json
import os

import numpy as np


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (complex, np.complexfloating)):
        return "%.17g%+.17gj" % (x.real, x.imag)
    return str(x)


def _meta_json(meta: dict) -> str:
    return json.dumps(meta, sort_keys=True, separators=(",", ":"))


def write_table(path: str, columns: list, rows, meta: dict,
                fmt: str = "csv") -> None:
    """Write a column-oriented table with a metadata header."""
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    if fmt == "json":
        doc = {"meta": meta, "columns": list(columns),
               "rows": [[_coerce(v) for v in row] for row in rows]}
        with open(path, "w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=1)
            fh.write("\n")
        return
    if fmt != "csv":
        raise ValueError("unknown format %r" % fmt)
    with open(path, "w") as fh:
        fh.write("# config: %s\n" % _meta_json(meta))
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _coerce(v):
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (complex, np.complexfloating)):
        return {"re": float(v.real), "im": float(v.imag)}
    return v


def read_table(path: str):
    """Read a CSV table written by write_table; returns (meta, columns, rows)."""
    meta = {}
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    body = []
    for ln in lines:
        if ln.startswith("# config: "):
            meta = json.loads(ln[len("# config: "):])
        elif ln.startswith("#") or not ln.strip():
            continue
        else:
            body.append(ln)
    columns = body[0].split(",")
    rows = [ln.split(",") for ln in body[1:]]
    return meta, columns, rows


def write_timeseries(path: str, series, meta: dict, fmt: str = "csv") -> None:
    rows = [(t, z.real, z.imag)
            for t, z in zip(series.times, series.samples)]
    write_table(path, ["t", "re", "im"], rows, meta, fmt)


def write_spectrum(path: str, spec, meta: dict, fmt: str = "csv") -> None:
    meta = dict(meta, kind=spec.kind)
    rows = list(zip(spec.freqs, spec.values))
    write_table(path, ["freq_hz", "value"], rows, meta, fmt)


def write_distribution(path: str, pd, meta: dict, fmt: str = "csv") -> None:
    rows = list(enumerate(pd.probs))
    write_table(path, ["n", "prob"], rows, meta, fmt)


def write_samples(path: str, columns: list, array: np.ndarray, meta: dict,
                  fmt: str = "csv") -> None:
    arr = np.atleast_2d(np.asarray(array))
    if arr.shape[0] == 1 and len(columns) == 1:
        arr = arr.T
    write_table(path, columns, arr, meta, fmt)


def write_wigner_grid(path: str, grid, meta: dict, fmt: str = "csv") -> None:
    """Matrix layout: first row the p axis, first column the x axis."""
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    if fmt == "json":
        doc = {"meta": meta,
               "x_axis": [float(v) for v in grid.x_axis],
               "p_axis": [float(v) for v in grid.p_axis],
               "values": [[float(v) for v in row] for row in grid.values]}
        with open(path, "w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=1)
            fh.write("\n")
        return
    with open(path, "w") as fh:
        fh.write("# config: %s\n" % _meta_json(meta))
        fh.write("x\\p," + ",".join(_fmt(p) for p in grid.p_axis) + "\n")
        for x, row in zip(grid.x_axis, grid.values):
            fh.write(_fmt(x) + "," + ",".join(_fmt(v) for v in row) + "\n")


def read_wigner_grid(path: str):
    """Inverse of write_wigner_grid (CSV only); returns (meta, x, p, values)."""
    meta, _, _ = {}, None, None
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if lines[0].startswith("# config: "):
        meta = json.loads(lines[0][len("# config: "):])
        lines = lines[1:]
    p_axis = np.array([float(v) for v in lines[0].split(",")[1:]])
    x_axis = []
    values = []
    for ln in lines[1:]:
        parts = ln.split(",")
        x_axis.append(float(parts[0]))
        values.append([float(v) for v in parts[1:]])
    return meta, np.array(x_axis), p_axis, np.array(values)
