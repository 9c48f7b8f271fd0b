"""Table output: CSV at round-trip precision plus a versioned JSON sidecar.

``write_table(out_dir, stem, columns, ...)`` produces ``stem.csv`` and
``stem.json``. With ``fmt="json"`` the data go into the JSON document itself
and no CSV is written. Floats are written with 17 significant digits, so
:func:`read_table` restores them bit for bit. Nothing time-dependent is
recorded, so identical inputs give identical files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

__all__ = ["SCHEMA_NAME", "SCHEMA_VERSION", "write_table", "read_table", "write_json"]

SCHEMA_NAME = "deltabarrier.table"
SCHEMA_VERSION = 1


def _fmt(value) -> str:
    return "%.17g" % value


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if np.isfinite(v) else repr(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def write_json(path, document):
    path = Path(path)
    path.write_text(json.dumps(_jsonable(document), indent=2, sort_keys=True) + "\n")
    return path


def write_table(out_dir, stem, columns, provenance, config=None, report=None, command="", fmt="csv"):
    """Write a table and its sidecar; returns the list of paths written.

    Parameters
    ----------
    columns : dict of str -> array_like
        Equal-length 1-D real columns, in output order.
    provenance : dict of str -> str
        ``analytic``, ``expansion`` or ``oracle`` (or ``input`` for
        coordinates) for every column.
    """
    from . import __version__

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = list(columns)
    data = [np.asarray(columns[n], dtype=float).reshape(-1) for n in names]
    lengths = {d.size for d in data}
    if len(lengths) > 1:
        raise ValueError("columns must have equal length")
    missing = [n for n in names if n not in provenance]
    if missing:
        raise ValueError(f"no provenance for columns {missing}")
    sidecar = {
        "schema": SCHEMA_NAME,
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "command": command,
        "columns": [{"name": n, "provenance": str(provenance[n])} for n in names],
        "n_rows": lengths.pop() if lengths else 0,
        "config": config or {},
        "report": report or {},
    }
    written = []
    if fmt == "csv":
        csv_path = out_dir / f"{stem}.csv"
        with csv_path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(names)
            for row in zip(*data):
                writer.writerow([_fmt(v) for v in row])
        written.append(csv_path)
        sidecar["data_file"] = csv_path.name
    elif fmt == "json":
        sidecar["data"] = {n: [_fmt(v) for v in d] for n, d in zip(names, data)}
    else:
        raise ValueError("fmt must be 'csv' or 'json'")
    written.append(write_json(out_dir / f"{stem}.json", sidecar))
    return written


def read_table(path):
    """Load a table written by :func:`write_table` (either the CSV or the JSON file)."""
    path = Path(path)
    if path.suffix == ".json":
        doc = json.loads(path.read_text())
        if doc.get("schema") != SCHEMA_NAME:
            raise ValueError(f"{path} is not a {SCHEMA_NAME} document")
        if "data" in doc:
            return {n: np.array([float(v) for v in vals]) for n, vals in doc["data"].items()}
        path = path.with_name(doc["data_file"])
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    names, body = rows[0], rows[1:]
    return {n: np.array([float(r[i]) for r in body]) for i, n in enumerate(names)}
