"""CSV / JSON serialisation and run manifests.

Floats are written with 17 significant digits so that they round-trip.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

from . import __version__

SIMULATION_COLUMNS = ("t", "mean", "mean_se", "var", "var_se", "n")
ANALYTIC_COLUMNS = ("t", "mean", "mean_sq", "var", "branch")
DISTRIBUTION_COLUMNS = ("x", "probability")
REGIME_COLUMNS = ("p", "q", "r", "gamma", "regime", "exponent", "log_correction")


def fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def csv_text(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row[c]) for c in columns])
    return buf.getvalue()


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _finite_or_none(row: dict) -> dict:
    return {k: (None if isinstance(v, float) and v != v else v) for k, v in row.items()}


def simulation_json(result) -> str:
    doc = {
        "schema": "memwalk/simulation-result/v1",
        "provenance": result.provenance,
        "n": int(result.n),
        "rows": [_finite_or_none(row) for row in result.rows()],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_schema(name: str = "simulation_result.schema.json") -> dict:
    return json.loads(resources.files("memwalk").joinpath("schemas", name).read_text())


def write_text(path, text: str) -> str:
    """Write ``text`` and return its sha256 hex digest."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = text.encode()
    path.write_bytes(data)
    return hashlib.sha256(data).hexdigest()


def now() -> str:
    return datetime.now(timezone.utc).isoformat()


def manifest(command: str, parameters: dict, outputs: dict, started: str, **extra) -> dict:
    """``outputs`` maps file path to sha256 digest."""
    doc = {
        "command": command,
        "parameters": parameters,
        "tool_version": __version__,
        "started": started,
        "finished": now(),
        "outputs": [{"path": str(p), "sha256": d} for p, d in outputs.items()],
    }
    doc.update(extra)
    return doc


def write_manifest(path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n")
