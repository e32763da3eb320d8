"""JSON/CSV report assembly shared by the CLI subcommands."""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
import math

import numpy as np

ANGLE_DIGITS = 12


def angle(theta: float) -> float:
    """Radians in ``[0, 2 pi)`` rounded to 12 significant digits."""
    t = float(np.mod(theta, 2 * math.pi))
    if t < 1e-12 or 2 * math.pi - t < 1e-12:
        return 0.0
    return float(f"{t:.{ANGLE_DIGITS}g}")


def arc(x: float, y: float) -> list:
    """Band ``[x, y]`` with ``x`` in ``[0, 2 pi)``; ``y = x + length`` may exceed ``2 pi``."""
    start = angle(x)
    return [start, float(f"{start + (y - x):.{ANGLE_DIGITS}g}")]


def to_jsonable(obj):
    """Recursively convert numpy/complex/dataclass values into JSON types.

    Complex numbers become ``[re, im]`` pairs; non-finite floats become the
    strings ``"inf"``, ``"-inf"`` or ``"nan"``.
    """
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
                if f.repr}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(float(obj.real)), to_jsonable(float(obj.imag))]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def build_report(command: str, config: dict, tolerances: dict, results: dict,
                 elapsed: float | None, version: str) -> dict:
    return {
        "command": command,
        "version": version,
        "config": to_jsonable(config),
        "tolerances": to_jsonable(tolerances),
        "results": to_jsonable(results),
        "wall_clock_seconds": None if elapsed is None else round(float(elapsed), 6),
    }


def dumps_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def dumps_csv(report: dict, rows: list) -> str:
    """Metadata as ``#`` comment lines followed by one table."""
    buf = io.StringIO()
    meta = {k: report[k] for k in ("command", "version", "config", "tolerances",
                                   "wall_clock_seconds")}
    for key in sorted(meta):
        buf.write(f"# {key}: {json.dumps(meta[key], sort_keys=True)}\n")
    rows = [to_jsonable(r) for r in rows]
    if rows:
        fields = list(rows[0].keys())
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                             for k, v in r.items()})
    return buf.getvalue()
