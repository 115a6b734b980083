"""Serialization of results: JSON with 17 significant digits, CSV tables, SVG overlays."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from enum import Enum

import numpy as np

from . import nephroid
from .subord import ContainmentReport

SCAN_HEADER = ("theta", "d1", "d2", "d")
CURVE_HEADER = ("theta", "u", "v")


def fmt_real(x: float) -> str:
    """Decimal form with 17 significant digits (round-trips any double)."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x}")
    return f"{x:.17g}"


def _encode(obj, indent: int, level: int) -> str:
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        obj = {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)}
    if isinstance(obj, Enum):
        obj = obj.value
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_real(obj)
    if isinstance(obj, complex):
        return _encode({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        pad = " " * (indent * (level + 1))
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * (indent * level) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj, indent: int = 2) -> str:
    """Deterministic JSON text; dataclasses become objects with their fields in order."""
    return _encode(obj, indent, 0) + "\n"


def write_rows(fh, header, rows) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_real(v) if isinstance(v, (float, np.floating)) else v for v in row])


def scan_csv(report: ContainmentReport) -> str:
    """``theta,d1,d2,d`` rows of a containment scan."""
    thetas = np.asarray(report.theta_grid)
    d1 = nephroid.d1(thetas)
    dv = np.asarray(report.d_values)
    d2 = np.asarray(report.d2_values) if len(report.d2_values) == len(dv) else d1 - dv
    buf = io.StringIO()
    write_rows(buf, SCAN_HEADER, zip(thetas, d1, d2, dv))
    return buf.getvalue()


def curve_csv(thetas, points) -> str:
    buf = io.StringIO()
    nephroid.write_curve_csv(buf, thetas, points)
    return buf.getvalue()


def overlay_svg(curves: dict[str, np.ndarray], size: int = 600) -> str:
    """A standalone SVG with one closed polyline per named curve (complex points)."""
    colours = ["#000000", "#d62728", "#1f77b4", "#2ca02c"]
    allpts = np.concatenate([np.asarray(p) for p in curves.values()])
    umin, umax = allpts.real.min(), allpts.real.max()
    vmin, vmax = allpts.imag.min(), allpts.imag.max()
    span = max(umax - umin, vmax - vmin) * 1.1
    cu, cv = (umin + umax) / 2, (vmin + vmax) / 2
    scale = size / span

    def xy(w):
        return f"{(w.real - cu) * scale + size / 2:.3f},{(cv - w.imag) * scale + size / 2:.3f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    for k, (name, pts) in enumerate(curves.items()):
        path = " ".join(xy(w) for w in pts)
        colour = colours[k % len(colours)]
        lines.append(f"  <!-- {name} -->")
        lines.append(f'  <polygon points="{path}" fill="none" stroke="{colour}" stroke-width="1"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
