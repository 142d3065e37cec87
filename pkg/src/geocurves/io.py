"""Curve and polyline file formats plus SVG rendering.

JSON schema: {"space": "euclidean"|"sphere", "dim": int, "closed": bool,
"times": [...], "points": [[...], ...]}.  Floats are written with repr
(shortest round-trip decimal), so write -> read reproduces coordinates
bit-exactly.  CSV input holds one point per row with implied uniform times.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .curves import SampledCurve
from .errors import GeoCurvesError, OutOfRange
from .geometry import Space
from .interpolate import Partition, PiecewiseGeodesic


def _space_to_json(space: Space) -> dict:
    return {"space": space.kind, "dim": space.dim}


def _space_from_json(obj: dict) -> Space:
    if obj.get("space") == "sphere":
        return Space.sphere()
    return Space.euclidean(int(obj.get("dim", 2)))


def curve_to_json(curve: SampledCurve) -> dict:
    return {**_space_to_json(curve.space),
            "closed": bool(curve.closed),
            "times": curve.times.tolist(),
            "points": curve.points.tolist()}


def curve_from_json(obj: dict) -> SampledCurve:
    return SampledCurve(_space_from_json(obj), np.asarray(obj["times"], dtype=float),
                        np.asarray(obj["points"], dtype=float), bool(obj["closed"]))


def polyline_to_json(pg: PiecewiseGeodesic) -> dict:
    return {**_space_to_json(pg.space),
            "closed": bool(pg.closed),
            "times": pg.partition.times.tolist(),
            "points": pg.nodes.tolist()}


def polyline_from_json(obj: dict) -> PiecewiseGeodesic:
    space = _space_from_json(obj)
    return PiecewiseGeodesic(space, Partition(np.asarray(obj["times"], dtype=float)),
                             np.asarray(obj["points"], dtype=float),
                             bool(obj["closed"]))


def write_json(obj: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def read_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def load_curve(path: str) -> SampledCurve:
    if path.endswith(".csv"):
        return load_curve_csv(path)
    return curve_from_json(read_json(path))


def load_curve_csv(path: str) -> SampledCurve:
    """Points with implied uniform times; closed iff first row equals last."""
    with open(path) as fh:
        rows = [[float(v) for v in row] for row in csv.reader(fh) if row]
    pts = np.asarray(rows, dtype=float)
    if pts.ndim != 2:
        raise OutOfRange("CSV must hold one point per row")
    closed = bool(np.array_equal(pts[0], pts[-1]))
    times = np.linspace(0.0, 1.0, len(pts))
    return SampledCurve(Space.euclidean(pts.shape[1]), times, pts, closed)


def load_polyline(path: str) -> PiecewiseGeodesic:
    return polyline_from_json(read_json(path))


# -- SVG -------------------------------------------------------------------------


def render_svg(path: str, curve: SampledCurve | None = None,
               polyline: PiecewiseGeodesic | None = None,
               size: int = 640, margin: float = 0.05) -> None:
    """Input curve dotted, interpolation solid, in one SVG 1.1 document."""
    pts_sets = []
    if curve is not None:
        pts_sets.append(curve.points[:, :2])
    if polyline is not None:
        pts_sets.append(polyline.nodes[:, :2])
    if not pts_sets:
        raise GeoCurvesError("nothing to render")
    allpts = np.vstack(pts_sets)
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    pad = margin * span

    def to_px(p):
        x = (p[0] - lo[0] + pad) / (span + 2 * pad) * size
        y = size - (p[1] - lo[1] + pad) / (span + 2 * pad) * size
        return f"{x:.3f},{y:.3f}"

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
             f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    if curve is not None:
        pts = " ".join(to_px(p) for p in curve.points[:, :2])
        parts.append(f'<polyline points="{pts}" fill="none" stroke="#888" '
                     f'stroke-width="1" stroke-dasharray="4 3"/>')
    if polyline is not None:
        pts = " ".join(to_px(p) for p in polyline.nodes[:, :2])
        parts.append(f'<polyline points="{pts}" fill="none" stroke="#c22" '
                     f'stroke-width="1.5"/>')
        for p in polyline.nodes[:, :2]:
            x, y = to_px(p).split(",")
            parts.append(f'<circle cx="{x}" cy="{y}" r="2.5" fill="#c22"/>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
