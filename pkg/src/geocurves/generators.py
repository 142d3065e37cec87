"""Test-corpus curve generators.

Every generator returns a SampledCurve that passes the simplicity check on
its own sample polyline.  Closed generators are positively oriented.
"""

from __future__ import annotations

import math

import numpy as np

from .curves import SampledCurve
from .errors import GenerationFailed, OutOfRange
from .geometry import Space
from .simplicity import polyline_is_simple

E2 = Space.euclidean(2)


def circle(samples: int = 4096, radius: float = 1.0) -> SampledCurve:
    t = np.linspace(0.0, 1.0, samples + 1)
    pts = radius * np.stack([np.cos(2 * np.pi * t), np.sin(2 * np.pi * t)], axis=1)
    pts[-1] = pts[0]
    return SampledCurve(E2, t, pts, closed=True)


def ellipse(a: float, b: float, samples: int = 4096) -> SampledCurve:
    t = np.linspace(0.0, 1.0, samples + 1)
    pts = np.stack([a * np.cos(2 * np.pi * t), b * np.sin(2 * np.pi * t)], axis=1)
    pts[-1] = pts[0]
    return SampledCurve(E2, t, pts, closed=True)


def _resample_polygon(vertices: np.ndarray, samples: int) -> SampledCurve:
    """Closed polygon resampled to ``samples`` points, vertices preserved."""
    verts = np.vstack([vertices, vertices[:1]])
    m = len(verts) - 1
    per_edge = max(1, samples // m)
    ts, pts = [], []
    for i in range(m):
        s = np.linspace(0.0, 1.0, per_edge, endpoint=False)
        ts.append((i + s) / m)
        pts.append(verts[i] + s[:, None] * (verts[i + 1] - verts[i]))
    ts = np.concatenate(ts + [[1.0]])
    pts = np.vstack(pts + [verts[:1]])
    return SampledCurve(E2, ts, pts, closed=True)


def regular_polygon(m: int, samples: int = 256) -> SampledCurve:
    if m < 3:
        raise OutOfRange("polygon needs at least 3 vertices")
    ang = 2 * np.pi * np.arange(m) / m
    verts = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    return _resample_polygon(verts, samples)


def star_polygon(m: int, inner_ratio: float = 0.5, samples: int = 512) -> SampledCurve:
    if m < 3 or not 0.0 < inner_ratio < 1.0:
        raise OutOfRange("need m >= 3 and inner_ratio in (0, 1)")
    ang = np.pi * np.arange(2 * m) / m
    radii = np.where(np.arange(2 * m) % 2 == 0, 1.0, inner_ratio)
    verts = np.stack([radii * np.cos(ang), radii * np.sin(ang)], axis=1)
    return _resample_polygon(verts, samples)


def unit_square(samples: int = 256) -> SampledCurve:
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    return _resample_polygon(verts, samples)


def right_triangle(samples: int = 192) -> SampledCurve:
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    return _resample_polygon(verts, samples)


def _koch_subdivide(pts: np.ndarray) -> np.ndarray:
    out = []
    rot = np.array([[math.cos(-math.pi / 3), -math.sin(-math.pi / 3)],
                    [math.sin(-math.pi / 3), math.cos(-math.pi / 3)]])
    for a, b in zip(pts[:-1], pts[1:]):
        v = (b - a) / 3.0
        p1 = a + v
        p2 = a + 2.0 * v
        tip = p1 + rot @ v
        out += [a, p1, tip, p2]
    out.append(pts[-1])
    return np.array(out)


def koch_vertices(level: int) -> np.ndarray:
    """Closed Koch snowflake vertex loop, positively oriented, 3*4^level edges."""
    base = np.array([[0.0, 0.0], [1.0, 0.0],
                     [0.5, math.sqrt(3.0) / 2.0], [0.0, 0.0]])
    pts = base
    for _ in range(level):
        pts = _koch_subdivide(pts)
    return pts


def koch(level: int = 3) -> SampledCurve:
    pts = koch_vertices(level)
    t = np.linspace(0.0, 1.0, len(pts))
    return SampledCurve(E2, t, pts, closed=True)


def koch_open(level: int = 3) -> SampledCurve:
    """Koch snowflake opened at its basepoint vertex (last edge dropped)."""
    pts = koch_vertices(level)[:-1]
    t = np.linspace(0.0, 1.0, len(pts))
    return SampledCurve(E2, t, pts, closed=False)


def semicircle(samples: int = 2048) -> SampledCurve:
    t = np.linspace(0.0, 1.0, samples)
    pts = np.stack([np.cos(np.pi * t), np.sin(np.pi * t)], axis=1)
    return SampledCurve(E2, t, pts, closed=False)


def spiral(turns: float = 1.5, samples: int = 2048) -> SampledCurve:
    t = np.linspace(0.0, 1.0, samples)
    ang = 2 * np.pi * turns * t
    r = 0.2 + 0.8 * t
    pts = np.stack([r * np.cos(ang), r * np.sin(ang)], axis=1)
    return SampledCurve(E2, t, pts, closed=False)


def perturbed_circle(modes: int = 5, decay: float = 0.5, seed: int = 0,
                     samples: int = 4096, max_attempts: int = 100) -> SampledCurve:
    """Random Fourier perturbation of the unit circle, rejected and resampled
    until its own polyline is simple."""
    rng = np.random.default_rng(seed)
    t = np.linspace(0.0, 1.0, samples + 1)
    theta = 2 * np.pi * t
    for _ in range(max_attempts):
        r = np.ones_like(theta)
        for km in range(1, modes + 1):
            amp = rng.uniform(-1.0, 1.0) * decay ** km
            phase = rng.uniform(0.0, 2 * np.pi)
            r += amp * np.cos(km * theta + phase)
        if np.min(r) <= 0.05:
            continue
        pts = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=1)
        pts[-1] = pts[0]
        if polyline_is_simple(E2, pts, closed=True).ok:
            return SampledCurve(E2, t, pts, closed=True)
    raise GenerationFailed(f"no simple perturbed circle after {max_attempts} tries")


GENERATORS = {
    "circle": circle,
    "ellipse": ellipse,
    "regular_polygon": regular_polygon,
    "star_polygon": star_polygon,
    "unit_square": unit_square,
    "right_triangle": right_triangle,
    "koch": koch,
    "koch_open": koch_open,
    "semicircle": semicircle,
    "spiral": spiral,
    "perturbed_circle": perturbed_circle,
}


def generate(spec: dict) -> SampledCurve:
    spec = dict(spec)
    name = spec.pop("generator", None)
    if name not in GENERATORS:
        raise OutOfRange(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}")
    return GENERATORS[name](**spec)
