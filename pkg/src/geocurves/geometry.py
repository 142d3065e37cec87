"""Distances, unique minimizing geodesics and constant-speed evaluation.

Two spaces are supported: Euclidean R^d and the unit sphere S^2 embedded in
R^3.  Every geodesic handed out is the unique minimizing one, guaranteed by
requiring the endpoint distance to stay below the per-space uniqueness
radius (infinite for Euclidean space, pi/2 on the sphere, which also keeps
every ball we use geodesically convex).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidPoint, NotUnique, OutOfRange

ABS_TOL = 1e-10
SPHERE_NORM_TOL = 1e-12


@dataclass(frozen=True)
class Space:
    """Metric-space descriptor: ``Space.euclidean(d)`` or ``Space.sphere()``."""

    kind: str  # "euclidean" | "sphere"
    dim: int   # ambient coordinate dimension

    @staticmethod
    def euclidean(d: int) -> "Space":
        if d < 1:
            raise OutOfRange(f"dimension must be positive, got {d}")
        return Space("euclidean", d)

    @staticmethod
    def sphere() -> "Space":
        return Space("sphere", 3)

    @property
    def uniqueness_radius(self) -> float:
        return math.inf if self.kind == "euclidean" else math.pi / 2

    def check_point(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dim,):
            raise InvalidPoint(f"expected {self.dim} coordinates, got shape {p.shape}")
        if self.kind == "sphere":
            n = float(np.linalg.norm(p))
            if abs(n - 1.0) > SPHERE_NORM_TOL:
                raise InvalidPoint(f"sphere point norm {n} deviates beyond tolerance")
            p = p / n
        return p


def distance(space: Space, a, b) -> float:
    a = space.check_point(a)
    b = space.check_point(b)
    if space.kind == "euclidean":
        return float(np.linalg.norm(a - b))
    return float(math.acos(min(1.0, max(-1.0, float(np.dot(a, b))))))


def pairwise_distances(space: Space, pts_a: np.ndarray, pts_b: np.ndarray) -> np.ndarray:
    """Distance matrix between two point arrays (rows are points)."""
    if space.kind == "euclidean":
        diff = pts_a[:, None, :] - pts_b[None, :, :]
        return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    dots = np.clip(pts_a @ pts_b.T, -1.0, 1.0)
    return np.arccos(dots)


@dataclass(frozen=True)
class GeodesicSegment:
    """Unique minimizing geodesic between two points, constant speed on [0,1]."""

    space: Space
    a: np.ndarray
    b: np.ndarray
    length: float = field(default=0.0)

    def __post_init__(self):
        object.__setattr__(self, "a", self.space.check_point(self.a))
        object.__setattr__(self, "b", self.space.check_point(self.b))
        object.__setattr__(self, "length", distance(self.space, self.a, self.b))

    def reversed(self) -> "GeodesicSegment":
        return GeodesicSegment(self.space, self.b, self.a)


def geodesic(space: Space, a, b) -> GeodesicSegment:
    d = distance(space, a, b)
    if d >= space.uniqueness_radius:
        raise NotUnique(
            f"distance {d} >= uniqueness radius {space.uniqueness_radius}; "
            "minimizing geodesic not unique"
        )
    return GeodesicSegment(space, a, b)


def geodesic_eval(seg: GeodesicSegment, t: float) -> np.ndarray:
    if not 0.0 <= t <= 1.0:
        raise OutOfRange(f"parameter {t} outside [0, 1]")
    if seg.space.kind == "euclidean":
        return seg.a + t * (seg.b - seg.a)
    return slerp(seg.a, seg.b, t)


def slerp(a: np.ndarray, b: np.ndarray, t: float) -> np.ndarray:
    """Constant-speed great-circle interpolation between unit vectors."""
    omega = math.acos(min(1.0, max(-1.0, float(np.dot(a, b)))))
    if omega < 1e-15:
        return a.copy()
    s = math.sin(omega)
    p = (math.sin((1.0 - t) * omega) / s) * a + (math.sin(t * omega) / s) * b
    return p / np.linalg.norm(p)
