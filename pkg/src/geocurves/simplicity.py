"""Self-intersection predicates for piecewise geodesic curves.

Planar orientation tests are evaluated in floating point with a forward
error bound; any sign decision within the bound is recomputed exactly with
rational arithmetic (floats are exact rationals), so no classification can
be wrong near degeneracy.  Spherical arcs use great-circle plane normals
with an absolute tolerance of 1e-10.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import SpaceMismatch
from .geometry import GeodesicSegment, Space, slerp

SPHERE_TOL = 1e-10


class IntersectKind(Enum):
    DISJOINT = "disjoint"
    SHARED_ENDPOINT_ONLY = "shared_endpoint_only"
    CROSSING = "crossing"
    OVERLAPPING = "overlapping"


@dataclass(frozen=True)
class Intersection:
    kind: IntersectKind
    witness: np.ndarray | None = None


@dataclass(frozen=True)
class SimplicityVerdict:
    ok: bool
    violation: tuple[int, int] | None = None
    witness: np.ndarray | None = None


# -- exact planar primitives ---------------------------------------------------

# |error| <= _ORIENT_GUARD * (sum of |term|) is a safe forward bound for the
# 2x2 determinant below (a handful of ulps).
_ORIENT_GUARD = 1e-12


def orient2d(a, b, c) -> int:
    """Sign of the cross product (b-a) x (c-a); exact."""
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    scale = (abs(b[0] - a[0]) * (abs(c[1]) + abs(a[1]))
             + abs(b[1] - a[1]) * (abs(c[0]) + abs(a[0]))
             + abs(det))
    if abs(det) > _ORIENT_GUARD * scale:
        return 1 if det > 0 else -1
    ax, ay = Fraction(float(a[0])), Fraction(float(a[1]))
    bx, by = Fraction(float(b[0])), Fraction(float(b[1]))
    cx, cy = Fraction(float(c[0])), Fraction(float(c[1]))
    det_exact = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det_exact > 0) - (det_exact < 0)


def _on_segment_collinear(a, b, p) -> bool:
    """p on closed segment ab, assuming a, b, p collinear; exact comparisons."""
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _planar_intersection(p1, p2, q1, q2) -> Intersection:
    d1 = orient2d(q1, q2, p1)
    d2 = orient2d(q1, q2, p2)
    d3 = orient2d(p1, p2, q1)
    d4 = orient2d(p1, p2, q2)

    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
       ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return Intersection(IntersectKind.CROSSING, _crossing_point(p1, p2, q1, q2))

    if d1 == d2 == d3 == d4 == 0:
        # collinear: classify by overlap extent
        touch = []
        for p, (a, b) in ((p1, (q1, q2)), (p2, (q1, q2)), (q1, (p1, p2)), (q2, (p1, p2))):
            if _on_segment_collinear(a, b, p):
                touch.append(tuple(p))
        distinct = set(touch)
        if not distinct:
            return Intersection(IntersectKind.DISJOINT)
        if len(distinct) == 1:
            pt = np.array(distinct.pop(), dtype=float)
            if _is_endpoint(pt, p1, p2) and _is_endpoint(pt, q1, q2):
                return Intersection(IntersectKind.SHARED_ENDPOINT_ONLY, pt)
            return Intersection(IntersectKind.CROSSING, pt)
        return Intersection(IntersectKind.OVERLAPPING,
                            np.array(touch[0], dtype=float))

    # at most a single touching point
    for p, d, (a, b) in ((p1, d1, (q1, q2)), (p2, d2, (q1, q2)),
                         (q1, d3, (p1, p2)), (q2, d4, (p1, p2))):
        if d == 0 and _on_segment_collinear(a, b, p):
            pt = np.asarray(p, dtype=float)
            if _is_endpoint(pt, p1, p2) and _is_endpoint(pt, q1, q2):
                return Intersection(IntersectKind.SHARED_ENDPOINT_ONLY, pt)
            return Intersection(IntersectKind.CROSSING, pt)
    return Intersection(IntersectKind.DISJOINT)


def _is_endpoint(pt, a, b) -> bool:
    return (pt[0] == a[0] and pt[1] == a[1]) or (pt[0] == b[0] and pt[1] == b[1])


def _crossing_point(p1, p2, q1, q2) -> np.ndarray:
    r = np.asarray(p2, float) - np.asarray(p1, float)
    s = np.asarray(q2, float) - np.asarray(q1, float)
    denom = r[0] * s[1] - r[1] * s[0]
    qp = np.asarray(q1, float) - np.asarray(p1, float)
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    return np.asarray(p1, float) + t * r


# -- spherical arcs ------------------------------------------------------------

def _arc_contains(a, b, p, tol=SPHERE_TOL) -> bool:
    """p (unit) lies on the minor great-circle arc from a to b."""
    n = np.cross(a, b)
    nn = np.linalg.norm(n)
    if nn < tol:  # degenerate arc
        return bool(np.linalg.norm(p - a) < tol)
    if abs(np.dot(n / nn, p)) > tol:
        return False
    # within the wedge: p between a and b along the arc
    return (np.dot(np.cross(a, p), n) >= -tol * nn
            and np.dot(np.cross(p, b), n) >= -tol * nn)


def _spherical_intersection(a, b, c, d) -> Intersection:
    n1 = np.cross(a, b)
    n2 = np.cross(c, d)
    line = np.cross(n1, n2)
    ln = np.linalg.norm(line)
    if ln < SPHERE_TOL:  # same great circle: check overlap
        hits = [p for p in (a, b) if _arc_contains(c, d, p)]
        hits += [p for p in (c, d) if _arc_contains(a, b, p)]
        uniq = []
        for h in hits:
            if not any(np.linalg.norm(h - u) < SPHERE_TOL for u in uniq):
                uniq.append(h)
        if not uniq:
            return Intersection(IntersectKind.DISJOINT)
        if len(uniq) == 1:
            pt = uniq[0]
            if _near_endpoint(pt, a, b) and _near_endpoint(pt, c, d):
                return Intersection(IntersectKind.SHARED_ENDPOINT_ONLY, pt)
            return Intersection(IntersectKind.CROSSING, pt)
        return Intersection(IntersectKind.OVERLAPPING, uniq[0])
    line = line / ln
    for cand in (line, -line):
        if _arc_contains(a, b, cand) and _arc_contains(c, d, cand):
            if _near_endpoint(cand, a, b) and _near_endpoint(cand, c, d):
                return Intersection(IntersectKind.SHARED_ENDPOINT_ONLY, cand)
            return Intersection(IntersectKind.CROSSING, cand)
    return Intersection(IntersectKind.DISJOINT)


def _near_endpoint(pt, a, b, tol=SPHERE_TOL) -> bool:
    return bool(np.linalg.norm(pt - a) < tol or np.linalg.norm(pt - b) < tol)


# -- generic Euclidean (d >= 3) ------------------------------------------------

def _segment_distance(p1, p2, q1, q2):
    """Min distance between two segments plus the closest point; floats."""
    u = p2 - p1
    v = q2 - q1
    w = p1 - q1
    a, b, c = u @ u, u @ v, v @ v
    d_, e = u @ w, v @ w
    denom = a * c - b * b
    if denom > 1e-15:
        s = np.clip((b * e - c * d_) / denom, 0.0, 1.0)
    else:
        s = 0.0
    t = (b * s + e) / c if c > 1e-15 else 0.0
    t = np.clip(t, 0.0, 1.0)
    # one refinement pass after clamping
    if c > 1e-15:
        s = np.clip((b * t - d_) / a, 0.0, 1.0) if a > 1e-15 else 0.0
        t = np.clip((b * s + e) / c, 0.0, 1.0)
    pa = p1 + s * u
    pb = q1 + t * v
    return float(np.linalg.norm(pa - pb)), 0.5 * (pa + pb)


def _euclidean_nd_intersection(p1, p2, q1, q2, tol=1e-10) -> Intersection:
    dist, mid = _segment_distance(p1, p2, q1, q2)
    if dist > tol:
        return Intersection(IntersectKind.DISJOINT)
    shared_p = _near_endpoint(mid, p1, p2, 2 * tol)
    shared_q = _near_endpoint(mid, q1, q2, 2 * tol)
    if shared_p and shared_q:
        return Intersection(IntersectKind.SHARED_ENDPOINT_ONLY, mid)
    return Intersection(IntersectKind.CROSSING, mid)


# -- public operations -----------------------------------------------------------

def segments_intersect(s1: GeodesicSegment, s2: GeodesicSegment) -> Intersection:
    if s1.space != s2.space:
        raise SpaceMismatch("segments live in different spaces")
    if s1.space.kind == "sphere":
        return _spherical_intersection(s1.a, s1.b, s2.a, s2.b)
    if s1.space.dim == 2:
        return _planar_intersection(s1.a, s1.b, s2.a, s2.b)
    return _euclidean_nd_intersection(s1.a, s1.b, s2.a, s2.b)


def _pair_check(space: Space, nodes, i, j) -> Intersection:
    if space.kind == "sphere":
        return _spherical_intersection(nodes[i], nodes[i + 1], nodes[j], nodes[j + 1])
    if space.dim == 2:
        return _planar_intersection(nodes[i], nodes[i + 1], nodes[j], nodes[j + 1])
    return _euclidean_nd_intersection(nodes[i], nodes[i + 1], nodes[j], nodes[j + 1])


def polyline_is_simple(space: Space, nodes: np.ndarray, closed: bool,
                       brute_force: bool = False) -> SimplicityVerdict:
    """All-pairs self-intersection check of a node polyline.

    Adjacent segments (sharing a node; for closed curves the first and last
    pair too) must meet only at the shared node; all other pairs must be
    disjoint.  An axis-aligned-box prefilter skips far-apart pairs unless
    ``brute_force`` is set.
    """
    nodes = np.asarray(nodes, dtype=float)
    nseg = len(nodes) - 1
    if nseg < 1:
        return SimplicityVerdict(True)

    lo = np.minimum(nodes[:-1], nodes[1:])
    hi = np.maximum(nodes[:-1], nodes[1:])

    for i in range(nseg):
        if not brute_force and space.kind == "euclidean":
            overlap = np.all(lo[i + 1:] <= hi[i], axis=1) & \
                np.all(hi[i + 1:] >= lo[i], axis=1)
            js = (np.nonzero(overlap)[0] + i + 1)
        else:
            js = range(i + 1, nseg)
        for j in js:
            wrap_adjacent = closed and i == 0 and j == nseg - 1
            adjacent = (j == i + 1) or wrap_adjacent
            inter = _pair_check(space, nodes, i, j)
            if adjacent:
                if inter.kind == IntersectKind.SHARED_ENDPOINT_ONLY:
                    continue
                if inter.kind == IntersectKind.DISJOINT:
                    # adjacent segments must share their node
                    return SimplicityVerdict(False, (i, j), None)
                return SimplicityVerdict(False, (i, j), inter.witness)
            if inter.kind != IntersectKind.DISJOINT:
                return SimplicityVerdict(False, (i, j), inter.witness)
    return SimplicityVerdict(True)


def is_simple(pg, brute_force: bool = False) -> SimplicityVerdict:
    """Simplicity verdict for a PiecewiseGeodesic (duck-typed: .space/.nodes/.closed)."""
    return polyline_is_simple(pg.space, pg.nodes, pg.closed, brute_force=brute_force)
