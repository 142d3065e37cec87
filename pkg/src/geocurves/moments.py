"""Polygon interior moments, the generalized Green identity, orientation
detection and reparametrization recovery.

Interior moments integrate (x - x0)^k (y1 - y)^n over the polygon interior.
They are evaluated in closed form by reducing to a boundary line integral:
the integrand has an explicit x-antiderivative, so each straight edge
contributes a polynomial integral in its own parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import (ImageMismatch, Indeterminate, NotJordan, OnBoundary,
                     OrientationError, TruncationTooSmall)
from .signature import TruncatedTensor, signature_coefficient_for_moments
from .simplicity import orient2d, polyline_is_simple


@dataclass(frozen=True)
class MomentVector:
    x0: float
    y1: float
    entries: dict  # (k, n) -> moment value

    def max_difference(self, other: "MomentVector") -> float:
        keys = set(self.entries) & set(other.entries)
        return max(abs(self.entries[k] - other.entries[k]) for k in keys)


@dataclass(frozen=True)
class GreenReport:
    epsilon: float
    line_integral: float
    area_integral: float

    @property
    def residual(self) -> float:
        return abs(self.line_integral - self.area_integral)


@dataclass(frozen=True)
class ReparamResult:
    matched: bool
    r_samples: np.ndarray | None
    max_deviation: float
    orientation_flip: bool


def signed_area(nodes) -> float:
    nodes = np.asarray(nodes, dtype=float)
    x, y = nodes[:, 0], nodes[:, 1]
    return 0.5 * float(np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]))


def polygon_moment(nodes, k: int, n: int, x0: float = 0.0, y1: float = 0.0) -> float:
    """Interior integral of (x - x0)^k (y1 - y)^n over a ccw simple polygon,
    via the boundary reduction (1/(k+1)) * contour integral of
    (x - x0)^(k+1) (y1 - y)^n dy."""
    nodes = np.asarray(nodes, dtype=float)
    if signed_area(nodes) < 0.0:
        raise OrientationError("polygon must be positively oriented")
    total = 0.0
    for (ax, ay), (bx, by) in zip(nodes[:-1], nodes[1:]):
        dy = by - ay
        if dy == 0.0:
            continue
        # edge parametrized by s in [0,1]
        px = P.polypow([ax - x0, bx - ax], k + 1)          # (x(s)-x0)^(k+1)
        py = P.polypow([y1 - ay, -(by - ay)], n)           # (y1-y(s))^n
        integrand = P.polymul(px, py)
        coeffs = np.asarray(integrand, dtype=float)
        total += dy * float(np.sum(coeffs / np.arange(1, len(coeffs) + 1)))
    return total / (k + 1)


# -- polynomial line/area integrals for the Green identity --------------------


def poly_eval2(coeffs: dict, x: float, y: float) -> float:
    return sum(c * x ** i * y ** j for (i, j), c in coeffs.items())


def poly_partial(coeffs: dict, var: int) -> dict:
    out = {}
    for (i, j), c in coeffs.items():
        if var == 0 and i > 0:
            out[(i - 1, j)] = out.get((i - 1, j), 0.0) + c * i
        elif var == 1 and j > 0:
            out[(i, j - 1)] = out.get((i, j - 1), 0.0) + c * j
    return out


def _edge_poly(coeffs: dict, a, b) -> np.ndarray:
    """Bivariate polynomial restricted to the edge a->b as a 1-d poly in s."""
    xs = np.array([a[0], b[0] - a[0]])
    ys = np.array([a[1], b[1] - a[1]])
    out = np.zeros(1)
    for (i, j), c in coeffs.items():
        term = P.polymul(P.polypow(xs, i), P.polypow(ys, j)) * c
        out = P.polyadd(out, term)
    return out


def line_integral(f: dict, g: dict, nodes) -> float:
    """Contour integral of f dy - g dx over the polyline, exact per edge."""
    nodes = np.asarray(nodes, dtype=float)
    total = 0.0
    for a, b in zip(nodes[:-1], nodes[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        for coeffs, weight in ((f, dy), (g, -dx)):
            if not coeffs or weight == 0.0:
                continue
            poly = _edge_poly(coeffs, a, b)
            total += weight * float(np.sum(poly / np.arange(1, len(poly) + 1)))
    return total


def area_integral(divergence: dict, nodes) -> float:
    """Interior integral of a polynomial integrand, by moment expansion."""
    total = 0.0
    for (i, j), c in divergence.items():
        if c == 0.0:
            continue
        total += c * ((-1.0) ** j) * polygon_moment(nodes, i, j, 0.0, 0.0)
    return total


def greens_check(f: dict, g: dict, curve, epsilons, required=()) -> list[GreenReport]:
    """Both sides of the Green identity on successively finer Jordan
    interpolations of ``curve``; the integrand on the area side is
    df/dx + dg/dy."""
    from .interpolate import jordan_interpolate
    if not curve.closed:
        raise NotJordan("greens_check requires a closed Jordan curve")
    divergence = {}
    for key, val in poly_partial(f, 0).items():
        divergence[key] = divergence.get(key, 0.0) + val
    for key, val in poly_partial(g, 1).items():
        divergence[key] = divergence.get(key, 0.0) + val
    reports = []
    for eps in epsilons:
        _, pg, _ = jordan_interpolate(curve, eps, required)
        nodes = pg.nodes if signed_area(pg.nodes) > 0 else pg.nodes[::-1]
        reports.append(GreenReport(eps, line_integral(f, g, nodes),
                                   area_integral(divergence, nodes)))
    return reports


# -- point-in-polygon -----------------------------------------------------------


def _on_edge(a, b, p) -> bool:
    if orient2d(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def interior_indicator(nodes, point) -> bool:
    """Even-odd crossing test with exact orientation predicates."""
    nodes = np.asarray(nodes, dtype=float)
    px, py = float(point[0]), float(point[1])
    inside = False
    for a, b in zip(nodes[:-1], nodes[1:]):
        if _on_edge(a, b, (px, py)):
            raise OnBoundary("query point lies on the polygon boundary")
        ay, by = a[1], b[1]
        if (ay > py) != (by > py):
            # edge straddles the horizontal line through the point; the
            # crossing is left/right of the point by an orientation test
            if ay < by:
                side = orient2d(a, b, (px, py))
            else:
                side = orient2d(b, a, (px, py))
            if side > 0:
                inside = not inside
    return inside


def winding_number(nodes, point) -> int:
    """Independent winding-number oracle (signed crossing count)."""
    nodes = np.asarray(nodes, dtype=float)
    px, py = float(point[0]), float(point[1])
    wn = 0
    for a, b in zip(nodes[:-1], nodes[1:]):
        if a[1] <= py:
            if b[1] > py and orient2d(a, b, (px, py)) > 0:
                wn += 1
        elif b[1] <= py and orient2d(a, b, (px, py)) < 0:
            wn -= 1
    return wn


# -- moments from signature vs geometry ------------------------------------------


def moments_from_signature(sig: TruncatedTensor, K: int,
                           x0: float, y1: float) -> MomentVector:
    if K + 2 > sig.level:
        raise TruncationTooSmall(f"need truncation >= {K + 2}, have {sig.level}")
    entries = {}
    for k in range(K + 1):
        for n in range(K + 1 - k):
            c = signature_coefficient_for_moments(sig, k, n)
            entries[(k, n)] = math.factorial(k) * math.factorial(n) * c
    return MomentVector(x0, y1, entries)


def moments_from_geometry(nodes, K: int, x0: float, y1: float) -> MomentVector:
    entries = {}
    for k in range(K + 1):
        for n in range(K + 1 - k):
            entries[(k, n)] = polygon_moment(nodes, k, n, x0, y1)
    return MomentVector(x0, y1, entries)


def orientation_from_signature(sig: TruncatedTensor) -> str:
    """"positive" or "negative", from the sign of the (1,2) coefficient,
    which equals +/- the interior area for Jordan input."""
    c = sig.coeff((1, 2))
    if abs(c) < 1e-12:
        raise Indeterminate("area coefficient indistinguishable from zero")
    return "positive" if c > 0 else "negative"


# -- reparametrization recovery ---------------------------------------------------


def _project_to_polyline(nodes, pts):
    """Per point: squared-distance-minimizing location on the polyline,
    reported as (cumulative-fraction parameter, distance)."""
    nodes = np.asarray(nodes, dtype=float)
    seg_vec = nodes[1:] - nodes[:-1]
    seg_len2 = np.einsum("ij,ij->i", seg_vec, seg_vec)
    seg_len2 = np.where(seg_len2 == 0.0, 1.0, seg_len2)
    lengths = np.linalg.norm(seg_vec, axis=1)
    cum = np.concatenate(([0.0], np.cumsum(lengths)))
    total = cum[-1]
    params = np.empty(len(pts))
    dists = np.empty(len(pts))
    for i, p in enumerate(np.asarray(pts, dtype=float)):
        w = p - nodes[:-1]
        s = np.clip(np.einsum("ij,ij->i", w, seg_vec) / seg_len2, 0.0, 1.0)
        proj = nodes[:-1] + s[:, None] * seg_vec
        d2 = np.einsum("ij,ij->i", (proj - p), (proj - p))
        j = int(np.argmin(d2))
        # tie-break toward the smaller parameter
        best = d2[j]
        for jj in np.nonzero(np.isclose(d2, best, rtol=0, atol=1e-24))[0]:
            if jj < j:
                j = int(jj)
        params[i] = (cum[j] + s[j] * lengths[j]) / total
        dists[i] = math.sqrt(max(d2[j], 0.0))
    return params, dists


def reparam_recover(gamma, gamma_tilde, tol: float | None = None) -> ReparamResult:
    """Recover the time change r with gamma(r(t)) = gamma_tilde(t), if the two
    Jordan curves share an image and basepoint after translation to 0."""
    a = gamma.points - gamma.points[0]
    b = gamma_tilde.points - gamma_tilde.points[0]
    spacing = max(float(np.max(np.linalg.norm(np.diff(a, axis=0), axis=1))),
                  float(np.max(np.linalg.norm(np.diff(b, axis=0), axis=1))))
    if tol is None:
        tol = 3.0 * spacing
    # symmetric sample-set Hausdorff distance
    pa, da = _project_to_polyline(a, b)
    pb, db = _project_to_polyline(b, a)
    hausdorff = max(float(np.max(da)), float(np.max(db)))
    if hausdorff > tol:
        raise ImageMismatch(f"sample Hausdorff distance {hausdorff} > {tol}")
    r = pa
    max_dev = float(np.max(da))
    inner = r[1:-1]
    increasing = bool(np.all(np.diff(inner) > 0)) and r[0] <= inner[0]
    decreasing = bool(np.all(np.diff(inner) < 0))
    if decreasing:
        return ReparamResult(False, r, max_dev, True)
    return ReparamResult(increasing, r if increasing else r, max_dev, False)
