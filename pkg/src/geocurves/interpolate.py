"""Piecewise geodesic interpolation of simple and Jordan curves.

Open simple curves: last-exit-time recursion.  Starting from t_0 = 0, each
step takes the largest time at which the curve still lies in the closed
ball of radius delta/2 around the current node.  This produces interior
node gaps of exactly delta/2, mesh below epsilon, and a provably simple
polyline.

Closed Jordan curves with required partition times: surround each required
point (and the basepoint) with small disjoint balls, join first-entry and
last-exit points to the centers by radial geodesics, and run the open-curve
recursion on each arc between consecutive balls, shrinking the step radius
and retrying whenever a freshly built arc touches the partially built curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import ContinuityReport, SampledCurve, SAFETY
from .errors import (AlgorithmStalled, ConstructionFailed, HypothesisNotMet,
                     InfeasibleRequiredPoints, InvalidStart, OutOfRange)
from .geometry import (Space, distance, geodesic, geodesic_eval,
                       pairwise_distances, slerp)
from .simplicity import polyline_is_simple, segments_intersect, IntersectKind

STALL_FACTOR = 10
STAGE_RETRY_LIMIT = 20
BISECTION_TOL = 1e-12


@dataclass(frozen=True)
class Partition:
    times: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t[0] != 0.0 or t[-1] != 1.0 or np.any(np.diff(t) <= 0):
            raise OutOfRange("partition must strictly increase from 0 to 1")
        object.__setattr__(self, "times", t)

    @property
    def mesh(self) -> float:
        return float(np.max(np.diff(self.times)))

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class PiecewiseGeodesic:
    space: Space
    partition: Partition
    nodes: np.ndarray
    closed: bool

    def eval(self, t: float) -> np.ndarray:
        ts = self.partition.times
        i = int(np.searchsorted(ts, t, side="right")) - 1
        i = min(max(i, 0), len(ts) - 2)
        frac = (t - ts[i]) / (ts[i + 1] - ts[i])
        frac = min(max(frac, 0.0), 1.0)
        if self.space.kind == "euclidean":
            return self.nodes[i] + frac * (self.nodes[i + 1] - self.nodes[i])
        return slerp(self.nodes[i], self.nodes[i + 1], frac)

    def as_curve(self) -> SampledCurve:
        return SampledCurve(self.space, self.partition.times, self.nodes, self.closed)


@dataclass
class JordanStageReport:
    tau: float
    ball_radius: float
    entries: list = field(default_factory=list)     # u_i
    exits: list = field(default_factory=list)       # v_i (v_0 stored first)
    stage_radii: list = field(default_factory=list)  # per-arc step radius delta^(i)/2
    retries: list = field(default_factory=list)


# -- ball entry / exit times ---------------------------------------------------

def _ball_cross_fraction(space: Space, a, b, center, radius) -> float:
    """Fraction s in [0,1] where the geodesic a->b crosses the ball boundary,
    with a inside (d <= radius) and b outside; largest root."""
    if space.kind == "euclidean":
        u = b - a
        w = a - center
        A = float(u @ u)
        B = 2.0 * float(w @ u)
        C = float(w @ w) - radius * radius
        disc = B * B - 4 * A * C
        if disc < 0.0 or A == 0.0:
            return 1.0
        s = (-B + math.sqrt(disc)) / (2 * A)
        return min(max(s, 0.0), 1.0)
    # sphere: bisection on d(slerp(s), center) - radius with sign change
    lo_s, hi_s = 0.0, 1.0
    f = lambda s: distance(space, slerp(a, b, s), center) - radius
    if f(1.0) <= 0.0:
        return 1.0
    while hi_s - lo_s > BISECTION_TOL:
        mid = 0.5 * (lo_s + hi_s)
        if f(mid) <= 0.0:
            lo_s = mid
        else:
            hi_s = mid
    return lo_s


def last_exit_time(curve: SampledCurve, t_start: float, center, radius: float,
                   t_end: float = 1.0) -> float:
    """Largest t in [t_start, t_end] with d(curve(t), center) <= radius.

    The curve segments between samples are geodesics and the balls in use are
    geodesically convex, so inside/outside transitions happen at most once
    per segment; the crossing is refined exactly (quadratic solve in the
    plane, bisection on the sphere).
    """
    if not 0.0 <= t_start < 1.0:
        raise OutOfRange(f"t_start {t_start} outside [0, 1)")
    if radius <= 0.0:
        raise OutOfRange("radius must be positive")
    center = curve.space.check_point(center)
    if distance(curve.space, curve.eval(t_start), center) > radius:
        raise InvalidStart("start point lies outside the closed ball")

    inner = (curve.times > t_start) & (curve.times < t_end)
    ts = np.concatenate(([t_start], curve.times[inner], [t_end]))
    pts = np.vstack(([curve.eval(t_start)], curve.points[inner], [curve.eval(t_end)]))
    d = np.array([distance(curve.space, p, center) for p in pts])
    inside = d <= radius
    if inside[-1]:
        return float(ts[-1])
    k = int(np.max(np.nonzero(inside)[0]))
    s = _ball_cross_fraction(curve.space, pts[k], pts[k + 1], center, radius)
    return float(ts[k] + s * (ts[k + 1] - ts[k]))


def first_entry_time(curve: SampledCurve, t_end: float, center, radius: float,
                     t_min: float = 0.0) -> float:
    """Smallest t in [t_min, t_end] with d(curve(t), center) <= radius."""
    center = curve.space.check_point(center)
    if distance(curve.space, curve.eval(t_end), center) > radius:
        raise InvalidStart("end point lies outside the closed ball")
    inner = (curve.times > t_min) & (curve.times < t_end)
    ts = np.concatenate(([t_min], curve.times[inner], [t_end]))
    pts = np.vstack(([curve.eval(t_min)], curve.points[inner], [curve.eval(t_end)]))
    d = np.array([distance(curve.space, p, center) for p in pts])
    inside = d <= radius
    k = int(np.min(np.nonzero(inside)[0]))
    if k == 0:
        return float(ts[0])
    s = _ball_cross_fraction(curve.space, pts[k], pts[k - 1], center, radius)
    return float(ts[k] - s * (ts[k] - ts[k - 1]))


# -- open simple curves ---------------------------------------------------------

def _exit_recursion(curve: SampledCurve, radius: float, max_steps: int) -> np.ndarray:
    times = [0.0]
    while times[-1] < 1.0:
        if len(times) > max_steps:
            raise AlgorithmStalled(
                f"recursion exceeded {max_steps} steps at step radius {radius}")
        t_prev = times[-1]
        t_next = last_exit_time(curve, t_prev, curve.eval(t_prev), radius)
        if t_next <= t_prev:
            raise AlgorithmStalled("no forward progress in exit recursion")
        times.append(t_next)
    times[-1] = 1.0
    return np.array(times)


def simple_interpolate(curve: SampledCurve, epsilon: float,
                       step_radius: float | None = None):
    """Last-exit-time interpolation of an open simple curve.

    Returns (Partition, PiecewiseGeodesic, ContinuityReport).  ``step_radius``
    overrides the default delta_epsilon/2 ball radius (used by the Jordan
    construction to shrink stages).
    """
    if not 0.0 < epsilon < 1.0:
        raise OutOfRange(f"epsilon {epsilon} outside (0, 1)")
    if curve.closed:
        raise OutOfRange("simple_interpolate requires an open curve")
    delta = curve.inverse_modulus(epsilon)
    radius = delta / 2.0 if step_radius is None else step_radius
    eta = curve.modulus(2.0 * radius)
    max_steps = STALL_FACTOR * math.ceil(2.0 / eta)
    times = _exit_recursion(curve, radius, max_steps)
    nodes = curve.eval_many(times)
    partition = Partition(times)
    pg = PiecewiseGeodesic(curve.space, partition, nodes, closed=False)
    verdict = polyline_is_simple(curve.space, nodes, closed=False)
    if not verdict.ok:
        raise ConstructionFailed(
            f"interpolation self-intersects at segment pair {verdict.violation}; "
            "moduli estimate too coarse for this sampling",
            violation=verdict.violation)
    report = ContinuityReport(epsilon, 2.0 * radius, eta, curve.n_samples)
    return partition, pg, report


# -- Jordan curves with required partition points --------------------------------

def _arc_min_separation(curve: SampledCurve, boundaries, epsilon: float) -> float:
    """Min distance over same-arc sample pairs with time gap >= epsilon.

    ``boundaries`` are arc endpoints in [0,1]; pairs are restricted to lie in
    a common closed sub-interval, mirroring the per-arc uniform continuity of
    the inverse parametrization.
    """
    best = np.inf
    ts, pts = curve.times, curve.points
    for lo, hi in zip(boundaries[:-1], boundaries[1:]):
        sel = (ts >= lo) & (ts <= hi)
        t_arc = ts[sel]
        p_arc = pts[sel]
        n = len(t_arc)
        if n < 2:
            continue
        for i0 in range(0, n, 512):
            i1 = min(i0 + 512, n)
            d = pairwise_distances(curve.space, p_arc[i0:i1], p_arc)
            dt = np.abs(t_arc[i0:i1, None] - t_arc[None, :])
            mask = dt >= epsilon
            if np.any(mask):
                best = min(best, float(d[mask].min()))
    return best


def _segments_of(nodes):
    return list(zip(nodes[:-1], nodes[1:]))


def _polyline_clashes(space: Space, new_nodes, obstacles, allowed_endpoints):
    """True if any segment of ``new_nodes`` meets any obstacle segment
    other than at an explicitly allowed shared endpoint."""
    from .geometry import GeodesicSegment
    new_segs = _segments_of(new_nodes)
    lo_n = [np.minimum(a, b) for a, b in new_segs]
    hi_n = [np.maximum(a, b) for a, b in new_segs]
    for (oa, ob) in obstacles:
        lo_o, hi_o = np.minimum(oa, ob), np.maximum(oa, ob)
        for idx, (na, nb) in enumerate(new_segs):
            if space.kind == "euclidean" and (
                    np.any(lo_n[idx] > hi_o) or np.any(hi_n[idx] < lo_o)):
                continue
            inter = segments_intersect(GeodesicSegment(space, na, nb),
                                       GeodesicSegment(space, oa, ob))
            if inter.kind == IntersectKind.DISJOINT:
                continue
            if inter.kind == IntersectKind.SHARED_ENDPOINT_ONLY:
                w = inter.witness
                if any(np.allclose(w, p, atol=1e-9) for p in allowed_endpoints):
                    continue
            return True
    return False


def jordan_interpolate(curve: SampledCurve, epsilon: float, required=()):
    """Simple piecewise geodesic interpolation of a Jordan curve whose
    partition contains every time in ``required`` exactly.

    Returns (Partition, PiecewiseGeodesic, JordanStageReport).
    """
    if not curve.closed:
        raise OutOfRange("jordan_interpolate requires a closed curve")
    if epsilon <= 0.0:
        raise OutOfRange("epsilon must be positive")
    req = sorted(float(t) for t in required)
    if any(not 0.0 < t < 1.0 for t in req):
        raise OutOfRange("required times must lie strictly inside (0, 1)")
    if len(set(req)) != len(req):
        raise InfeasibleRequiredPoints("required times must be distinct")

    k = len(req)
    tau1 = req[0] if k else 1.0
    tau = tau1 / 2.0
    centers_t = req + [1.0]           # ball centers at required times and basepoint
    centers = [curve.eval(t) for t in centers_t]

    # the proof's normalization of epsilon: smaller epsilon only strengthens
    # the result, so clamp rather than reject
    gaps = [tau, tau1 - tau] + [(b - a) / 2.0
                                for a, b in zip(centers_t[:-1], centers_t[1:])]
    eps_eff = min(epsilon, SAFETY * min(gaps))
    if eps_eff <= 0.0:
        raise InfeasibleRequiredPoints("required times leave no room for disjoint balls")

    # ball radius: small enough for the per-arc inverse modulus, with
    # pairwise-disjointness margin against the other centers and curve(tau)
    anchor_pts = np.array(centers + [curve.eval(tau)])
    sep = pairwise_distances(curve.space, anchor_pts, anchor_pts)
    np.fill_diagonal(sep, np.inf)
    min_sep = float(sep.min())
    if min_sep <= 0.0:
        raise InfeasibleRequiredPoints("ball centers coincide")
    boundaries = [tau] + req + [1.0, 1.0 + tau]
    delta_ball = min(_arc_separation_wrapped(curve, boundaries, eps_eff),
                     0.45 * min_sep)
    if np.isfinite(curve.space.uniqueness_radius):
        delta_ball = min(delta_ball, 0.45 * curve.space.uniqueness_radius)
    if not np.isfinite(delta_ball) or delta_ball <= 0.0:
        raise InfeasibleRequiredPoints("could not find a positive ball radius")

    # entry and exit times of each ball
    entries, exits = [], []
    for i, (tc, c) in enumerate(zip(centers_t, centers)):
        t_prev = tau if i == 0 else centers_t[i - 1]
        u = first_entry_time(curve, tc, c, delta_ball, t_min=t_prev)
        entries.append(u)
        if tc < 1.0:
            v = last_exit_time(curve, tc, c, delta_ball,
                               t_end=min(1.0, tc + eps_eff * 1.5))
            exits.append(v)
    # basepoint ball: last exit wraps past t=1 into [0, tau]
    v0 = last_exit_time(curve, 0.0, centers[-1], delta_ball, t_end=tau)
    report = JordanStageReport(tau=tau, ball_radius=delta_ball,
                               entries=list(entries), exits=[v0] + list(exits))

    # radial geodesic segments: 0 -> v0 and u_{k+1} -> 1 in the basepoint
    # ball, u_i -> tau_i -> v_i inside each required-point ball
    radial_segments = [(curve.points[0], curve.eval(v0)),
                       (curve.eval(entries[k]), curve.points[0])]
    for i in range(k):
        radial_segments.append((curve.eval(entries[i]), centers[i]))
        radial_segments.append((centers[i], curve.eval(exits[i])))

    # arcs between consecutive balls, interpolated stagewise
    arc_bounds = [(v0, entries[0])]
    for i in range(k):
        arc_bounds.append((exits[i], entries[i + 1]))

    stage_results = []
    raw_arc_obstacles = [_raw_arc_segments(curve, a, b) for a, b in arc_bounds]

    for stage, (a, b) in enumerate(arc_bounds):
        arc = curve.restrict(a, b)
        span = b - a
        eps_local = min(0.9999, eps_eff / span)
        delta_arc = arc.inverse_modulus(eps_local)
        radius = min(delta_arc / 2.0, 0.999 * delta_ball / 2.0)
        attempts = 0
        while True:
            if attempts >= STAGE_RETRY_LIMIT:
                raise ConstructionFailed(
                    f"stage {stage} exceeded {STAGE_RETRY_LIMIT} retries")
            try:
                _, pg_arc, _ = simple_interpolate(arc, eps_local, step_radius=radius)
            except (ConstructionFailed, AlgorithmStalled):
                attempts += 1
                radius /= 2.0
                continue
            arc_nodes = pg_arc.nodes
            obstacles = list(radial_segments)
            for other in range(len(arc_bounds)):
                if other == stage:
                    continue
                if other < len(stage_results):
                    obstacles += _segments_of(stage_results[other][1])
                else:
                    obstacles += raw_arc_obstacles[other]
            allowed = [arc_nodes[0], arc_nodes[-1]]
            if _polyline_clashes(curve.space, arc_nodes, obstacles, allowed):
                attempts += 1
                radius /= 2.0
                continue
            break
        report.retries.append(attempts)
        report.stage_radii.append(radius)
        stage_results.append((a + pg_arc.partition.times * span, arc_nodes))

    # assemble: 0 | arc_1 (v0..u_1) | tau_1 | arc_2 (v_1..u_2) | ... | 1;
    # each arc starts at the previous ball's exit and ends at the next entry
    full_times = [0.0]
    full_nodes = [curve.points[0]]
    for stage, (ts_arc, nodes_arc) in enumerate(stage_results):
        full_times += list(ts_arc)
        full_nodes += list(nodes_arc)
        if stage < k:
            full_times.append(centers_t[stage])
            full_nodes.append(centers[stage])
    full_times.append(1.0)
    full_nodes.append(curve.points[0])
    full_times = np.array(full_times)
    full_nodes = np.array(full_nodes)

    partition = Partition(full_times)
    pg = PiecewiseGeodesic(curve.space, partition, full_nodes, closed=True)
    verdict = polyline_is_simple(curve.space, full_nodes, closed=True)
    if not verdict.ok:
        raise ConstructionFailed(
            f"Jordan interpolation self-intersects at segment pair "
            f"{verdict.violation}", violation=verdict.violation)
    return partition, pg, report


def _raw_arc_segments(curve: SampledCurve, a: float, b: float):
    inner = (curve.times > a) & (curve.times < b)
    pts = np.vstack(([curve.eval(a)], curve.points[inner], [curve.eval(b)]))
    return _segments_of(pts)


def _arc_separation_wrapped(curve: SampledCurve, boundaries, epsilon: float) -> float:
    """Per-arc inverse-modulus scan on a closed curve whose final arc wraps
    through the basepoint (times in [1, 1+tau] map to [0, tau])."""
    ts = np.concatenate((curve.times, curve.times[1:] + 1.0))
    pts = np.vstack((curve.points, curve.points[1:]))
    best = np.inf
    for lo, hi in zip(boundaries[:-1], boundaries[1:]):
        sel = (ts >= lo) & (ts <= hi)
        t_arc, p_arc = ts[sel], pts[sel]
        n = len(t_arc)
        for i0 in range(0, n, 512):
            i1 = min(i0 + 512, n)
            d = pairwise_distances(curve.space, p_arc[i0:i1], p_arc)
            dt = np.abs(t_arc[i0:i1, None] - t_arc[None, :])
            mask = dt >= epsilon
            if np.any(mask):
                best = min(best, float(d[mask].min()))
    return SAFETY * best if np.isfinite(best) else np.inf


# -- geometric property verification oracles ---------------------------------------------------

def verify_crossing_intersection(space: Space, x, y, z, w, r: float) -> bool:
    """If the geodesics x-y and z-w intersect and both have length <= r, at
    least one of the four cross endpoint distances is strictly below r."""
    from .geometry import GeodesicSegment
    if distance(space, x, y) > r or distance(space, z, w) > r:
        raise HypothesisNotMet("segment lengths exceed r")
    inter = segments_intersect(GeodesicSegment(space, x, y),
                               GeodesicSegment(space, z, w))
    if inter.kind == IntersectKind.DISJOINT:
        raise HypothesisNotMet("segments do not intersect")
    cross = (distance(space, x, z), distance(space, y, z),
             distance(space, x, w), distance(space, y, w))
    return min(cross) < r


def verify_radial_deviation(space: Space, p, R: float, q, x, y, r: float) -> bool:
    """Geodesic x-y (length <= r < R), endpoints outside the closed ball
    B(p, R), crossing the radial segment p-q with q on the boundary: then
    both endpoints are within r of q."""
    from .geometry import GeodesicSegment
    if not 0.0 < r < R:
        raise HypothesisNotMet("need 0 < r < R")
    if abs(distance(space, p, q) - R) > 1e-9:
        raise HypothesisNotMet("q must lie on the ball boundary")
    if distance(space, x, y) > r:
        raise HypothesisNotMet("segment longer than r")
    if distance(space, p, x) <= R or distance(space, p, y) <= R:
        raise HypothesisNotMet("segment endpoints must lie outside the closed ball")
    inter = segments_intersect(GeodesicSegment(space, x, y),
                               GeodesicSegment(space, p, q))
    if inter.kind == IntersectKind.DISJOINT:
        raise HypothesisNotMet("segment misses the radial geodesic")
    return distance(space, x, q) < r and distance(space, y, q) < r
