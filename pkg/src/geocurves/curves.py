"""Sampled curves: evaluation, moduli of continuity, basepoint rotation.

A SampledCurve is the desk-scale ground truth: a time-stamped point sequence
on [0,1], evaluated by geodesic interpolation between consecutive samples.
The two moduli (inverse_modulus, modulus) are estimated over the sample grid
with a 0.99 safety factor; they feed the interpolation recursion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidPoint, NotSimple, OutOfRange
from .geometry import Space, distance, geodesic_eval, geodesic, pairwise_distances

MIN_SAMPLES = 16
SAFETY = 0.99
_CHUNK = 512  # row block for O(n^2) pair scans


@dataclass(frozen=True)
class ContinuityReport:
    epsilon: float
    delta_epsilon: float
    eta_epsilon: float
    grid_size: int = 0


class SampledCurve:
    """Finely sampled curve on [0,1]; immutable after construction."""

    def __init__(self, space: Space, times, points, closed: bool = False):
        times = np.asarray(times, dtype=float)
        points = np.asarray(points, dtype=float)
        if times.ndim != 1 or points.ndim != 2 or len(times) != len(points):
            raise InvalidPoint("times and points must be matching 1-d/2-d arrays")
        if len(times) < MIN_SAMPLES:
            raise OutOfRange(f"need at least {MIN_SAMPLES} samples, got {len(times)}")
        if times[0] != 0.0 or times[-1] != 1.0 or np.any(np.diff(times) <= 0):
            raise OutOfRange("times must strictly increase from 0 to 1")
        points = np.array([space.check_point(p) for p in points])
        step = np.array([distance(space, points[i], points[i + 1])
                         for i in range(len(points) - 1)])
        if np.any(step >= space.uniqueness_radius):
            raise InvalidPoint("consecutive samples exceed the geodesic uniqueness radius")
        if closed:
            if not np.array_equal(points[0], points[-1]):
                raise NotSimple("closed curve must end where it starts")
            interior = points[:-1]
        else:
            interior = points
        # injectivity checked exactly on stored coordinates
        _, counts = np.unique(interior, axis=0, return_counts=True)
        if np.any(counts > 1):
            raise NotSimple("sample points are not pairwise distinct")
        self.space = space
        self.times = times
        self.points = points
        self.closed = closed

    def __len__(self):
        return len(self.times)

    @property
    def n_samples(self) -> int:
        return len(self.times)

    def eval(self, t: float) -> np.ndarray:
        if not 0.0 <= t <= 1.0:
            raise OutOfRange(f"parameter {t} outside [0, 1]")
        i = int(np.searchsorted(self.times, t, side="right")) - 1
        i = min(max(i, 0), len(self.times) - 2)
        t0, t1 = self.times[i], self.times[i + 1]
        if t == t0:
            return self.points[i].copy()
        if t == t1:
            return self.points[i + 1].copy()
        frac = (t - t0) / (t1 - t0)
        seg = geodesic(self.space, self.points[i], self.points[i + 1])
        return geodesic_eval(seg, frac)

    def eval_many(self, ts) -> np.ndarray:
        return np.array([self.eval(t) for t in np.asarray(ts, dtype=float)])

    # -- moduli of continuity (grid estimates) --------------------------------

    def _pair_scan(self, select, reduce_t=False):
        """min over sample pairs (i<j) of distance (or |dt|) subject to ``select``.

        select(dt_block, d_block) -> boolean mask of admissible pairs.
        Returns min distance (reduce_t=False) or min |dt| (True); inf if empty.
        """
        pts, ts = self.points, self.times
        n = len(ts)
        best = np.inf
        for lo in range(0, n, _CHUNK):
            hi = min(lo + _CHUNK, n)
            d = pairwise_distances(self.space, pts[lo:hi], pts)
            dt = np.abs(ts[lo:hi, None] - ts[None, :])
            mask = select(dt, d)
            # keep strictly upper-triangular pairs only
            cols = np.arange(n)[None, :]
            rows = np.arange(lo, hi)[:, None]
            mask &= cols > rows
            if np.any(mask):
                vals = dt[mask] if reduce_t else d[mask]
                best = min(best, float(vals.min()))
        return best

    def inverse_modulus(self, epsilon: float) -> float:
        """delta such that d(curve_s, curve_t) < delta implies |t-s| < epsilon."""
        if not 0.0 < epsilon < 1.0:
            raise OutOfRange(f"epsilon {epsilon} outside (0, 1)")
        if self.closed:
            raise NotSimple("inverse modulus requires an open simple curve")
        m = self._pair_scan(lambda dt, d: dt >= epsilon)
        if m == 0.0:
            raise NotSimple("degenerate curve: distinct-time samples coincide")
        delta = SAFETY * m if np.isfinite(m) else SAFETY
        if np.isfinite(self.space.uniqueness_radius):
            delta = min(delta, SAFETY * self.space.uniqueness_radius)
        return delta

    def modulus(self, delta: float) -> float:
        """eta such that |t-s| < eta implies d(curve_s, curve_t) < delta/2."""
        if delta <= 0.0:
            raise OutOfRange(f"delta {delta} must be positive")
        m = self._pair_scan(lambda dt, d: d >= delta / 2.0, reduce_t=True)
        return SAFETY * (m if np.isfinite(m) else 1.0)

    # -- reparametrization machinery ------------------------------------------

    def rotate_basepoint(self, tau: float) -> "SampledCurve":
        """Closed curve re-anchored to start and end at ``eval(tau)``."""
        if not self.closed:
            raise NotSimple("basepoint rotation requires a closed curve")
        if not 0.0 < tau < 1.0:
            raise OutOfRange(f"tau {tau} outside (0, 1)")
        ts, pts = self.times, self.points
        p_tau = self.eval(tau)
        after = (ts > tau) & (ts < 1.0)
        before = (ts > 0.0) & (ts < tau)
        new_t = np.concatenate(([0.0], ts[after] - tau, [1.0 - tau],
                                ts[before] + 1.0 - tau, [1.0]))
        new_p = np.vstack(([p_tau], pts[after], [pts[0]], pts[before], [p_tau]))
        return SampledCurve(self.space, new_t, new_p, closed=True)

    def restrict(self, s: float, t: float) -> "SampledCurve":
        """Sub-arc on [s, t], reparametrized affinely to [0, 1]; open."""
        if not (0.0 <= s < t <= 1.0):
            raise OutOfRange(f"need 0 <= s < t <= 1, got ({s}, {t})")
        inner = (self.times > s) & (self.times < t)
        new_t = np.concatenate(([s], self.times[inner], [t]))
        new_p = np.vstack(([self.eval(s)], self.points[inner], [self.eval(t)]))
        new_t = (new_t - s) / (t - s)
        new_t[0], new_t[-1] = 0.0, 1.0
        new_t, new_p = _pad_to_min_samples(self.space, new_t, new_p)
        return SampledCurve(self.space, new_t, new_p, closed=False)

    def reverse(self) -> "SampledCurve":
        return SampledCurve(self.space, 1.0 - self.times[::-1],
                            self.points[::-1].copy(), self.closed)

    def translate(self, shift) -> "SampledCurve":
        if self.space.kind != "euclidean":
            raise InvalidPoint("translation defined for Euclidean curves only")
        return SampledCurve(self.space, self.times,
                            self.points + np.asarray(shift, dtype=float), self.closed)


def _pad_to_min_samples(space: Space, times: np.ndarray, points: np.ndarray):
    """Insert geodesic midpoints until the minimum sample count is met."""
    while len(times) < MIN_SAMPLES:
        gaps = np.diff(times)
        i = int(np.argmax(gaps))
        mid_t = 0.5 * (times[i] + times[i + 1])
        seg = geodesic(space, points[i], points[i + 1])
        mid_p = geodesic_eval(seg, 0.5)
        times = np.insert(times, i + 1, mid_t)
        points = np.insert(points, i + 1, mid_p, axis=0)
    return times, points
