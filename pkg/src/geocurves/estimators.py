"""Estimator-style wrappers so the interpolators and signature compose with
sklearn pipelines (get_params/set_params, fit/transform)."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .curves import SampledCurve
from .geometry import Space
from .interpolate import jordan_interpolate, simple_interpolate
from .signature import DEFAULT_LEVEL, path_signature


def _as_curve(X) -> SampledCurve:
    if isinstance(X, SampledCurve):
        return X
    pts = np.asarray(X, dtype=float)
    closed = bool(np.array_equal(pts[0], pts[-1]))
    times = np.linspace(0.0, 1.0, len(pts))
    return SampledCurve(Space.euclidean(pts.shape[1]), times, pts, closed)


class SimpleGeodesicInterpolator(BaseEstimator, TransformerMixin):
    """Last-exit-time interpolation of an open simple curve.

    ``fit`` runs the recursion and stores the partition; ``transform``
    returns the interpolation node array.
    """

    def __init__(self, epsilon=0.1):
        self.epsilon = epsilon

    def fit(self, X, y=None):
        curve = _as_curve(X)
        self.partition_, self.polyline_, self.report_ = \
            simple_interpolate(curve, self.epsilon)
        return self

    def transform(self, X, y=None):
        self.fit(X)
        return self.polyline_.nodes


class JordanGeodesicInterpolator(BaseEstimator, TransformerMixin):
    """Jordan-curve interpolation with required partition times."""

    def __init__(self, epsilon=0.1, required=()):
        self.epsilon = epsilon
        self.required = required

    def fit(self, X, y=None):
        curve = _as_curve(X)
        self.partition_, self.polyline_, self.report_ = \
            jordan_interpolate(curve, self.epsilon, self.required)
        return self

    def transform(self, X, y=None):
        self.fit(X)
        return self.polyline_.nodes


class SignatureFeatures(BaseEstimator, TransformerMixin):
    """Flattened truncated-signature feature vector of a node polyline."""

    def __init__(self, level=DEFAULT_LEVEL):
        self.level = level

    def fit(self, X, y=None):
        return self

    def transform(self, X, y=None):
        sig = path_signature(np.asarray(X, dtype=float), self.level)
        return np.concatenate([np.ravel(sig.levels[k])
                               for k in range(1, self.level + 1)])
