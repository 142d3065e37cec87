"""Truncated path signatures of planar polylines.

Level-k coefficients are stored densely as d^k tensors.  A straight segment
contributes the tensor exponential of its increment; the full signature is
the ordered product of segment exponentials (concatenation is
multiplicative in the truncated tensor algebra).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InvalidWord, ShapeError, TruncationTooSmall, Unsupported

DEFAULT_LEVEL = 6


@dataclass(frozen=True)
class TruncatedTensor:
    """Coefficients up to a fixed level; levels[k] has shape (d,)*k."""

    dimension: int
    level: int
    levels: tuple

    @staticmethod
    def identity(d: int, level: int) -> "TruncatedTensor":
        lv = [np.array(1.0)] + [np.zeros((d,) * k) for k in range(1, level + 1)]
        return TruncatedTensor(d, level, tuple(lv))

    def coeff(self, word) -> float:
        word = tuple(int(w) for w in word)
        if len(word) > self.level:
            raise TruncationTooSmall(
                f"word length {len(word)} exceeds truncation {self.level}")
        if any(not 1 <= w <= self.dimension for w in word):
            raise InvalidWord(f"letters must lie in 1..{self.dimension}")
        idx = tuple(w - 1 for w in word)
        return float(self.levels[len(word)][idx])


def segment_signature(increment, level: int = DEFAULT_LEVEL) -> TruncatedTensor:
    """exp(v): level k holds v^(tensor k) / k!."""
    v = np.asarray(increment, dtype=float)
    d = len(v)
    levels = [np.array(1.0)]
    for k in range(1, level + 1):
        levels.append(np.multiply.outer(levels[-1], v) / k)
    return TruncatedTensor(d, level, tuple(levels))


def chen_product(a: TruncatedTensor, b: TruncatedTensor) -> TruncatedTensor:
    if a.dimension != b.dimension or a.level != b.level:
        raise ShapeError("tensor operands must share dimension and level")
    out = []
    for n in range(a.level + 1):
        acc = np.zeros((a.dimension,) * n) if n else np.array(0.0)
        for i in range(n + 1):
            acc = acc + np.multiply.outer(a.levels[i], b.levels[n - i])
        out.append(acc)
    return TruncatedTensor(a.dimension, a.level, tuple(out))


def path_signature(nodes, level: int = DEFAULT_LEVEL,
                   space=None) -> TruncatedTensor:
    """Signature of the polyline through ``nodes`` (Euclidean only)."""
    if space is not None and getattr(space, "kind", "euclidean") != "euclidean":
        raise Unsupported("signatures are defined for Euclidean polylines only")
    nodes = np.asarray(nodes, dtype=float)
    d = nodes.shape[1]
    sig = TruncatedTensor.identity(d, level)
    for inc in np.diff(nodes, axis=0):
        sig = chen_product(sig, segment_signature(inc, level))
    return sig


def signature_coefficient_for_moments(sig: TruncatedTensor, k: int, n: int) -> float:
    """Coefficient of the word (1,...,1,2,...,2) with k+1 ones and n+1 twos."""
    if k + n + 2 > sig.level:
        raise TruncationTooSmall(
            f"need truncation >= {k + n + 2}, have {sig.level}")
    word = (1,) * (k + 1) + (2,) * (n + 1)
    return sig.coeff(word)


def shuffle_words(w1, w2):
    """All interleavings of two words (with multiplicity)."""
    n1, n2 = len(w1), len(w2)
    out = []
    for pos in combinations(range(n1 + n2), n1):
        word = [None] * (n1 + n2)
        i1 = i2 = 0
        posset = set(pos)
        for i in range(n1 + n2):
            if i in posset:
                word[i] = w1[i1]
                i1 += 1
            else:
                word[i] = w2[i2]
                i2 += 1
        out.append(tuple(word))
    return out


def reparametrize_polyline(nodes, time_change, n_samples: int = 0):
    """Resample a polyline at ``time_change``-warped parameters.

    Inserted points are collinear with their segment, so the signature is
    unchanged exactly; node count defaults to 4x the original.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = len(nodes)
    m = n_samples or 4 * n
    seg_t = np.linspace(0.0, 1.0, n)
    ts = np.array([time_change(t) for t in np.linspace(0.0, 1.0, m)])
    ts[0], ts[-1] = 0.0, 1.0
    # keep every original vertex so the resampled polyline traces the exact
    # same image (only collinear points are inserted in between)
    ts = np.union1d(ts, seg_t)
    seg = np.clip(np.searchsorted(seg_t, ts, side="right") - 1, 0, n - 2)
    frac = (ts - seg_t[seg]) / (seg_t[seg + 1] - seg_t[seg])
    return nodes[seg] + frac[:, None] * (nodes[seg + 1] - nodes[seg])


def mesh_subsample(vertices, mesh: float):
    """Greedy coarsening of a polyline: keep a vertex subset whose consecutive
    chords do not exceed ``mesh`` while skipping as many vertices as possible.

    Endpoints are always kept, so a closed vertex ring stays closed.
    """
    pts = np.asarray(vertices, dtype=float)
    keep = [0]
    i, last = 0, len(pts) - 1
    while i < last:
        j = i + 1
        while j + 1 <= last and np.linalg.norm(pts[j + 1] - pts[i]) <= mesh:
            j += 1
        keep.append(j)
        i = j
    return pts[keep]


def refinement_coefficient_gaps(vertices, meshes, word=(1, 2)):
    """Successive coefficient gaps along a mesh-refined family of polylines.

    For each mesh in ``meshes`` (strictly decreasing), the polyline is
    coarsened with :func:`mesh_subsample`, the signature coefficient of
    ``word`` is computed, and consecutive absolute differences are returned.
    A convergent refinement yields a decreasing (Cauchy-style) gap sequence.
    """
    level = len(word)
    coeffs = [float(path_signature(mesh_subsample(vertices, m), level).coeff(word))
              for m in meshes]
    return [abs(coeffs[k + 1] - coeffs[k]) for k in range(len(coeffs) - 1)]


def check_signature_invariances(nodes, level: int = DEFAULT_LEVEL, rng=None,
                                n_cases: int = 3, tol: float = 1e-10):
    """Reparametrization and translation invariance report for a polyline."""
    rng = rng or np.random.default_rng(0)
    base = path_signature(nodes, level)
    report = {"reparametrization": [], "translation": []}
    for _ in range(n_cases):
        a = rng.uniform(0.2, 3.0)
        warp = lambda t, a=a: t ** a
        warped = reparametrize_polyline(nodes, warp)
        sig_w = path_signature(warped, level)
        report["reparametrization"].append(max(
            float(np.max(np.abs(sig_w.levels[k] - base.levels[k])))
            for k in range(1, level + 1)))
        shift = rng.normal(size=np.asarray(nodes).shape[1]) * 5.0
        sig_t = path_signature(np.asarray(nodes) + shift, level)
        report["translation"].append(max(
            float(np.max(np.abs(sig_t.levels[k] - base.levels[k])))
            for k in range(1, level + 1)))
    report["ok"] = all(v <= tol
                       for vs in (report["reparametrization"], report["translation"])
                       for v in vs)
    return report
