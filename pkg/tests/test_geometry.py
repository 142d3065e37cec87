"""Spaces, distances and minimizing geodesic segments."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geocurves.errors import InvalidPoint, NotUnique, OutOfRange, SpaceMismatch
from geocurves.geometry import (GeodesicSegment, Space, distance, geodesic,
                                geodesic_eval, pairwise_distances, slerp)

E2 = Space.euclidean(2)
E3 = Space.euclidean(3)
S2 = Space.sphere()


class TestSpace:
    def test_euclidean_uniqueness_radius_infinite(self):
        assert E2.uniqueness_radius == math.inf

    def test_sphere_uniqueness_radius_quarter_turn(self):
        assert S2.uniqueness_radius == pytest.approx(math.pi / 2)

    def test_check_point_accepts_unit_vector(self):
        p = S2.check_point([1.0, 0.0, 0.0])
        assert np.allclose(p, [1.0, 0.0, 0.0])

    def test_check_point_renormalizes_small_drift(self):
        p = S2.check_point([1.0 + 5e-13, 0.0, 0.0])
        assert np.linalg.norm(p) == pytest.approx(1.0, abs=1e-15)

    def test_check_point_rejects_large_drift(self):
        with pytest.raises(InvalidPoint):
            S2.check_point([1.1, 0.0, 0.0])

    def test_check_point_rejects_wrong_dimension(self):
        with pytest.raises(InvalidPoint):
            E2.check_point([1.0, 2.0, 3.0])


class TestDistance:
    def test_planar_3_4_5(self):
        assert distance(E2, [0, 0], [3, 4]) == pytest.approx(5.0)

    def test_sphere_pole_to_equator(self):
        d = distance(S2, [0, 0, 1], [1, 0, 0])
        assert d == pytest.approx(math.pi / 2, abs=1e-12)

    def test_sphere_antipodal(self):
        d = distance(S2, [0, 0, 1], [0, 0, -1])
        assert d == pytest.approx(math.pi, abs=1e-12)

    def test_pairwise_matches_scalar(self):
        rng = np.random.default_rng(0)
        pts = rng.normal(size=(6, 2))
        full = pairwise_distances(E2, pts, pts)
        for i in range(6):
            for j in range(6):
                assert full[i, j] == pytest.approx(
                    distance(E2, pts[i], pts[j]), abs=1e-12)

    @given(st.lists(st.floats(-50, 50), min_size=2, max_size=2),
           st.lists(st.floats(-50, 50), min_size=2, max_size=2))
    def test_symmetry(self, a, b):
        assert distance(E2, a, b) == pytest.approx(distance(E2, b, a))


class TestGeodesic:
    def test_euclidean_midpoint(self):
        seg = geodesic(E2, [0, 0], [2, 0])
        assert np.allclose(geodesic_eval(seg, 0.5), [1, 0])

    def test_endpoints_exact(self):
        seg = geodesic(E2, [0.1, 0.7], [-2.3, 4.0])
        assert np.array_equal(geodesic_eval(seg, 0.0), [0.1, 0.7])
        assert np.array_equal(geodesic_eval(seg, 1.0), [-2.3, 4.0])

    def test_sphere_arc_midpoint(self):
        a = np.array([1.0, 0.0, 0.0])
        b = np.array([0.6, 0.8, 0.0])
        seg = geodesic(S2, a, b)
        mid = geodesic_eval(seg, 0.5)
        expected = (a + b) / np.linalg.norm(a + b)
        assert np.allclose(mid, expected, atol=1e-12)

    def test_boundary_distance_rejected(self):
        # distance exactly pi/2 sits on the uniqueness-radius boundary
        with pytest.raises(NotUnique):
            geodesic(S2, [1, 0, 0], [0, 1, 0])

    def test_sphere_antipodal_rejected(self):
        with pytest.raises(NotUnique):
            geodesic(S2, [0, 0, 1], [0, 0, -1])

    def test_slerp_stays_on_sphere(self):
        for t in np.linspace(0, 1, 11):
            p = slerp(np.array([1.0, 0, 0]), np.array([0, 0, 1.0]), t)
            assert np.linalg.norm(p) == pytest.approx(1.0, abs=1e-12)

    def test_eval_out_of_range(self):
        seg = geodesic(E2, [0, 0], [1, 0])
        with pytest.raises(OutOfRange):
            geodesic_eval(seg, 1.5)

    def test_length_recorded(self):
        seg = GeodesicSegment(E2, np.array([0.0, 0.0]), np.array([3.0, 4.0]))
        assert seg.length == pytest.approx(5.0)

    # minimizing property: d(a, m(t)) + d(m(t), b) == d(a, b)
    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10 ** 6), st.floats(0.01, 0.99))
    def test_minimizing_property_sphere(self, seed, t):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=3)
        a /= np.linalg.norm(a)
        b = rng.normal(size=3)
        b /= np.linalg.norm(b)
        if distance(S2, a, b) >= S2.uniqueness_radius:
            return
        seg = geodesic(S2, a, b)
        m = geodesic_eval(seg, t)
        assert (distance(S2, a, m) + distance(S2, m, b)
                == pytest.approx(distance(S2, a, b), abs=1e-10))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_reversal_pointwise(self, seed):
        rng = np.random.default_rng(seed)
        a, b = rng.normal(size=2), rng.normal(size=2)
        f = geodesic(E2, a, b)
        r = geodesic(E2, b, a)
        for t in np.linspace(0, 1, 7):
            assert np.allclose(geodesic_eval(f, t), geodesic_eval(r, 1 - t),
                               atol=1e-12)


def test_distance_space_mismatch():
    with pytest.raises((SpaceMismatch, InvalidPoint)):
        distance(E2, [0, 0, 0], [1, 1, 1])
