"""Polygon moments, the boundary-integral identity and curve comparison."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geocurves import generators as gen
from geocurves.curves import SampledCurve
from geocurves.errors import (ImageMismatch, OnBoundary, OrientationError,
                              TruncationTooSmall)
from geocurves.geometry import Space
from geocurves.moments import (area_integral, greens_check, interior_indicator,
                               line_integral, moments_from_geometry,
                               moments_from_signature,
                               orientation_from_signature, polygon_moment,
                               reparam_recover, signed_area, winding_number)
from geocurves.signature import path_signature, reparametrize_polyline

E2 = Space.euclidean(2)
SQUARE = np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]], dtype=float)
TRIANGLE = np.array([[0, 0], [1, 0], [0, 1], [0, 0]], dtype=float)


class TestSignedArea:
    def test_unit_square_ccw(self):
        assert signed_area(SQUARE) == 1.0

    def test_unit_square_cw(self):
        assert signed_area(SQUARE[::-1]) == -1.0

    def test_triangle(self):
        assert signed_area(TRIANGLE) == 0.5


class TestPolygonMoment:
    def test_area_any_reference(self):
        for x0, y1 in ((0, 0), (3, -2), (0.5, 0.5)):
            assert polygon_moment(SQUARE, 0, 0, x0, y1) == pytest.approx(1.0)

    def test_first_moment_square(self):
        assert polygon_moment(SQUARE, 1, 0, 0.0, 0.0) == pytest.approx(0.5)

    def test_circle_area(self):
        poly = gen.circle(4096).points
        m = 4096
        inscribed = m / 2 * math.sin(2 * math.pi / m)
        assert polygon_moment(poly, 0, 0, 0, 0) == pytest.approx(
            inscribed, abs=1e-12)
        assert polygon_moment(poly, 0, 0, 0, 0) == pytest.approx(
            math.pi, abs=1e-5)

    def test_clockwise_rejected(self):
        with pytest.raises(OrientationError):
            polygon_moment(SQUARE[::-1], 0, 0, 0, 0)

    def test_square_mixed_moment_hand_value(self):
        # integral over [0,1]^2 of x * (2 - y) dxdy = 0.5 * 1.5 = 0.75
        assert polygon_moment(SQUARE, 1, 1, 0.0, 2.0) == pytest.approx(0.75)

    def test_translation_covariance(self):
        rng = np.random.default_rng(0)
        shift = rng.normal(size=2)
        moved = SQUARE + shift
        for k in range(3):
            for n in range(3 - k):
                a = polygon_moment(SQUARE, k, n, 0.2, 0.8)
                b = polygon_moment(moved, k, n, 0.2 + shift[0], 0.8 + shift[1])
                assert a == pytest.approx(b, abs=1e-12)


class TestGreensCheck:
    def curve(self, pts):
        t = np.linspace(0, 1, len(pts))
        return SampledCurve(E2, t, pts, closed=True)

    def test_f_x_reduces_to_area(self):
        # contour integral of x dy over the unit square equals the area
        assert line_integral({(1, 0): 1.0}, {}, SQUARE) \
            == pytest.approx(1.0, abs=1e-12)
        assert area_integral({(0, 0): 1.0}, SQUARE) \
            == pytest.approx(1.0, abs=1e-12)
        reps = greens_check({(1, 0): 1.0}, {}, gen.unit_square(), [0.3])
        assert reps[0].residual <= 1e-12

    def test_g_y_reduces_to_area(self):
        assert line_integral({}, {(0, 1): 1.0}, SQUARE) \
            == pytest.approx(1.0, abs=1e-12)
        reps = greens_check({}, {(0, 1): 1.0}, gen.unit_square(), [0.3])
        assert reps[0].residual <= 1e-12

    def test_quadratic_hand_value(self):
        # f=x^2, g=y^2: area side = integral of (2x + 2y) over the unit square
        assert line_integral({(2, 0): 1.0}, {(0, 2): 1.0}, SQUARE) \
            == pytest.approx(2.0, abs=1e-12)
        assert area_integral({(1, 0): 2.0, (0, 1): 2.0}, SQUARE) \
            == pytest.approx(2.0, abs=1e-12)
        reps = greens_check({(2, 0): 1.0}, {(0, 2): 1.0},
                            gen.unit_square(), [0.3])
        assert reps[0].residual <= 1e-12

    def test_cubic_on_polygons(self):
        f = {(3, 0): 1.0, (1, 1): 2.0, (0, 2): -0.5}
        g = {(0, 3): 1.0, (2, 1): -1.0, (1, 0): 0.25}
        for poly in (gen.unit_square(), gen.right_triangle(),
                     gen.regular_polygon(5)):
            reps = greens_check(f, g, poly, [0.2, 0.1])
            for r in reps:
                assert r.residual <= 1e-12

    def test_koch_residual_sequence(self):
        reps = greens_check({(3, 0): 1.0, (1, 1): 2.0}, {(0, 3): 1.0},
                            gen.koch(4), [0.2, 0.1, 0.05])
        res = [r.residual for r in reps]
        assert all(b <= a + 1e-12 for a, b in zip(res, res[1:]))
        assert res[-1] <= 1e-3


class TestInteriorIndicator:
    def test_square_inside(self):
        assert interior_indicator(SQUARE, (0.5, 0.5))

    def test_square_outside(self):
        assert not interior_indicator(SQUARE, (2.0, 2.0))

    def test_boundary_rejected(self):
        with pytest.raises(OnBoundary):
            interior_indicator(SQUARE, (0.5, 0.0))

    def test_star_centroid_matches_winding_oracle(self):
        star = gen.star_polygon(5).points
        centroid = star[:-1].mean(axis=0)
        inside = interior_indicator(star, centroid)
        assert inside == (winding_number(star, centroid) != 0)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10 ** 9))
    def test_matches_winding_number_randomly(self, seed):
        rng = np.random.default_rng(seed)
        polys = [SQUARE, TRIANGLE, gen.star_polygon(5).points]
        poly = polys[seed % 3]
        for _ in range(50):
            q = rng.uniform(-1.5, 2.5, size=2)
            try:
                inside = interior_indicator(poly, q)
            except OnBoundary:
                continue
            assert inside == (winding_number(poly, q) != 0)


class TestMomentIdentity:
    @pytest.mark.parametrize("maker", [
        gen.unit_square, gen.right_triangle,
        lambda: gen.star_polygon(5), lambda: gen.koch(2)])
    def test_signature_equals_geometry(self, maker):
        curve = maker()
        pts = curve.points - curve.points[0]
        sig = path_signature(pts, 6)
        ms = moments_from_signature(sig, 4, 0.0, 0.0)
        mg = moments_from_geometry(pts, 4, 0.0, 0.0)
        for key in ms.entries:
            assert abs(ms.entries[key] - mg.entries[key]) <= 1e-9, key

    def test_truncation_guard(self):
        sig = path_signature(SQUARE, 3)
        with pytest.raises(TruncationTooSmall):
            moments_from_signature(sig, 4, 0.0, 0.0)

    def test_area_moment_equals_signed_area(self):
        for poly in (SQUARE, TRIANGLE, gen.koch(2).points):
            assert polygon_moment(poly, 0, 0, 0, 0) \
                == pytest.approx(signed_area(poly), abs=1e-12)


class TestOrientation:
    def test_ccw_circle_positive(self):
        sig = path_signature(gen.circle(512).points, 2)
        assert orientation_from_signature(sig) == "positive"

    def test_cw_circle_negative(self):
        sig = path_signature(gen.circle(512).points[::-1].copy(), 2)
        assert orientation_from_signature(sig) == "negative"

    def test_rigid_rotation_preserves_orientation(self):
        th = 0.7
        R = np.array([[math.cos(th), -math.sin(th)],
                      [math.sin(th), math.cos(th)]])
        pts = gen.circle(512).points @ R.T
        sig = path_signature(pts, 2)
        assert orientation_from_signature(sig) == "positive"


class TestReparamRecover:
    def make(self, pts):
        t = np.linspace(0, 1, len(pts))
        return SampledCurve(E2, t, pts, closed=True)

    def test_time_squared_reparametrization(self):
        circ = gen.circle(512)
        warped = reparametrize_polyline(circ.points, lambda t: t * t,
                                        n_samples=1024)
        res = reparam_recover(circ, self.make(warped))
        assert res.matched and not res.orientation_flip
        r = np.asarray(res.r_samples)
        assert np.all(np.diff(r[1:-1]) > 0)
        spacing = np.max(np.linalg.norm(np.diff(circ.points, axis=0), axis=1))
        assert res.max_deviation <= 2 * spacing

    def test_reversed_circle_flip(self):
        circ = gen.circle(512)
        rev = self.make(circ.points[::-1].copy())
        res = reparam_recover(circ, rev)
        assert res.orientation_flip and not res.matched

    def test_distinct_images_rejected(self):
        with pytest.raises(ImageMismatch):
            reparam_recover(gen.circle(512), gen.unit_square())
