"""Curve generators, JSON/CSV/SVG round-trips and the command-line surface."""
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from geocurves import generators as gen
from geocurves.cli import main
from geocurves.io import (curve_from_json, curve_to_json, load_curve,
                          read_json, render_svg, write_json)
from geocurves.moments import signed_area
from geocurves.simplicity import polyline_is_simple


class TestGenerators:
    def test_koch_segment_count(self):
        for level in (2, 3):
            c = gen.koch(level)
            assert len(c.points) - 1 == 3 * 4 ** level

    def test_circle_inscribed_area(self):
        c = gen.circle(4096)
        expected = 4096 / 2 * math.sin(2 * math.pi / 4096)
        assert signed_area(c.points) == pytest.approx(expected, abs=1e-12)
        assert abs(signed_area(c.points) - math.pi) < 2e-6

    def test_regular_polygon_square(self):
        c = gen.regular_polygon(4)
        assert polyline_is_simple(c.space, c.points, closed=True).ok

    def test_all_closed_generators_simple(self):
        for curve in (gen.circle(512), gen.ellipse(2, 1, 512),
                      gen.regular_polygon(6), gen.star_polygon(5),
                      gen.unit_square(), gen.right_triangle(),
                      gen.koch(2), gen.perturbed_circle(seed=7, samples=512)):
            assert curve.closed
            assert polyline_is_simple(curve.space, curve.points,
                                      closed=True).ok

    def test_open_generators_simple(self):
        for curve in (gen.semicircle(512), gen.spiral(samples=512),
                      gen.koch_open(2)):
            assert not curve.closed
            assert polyline_is_simple(curve.space, curve.points,
                                      closed=False).ok

    def test_perturbed_circle_deterministic(self):
        a = gen.perturbed_circle(seed=7, samples=512)
        b = gen.perturbed_circle(seed=7, samples=512)
        assert np.array_equal(a.points, b.points)

    def test_generate_dispatch(self):
        c = gen.generate({"generator": "circle", "samples": 256})
        assert len(c.points) == 257

    def test_positive_orientation(self):
        for curve in (gen.circle(256), gen.koch(2), gen.unit_square()):
            assert signed_area(curve.points) > 0


class TestJsonRoundTrip:
    def test_curve_bit_exact(self, tmp_path):
        c = gen.perturbed_circle(seed=3, samples=512)
        path = tmp_path / "curve.json"
        write_json(curve_to_json(c), str(path))
        c2 = curve_from_json(read_json(str(path)))
        assert np.array_equal(c.points, c2.points)
        assert np.array_equal(c.times, c2.times)
        assert c.closed == c2.closed

    def test_csv_import(self, tmp_path):
        path = tmp_path / "pts.csv"
        t = np.linspace(0, 2 * np.pi, 33)
        pts = np.stack([np.cos(t), np.sin(t)], axis=1)
        pts[-1] = pts[0]
        np.savetxt(path, pts, delimiter=",")
        c = load_curve(str(path))
        assert c.closed
        assert len(c.points) == 33

    def test_svg_output(self, tmp_path):
        from geocurves.interpolate import simple_interpolate
        c = gen.semicircle(512)
        part, pg, rep = simple_interpolate(c, 0.2)
        path = tmp_path / "out.svg"
        render_svg(path, c, pg)
        text = path.read_text()
        assert text.startswith("<?xml") or text.startswith("<svg")
        assert "svg" in text and "polyline" in text


def run_cli(*args):
    return main(list(args))


class TestCli:
    def gen_file(self, tmp_path, spec):
        out = tmp_path / "curve.json"
        code = run_cli("generate", "--spec", json.dumps(spec),
                       "--out", str(out))
        assert code == 0
        return out

    def test_generate_interpolate_verify(self, tmp_path, capsys):
        curve = self.gen_file(tmp_path, {"generator": "circle",
                                         "samples": 1024})
        poly = tmp_path / "poly.json"
        svg = tmp_path / "out.svg"
        code = run_cli("interpolate", "--in", str(curve), "--epsilon", "0.1",
                       "--required", "0.25,0.5", "--out", str(poly),
                       "--svg", str(svg))
        assert code == 0
        data = json.loads(poly.read_text())
        assert 0.25 in data["times"] and 0.5 in data["times"]
        assert svg.exists()
        assert run_cli("verify", "--in", str(poly)) == 0

    def test_verify_bowtie_exit_one(self, tmp_path, capsys):
        poly = tmp_path / "bowtie.json"
        poly.write_text(json.dumps({
            "space": "euclidean", "dim": 2, "closed": True,
            "times": [0.0, 0.25, 0.5, 0.75, 1.0],
            "points": [[0, 0], [1, 1], [1, 0], [0, 1], [0, 0]]}))
        assert run_cli("verify", "--in", str(poly)) == 1
        out = capsys.readouterr().out
        assert "0" in out and "2" in out  # violating segment pair

    def test_signature_word_circle(self, tmp_path, capsys):
        curve = self.gen_file(tmp_path, {"generator": "circle",
                                         "samples": 4096})
        code = run_cli("signature", "--in", str(curve), "--level", "2",
                       "--word", "1,2")
        assert code == 0
        val = float(capsys.readouterr().out.strip().split()[-1])
        assert val == pytest.approx(math.pi, abs=1e-3)

    def test_pvar(self, tmp_path, capsys):
        curve = self.gen_file(tmp_path, {"generator": "circle",
                                         "samples": 256})
        assert run_cli("pvar", "--in", str(curve), "--p", "1.0") == 0
        out = capsys.readouterr().out
        val = float(out.split("): ")[1].split()[0])
        # total variation of the inscribed 256-gon
        assert val == pytest.approx(256 * 2 * math.sin(math.pi / 256),
                                    rel=1e-6)

    def test_green(self, tmp_path, capsys):
        curve = self.gen_file(tmp_path, {"generator": "koch", "level": 3})
        code = run_cli("green", "--in", str(curve), "--f", "x^2",
                       "--g", "y^2", "--epsilons", "0.2,0.1")
        assert code == 0
        out = capsys.readouterr().out
        assert "residual" in out

    def test_compare_same_circle(self, tmp_path, capsys):
        a = self.gen_file(tmp_path, {"generator": "circle", "samples": 512})
        b = tmp_path / "b.json"
        b.write_text(a.read_text())
        assert run_cli("compare", "--a", str(a), "--b", str(b),
                       "--moments", "4") == 0

    def test_missing_file_exit_two(self, tmp_path, capsys):
        assert run_cli("pvar", "--in", str(tmp_path / "nope.json"),
                       "--p", "1.5") == 2
        err = capsys.readouterr().err
        json.loads(err)  # machine-readable error payload

    def test_malformed_json_exit_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run_cli("pvar", "--in", str(bad), "--p", "1.5") == 2

    def test_console_entrypoint(self):
        proc = subprocess.run([sys.executable, "-m", "geocurves.cli",
                               "--help"], capture_output=True, text=True)
        assert proc.returncode == 0
