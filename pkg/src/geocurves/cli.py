"""Command-line surface tying the library into reproducible experiments.

Exit codes: 0 success (all asserted checks passed), 1 check failure,
2 input error (with a machine-readable JSON object on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import generators, io
from .errors import GeoCurvesError
from .interpolate import jordan_interpolate, simple_interpolate
from .moments import (moments_from_signature, moments_from_geometry,
                      orientation_from_signature, reparam_recover, signed_area,
                      greens_check)
from .pvariation import p_variation
from .signature import path_signature
from .simplicity import polyline_is_simple

SIG_DIGITS = 12


def _fmt(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def _fail_input(msg: str) -> int:
    json.dump({"error": msg}, sys.stderr)
    sys.stderr.write("\n")
    return 2


def _parse_poly(text: str) -> dict:
    """Polynomial like 'x^2+2xy-3' or a JSON map {"i,j": coeff}."""
    text = text.strip()
    if text.startswith("{"):
        raw = json.loads(text)
        return {tuple(int(v) for v in key.split(",")): float(c)
                for key, c in raw.items()}
    import re
    coeffs: dict = {}
    for term in re.finditer(r"([+-]?[^+-]+)", text.replace(" ", "")):
        t = term.group(1)
        m = re.fullmatch(
            r"([+-]?)(\d*\.?\d*)(x(?:\^(\d+))?)?(y(?:\^(\d+))?)?", t)
        if not m or (not m.group(2) and not m.group(3) and not m.group(5)):
            raise GeoCurvesError(f"cannot parse polynomial term {t!r}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        c = float(m.group(2)) if m.group(2) else 1.0
        i = int(m.group(4)) if m.group(4) else (1 if m.group(3) else 0)
        j = int(m.group(6)) if m.group(6) else (1 if m.group(5) else 0)
        key = (i, j)
        coeffs[key] = coeffs.get(key, 0.0) + sign * c
    return coeffs


def cmd_generate(args) -> int:
    spec = json.loads(args.spec)
    if args.seed is not None:
        spec.setdefault("seed", args.seed)
    curve = generators.generate(spec)
    io.write_json(io.curve_to_json(curve), args.out)
    print(f"wrote {curve.n_samples} samples to {args.out}")
    return 0


def cmd_interpolate(args) -> int:
    curve = io.load_curve(getattr(args, "in"))
    required = [float(v) for v in args.required.split(",")] if args.required else []
    if curve.closed or required:
        if not curve.closed:
            return _fail_input("required partition points need a closed curve")
        partition, pg, _ = jordan_interpolate(curve, args.epsilon, required)
    else:
        partition, pg, _ = simple_interpolate(curve, args.epsilon)
    io.write_json(io.polyline_to_json(pg), args.out)
    if args.svg:
        io.render_svg(args.svg, curve=curve, polyline=pg)
    print(f"partition size {len(partition)}, mesh {_fmt(partition.mesh)}")
    return 0


def cmd_verify(args) -> int:
    pg = io.load_polyline(getattr(args, "in"))
    verdict = polyline_is_simple(pg.space, pg.nodes, pg.closed)
    if verdict.ok:
        print("simple")
        return 0
    print(f"violation: segments {verdict.violation[0]} and {verdict.violation[1]}"
          + (f", witness {verdict.witness.tolist()}"
             if verdict.witness is not None else ""))
    return 1


def cmd_pvar(args) -> int:
    curve = io.load_curve(getattr(args, "in"))
    res = p_variation(curve.points, args.p)
    print(f"p-variation (p={_fmt(args.p)}): {_fmt(res.value)} "
          f"over {len(res.optimal_partition)} partition points")
    return 0


def cmd_signature(args) -> int:
    pg = io.load_polyline(getattr(args, "in"))
    sig = path_signature(pg.nodes, args.level, space=pg.space)
    if args.word:
        word = tuple(int(v) for v in args.word.split(","))
        print(_fmt(sig.coeff(word)))
    else:
        for k in range(1, args.level + 1):
            flat = np.ravel(sig.levels[k])
            print(f"level {k}: " + " ".join(_fmt(v) for v in flat))
    return 0


def cmd_green(args) -> int:
    curve = io.load_curve(getattr(args, "in"))
    f = _parse_poly(args.f)
    g = _parse_poly(args.g)
    epsilons = [float(v) for v in args.epsilons.split(",")]
    reports = greens_check(f, g, curve, epsilons)
    ok = True
    prev = None
    for rep in reports:
        print(f"epsilon {_fmt(rep.epsilon)}: line {_fmt(rep.line_integral)} "
              f"area {_fmt(rep.area_integral)} residual {_fmt(rep.residual)}")
        if prev is not None and rep.residual > prev + 1e-12:
            ok = False
        prev = rep.residual
    return 0 if ok else 1


def cmd_compare(args) -> int:
    ca = io.load_curve(args.a)
    cb = io.load_curve(args.b)
    K = args.moments
    ok = True
    out = {}
    for label, c in (("a", ca), ("b", cb)):
        nodes = c.points - c.points[0]
        area = signed_area(nodes)
        out[label] = {"orientation": "positive" if area > 0 else "negative"}
        if area < 0:
            nodes = nodes[::-1]
        sig = path_signature(nodes, K + 2)
        out[label]["moments"] = moments_from_signature(sig, K, 0.0, 0.0).entries
    print(f"orientation a: {out['a']['orientation']}, b: {out['b']['orientation']}")
    flip = out["a"]["orientation"] != out["b"]["orientation"]
    max_diff = max(abs(out["a"]["moments"][k] - out["b"]["moments"][k])
                   for k in out["a"]["moments"])
    print(f"max moment difference (k+n <= {K}): {_fmt(max_diff)}")
    try:
        rep = reparam_recover(ca, cb)
        print(f"reparametrization: matched={rep.matched} "
              f"orientation_flip={rep.orientation_flip} "
              f"max_deviation={_fmt(rep.max_deviation)}")
        ok = rep.matched and not flip
    except GeoCurvesError as exc:
        print(f"reparametrization: image mismatch ({exc})")
        ok = False
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geocurves")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a curve JSON from a generator spec")
    p.add_argument("--spec", required=True, help='e.g. {"generator":"circle","samples":4096}')
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("interpolate", help="piecewise geodesic interpolation")
    p.add_argument("--in", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--required", default="")
    p.add_argument("--out", required=True)
    p.add_argument("--svg", default="")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("verify", help="simplicity verdict for a polyline")
    p.add_argument("--in", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pvar", help="exact p-variation over sample partitions")
    p.add_argument("--in", required=True)
    p.add_argument("--p", type=float, required=True)
    p.set_defaults(func=cmd_pvar)

    p = sub.add_parser("signature", help="truncated signature coefficients")
    p.add_argument("--in", required=True)
    p.add_argument("--level", type=int, default=6)
    p.add_argument("--word", default="")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("green", help="Green identity residuals under refinement")
    p.add_argument("--in", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--epsilons", required=True)
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("compare", help="orientation, moments and reparametrization")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--moments", type=int, default=4)
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        return _fail_input(f"{type(exc).__name__}: {exc}")
    except GeoCurvesError as exc:
        return _fail_input(f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
