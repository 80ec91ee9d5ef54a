"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input error, 3 numeric error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bodyio
from .bodies import (PolygonChain, direction_family, is_smooth, polytope_vertices, recenter,
                     uniform_directions)
from .curvature import floating_curvature, limit_ratio
from .errors import FloatlabError, InputError, NumericError
from .floating import floating_body
from .genbodies import convolution_body, hull_defect, illumination_body, santalo_region
from .homothety import HOMOTHETY_FLOOR, homothety_check, petty_scan, threshold


EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


@dataclass
class RunConfig:
    m: int = 720
    tol_vol: float | None = None
    seed: int = 0
    csv_path: str | None = None
    svg_path: str | None = None
    classification_tol: float = HOMOTHETY_FLOOR
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 8:
            raise InputError(f"m must be an integer >= 8, got {self.m!r}")
        if self.tol_vol is not None and not self.tol_vol > 0:
            raise InputError("volume tolerance must be positive")
        if not self.classification_tol > 0:
            raise InputError("classification tolerance must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise InputError("seed must be a 64-bit unsigned integer")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _body(opts):
    path = opts["body"]
    return bodyio.parse_body_spec(_read(path), source=str(path))


def _outline(body, count=720):
    verts = polytope_vertices(body)
    if verts is not None:
        return verts
    return body.boundary_point(uniform_directions(count))


def _as_polygon(body, m):
    """Polygon input for the generalized bodies: exact, or inscribed ``m``-gon."""
    verts = polytope_vertices(body)
    return PolygonChain(verts if verts is not None else body.boundary_point(uniform_directions(m)))


def _emit(cfg, header, rows, out):
    text = bodyio.csv_text(header, rows)
    if cfg.csv_path:
        Path(cfg.csv_path).write_text(text)
    else:
        out.write(text)


def _report(cfg, out, err, line):
    """Summary line: stdout when the CSV went to a file, stderr otherwise."""
    (out if cfg.csv_path else err).write(line + "\n")


def _svg(cfg, layers):
    if cfg.svg_path:
        Path(cfg.svg_path).write_text(bodyio.svg_text(layers))


def _cmd_float(cfg, out):
    body = _body(cfg.options)
    res = floating_body(body, cfg.options["delta"], cfg.m, tol_vol=cfg.tol_vol, seed=cfg.seed)
    n = body.dim
    axes = ["u_x", "u_y", "u_z"][:n]
    rows = []
    for i, (u, t, e) in enumerate(zip(res.directions, res.support_levels, res.volume_errors)):
        ang = math.atan2(u[1], u[0]) if n == 2 else float("nan")
        rows.append([i, ang, *u, t, e])
    _emit(cfg, ["index", "angle", *axes, "level", "volume_error"], rows, out)
    if n == 2:
        _svg(cfg, [(_outline(body), "black", "K"),
                   (res.hull.vertices, "crimson", f"K_delta, delta={res.delta:g}")])
    return EXIT_OK


def _cmd_curvature(cfg, out):
    body = _body(cfg.options)
    delta = cfg.options["delta"]
    count = cfg.options.get("directions") or 16
    u = direction_family(body.dim, count)
    rows = []
    for i, d in enumerate(u):
        rows.append([i, *d, delta, floating_curvature(body, delta, d, tol_vol=cfg.tol_vol)])
    axes = ["u_x", "u_y", "u_z"][:body.dim]
    _emit(cfg, ["index", *axes, "delta", "curvature"], rows, out)
    return EXIT_OK


def _cmd_limit(cfg, out):
    body = _body(cfg.options)
    x = np.asarray(cfg.options["point"], dtype=float)
    if len(x) != body.dim:
        raise InputError(f"point must have {body.dim} coordinates")
    deltas = cfg.options.get("deltas") or [1e-2, 1e-3, 1e-4, 1e-5]
    n = body.dim
    target = float(body.curvature(x)) ** (1.0 / (n + 1)) if is_smooth(body) else float("nan")
    rows = []
    for d in deltas:
        r = limit_ratio(body, x, d, tol_vol=cfg.tol_vol)
        rows.append([d, r, target, abs(r - target)])
    _emit(cfg, ["delta", "ratio", "kappa_root", "abs_error"], rows, out)
    return EXIT_OK


def _cmd_homothety(cfg, out, err):
    body = _body(cfg.options)
    rep = homothety_check(body, cfg.options["delta"], cfg.m, floor=cfg.classification_tol)
    _emit(cfg, ["delta", "m", "c", "defect", "discretization_error", "tolerance",
                "homothetic", "c_least_squares"],
          [[rep.delta, rep.m, rep.c, rep.defect, rep.discretization_error, rep.tolerance,
            rep.homothetic, rep.c_least_squares]], out)
    _report(cfg, out, err, rep.verdict + " (numerical verdict, not a proof)")
    if cfg.svg_path:
        centered = recenter(body)
        hull = floating_body(centered, rep.delta, rep.m).hull
        outline = _outline(centered)
        _svg(cfg, [(outline, "black", "K"), (hull.vertices, "crimson", "K_delta"),
                   (rep.c * outline, "steelblue", f"cK, c={rep.c:.6g}")])
    return EXIT_OK


def _cmd_petty(cfg, out, err):
    body = _body(cfg.options)
    scan = petty_scan(body, cfg.m)
    n = body.dim
    axes = ["x", "y", "z"][:n]
    rows = [[i, *p, v] for i, (p, v) in enumerate(zip(scan.points, scan.values))]
    _emit(cfg, ["index", *axes, "value"], rows, out)
    _report(cfg, out, err,
            f"T_m={scan.T_m:.17g} T_M={scan.T_M:.17g} tau={scan.tau:.17g} "
            f"tau_regular={scan.tau_regular:.17g} degenerate={str(scan.degenerate).lower()}")
    return EXIT_OK


def _cmd_threshold(cfg, out):
    inp = bodyio.parse_threshold_inputs(_read(cfg.options["inputs"]), str(cfg.options["inputs"]))
    rep = threshold(inp, literal_variant=cfg.options.get("literal_variant", False),
                    a_scale=cfg.options.get("a_scale", 1.0))
    rows = [[k, v] for k, v in rep.components().items()]
    rows += [[k, v] for k, v in rep.intermediates.items()]
    _emit(cfg, ["component", "value"], rows, out)
    return EXIT_OK


def _cmd_genbody(cfg, out, err):
    body = _body(cfg.options)
    if body.dim != 2:
        raise InputError("generalized bodies are planar")
    poly = _as_polygon(body, cfg.m)
    kind = cfg.options["kind"]
    param = cfg.options["param"]
    rays = cfg.options.get("rays") or 720
    build = {"illumination": illumination_body, "convolution": convolution_body,
             "santalo": santalo_region}[kind]
    res = build(poly, param, rays)
    rows = [[i, x, y] for i, (x, y) in enumerate(res.hull.vertices)]
    _emit(cfg, ["index", "x", "y"], rows, out)
    status = "empty" if res.empty else ("degenerate" if res.degenerate else "ok")
    line = f"kind={kind} parameter={param:.17g} vertices={len(res.hull)} status={status}"
    if not res.empty:
        c, defect = hull_defect(poly, res)
        line += f" c={c:.17g} defect={defect:.6g}"
    _report(cfg, out, err, line)
    _svg(cfg, [(poly.vertices, "black", "K"), (res.hull.vertices, "crimson", kind)])
    return EXIT_OK


def run(command, config, out=None, err=None):
    """Execute one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if command == "float":
            return _cmd_float(config, out)
        if command == "curvature":
            return _cmd_curvature(config, out)
        if command == "limit-study":
            return _cmd_limit(config, out)
        if command == "homothety-check":
            return _cmd_homothety(config, out, err)
        if command == "petty-scan":
            return _cmd_petty(config, out, err)
        if command == "threshold":
            return _cmd_threshold(config, out)
        if command == "genbody":
            return _cmd_genbody(config, out, err)
    except InputError as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except NumericError as exc:
        err.write(f"numeric error: {exc}\n")
        return EXIT_NUMERIC
    except FloatlabError as exc:  # pragma: no cover - every error is one of the above
        err.write(f"error: {exc}\n")
        return EXIT_NUMERIC
    err.write(f"unknown command {command!r}\n")
    return EXIT_USAGE


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser():
    p = _Parser(prog="floatlab", description="Floating bodies, curvature and homothety tests.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, m=True):
        if m:
            sp.add_argument("--m", type=int, default=720, help="number of directions")
        sp.add_argument("--csv", dest="csv_path", help="CSV output path (default stdout)")
        sp.add_argument("--svg", dest="svg_path", help="SVG overlay output path")
        sp.add_argument("--tol-vol", type=float, default=None, help="cap volume tolerance")
        sp.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")

    sp = sub.add_parser("float", help="floating body support table")
    sp.add_argument("--body", required=True)
    sp.add_argument("--delta", type=float, required=True)
    common(sp)

    sp = sub.add_parser("curvature", help="floating-body curvature via the Q matrix")
    sp.add_argument("--body", required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--directions", type=int, default=16)
    common(sp)

    sp = sub.add_parser("limit-study", help="limit ratio along a delta sequence")
    sp.add_argument("--body", required=True)
    sp.add_argument("--point", type=_floats, required=True)
    sp.add_argument("--deltas", type=_floats, default=None)
    common(sp)

    sp = sub.add_parser("homothety-check", help="defect between K_delta and cK")
    sp.add_argument("--body", required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--classification-tol", type=float, default=HOMOTHETY_FLOOR)
    common(sp)

    sp = sub.add_parser("petty-scan", help="Petty functional over the boundary")
    sp.add_argument("--body", required=True)
    common(sp)

    sp = sub.add_parser("threshold", help="explicit threshold delta(K)")
    sp.add_argument("--inputs", required=True)
    sp.add_argument("--literal-variant", action="store_true",
                    help="use the variant Delta_{a,M} with r_m and (1-a) Rbar_M denominators")
    sp.add_argument("--a-scale", type=float, default=1.0)
    common(sp, m=False)

    sp = sub.add_parser("genbody", help="illumination / convolution / Santalo bodies")
    sp.add_argument("--body", required=True)
    sp.add_argument("--kind", required=True, choices=["illumination", "convolution", "santalo"])
    sp.add_argument("--param", type=float, required=True)
    sp.add_argument("--rays", type=int, default=720)
    common(sp)
    return p


def main(argv=None, out=None, err=None):
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    opts = vars(args).copy()
    command = opts.pop("command")
    base = {k: opts.pop(k) for k in ("csv_path", "svg_path", "tol_vol", "seed") if k in opts}
    try:
        cfg = RunConfig(m=opts.pop("m", 720),
                        classification_tol=opts.pop("classification_tol", HOMOTHETY_FLOOR),
                        options=opts, **base)
    except InputError as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    return run(command, cfg, out, err)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
