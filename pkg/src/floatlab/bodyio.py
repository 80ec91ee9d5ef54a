"""Body-spec text format and result emitters.

Body specs are YAML (JSON is accepted too), e.g.::

    {kind: lp_ball, n: 2, p: 4}
    {kind: polygon, vertices: [[1, 1], [-1, 1], [-1, -1], [1, -1]]}
    {kind: ellipsoid, shape: [[4, 0], [0, 1]], center: [0, 0]}
    {kind: ellipse, axes: [2, 1], angle: 0.3}
    {kind: disk, radius: 1}
    {kind: affine, inner: {kind: lp_ball, n: 2, p: 4}, matrix: [[2, 0], [1, 1]], translation: [0, 0]}

``serialize_body_spec`` writes the canonical form (polygon, lp_ball,
ellipsoid, affine) with 17 significant digits, so parsing it back yields an
equal body.
"""

from __future__ import annotations

import csv
import io
import math

import numpy as np
import yaml

from .bodies import Affine, Ellipsoid, LpBall, Polygon, apply_affine, disk, ellipse, ellipsoid, polygon
from .errors import InputError
from .homothety import ThresholdInputs

KINDS = ("polygon", "lp_ball", "ellipsoid", "ellipse", "disk", "affine")


def fmt(x):
    """17-significant-digit text that YAML reads back as the same float."""
    x = float(x)
    if math.isinf(x):
        return ".inf" if x > 0 else "-.inf"
    if math.isnan(x):
        return ".nan"
    s = format(x, ".17g")
    if "e" in s and "." not in s:
        s = s.replace("e", ".0e")
    return s


def _num(value, what):
    if isinstance(value, bool):
        raise InputError(f"{what}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "+inf", "infinity", "+infinity"):
            return math.inf
        try:
            return float(text)
        except ValueError:
            pass
    raise InputError(f"{what}: expected a number, got {value!r}")


def _int(value, what):
    x = _num(value, what)
    if x != int(x):
        raise InputError(f"{what}: expected an integer, got {value!r}")
    return int(x)


def _vector(value, what):
    if not isinstance(value, (list, tuple)):
        raise InputError(f"{what}: expected a list of numbers")
    return [_num(v, what) for v in value]


def _matrix(value, what):
    if not isinstance(value, (list, tuple)) or not value:
        raise InputError(f"{what}: expected a list of rows")
    rows = [_vector(r, what) for r in value]
    if len({len(r) for r in rows}) != 1:
        raise InputError(f"{what}: rows have different lengths")
    return rows


def _load(text, source):
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise InputError(f"{source}: syntax error{where}: {exc.problem or exc}") from None
    except yaml.YAMLError as exc:
        raise InputError(f"{source}: syntax error: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{source}: expected a mapping at the top level")
    return data


def _known(spec, keys, kind):
    extra = set(spec) - set(keys) - {"kind"}
    if extra:
        raise InputError(f"{kind}: unknown field(s) {sorted(extra)}")


def _build(spec):
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputError("body spec must be a mapping with a 'kind' field")
    kind = spec["kind"]
    if kind == "polygon":
        _known(spec, ("vertices",), kind)
        return polygon(_matrix(spec.get("vertices"), "vertices"))
    if kind == "lp_ball":
        _known(spec, ("n", "p"), kind)
        return LpBall(_int(spec.get("n"), "n"), _num(spec.get("p"), "p"))
    if kind == "ellipsoid":
        _known(spec, ("shape", "center", "axes"), kind)
        if "axes" in spec:
            return ellipsoid(_vector(spec["axes"], "axes"), spec.get("center"))
        shape = _matrix(spec.get("shape"), "shape")
        center = _vector(spec.get("center", [0.0] * len(shape)), "center")
        return Ellipsoid(tuple(map(tuple, shape)), tuple(center))
    if kind == "ellipse":
        _known(spec, ("axes", "center", "angle"), kind)
        a, b = _vector(spec.get("axes"), "axes")
        center = _vector(spec.get("center", [0, 0]), "center")
        return ellipse(a, b, center, _num(spec.get("angle", 0.0), "angle"))
    if kind == "disk":
        _known(spec, ("radius", "center"), kind)
        return disk(_num(spec.get("radius", 1.0), "radius"),
                    _vector(spec.get("center", [0, 0]), "center"))
    if kind == "affine":
        _known(spec, ("inner", "matrix", "translation"), kind)
        inner = _build(spec.get("inner"))
        t = _matrix(spec.get("matrix"), "matrix")
        v = spec.get("translation")
        return apply_affine(inner, t, None if v is None else _vector(v, "translation"))
    raise InputError(f"unknown body kind {kind!r}; expected one of {', '.join(KINDS)}")


def parse_body_spec(text, source="<spec>"):
    """Parse and validate a body spec."""
    try:
        return _build(_load(text, source))
    except InputError:
        raise
    except (TypeError, ValueError) as exc:
        raise InputError(f"{source}: {exc}") from None


def _flow(obj):
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{k}: {_flow(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_flow(v) for v in obj) + "]"
    if isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    return fmt(obj)


def body_to_dict(body):
    if isinstance(body, Polygon):
        return {"kind": "polygon", "vertices": [list(v) for v in body.vertices]}
    if isinstance(body, LpBall):
        return {"kind": "lp_ball", "n": body.n, "p": body.p}
    if isinstance(body, Ellipsoid):
        return {"kind": "ellipsoid", "shape": [list(r) for r in body.shape],
                "center": list(body.center)}
    if isinstance(body, Affine):
        return {"kind": "affine", "inner": body_to_dict(body.inner),
                "matrix": [list(r) for r in body.matrix], "translation": list(body.translation)}
    raise InputError(f"cannot serialize {type(body).__name__}")


def serialize_body_spec(body):
    return _flow(body_to_dict(body)) + "\n"


THRESHOLD_FIELDS = ("n", "tau", "T_M", "r_m", "r_M", "D", "rho_0", "R")


def parse_threshold_inputs(text, source="<inputs>"):
    data = _load(text, source)
    missing = [f for f in THRESHOLD_FIELDS if f not in data]
    if missing:
        raise InputError(f"{source}: missing field(s) {missing}")
    extra = set(data) - set(THRESHOLD_FIELDS)
    if extra:
        raise InputError(f"{source}: unknown field(s) {sorted(extra)}")
    vals = {k: _num(data[k], k) for k in THRESHOLD_FIELDS}
    vals["n"] = _int(data["n"], "n")
    return ThresholdInputs(**vals)


# ---------------------------------------------------------------------------
# emitters


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(c) for c in row])
    return buf.getvalue()


def _cell(c):
    if isinstance(c, (bool, np.bool_)):
        return "true" if c else "false"
    if isinstance(c, (int, np.integer)):
        return str(int(c))
    if isinstance(c, (float, np.floating)):
        c = float(c)
        if math.isinf(c):
            return "inf" if c > 0 else "-inf"
        return format(c, ".17g")
    return str(c)


def svg_text(layers, size=480, margin=16):
    """SVG overlay of closed polylines; ``layers`` is a list of (vertices, color, label)."""
    pts = [np.asarray(v, dtype=float) for v, _, _ in layers if len(v)]
    allp = np.vstack(pts) if pts else np.zeros((1, 2))
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    k = (size - 2 * margin) / span

    def tx(p):
        return margin + (p[0] - lo[0]) * k, size - margin - (p[1] - lo[1]) * k

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']
    for i, (verts, color, label) in enumerate(layers):
        verts = np.asarray(verts, dtype=float)
        if len(verts) == 0:
            continue
        if len(verts) == 1:
            x, y = tx(verts[0])
            out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3" fill="{color}"/>')
        else:
            path = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(tx, verts))
            out.append(f'<polygon points="{path}" fill="none" stroke="{color}" '
                       f'stroke-width="1.2"/>')
        out.append(f'<text x="{margin}" y="{margin + 14 * (i + 1)}" font-size="12" '
                   f'fill="{color}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
