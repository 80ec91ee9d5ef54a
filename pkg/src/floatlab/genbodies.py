"""Planar illumination bodies, convolution bodies and Santaló regions.

Each construction shoots rays from a center and bisects, per ray, a scalar
functional that is monotone along the ray:

* illumination: the hull excess ``|conv(x, P)| - |P|`` (0 on P, increasing
  outside);
* convolution: the overlap ``|P ∩ (P + 2 s u)|`` (nonincreasing in s);
* Santaló: the polar area ``|(P - x)°|`` (increasing towards the boundary
  from the minimizing center).

All per-ray searches advance together, so each bisection step is one batched
kernel call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import kernels
from .bodies import Polygon, PolygonChain, polygon, polytope_vertices, uniform_directions
from .errors import DomainError, InputError
from .metrics import METRIC_DIRECTIONS

DEGENERATE_RTOL = 1e-3
BISECT_STEPS = 80


@dataclass(frozen=True, eq=False)
class GenBodyResult:
    kind: str
    parameter: float
    hull: PolygonChain
    ray_count: int
    center: np.ndarray
    degenerate: bool = False
    empty: bool = False

    def contains(self, x, tol=None):
        if self.empty:
            x = np.asarray(x, dtype=float)
            return np.zeros(x.shape[:-1], dtype=bool)
        return self.hull.contains(x, tol)


def _vertices(shape):
    """CCW vertex array for a PolygonChain, Polygon, polygon-like body or array."""
    if isinstance(shape, PolygonChain):
        v = np.asarray(shape.vertices)
    elif hasattr(shape, "dim"):
        v = polytope_vertices(shape)
        if v is None:
            raise InputError("expected a polygon")
    else:
        v = np.asarray(shape, dtype=float)
    return np.array(polygon(v).vertices)


def polygon_intersection_area(p, q):
    """Exact area of the intersection of two convex polygons (0 if empty)."""
    vp, vq = _vertices(p), _vertices(q)
    normals, offsets = [], []
    for v in (vp, vq):
        e = np.roll(v, -1, axis=0) - v
        nrm = np.stack([e[:, 1], -e[:, 0]], axis=1)
        normals.append(nrm)
        offsets.append((nrm * v).sum(axis=1))
    verts = kernels.halfplane_intersection(np.vstack(normals), np.concatenate(offsets))
    return kernels.polygon_area(verts) if len(verts) >= 3 else 0.0


def _exit_radius(v, center, u):
    e = np.roll(v, -1, axis=0) - v
    nrm = np.stack([e[:, 1], -e[:, 0]], axis=1)
    h = (nrm * v).sum(axis=1) - nrm @ center
    den = u @ nrm.T
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(den > 0, h / den, np.inf)
    return s.min(axis=1)


def _bisect(f, lo, hi, target, increasing):
    """Vectorized bisection for ``f(r) = target`` on per-ray brackets."""
    for _ in range(BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        val = f(mid)
        below = (val < target) if increasing else (val > target)
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= 1e-15 * np.maximum(hi, 1e-300)):
            break
    return 0.5 * (lo + hi)


def _assemble(kind, param, center, u, r):
    pts = center + r[:, None] * u
    return GenBodyResult(kind, float(param), PolygonChain(pts), len(u), center)


def _point(kind, param, center, rays):
    return GenBodyResult(kind, float(param), PolygonChain(center[None, :]), rays, center,
                         degenerate=True)


def illumination_body(p, delta, rays=720):
    """``{x : |conv(x, P)| - |P| <= delta}`` sampled along ``rays`` rays from the centroid."""
    v = _vertices(p)
    if not delta >= 0:
        raise DomainError(f"delta must be >= 0, got {delta!r}")
    center = Polygon(tuple(map(tuple, v))).centroid
    if delta == 0:
        return GenBodyResult("illumination", 0.0, PolygonChain(v), len(v), center)
    u = uniform_directions(rays)
    lo = _exit_radius(v, center, u)
    hi = 2.0 * lo

    def excess(r):
        return kernels.hull_excess(v, center + r[:, None] * u)

    # grow brackets until every ray passes the target excess
    for _ in range(200):
        short = excess(hi) < delta
        if not short.any():
            break
        hi = np.where(short, 2.0 * hi, hi)
    r = _bisect(excess, lo, hi, delta, increasing=True)
    return _assemble("illumination", delta, center, u, r)


def _is_symmetric(v, center, tol):
    w = 2 * center - v
    d = np.linalg.norm(v[:, None, :] - w[None, :, :], axis=-1)
    return bool(np.all(d.min(axis=1) <= tol))


def convolution_body(p, t, rays=720):
    """``{x/2 : |P ∩ (P + x)| >= 2t}`` for origin-symmetric ``P``."""
    v = _vertices(p)
    area = kernels.polygon_area(v)
    scale = float(np.max(np.abs(v)))
    if not _is_symmetric(v, np.zeros(2), 1e-9 * scale):
        raise InputError("convolution body needs a polygon symmetric about the origin")
    if not 0 < t <= area / 2 * (1 + DEGENERATE_RTOL):
        raise DomainError(f"t must lie in (0, |P|/2] = (0, {area / 2:.17g}], got {t!r}")
    center = np.zeros(2)
    if t >= area / 2:
        return _point("convolution", t, center, rays)
    u = uniform_directions(rays)
    hi = 0.5 * (_exit_radius(v, center, u) + _exit_radius(v, center, -u))

    def overlap(s):
        return kernels.overlap_areas(v, 2.0 * s[:, None] * u)

    s = _bisect(overlap, np.zeros(rays), hi, 2.0 * t, increasing=False)
    return _assemble("convolution", t, center, u, s)


def polar_area(p, x):
    """Area of the polar body ``(P - x)°``; ``x`` must be strictly inside ``P``."""
    v = _vertices(p)
    x = np.asarray(x, dtype=float)
    a = kernels.polar_areas(v, x)
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{x.tolist()} is not strictly inside the polygon")
    return float(a[0]) if x.ndim == 1 else a


def santalo_point(p, tol=1e-10):
    """Minimizer of the polar area, by coordinate descent from the centroid."""
    v = _vertices(p)
    x = Polygon(tuple(map(tuple, v))).centroid.copy()

    def f(y):
        return float(kernels.polar_areas(v, y)[0])

    axes = np.eye(2)
    for _ in range(100):
        start = x.copy()
        for e in axes:
            lo = -_exit_radius(v, x, -e[None])[0]
            hi = _exit_radius(v, x, e[None])[0]
            res = optimize.minimize_scalar(lambda s: f(x + s * e), method="bounded",
                                           bounds=(0.999 * lo, 0.999 * hi),
                                           options={"xatol": tol})
            if res.fun < f(x):
                x = x + res.x * e
        if np.linalg.norm(x - start) <= tol:
            break
    return x


def santalo_region(p, t, rays=720):
    """``{x in P : |(P - x)°| <= 1/t}``, rays from the polar-area minimizer."""
    v = _vertices(p)
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    center = santalo_point(v)
    target = 1.0 / t
    least = float(kernels.polar_areas(v, center)[0])
    if least > target:
        if least <= target * (1 + DEGENERATE_RTOL):
            return _point("santalo", t, center, rays)
        return GenBodyResult("santalo", float(t), PolygonChain(np.empty((0, 2))), rays, center,
                             empty=True)
    u = uniform_directions(rays)
    hi = _exit_radius(v, center, u)

    def polar(r):
        return kernels.polar_areas(v, center + r[:, None] * u)

    r = _bisect(polar, np.zeros(rays), hi, target, increasing=True)
    return _assemble("santalo", t, center, u, r)


def hull_defect(p, result, count=METRIC_DIRECTIONS):
    """``(c, defect)`` of a generalized body against the volume-matched ``cP``,
    both taken about the centroid of ``P``."""
    v = _vertices(p)
    center = Polygon(tuple(map(tuple, v))).centroid
    if result.empty:
        raise DomainError("empty region has no homothety defect")
    u = uniform_directions(count)
    hp = np.max(u @ (v - center).T, axis=1)
    hh = np.max(u @ (result.hull.vertices - center).T, axis=1)
    c = math.sqrt(result.hull.area / kernels.polygon_area(v))
    wid = float(np.min(hp + np.max(-u @ (v - center).T, axis=1)))
    return c, float(np.max(np.abs(hh - c * hp))) / wid


def as_polygon_chain(body_or_vertices):
    return PolygonChain(_vertices(body_or_vertices))


__all__ = ["GenBodyResult", "polygon_intersection_area", "illumination_body",
           "convolution_body", "polar_area", "santalo_point", "santalo_region",
           "hull_defect", "as_polygon_chain"]
