"""Independent reference values, computed with mpmath or shapely only."""

import mpmath as mp
import numpy as np
from shapely.geometry import MultiPoint, Polygon as SPolygon
from shapely import affinity

mp.mp.dps = 30


def disk_cut_level(delta):
    """Root of arccos(t) - t sqrt(1 - t^2) = delta."""
    f = lambda t: mp.acos(t) - t * mp.sqrt(1 - t * t) - delta  # noqa: E731
    return float(mp.findroot(f, (mp.mpf("-0.999999"), mp.mpf("0.999999")), solver="anderson"))


def disk_cap_area(t):
    t = mp.mpf(t)
    return float(mp.acos(t) - t * mp.sqrt(1 - t * t))


def disk_illumination_radius(delta):
    """Distance d at which conv(x, disk) exceeds the disk by delta."""
    f = lambda d: mp.sqrt(d * d - 1) - mp.acos(1 / d) - delta  # noqa: E731
    return float(mp.findroot(f, (mp.mpf(1) + mp.mpf("1e-9"), mp.mpf(10)), solver="anderson"))


def disk_polar_area(r):
    return float(mp.pi / (1 - mp.mpf(r) ** 2) ** mp.mpf(1.5))


def disk_santalo_radius(t):
    """Radius where the polar area of the disk about x equals 1/t."""
    return float(mp.sqrt(1 - (mp.pi * t) ** (mp.mpf(2) / 3)))


def lp_curvature_fd(p, x):
    """Curvature of the planar l_p circle from the graph over the longer axis,
    with derivatives by mpmath numerical differentiation."""
    p = mp.mpf(p)
    x0, y0 = (mp.mpf(float(c)) for c in x)
    swap = abs(x0) > abs(y0)
    if swap:
        x0, y0 = y0, x0
    sign = 1 if y0 > 0 else -1
    g = lambda s: sign * (1 - abs(s) ** p) ** (1 / p)  # noqa: E731
    d1 = mp.diff(g, x0, 1)
    d2 = mp.diff(g, x0, 2)
    return float(abs(d2) / (1 + d1 * d1) ** mp.mpf(1.5))


def shapely_polygon(vertices):
    return SPolygon(np.asarray(vertices, dtype=float))


def hull_excess(vertices, x):
    poly = shapely_polygon(vertices)
    return MultiPoint(list(map(tuple, vertices)) + [tuple(x)]).convex_hull.area - poly.area


def overlap_area(vertices, x):
    poly = shapely_polygon(vertices)
    return poly.intersection(affinity.translate(poly, float(x[0]), float(x[1]))).area


def polar_area(vertices, x):
    """Area of (P - x)° as the polygon with vertices n_i / h_i."""
    v = np.asarray(vertices, dtype=float) - np.asarray(x, dtype=float)
    e = np.roll(v, -1, axis=0) - v
    nrm = np.stack([e[:, 1], -e[:, 0]], axis=1)
    h = (nrm * v).sum(axis=1)
    if np.any(h <= 0):
        return np.inf
    return MultiPoint([tuple(p) for p in nrm / h[:, None]]).convex_hull.area


def lp_disk_cap_area(p, u, t):
    """Cap area of the planar l_p ball by the polar sector formula, in mpmath.

    The cap {<x,u> >= t} is the sector between the two boundary crossings
    minus the triangle spanned by the origin and the chord.
    """
    p = mp.mpf(p)
    ux, uy = mp.mpf(float(u[0])), mp.mpf(float(u[1]))
    t = mp.mpf(float(t))

    def radius(th):
        return 1 / (abs(mp.cos(th)) ** p + abs(mp.sin(th)) ** p) ** (1 / p)

    def height(th):
        return radius(th) * (mp.cos(th) * ux + mp.sin(th) * uy) - t

    # support point of the l_p ball: x_i ~ sign(u_i) |u_i|^(q-1) with 1/p + 1/q = 1
    q = p / (p - 1)
    top = mp.atan2(mp.sign(uy) * abs(uy) ** (q - 1), mp.sign(ux) * abs(ux) ** (q - 1))
    lo = mp.findroot(height, (top - mp.pi, top), solver="anderson")
    hi = mp.findroot(height, (top, top + mp.pi), solver="anderson")
    # split at the axes, where the radius is only finitely smooth
    axes = [k * mp.pi / 2 for k in range(-8, 9) if lo < k * mp.pi / 2 < hi]
    sector = mp.quad(lambda th: radius(th) ** 2 / 2, [lo] + axes + [hi])
    x1 = radius(lo) * mp.matrix([mp.cos(lo), mp.sin(lo)])
    x2 = radius(hi) * mp.matrix([mp.cos(hi), mp.sin(hi)])
    return float(sector - (x1[0] * x2[1] - x1[1] * x2[0]) / 2)
