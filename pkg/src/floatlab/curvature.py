"""Curvature of floating bodies through the chord-moment matrix Q.

For an interior point ``x`` and a unit normal ``xi``, the hyperplane section
through ``x`` is swept by unit directions ``eta`` of ``xi``'s orthogonal
complement.  Each ray hits the boundary at ``y = x + r(eta) eta``; the tilt of
the boundary there relative to the section is ``cot(beta) = <N(y), xi> /
<N(y), eta>``.  Then

    Q_ij = (1 / |section|) ∫ eta_i eta_j r^n cot(beta) dsigma(eta)

and the floating body has Gauss curvature ``1 / det Q`` at the section
centroid.  In 2D the "integral" is the two-term sum over ``±eta``; in 3D it is
a trapezoid rule in the angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .bodies import (_check_point, _check_unit, _check_on_boundary, direction_family,
                     extent, recenter, unit_ball_volume)
from .capvol import cut_level, cut_levels
from .errors import DomainError, InputError, NotPositiveDefiniteError, NumericError, UnsupportedError


@dataclass(frozen=True, eq=False)
class QMatrix:
    entries: np.ndarray
    base_point: np.ndarray
    slice_normal: np.ndarray
    slice_volume: float
    quadrature_nodes: int

    @property
    def det(self):
        return float(np.linalg.det(self.entries))

    @property
    def eigenvalues(self):
        return np.linalg.eigvalsh(self.entries)


def hyperplane_frame(xi):
    """Orthonormal basis (columns) of the complement of unit vector ``xi``."""
    xi = np.asarray(xi, dtype=float)
    if len(xi) == 2:
        return np.array([[-xi[1]], [xi[0]]])
    q, _ = np.linalg.qr(np.column_stack([xi, np.eye(len(xi))]))
    frame = q[:, 1:len(xi)]
    return frame * np.sign(q[:, 0] @ xi)


def _section_rays(n, nodes):
    """Unit directions of S^{n-2} in frame coordinates and their quadrature weights."""
    if n == 2:
        return np.array([[1.0], [-1.0]]), np.ones(2)
    if n == 3:
        th = 2 * np.pi * np.arange(nodes) / nodes
        return np.stack([np.cos(th), np.sin(th)], axis=1), np.full(nodes, 2 * np.pi / nodes)
    raise UnsupportedError("Q matrices are supported in dimensions 2 and 3")


def _cot_beta(normals, xi, eta):
    """Tilt of the boundary against the section plane at each ray hit."""
    along = (normals * eta).sum(axis=-1)
    if np.any(along <= 0):
        raise NumericError("boundary normal does not face outward along a section ray")
    return (normals @ xi) / along


def _section(body, x, xi, nodes):
    n = body.dim
    frame = hyperplane_frame(xi)
    eta, weights = _section_rays(n, nodes)
    dirs = eta @ frame.T
    r = body.ray_exit(x, dirs)
    if not np.all(np.isfinite(r)) or np.any(r <= 0):
        raise NumericError("ray from the base point failed to reach the boundary")
    return frame, eta, weights, dirs, r


def _section_volume(n, r, weights):
    return float(np.sum(weights * r ** (n - 1)) / (n - 1))


def q_matrix(body, x, xi, nodes=128):
    """Chord-moment matrix Q at interior point ``x`` for section normal ``xi``."""
    n = body.dim
    x = _check_point(x, n)
    xi = _check_unit(xi, n)
    if not body.residual(x) < -1e-12 * extent(body):
        raise InputError(f"{x.tolist()} is not strictly inside the body")
    frame, eta, weights, dirs, r = _section(body, x, xi, nodes)
    normals = body.normal(x + r[:, None] * dirs)
    cot = _cot_beta(normals, xi, dirs)
    vol = _section_volume(n, r, weights)
    w = weights * r ** n * cot
    q = (eta * w[:, None]).T @ eta / vol
    return QMatrix(0.5 * (q + q.T), x.copy(), xi.copy(), vol, len(weights))


def section_centroid(body, u, level, nodes=128):
    """Centroid of the section ``K ∩ {<x,u> = level}``."""
    n = body.dim
    # the segment between the two support points crosses every level inside K
    top = body.boundary_point(u)
    bottom = body.boundary_point(-u)
    ht, hb = float(top @ u), float(bottom @ u)
    lam = (ht - level) / (ht - hb)
    p0 = top + lam * (bottom - top)
    for _ in range(3):
        frame, eta, weights, dirs, r = _section(body, p0, u, nodes)
        if n == 2:
            shift = 0.5 * (r[0] - r[1]) * dirs[0]
        else:
            area = _section_volume(n, r, weights)
            shift = (weights * r ** 3 / 3) @ dirs / area
        p0 = p0 + shift
        if np.linalg.norm(shift) <= 1e-15 * (1 + np.linalg.norm(p0)):
            break
    return p0


def floating_curvature(body, delta, u, tol_vol=None, nodes=128):
    """Gauss curvature of ``K_delta`` at its boundary point with outer normal ``u``.

    Returns ``inf`` when ``det Q`` is below ``1e-12 diam^(n-1)``.
    """
    n = body.dim
    u = _check_unit(u, n)
    vol = body.volume
    if not 0.0 < delta < vol / 2:
        raise DomainError(f"delta must lie in (0, |K|/2), got {delta!r}")
    if tol_vol is None:
        tol_vol = min(1e-10 * vol, 1e-6 * delta)
    cut = cut_level(body, u, delta, tol_vol=tol_vol)
    x = section_centroid(body, u, cut.level, nodes)
    q = q_matrix(body, x, u, nodes)
    det = q.det
    tol_det = 1e-12 * extent(body) ** (n - 1)
    if det < -tol_det or (det > tol_det and np.min(q.eigenvalues) < 0):
        raise NotPositiveDefiniteError(f"Q not positive definite (det {det:.6g})")
    if det <= tol_det:
        return math.inf
    return 1.0 / det


def c_constant(n):
    """``2 (|B^{n-1}| / (n+1))^(2/(n+1))``."""
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    return 2.0 * (unit_ball_volume(n - 1) / (n + 1)) ** (2.0 / (n + 1))


def _ray_scale(body, x, delta, m, tol_vol):
    """Largest ``s`` with ``s x`` in ``K_delta``: ``min_u t(u) / <x,u>``."""
    n = body.dim
    u = direction_family(n, m)
    proj = u @ x
    front = proj > 1e-12 * np.linalg.norm(x)
    table = cut_levels(body, u[front], delta, tol_vol=tol_vol)
    ratios = table.levels / proj[front]
    best = int(np.argmin(ratios))
    u0 = u[front][best]

    def ratio_at(v):
        v = v / np.linalg.norm(v)
        px = float(v @ x)
        if px <= 0:
            return math.inf
        return cut_level(body, v, delta, tol_vol=tol_vol).level / px

    if n == 2:
        phi0 = math.atan2(u0[1], u0[0])
        step = 2 * math.pi / m
        res = optimize.minimize_scalar(
            lambda a: ratio_at(np.array([math.cos(a), math.sin(a)])),
            bounds=(phi0 - step, phi0 + step), method="bounded",
            options={"xatol": 1e-12})
        return min(float(res.fun), float(ratios[best]))
    frame = hyperplane_frame(u0)
    scale = 2.0 / math.sqrt(m)
    res = optimize.minimize(lambda c: ratio_at(u0 + frame @ c), np.zeros(2), method="Nelder-Mead",
                            options={"xatol": 1e-10, "fatol": 1e-15, "initial_simplex":
                                     np.array([[0, 0], [scale, 0], [0, scale]])})
    return min(float(res.fun), float(ratios[best]))


def limit_ratio(body, x, delta, m=None, tol_vol=None):
    """Normalized volume deficit along the ray to ``x``.

    ``c_n <x, N(x)> / (n delta^(2/(n+1))) * (1 - (|x_delta| / |x|)^n)`` where
    ``x_delta`` is where the segment ``[0, x]`` leaves ``K_delta``; it tends to
    ``kappa(x)^(1/(n+1))`` as ``delta -> 0``.  The body is re-centered at its
    centroid first (and ``x`` with it).
    """
    n = body.dim
    x = _check_point(x, n)
    _check_on_boundary(body, x)
    vol = body.volume
    if not 0.0 < delta < vol / 2:
        raise DomainError(f"delta must lie in (0, |K|/2), got {delta!r}")
    c = np.asarray(body.centroid, dtype=float)
    centered = recenter(body)
    x0 = x - c if centered is not body else x
    normal = centered.normal(x0)
    if m is None:
        m = max(720, math.ceil(50 * delta ** (-1.0 / 3)))
    if tol_vol is None:
        tol_vol = min(1e-10 * vol, 1e-7 * delta)
    s = _ray_scale(centered, x0, delta, m, tol_vol)
    if not 0.0 < s < 1.0:
        raise NumericError(f"ray search failed to bracket the floating-body boundary (s={s})")
    return c_constant(n) * float(x0 @ normal) / (n * delta ** (2.0 / (n + 1))) * (1.0 - s ** n)
