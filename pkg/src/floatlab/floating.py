"""Convex floating bodies as intersections of cut halfspaces.

In 2D the result carries an explicit vertex chain; in 3D it is the
(direction, level) table together with its membership oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bodies import PolygonChain, apply_affine, direction_family, polytope_vertices
from .capvol import cut_levels
from .errors import DegenerateResultError, DomainError, UnsupportedError
from .metrics import hausdorff

__all__ = ["FloatingBodyResult", "floating_body", "apply_affine", "halfspace_hull"]


@dataclass(frozen=True, eq=False)
class FloatingBodyResult:
    delta: float
    directions: np.ndarray
    support_levels: np.ndarray
    hull: PolygonChain | None
    contained_in_source: bool
    volume_errors: np.ndarray = field(repr=False, default=None)
    discretization_error: float | None = None

    @property
    def dim(self):
        return self.directions.shape[1]

    def contains(self, x, tol=None):
        """Membership in the halfspace table ``<x, u_i> <= t_i``."""
        x = np.asarray(x, dtype=float)
        if tol is None:
            tol = 1e-9 * (1.0 + np.linalg.norm(x, axis=-1))
        gap = np.max(x @ self.directions.T - self.support_levels, axis=-1)
        return gap <= tol

    def support(self, u):
        if self.hull is None:
            raise UnsupportedError("3D floating bodies keep only their halfspace table")
        return self.hull.support(u)

    @property
    def area(self):
        return self.hull.area


def halfspace_hull(directions, levels):
    verts = kernels.halfplane_intersection(directions, levels)
    if len(verts) == 0:
        raise DegenerateResultError("empty halfspace intersection; reduce delta or raise m")
    return PolygonChain(verts)


def floating_body(body, delta, m=720, tol_vol=None, seed=0, estimate_error=False):
    """Discretized floating body ``K_delta`` from ``m`` cut directions.

    With ``estimate_error`` (2D only) the run is repeated with ``2m``
    directions and the Hausdorff distance between the two hulls is attached
    as ``discretization_error``.
    """
    n = body.dim
    vol = body.volume
    delta = float(delta)
    if not 0.0 <= delta < vol / 2:
        raise DomainError(f"delta must lie in [0, |K|/2) = [0, {vol / 2:.17g}), got {delta!r}")
    if int(m) != m or m < 8:
        raise DomainError(f"m must be an integer >= 8, got {m!r}")
    if n not in (2, 3):
        raise UnsupportedError("floating bodies are supported in dimensions 2 and 3")
    u = direction_family(n, int(m))
    if delta == 0.0:
        levels = body.support(u)
        errs = np.zeros(len(u))
        hull = None
        if n == 2:
            verts = polytope_vertices(body)
            hull = PolygonChain(verts if verts is not None else body.boundary_point(u))
        return FloatingBodyResult(0.0, u, levels, hull, True, errs)
    table = cut_levels(body, u, delta, tol_vol=tol_vol, seed=seed)
    levels = table.levels
    if n == 2:
        hull = halfspace_hull(u, levels)
        inside = bool(np.all(body.contains(hull.vertices)))
    else:
        # necessary condition only; no facet enumeration in 3D
        hull = None
        inside = bool(np.all(levels <= body.support(u) + 1e-12))
    err = None
    if estimate_error:
        if n != 2:
            raise UnsupportedError("discretization error estimate is 2D only")
        fine = floating_body(body, delta, 2 * int(m), tol_vol=tol_vol, seed=seed)
        err = hausdorff(hull, fine.hull)
    return FloatingBodyResult(delta, u, levels, hull, inside, table.volume_errors, err)
