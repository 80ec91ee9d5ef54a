"""Backend selection for the polygon kernels.

The compiled extension is used when it imports; otherwise (or when
``FLOATLAB_PURE_PYTHON=1``) the numpy fallback is used.  Both expose the same
functions, and the wrappers below are the only entry points the rest of the
package uses.
"""

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_impl = _pykernels
BACKEND = "python"


def available_backends():
    return ["python"] + (["cython"] if _ckernels is not None else [])


def use_backend(name):
    """Switch the active backend ("cython" or "python")."""
    global _impl, BACKEND
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        _impl = _ckernels
    elif name == "python":
        _impl = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


if _ckernels is not None and os.environ.get("FLOATLAB_PURE_PYTHON", "") not in ("1", "true"):
    use_backend("cython")


def _c(a):
    return np.ascontiguousarray(a, dtype=float)


def halfplane_intersection(normals, offsets, eps=None):
    """Vertices (CCW) of ``{x : <n_i, x> <= h_i}``; empty array if empty.

    ``normals`` need not be sorted or unit length.  A far bounding box is added
    so that the sweep never sees an unbounded region.
    """
    normals = np.asarray(normals, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    ln = np.hypot(normals[:, 0], normals[:, 1])
    nrm = normals / ln[:, None]
    h = offsets / ln
    scale = float(np.max(np.abs(h))) + 1.0
    box = 1e6 * scale
    nrm = np.vstack([nrm, [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]])
    h = np.concatenate([h, [box] * 4])
    ang = np.arctan2(nrm[:, 1], nrm[:, 0])
    ang[ang <= -np.pi + 1e-15] = np.pi
    order = np.lexsort((h, ang))
    ang = ang[order]
    nrm = nrm[order]
    h = h[order]
    # equal angles: lexsort put the tightest first, keep it
    keep = np.ones(len(h), dtype=bool)
    keep[1:] = np.abs(np.diff(ang)) > 1e-15
    nrm = nrm[keep]
    h = h[keep]
    if eps is None:
        eps = 1e-13 * scale
    verts = _impl.halfplane_sweep(_c(nrm[:, 0]), _c(nrm[:, 1]), _c(h), float(eps))
    if len(verts) and np.max(np.abs(verts)) >= 0.5 * box:
        return np.empty((0, 2))
    return _dedupe(verts, 1e-13 * scale)


def _dedupe(verts, tol):
    if len(verts) < 2:
        return verts
    nxt = np.roll(verts, -1, axis=0)
    keep = np.hypot(*(nxt - verts).T) > tol
    if not keep.any():
        return verts[:1]
    return verts[keep]


def polygon_area(v):
    return _impl.polygon_area(_c(v))


def cap_areas(v, u, t):
    """Cap areas and chord lengths of polygon ``v`` cut by ``<x,u_j> >= t_j``."""
    v = _c(v)
    ref = v.mean(axis=0)
    u = _c(np.atleast_2d(u))
    t = _c(np.broadcast_to(np.asarray(t, dtype=float), (len(u),))) - u @ ref
    return _impl.cap_areas(_c(v - ref), u, _c(t))


def hull_excess(v, x):
    v = _c(v)
    ref = v.mean(axis=0)
    return _impl.hull_excess(_c(v - ref), _c(np.atleast_2d(x) - ref))


def overlap_areas(v, x):
    """``|P ∩ (P + x_k)|`` for a CCW convex polygon ``v`` and each row ``x_k``."""
    v = _c(v)
    ref = v.mean(axis=0)
    v = v - ref
    e = np.roll(v, -1, axis=0) - v
    ln = np.hypot(e[:, 0], e[:, 1])
    nrm = np.stack([e[:, 1] / ln, -e[:, 0] / ln], axis=1)
    h = (nrm * v).sum(axis=1)
    eps = 1e-13 * (float(np.max(np.abs(h))) + 1.0)
    return _impl.overlap_areas(_c(nrm[:, 0]), _c(nrm[:, 1]), _c(h), _c(np.atleast_2d(x)), eps)


def polar_areas(v, x):
    return _impl.polar_areas(_c(v), _c(np.atleast_2d(x)))
