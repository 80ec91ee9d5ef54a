"""Convex bodies as evaluable oracles.

Four declarative kinds are supported: :class:`Polygon`, :class:`LpBall`,
:class:`Ellipsoid` and :class:`Affine` (an invertible affine image of another
body).  All are frozen dataclasses holding plain tuples, so they hash, compare
and serialize exactly.  Their methods are vectorized over the last axis and
skip input validation; the module-level functions (``support``,
``boundary_point``, ...) are the checked entry points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (AmbiguityError, ConvexityError, DomainError, InputError,
                     UnsupportedError)

UNIT_TOL = 1e-12


def unit_ball_volume(k):
    """Volume of the Euclidean unit ball in dimension ``k``."""
    if k < 0 or int(k) != k:
        raise DomainError(f"dimension must be a nonnegative integer, got {k}")
    return math.pi ** (k / 2) / math.gamma(k / 2 + 1)


def _tuple_vec(x):
    return tuple(float(c) for c in np.asarray(x, dtype=float).ravel())


def _tuple_mat(a):
    return tuple(tuple(float(c) for c in row) for row in np.asarray(a, dtype=float))


def _snap(u):
    """Zero out components that are rounding noise (e.g. cos(pi/2))."""
    u = np.array(u, dtype=float)
    big = np.max(np.abs(u), axis=-1, keepdims=True)
    u[np.abs(u) < 1e-15 * big] = 0.0
    return u


def _normalize(v):
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _tol(x):
    return 1e-9 * (1.0 + np.linalg.norm(x, axis=-1))


# ---------------------------------------------------------------------------
# polygons


def _polygon_defects(v, tol=1e-12):
    """Return (index, triple) of the first non-convex vertex, or None."""
    k = len(v)
    scale = float(np.max(np.abs(v))) or 1.0
    for i in range(k):
        a, b, c = v[i - 1], v[i], v[(i + 1) % k]
        e1 = b - a
        e2 = c - b
        if e1[0] * e2[1] - e1[1] * e2[0] < -tol * scale * scale:
            return i, ((i - 1) % k, i, (i + 1) % k)
    return None


@dataclass(frozen=True)
class Polygon:
    """Convex polygon given by its vertices in counterclockwise order."""

    vertices: tuple

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise InputError("polygon needs at least 3 two-dimensional vertices")
        if not np.all(np.isfinite(v)):
            raise InputError("polygon vertices must be finite")
        object.__setattr__(self, "vertices", _tuple_mat(v))
        scale = float(np.max(np.abs(v))) or 1.0
        step = np.hypot(*(np.roll(v, -1, axis=0) - v).T)
        if np.any(step <= 1e-12 * scale):
            i = int(np.argmin(step))
            raise InputError(f"duplicate vertices at indices {i} and {(i + 1) % len(v)}")
        bad = _polygon_defects(v)
        if bad is not None:
            raise ConvexityError(
                f"polygon is not convex (or not counterclockwise) at vertex {bad[0]}, "
                f"triple {bad[1]}", index=bad[0], triple=bad[1])
        e = np.roll(v, -1, axis=0) - v
        turn = np.arctan2(e[:, 0] * np.roll(e[:, 1], -1) - e[:, 1] * np.roll(e[:, 0], -1),
                          (e * np.roll(e, -1, axis=0)).sum(axis=1)).sum()
        if abs(turn - 2 * math.pi) > 1e-6:
            raise ConvexityError("polygon winds more than once around its interior")

    dim = 2

    @cached_property
    def _v(self):
        v = np.array(self.vertices)
        v.setflags(write=False)
        return v

    @cached_property
    def _edges(self):
        v = self._v
        e = np.roll(v, -1, axis=0) - v
        ln = np.hypot(e[:, 0], e[:, 1])
        nrm = np.stack([e[:, 1] / ln, -e[:, 0] / ln], axis=1)
        return nrm, (nrm * v).sum(axis=1)

    def support(self, u):
        return np.max(np.asarray(u, dtype=float) @ self._v.T, axis=-1)

    def boundary_point(self, u):
        u = np.asarray(u, dtype=float)
        vals = u @ self._v.T
        top = vals.max(axis=-1, keepdims=True)
        scale = 1e-12 * (np.abs(top) + np.linalg.norm(u, axis=-1, keepdims=True))
        tied = vals >= top - scale
        return (tied[..., None] * self._v).sum(axis=-2) / tied.sum(axis=-1)[..., None]

    def residual(self, x):
        nrm, h = self._edges
        return np.max(np.asarray(x, dtype=float) @ nrm.T - h, axis=-1)

    def contains(self, x, tol=None):
        x = np.asarray(x, dtype=float)
        return self.residual(x) <= (_tol(x) if tol is None else tol)

    def normal(self, x):
        x = np.asarray(x, dtype=float)
        tol = _tol(x)
        d = np.linalg.norm(x[..., None, :] - self._v, axis=-1).min(axis=-1)
        if np.any(d <= tol):
            raise AmbiguityError(f"{x.tolist()} is a polygon vertex; the normal is not unique")
        nrm, h = self._edges
        dist = np.abs(x @ nrm.T - h)
        i = np.argmin(dist, axis=-1)
        if np.any(np.take_along_axis(dist, i[..., None], axis=-1)[..., 0] > tol):
            raise InputError(f"{x.tolist()} is not on the polygon boundary")
        return nrm[i]

    def curvature(self, x):
        raise UnsupportedError("Gauss curvature of a polygon is 0 or undefined")

    def ray_exit(self, x, d):
        nrm, h = self._edges
        x = np.asarray(x, dtype=float)
        d = np.asarray(d, dtype=float)
        num = h - x @ nrm.T
        den = d @ nrm.T
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(den > 0, num / den, np.inf)
        return np.min(s, axis=-1)

    @cached_property
    def volume(self):
        v = self._v
        return 0.5 * float(np.dot(v[:, 0], np.roll(v[:, 1], -1))
                           - np.dot(np.roll(v[:, 0], -1), v[:, 1]))

    @cached_property
    def centroid(self):
        v = self._v
        w = np.roll(v, -1, axis=0)
        cr = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        return ((v + w) * cr[:, None]).sum(axis=0) / (6.0 * self.volume)


def polygon(vertices):
    """Build a :class:`Polygon`, reordering clockwise input to counterclockwise."""
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
        raise InputError("polygon needs at least 3 two-dimensional vertices")
    if len(v) > 3 and np.array_equal(v[0], v[-1]):
        v = v[:-1]
    area2 = np.dot(v[:, 0], np.roll(v[:, 1], -1)) - np.dot(np.roll(v[:, 0], -1), v[:, 1])
    if area2 == 0:
        raise InputError("degenerate polygon (zero area)")
    if area2 > 0:
        return Polygon(_tuple_mat(v))
    k = len(v)
    try:
        return Polygon(_tuple_mat(v[::-1]))
    except ConvexityError as exc:
        if exc.index is None:
            raise
        # report positions in the caller's (clockwise) order
        i = k - 1 - exc.index
        triple = ((i - 1) % k, i, (i + 1) % k)
        raise ConvexityError(f"polygon is not convex at vertex {i}, triple {triple}",
                             index=i, triple=triple) from None


# ---------------------------------------------------------------------------
# l_p balls


def _lp_norm(x, p):
    x = np.abs(np.asarray(x, dtype=float))
    if p == math.inf:
        return x.max(axis=-1)
    big = x.max(axis=-1, keepdims=True)
    safe = np.where(big > 0, big, 1.0)
    return big[..., 0] * ((x / safe) ** p).sum(axis=-1) ** (1.0 / p)


def _lp_curvature(p, x):
    x = np.abs(np.asarray(x, dtype=float))
    n = x.shape[-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        num = (p - 1.0) ** (n - 1) * np.prod(x ** (p - 2.0), axis=-1)
        den = (x ** (2.0 * (p - 1.0))).sum(axis=-1) ** ((n + 1) / 2.0)
        k = num / den
    zero = np.any(x == 0.0, axis=-1)
    if p > 2:
        k = np.where(zero, 0.0, k)
    elif p < 2:
        k = np.where(zero, np.inf, k)
    return k


@dataclass(frozen=True)
class LpBall:
    """Unit ball of the l_p norm in dimension ``n``; ``p`` may be ``math.inf``."""

    n: int
    p: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InputError(f"dimension must be an integer >= 2, got {self.n}")
        p = float(self.p)
        if not p >= 1.0:
            raise DomainError(f"p must be >= 1, got {self.p}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", p)

    @property
    def dim(self):
        return self.n

    @property
    def smooth(self):
        return 1.0 < self.p < math.inf

    @property
    def dual_exponent(self):
        p = self.p
        if p == 1.0:
            return math.inf
        if p == math.inf:
            return 1.0
        return p / (p - 1.0)

    def support(self, u):
        return _lp_norm(u, self.dual_exponent)

    def boundary_point(self, u):
        u = _snap(u)
        p = self.p
        s = np.sign(u)
        if p == math.inf:
            return s
        a = np.abs(u)
        if p == 1.0:
            top = a.max(axis=-1, keepdims=True)
            tied = a >= top * (1 - 1e-12)
            return s * tied / tied.sum(axis=-1, keepdims=True)
        q = self.dual_exponent
        a = a / a.max(axis=-1, keepdims=True)
        x = s * a ** (q - 1.0)
        return x / _lp_norm(x, p)[..., None]

    def residual(self, x):
        return _lp_norm(x, self.p) - 1.0

    def contains(self, x, tol=None):
        x = np.asarray(x, dtype=float)
        return self.residual(x) <= (_tol(x) if tol is None else tol)

    def normal(self, x):
        x = np.asarray(x, dtype=float)
        p = self.p
        if self.smooth:
            g = np.sign(x) * np.abs(x) ** (p - 1.0)
            return _normalize(g)
        tol = _tol(x)
        if p == math.inf:
            face = np.abs(np.abs(x) - 1.0) <= tol
            if face.sum() != 1:
                raise AmbiguityError(f"{x.tolist()} is not interior to a facet of the cube")
            return np.sign(x) * face
        if np.any(np.abs(x) <= tol):
            raise AmbiguityError(f"{x.tolist()} is not interior to a facet of the cross-polytope")
        return np.sign(x) / math.sqrt(self.n)

    def curvature(self, x):
        if not self.smooth:
            raise UnsupportedError(f"the l_{self.p:g} ball is a polytope; curvature undefined")
        return _lp_curvature(self.p, x)

    def ray_exit(self, x, d):
        x = np.asarray(x, dtype=float)
        d = np.atleast_2d(np.asarray(d, dtype=float))
        if self.p == math.inf:
            with np.errstate(divide="ignore", invalid="ignore"):
                s = np.where(d != 0, (np.sign(d) - x) / d, np.inf)
            return s.min(axis=-1)
        lo = np.zeros(len(d))
        hi = (1.0 + _lp_norm(x, self.p)) / _lp_norm(d, self.p)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            inside = _lp_norm(x + mid[:, None] * d, self.p) <= 1.0
            lo = np.where(inside, mid, lo)
            hi = np.where(inside, hi, mid)
            if np.all(hi - lo <= 4e-16 * hi):
                break
        return 0.5 * (lo + hi)

    @cached_property
    def volume(self):
        n, p = self.n, self.p
        if p == math.inf:
            return 2.0 ** n
        return math.exp(n * math.log(2.0) + n * math.lgamma(1 + 1 / p) - math.lgamma(1 + n / p))

    @cached_property
    def centroid(self):
        return np.zeros(self.n)


# ---------------------------------------------------------------------------
# ellipsoids


@dataclass(frozen=True)
class Ellipsoid:
    """``{x : (x-c)^T A^{-1} (x-c) <= 1}`` for a positive-definite shape matrix ``A``.

    With ``A = L L^T`` this is ``c + L B_2^n``; semi-axes are the square roots
    of the eigenvalues of ``A``.
    """

    shape: tuple
    center: tuple

    def __post_init__(self):
        a = np.asarray(self.shape, dtype=float)
        c = np.asarray(self.center, dtype=float).ravel()
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] != len(c) or len(c) < 2:
            raise InputError("ellipsoid shape must be an n x n matrix matching the center")
        if not np.allclose(a, a.T, rtol=1e-12, atol=1e-14 * np.abs(a).max()):
            raise InputError("ellipsoid shape matrix must be symmetric")
        a = 0.5 * (a + a.T)
        if np.linalg.eigvalsh(a).min() <= 0:
            raise InputError("ellipsoid shape matrix must be positive definite")
        object.__setattr__(self, "shape", _tuple_mat(a))
        object.__setattr__(self, "center", _tuple_vec(c))

    @property
    def dim(self):
        return len(self.center)

    @cached_property
    def _a(self):
        return np.array(self.shape)

    @cached_property
    def _m(self):
        return np.linalg.inv(self._a)

    @cached_property
    def _c(self):
        return np.array(self.center)

    def support(self, u):
        u = np.asarray(u, dtype=float)
        return np.sqrt(np.einsum("...i,ij,...j->...", u, self._a, u)) + u @ self._c

    def boundary_point(self, u):
        u = np.asarray(u, dtype=float)
        au = u @ self._a
        return self._c + au / np.sqrt((au * u).sum(axis=-1, keepdims=True))

    def residual(self, x):
        y = np.asarray(x, dtype=float) - self._c
        return np.sqrt(np.einsum("...i,ij,...j->...", y, self._m, y)) - 1.0

    def contains(self, x, tol=None):
        x = np.asarray(x, dtype=float)
        return self.residual(x) <= (_tol(x) if tol is None else tol)

    def normal(self, x):
        return _normalize((np.asarray(x, dtype=float) - self._c) @ self._m)

    def curvature(self, x):
        g = (np.asarray(x, dtype=float) - self._c) @ self._m
        return np.linalg.det(self._m) / np.linalg.norm(g, axis=-1) ** (self.dim + 1)

    def ray_exit(self, x, d):
        y = np.asarray(x, dtype=float) - self._c
        d = np.atleast_2d(np.asarray(d, dtype=float))
        md = d @ self._m
        a = (md * d).sum(axis=-1)
        b = 2.0 * (md @ y)
        c = float(y @ self._m @ y) - 1.0
        root = np.sqrt(np.maximum(b * b - 4 * a * c, 0.0))
        with np.errstate(divide="ignore", invalid="ignore"):
            q = -0.5 * (b + np.where(b >= 0, root, -root))
            return np.where(b >= 0, c / q, q / a)

    @cached_property
    def volume(self):
        return unit_ball_volume(self.dim) * math.sqrt(np.linalg.det(self._a))

    @cached_property
    def centroid(self):
        return self._c.copy()


# ---------------------------------------------------------------------------
# affine images


@dataclass(frozen=True)
class Affine:
    """The image ``T K + v`` of ``inner`` under an invertible affine map."""

    inner: object
    matrix: tuple
    translation: tuple

    def __post_init__(self):
        n = self.inner.dim
        t = np.asarray(self.matrix, dtype=float)
        v = np.asarray(self.translation, dtype=float).ravel()
        if t.shape != (n, n) or v.shape != (n,):
            raise InputError(f"affine map must be {n}x{n} with a length-{n} translation")
        det = np.linalg.det(t)
        if not abs(det) > 1e-14 * max(1.0, np.abs(t).max()) ** n:
            raise DomainError("affine map is singular")
        object.__setattr__(self, "matrix", _tuple_mat(t))
        object.__setattr__(self, "translation", _tuple_vec(v))

    @property
    def dim(self):
        return self.inner.dim

    @cached_property
    def _t(self):
        return np.array(self.matrix)

    @cached_property
    def _ti(self):
        return np.linalg.inv(self._t)

    @cached_property
    def _v(self):
        return np.array(self.translation)

    @cached_property
    def det(self):
        return float(np.linalg.det(self._t))

    def _pull(self, x):
        return (np.asarray(x, dtype=float) - self._v) @ self._ti.T

    def support(self, u):
        u = np.asarray(u, dtype=float)
        return self.inner.support(u @ self._t) + u @ self._v

    def boundary_point(self, u):
        return self.inner.boundary_point(np.asarray(u, dtype=float) @ self._t) @ self._t.T + self._v

    def residual(self, x):
        return self.inner.residual(self._pull(x))

    def contains(self, x, tol=None):
        x = np.asarray(x, dtype=float)
        return self.residual(x) <= (_tol(x) if tol is None else tol)

    def normal(self, x):
        return _normalize(self.inner.normal(self._pull(x)) @ self._ti)

    def curvature(self, x):
        y = self._pull(x)
        g = self.inner.normal(y) @ self._ti
        return self.inner.curvature(y) / (
            self.det ** 2 * np.linalg.norm(g, axis=-1) ** (self.dim + 1))

    def ray_exit(self, x, d):
        d = np.atleast_2d(np.asarray(d, dtype=float))
        return self.inner.ray_exit(self._pull(x), d @ self._ti.T)

    @cached_property
    def volume(self):
        return abs(self.det) * self.inner.volume

    @cached_property
    def centroid(self):
        return self._t @ self.inner.centroid + self._v


# ---------------------------------------------------------------------------
# polygon chains (concrete 2D outputs)


@dataclass(frozen=True, eq=False)
class PolygonChain:
    """Ordered CCW vertex chain of a convex polygon (closed implicitly).

    Degenerate chains with one or two vertices represent a point or segment.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float).reshape(-1, 2)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def __len__(self):
        return len(self.vertices)

    @property
    def area(self):
        v = self.vertices
        if len(v) < 3:
            return 0.0
        return 0.5 * float(np.dot(v[:, 0], np.roll(v[:, 1], -1))
                           - np.dot(np.roll(v[:, 0], -1), v[:, 1]))

    @property
    def centroid(self):
        v = self.vertices
        if len(v) < 3:
            return v.mean(axis=0)
        w = np.roll(v, -1, axis=0)
        cr = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        return ((v + w) * cr[:, None]).sum(axis=0) / (3.0 * cr.sum())

    def support(self, u):
        if len(self.vertices) == 0:
            raise InputError("empty polygon")
        return np.max(np.asarray(u, dtype=float) @ self.vertices.T, axis=-1)

    def is_convex(self, tol=1e-9):
        v = self.vertices
        if len(v) < 3:
            return True
        return _polygon_defects(v, tol) is None

    def contains(self, x, tol=None):
        x = np.asarray(x, dtype=float)
        v = self.vertices
        if len(v) < 3:
            return np.zeros(x.shape[:-1], dtype=bool) if x.ndim > 1 else False
        e = np.roll(v, -1, axis=0) - v
        ln = np.hypot(e[:, 0], e[:, 1])
        nrm = np.stack([e[:, 1] / ln, -e[:, 0] / ln], axis=1)
        res = np.max(x @ nrm.T - (nrm * v).sum(axis=1), axis=-1)
        return res <= (_tol(x) if tol is None else tol)

    def scaled(self, c, center=(0.0, 0.0)):
        center = np.asarray(center, dtype=float)
        return PolygonChain(center + c * (self.vertices - center))

    def transformed(self, t, v=(0.0, 0.0)):
        t = np.asarray(t, dtype=float)
        w = self.vertices @ t.T + np.asarray(v, dtype=float)
        if np.linalg.det(t) < 0:
            w = w[::-1]
        return PolygonChain(w)

    def to_body(self):
        return polygon(self.vertices)


# ---------------------------------------------------------------------------
# structural helpers


def flatten(body):
    """Return ``(base, T, v)`` with ``body = T base + v`` and ``base`` not affine."""
    n = body.dim
    t = np.eye(n)
    v = np.zeros(n)
    while isinstance(body, Affine):
        v = t @ body._v + v
        t = t @ body._t
        body = body.inner
    return body, t, v


def as_ellipsoid(body):
    """Equivalent :class:`Ellipsoid`, or None when ``body`` is not one."""
    base, t, v = flatten(body)
    if isinstance(base, LpBall) and base.p == 2.0:
        a, c = np.eye(base.n), np.zeros(base.n)
    elif isinstance(base, Ellipsoid):
        a, c = base._a, base._c
    else:
        return None
    if isinstance(body, Ellipsoid):
        return body
    return Ellipsoid(_tuple_mat(t @ a @ t.T), _tuple_vec(t @ c + v))


def polytope_vertices(body):
    """CCW vertex array when ``body`` is a 2D polygon (incl. l_1, l_inf balls), else None."""
    if body.dim != 2:
        return None
    base, t, v = flatten(body)
    if isinstance(base, Polygon):
        w = base._v
    elif isinstance(base, LpBall) and base.p == 1.0:
        w = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    elif isinstance(base, LpBall) and base.p == math.inf:
        w = np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])
    else:
        return None
    w = w @ t.T + v
    if np.linalg.det(t) < 0:
        w = w[::-1]
    return w


def is_smooth(body):
    base, _, _ = flatten(body)
    if isinstance(base, Ellipsoid):
        return True
    return isinstance(base, LpBall) and base.smooth


def extent(body):
    """Diameter estimate: max width over axis and diagonal directions."""
    n = body.dim
    dirs = np.vstack([np.eye(n), _normalize(np.ones((1, n))),
                      _normalize(np.array([[1.0, -1.0] + [0.0] * (n - 2)]))])
    return float(np.max(body.support(dirs) + body.support(-dirs)))


# ---------------------------------------------------------------------------
# direction families


def uniform_directions(m):
    """``m`` unit vectors at angles ``2 pi k / m``; axis components are exact."""
    ang = 2 * np.pi * np.arange(m) / m
    u = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    for k, (c, s) in enumerate(((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))):
        if (k * m) % 4 == 0:
            u[k * m // 4] = (c, s)
    u[np.abs(u) < 1e-15] = 0.0
    return u


def fibonacci_sphere(m):
    """``m`` nearly uniform unit vectors on S^2 (golden-angle spiral)."""
    k = np.arange(m) + 0.5
    z = 1.0 - 2.0 * k / m
    r = np.sqrt(1.0 - z * z)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * k
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def direction_family(n, m):
    if n == 2:
        return uniform_directions(m)
    if n == 3:
        return fibonacci_sphere(m)
    raise UnsupportedError(f"no direction family for dimension {n}")


# ---------------------------------------------------------------------------
# constructors


def apply_affine(body, t, v=None):
    """Wrap ``body`` in the affine image ``T body + v`` (``T`` invertible)."""
    t = np.asarray(t, dtype=float)
    if v is None:
        v = np.zeros(body.dim)
    return Affine(body, _tuple_mat(t), _tuple_vec(v))


def recenter(body):
    """Translate ``body`` so its centroid sits at the origin."""
    c = body.centroid
    if np.linalg.norm(c) <= 1e-15 * extent(body):
        return body
    return apply_affine(body, np.eye(body.dim), -c)


def lp_ball(n, p):
    return LpBall(n, p)


def disk(r=1.0, center=(0.0, 0.0)):
    return Ellipsoid(((r * r, 0.0), (0.0, r * r)), _tuple_vec(center))


def ellipse(a, b, center=(0.0, 0.0), angle=0.0):
    """Ellipse with semi-axes ``a``, ``b``, rotated by ``angle`` radians."""
    c, s = math.cos(angle), math.sin(angle)
    r = np.array([[c, -s], [s, c]])
    return Ellipsoid(_tuple_mat(r @ np.diag([a * a, b * b]) @ r.T), _tuple_vec(center))


def ellipsoid(axes, center=None):
    axes = np.asarray(axes, dtype=float)
    if center is None:
        center = np.zeros(len(axes))
    return Ellipsoid(_tuple_mat(np.diag(axes ** 2)), _tuple_vec(center))


def square(half=1.0):
    h = float(half)
    return Polygon(((h, h), (-h, h), (-h, -h), (h, -h)))


def regular_polygon(k, radius=1.0, phase=0.0):
    """Regular ``k``-gon inscribed in the circle of the given radius."""
    ang = phase + 2 * np.pi * np.arange(k) / k
    return Polygon(_tuple_mat(radius * np.stack([np.cos(ang), np.sin(ang)], axis=1)))


# ---------------------------------------------------------------------------
# checked public API


def _check_unit(u, n):
    u = np.asarray(u, dtype=float)
    if u.shape != (n,):
        raise InputError(f"direction must have dimension {n}, got shape {u.shape}")
    if abs(np.linalg.norm(u) - 1.0) > UNIT_TOL:
        raise InputError(f"direction must be a unit vector (norm {np.linalg.norm(u)!r})")
    return u


def _check_point(x, n):
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise InputError(f"point must have dimension {n}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InputError("point coordinates must be finite")
    return x


def _check_on_boundary(body, x):
    r = float(body.residual(x))
    if abs(r) > 1e-9 * (1.0 + float(np.linalg.norm(x))):
        raise InputError(f"{x.tolist()} is not on the boundary (residual {r:.3g})")


def support(body, u):
    """Support value ``h_K(u) = max <x, u>`` over ``x`` in ``K``."""
    return float(body.support(_check_unit(u, body.dim)))


def contains(body, x):
    """Closed-body membership with tolerance ``1e-9 (1 + |x|)``."""
    return bool(body.contains(_check_point(x, body.dim)))


def boundary_point(body, u):
    """A maximizer of ``<x, u>`` on ``K``; faces resolve to their centroid."""
    return body.boundary_point(_check_unit(u, body.dim))


def normal_at(body, x):
    """Outer unit normal at a boundary point."""
    x = _check_point(x, body.dim)
    _check_on_boundary(body, x)
    return body.normal(x)


def gauss_curvature(body, x):
    x = _check_point(x, body.dim)
    if polytope_vertices(body) is not None or isinstance(flatten(body)[0], Polygon):
        raise UnsupportedError("Gauss curvature of a polygon is 0 or undefined")
    _check_on_boundary(body, x)
    return float(body.curvature(x))


def lp_curvature(n, p, x):
    """Gauss curvature of the l_p unit sphere at ``x``.

    Returns 0 where a coordinate vanishes and ``p > 2``, ``inf`` where one
    vanishes and ``p < 2``.
    """
    p = float(p)
    if not 1.0 < p < math.inf:
        raise UnsupportedError(f"the l_{p:g} ball is not C^2; curvature undefined")
    x = _check_point(x, n)
    if abs(_lp_norm(x, p) - 1.0) > 1e-9:
        raise InputError(f"{x.tolist()} is not on the l_{p:g} unit sphere")
    return float(_lp_curvature(p, x))


def volume(body):
    vol = float(body.volume)
    if not vol > 0:
        raise InputError("degenerate body (zero volume)")
    return vol


def centroid(body):
    return np.array(body.centroid, dtype=float)
