"""Cap volumes and their inversion (cut levels).

The cap of ``K`` in direction ``u`` at level ``t`` is ``K ∩ {<x,u> >= t}``.
Every body is reduced to a base shape plus an affine map, and the base is
handled by a dedicated model:

* polygons (including the 2D l_1 / l_inf balls): exact clipping;
* Euclidean balls (ellipsoids reduce to these): closed form;
* 2D l_p balls: exact radial-sector integrals from a precomputed
  Gauss-Legendre table;
* nD l_p balls: 1D quadrature for axis directions, otherwise stratified
  (scrambled Sobol) Monte Carlo with a fixed seed and a 3-sigma error bound.

The cut-level solver is a bracketed Newton iteration (the derivative of the
cap volume in ``t`` is minus the section volume) that falls back to bisection
whenever a step leaves the bracket, so it never loses the root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special, stats

from . import kernels
from ._parallel import chunked_map
from .bodies import (Ellipsoid, LpBall, Polygon, _check_unit, _lp_norm, flatten,
                     polytope_vertices, unit_ball_volume)
from .errors import ConvergenceError, DomainError, UnsupportedError

MC_SAMPLES = 1 << 18


@dataclass(frozen=True)
class CutResult:
    direction: tuple
    level: float
    cap_volume: float
    volume_error: float
    iterations: int


@dataclass(frozen=True)
class CutTable:
    """Vectorized cut levels for a family of directions (rows of ``directions``)."""

    directions: np.ndarray
    levels: np.ndarray
    cap_volumes: np.ndarray
    volume_errors: np.ndarray
    iterations: np.ndarray

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, i):
        return CutResult(tuple(self.directions[i]), float(self.levels[i]),
                         float(self.cap_volumes[i]), float(self.volume_errors[i]),
                         int(self.iterations[i]))


# ---------------------------------------------------------------------------
# base models; each works with unit directions ``w`` (rows) and levels ``s``


class _PolygonModel:
    exact = True

    def __init__(self, vertices):
        self.v = np.ascontiguousarray(vertices, dtype=float)
        self.volume = kernels.polygon_area(self.v)
        self.error = 64 * np.finfo(float).eps * self.volume

    def support(self, w):
        return np.max(w @ self.v.T, axis=-1)

    def caps(self, w, s):
        area, chord = kernels.cap_areas(self.v, w, s)
        return area, chord, np.full(len(s), self.error)


def _disk_cap(s):
    """Area of the unit-disk cap ``{y >= s}``, accurate for tiny caps."""
    s = np.clip(s, -1.0, 1.0)
    a = np.abs(s)
    theta = 2.0 * np.arcsin(np.sqrt(0.5 * (1.0 - a)))
    x = 2.0 * theta
    series = x ** 3 / 6 * (1 - x * x / 20 * (1 - x * x / 42 * (1 - x * x / 72 * (1 - x * x / 110))))
    small = 0.5 * np.where(x < 0.1, series, x - np.sin(x))
    return np.where(s >= 0, small, math.pi - small)


class _BallModel:
    exact = True

    def __init__(self, n):
        self.n = n
        self.volume = unit_ball_volume(n)
        self.sec = unit_ball_volume(n - 1)
        self.error = 64 * np.finfo(float).eps * self.volume

    def support(self, w):
        return np.ones(len(w))

    def caps(self, w, s):
        n = self.n
        s = np.clip(s, -1.0, 1.0)
        section = self.sec * np.maximum(1.0 - s * s, 0.0) ** ((n - 1) / 2)
        if n == 2:
            vol = _disk_cap(s)
        elif n == 3:
            h = 1.0 - s
            vol = math.pi * h * h * (3.0 - h) / 3.0
        else:
            half = 0.5 * self.volume * special.betainc((n + 1) / 2, 0.5, 1.0 - s * s)
            vol = np.where(s >= 0, half, self.volume - half)
        return vol, section, np.full(len(s), self.error)


class _RadialLp2Model:
    """2D l_p ball, 1 < p < inf, p != 2, via exact radial sector areas."""

    exact = True
    ORDER = 16
    LEVELS = 48

    def __init__(self, p):
        self.p = p
        self.ball = LpBall(2, p)
        self.volume = self.ball.volume
        x, wts = np.polynomial.legendre.leggauss(self.ORDER)
        self._gx = 0.5 * (x + 1.0)
        self._gw = 0.5 * wts
        q = math.pi / 4
        left = q * 2.0 ** -np.arange(self.LEVELS, -1, -1.0)
        breaks = np.concatenate([[0.0], left, (2 * q - left[::-1])[1:], [2 * q]])
        self._breaks = breaks
        lo, hi = breaks[:-1], breaks[1:]
        pieces = self._integral(lo, hi)
        self._cum = np.concatenate([[0.0], np.cumsum(pieces)])
        self.quarter = self._cum[-1]
        # the table integrates to a quarter of the closed-form area
        self.error = max(abs(4 * self.quarter - self.volume), 1e-15) * 4 + 1e-14 * self.volume

    def radius(self, phi):
        c = np.abs(np.cos(phi))
        s = np.abs(np.sin(phi))
        return 1.0 / _lp_norm(np.stack([c, s], axis=-1), self.p)

    def _integral(self, a, b):
        nodes = a[:, None] + (b - a)[:, None] * self._gx
        r = self.radius(nodes)
        return (b - a) * ((0.5 * r * r) @ self._gw)

    def sector(self, phi):
        """``1/2 ∫_0^phi rho^2``, valid for any real ``phi``."""
        quarter = math.pi / 2
        k = np.floor(phi / quarter)
        r = phi - k * quarter
        # reflect odd quarters so the table on [0, pi/2] suffices
        odd = (k % 2) == 1
        rr = np.where(odd, quarter - r, r)
        j = np.clip(np.searchsorted(self._breaks, rr, side="right") - 1, 0, len(self._breaks) - 2)
        base = self._breaks[j]
        part = self._cum[j] + self._integral(base, rr)
        part = np.where(odd, self.quarter - part, part)
        return k * self.quarter + part

    def point(self, phi):
        r = self.radius(phi)
        return np.stack([r * np.cos(phi), r * np.sin(phi)], axis=-1)

    def support(self, w):
        return self.ball.support(w)

    def _crossing(self, w, s, lo, hi, rising):
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            above = (self.point(mid) * w).sum(axis=-1) >= s
            go_up = above != rising
            lo = np.where(go_up, mid, lo)
            hi = np.where(go_up, hi, mid)
        return 0.5 * (lo + hi)

    def caps(self, w, s):
        top = self.ball.boundary_point(w)
        phi0 = np.arctan2(top[:, 1], top[:, 0])
        h = self.support(w)
        inside = (s < h) & (s > -h)
        phi1 = self._crossing(w, s, phi0 - math.pi, phi0, rising=True)
        phi2 = self._crossing(w, s, phi0, phi0 + math.pi, rising=False)
        x1 = self.point(phi1)
        x2 = self.point(phi2)
        tri = 0.5 * (x1[:, 0] * x2[:, 1] - x1[:, 1] * x2[:, 0])
        area = self.sector(phi2) - self.sector(phi1) - tri
        chord = np.hypot(*(x2 - x1).T)
        area = np.where(inside, np.clip(area, 0.0, self.volume), np.where(s >= h, 0.0, self.volume))
        chord = np.where(inside, chord, 0.0)
        return area, chord, np.full(len(s), self.error)


class _LpModel:
    """nD l_p ball: quadrature for axis directions, Monte Carlo otherwise."""

    def __init__(self, n, p, seed):
        self.n, self.p, self.seed = n, p, seed
        self.ball = LpBall(n, p)
        self.volume = self.ball.volume
        self.section_volume = LpBall(n - 1, p).volume
        self._samples = None

    exact = False

    def support(self, w):
        return self.ball.support(w)

    def _axis(self, w):
        return np.abs(np.max(np.abs(w), axis=-1) - 1.0) < 1e-14

    def _slice(self, x):
        x = min(abs(x), 1.0)
        if self.p == math.inf:
            return self.section_volume
        return self.section_volume * (1.0 - x ** self.p) ** ((self.n - 1) / self.p)

    def _axis_cap(self, s):
        if s >= 1.0:
            return 0.0, 0.0, 0.0
        if s <= -1.0:
            return self.volume, 0.0, 0.0
        pts = [0.0] if s < 0 else None
        val, err = integrate.quad(self._slice, s, 1.0, points=pts, epsabs=0.0,
                                  epsrel=1e-12, limit=200)
        return val, self._slice(s), err

    def samples(self):
        if self._samples is None:
            self._samples = _lp_ball_samples(self.n, self.p, self.seed)
        return self._samples

    def caps(self, w, s):
        vol = np.empty(len(s))
        sec = np.zeros(len(s))
        err = np.empty(len(s))
        axis = self._axis(w)
        for i in np.flatnonzero(axis):
            vol[i], sec[i], err[i] = self._axis_cap(s[i])
        rest = np.flatnonzero(~axis)
        if len(rest):
            proj = self.samples() @ w[rest].T
            frac = (proj >= s[rest]).mean(axis=0)
            vol[rest] = self.volume * frac
            err[rest] = self._mc_error(frac)
        return vol, sec, err

    def _mc_error(self, frac):
        n = len(self.samples())
        return self.volume * (3.0 * np.sqrt(frac * (1.0 - frac) / n) + 1.0 / n)

    def solve_mc(self, w, target):
        """Cut level by sample quantile (non-axis directions)."""
        pts = self.samples()
        proj = np.sort(pts @ w.T, axis=0)
        n = len(pts)
        k = np.clip(np.round(n * (1.0 - target / self.volume)).astype(int), 1, n - 1)
        cols = np.arange(len(w))
        level = 0.5 * (proj[k - 1, cols] + proj[k, cols])
        frac = (n - k) / n
        return level, self.volume * frac, self._mc_error(frac)


@lru_cache(maxsize=8)
def _lp_ball_samples(n, p, seed, count=MC_SAMPLES):
    """Uniform points in B^n_p driven by a scrambled Sobol sequence.

    Uses the generalized-Gaussian representation: with ``g_i`` of density
    ``∝ exp(-|g|^p)`` and an independent standard exponential ``z``,
    ``g / (||g||_p^p + z)^(1/p)`` is uniform in the ball.
    """
    sob = stats.qmc.Sobol(d=2 * n + 1, scramble=True, seed=seed)
    u = sob.random(count)
    u = np.clip(u, 1e-16, 1 - 1e-16)
    if p == math.inf:
        return 2.0 * u[:, :n] - 1.0
    mag = stats.gamma.ppf(u[:, :n], 1.0 / p) ** (1.0 / p)
    g = np.where(u[:, n:2 * n] < 0.5, -mag, mag)
    z = -np.log(u[:, 2 * n])
    pts = g / ((np.abs(g) ** p).sum(axis=1) + z)[:, None] ** (1.0 / p)
    pts.setflags(write=False)
    return pts


@lru_cache(maxsize=64)
def _reduce(body, seed=0):
    """``(model, T, v)`` with ``body = T base + v`` and a cap model for ``base``."""
    verts = polytope_vertices(body)
    n = body.dim
    if verts is not None:
        return _PolygonModel(verts), np.eye(2), np.zeros(2)
    base, t, v = flatten(body)
    if isinstance(base, Ellipsoid):
        # T (L B + c) + v with A = L L^T
        return _BallModel(n), t @ np.linalg.cholesky(base._a), t @ base._c + v
    if isinstance(base, LpBall):
        if base.p == 2.0:
            return _BallModel(n), t, v
        if n == 2 and base.smooth:
            return _RadialLp2Model(base.p), t, v
        return _LpModel(n, base.p, seed), t, v
    if isinstance(base, Polygon):  # pragma: no cover - covered by polytope_vertices
        return _PolygonModel(base._v), t, v
    raise UnsupportedError(f"no cap model for {type(base).__name__}")


def reduce_body(body, seed=0):
    return _reduce(body, seed)


def _to_base(t, v, u, levels):
    tu = u @ t
    scale = np.linalg.norm(tu, axis=-1)
    w = tu / scale[:, None]
    s = (levels - u @ v) / scale
    return w, s, scale


# ---------------------------------------------------------------------------
# public API


def cap_volumes(body, u, levels, seed=0):
    """Vectorized cap volumes; ``u`` rows are unit directions."""
    model, t, v = _reduce(body, seed)
    u = np.atleast_2d(np.asarray(u, dtype=float))
    levels = np.broadcast_to(np.asarray(levels, dtype=float), (len(u),))
    w, s, _ = _to_base(t, v, u, levels)
    hi = model.support(w)
    lo = -model.support(-w)
    vol, _, _ = model.caps(w, np.clip(s, lo, hi))
    vol = np.where(s >= hi, 0.0, np.where(s <= lo, model.volume, vol))
    return abs(np.linalg.det(t)) * vol


def cap_volume(body, u, t, seed=0):
    """``|K ∩ {<x,u> >= t}|``, clamped to 0 / |K| outside the support range."""
    u = _check_unit(u, body.dim)
    return float(cap_volumes(body, u[None], [float(t)], seed)[0])


def cut_levels(body, u, delta, tol_vol=None, max_iter=200, seed=0):
    """Solve ``cap_volume(K, u_i, t_i) = delta`` for every row ``u_i``."""
    model, t, v = _reduce(body, seed)
    u = np.atleast_2d(np.asarray(u, dtype=float))
    det = abs(np.linalg.det(t))
    vol_k = det * model.volume
    delta = float(delta)
    if not 0.0 < delta < vol_k:
        raise DomainError(f"delta must lie in (0, |K|) = (0, {vol_k:.17g}), got {delta!r}")
    if tol_vol is None:
        tol_vol = 1e-10 * vol_k
    if not tol_vol > 0:
        raise DomainError("tol_vol must be positive")

    def solve(rows):
        return _solve(model, t, v, det, u[rows], delta, tol_vol, max_iter)

    parts = chunked_map(solve, len(u))
    levels, vols, errs, iters = (np.concatenate(a) for a in zip(*parts))
    return CutTable(u.copy(), levels, vols, errs, iters)


def cut_level(body, u, delta, tol_vol=None, max_iter=200, seed=0):
    """Cut level ``t`` with ``cap_volume(K, u, t) = delta`` (within ``tol_vol``)."""
    u = _check_unit(u, body.dim)
    return cut_levels(body, u[None], delta, tol_vol, max_iter, seed)[0]


def _solve(model, t, v, det, u, delta, tol_vol, max_iter):
    m = len(u)
    target = delta / det
    tol = tol_vol / det
    _, _, scale = _to_base(t, v, u, np.zeros(m))
    w = (u @ t) / scale[:, None]
    offset = u @ v
    hi = model.support(w)
    lo = -model.support(-w)

    def back(s):
        return s * scale + offset

    # degenerate caps resolve to the support endpoints
    if target < tol or target > model.volume - tol:
        s = hi if target < tol else lo
        vol = np.full(m, 0.0 if target < tol else model.volume)
        return back(s), det * vol, np.full(m, tol_vol), np.zeros(m, dtype=int)

    level = np.empty(m)
    vol = np.empty(m)
    err = np.empty(m)
    iters = np.zeros(m, dtype=int)
    todo = np.arange(m)
    if isinstance(model, _LpModel):
        mc = ~model._axis(w)
        if mc.any():
            idx = np.flatnonzero(mc)
            level[idx], vol[idx], err[idx] = model.solve_mc(w[idx], target)
            iters[idx] = 1
            todo = np.flatnonzero(~mc)
    if len(todo):
        level[todo], vol[todo], err[todo], iters[todo] = _newton_bisect(
            model, w[todo], target, tol, lo[todo], hi[todo], max_iter)
    return back(level), det * vol, det * err, iters


def _newton_bisect(model, w, target, tol, lo, hi, max_iter):
    m = len(w)
    s = 0.5 * (lo + hi)
    vol = np.empty(m)
    err = np.empty(m)
    sec = np.empty(m)
    iters = np.zeros(m, dtype=int)
    active = np.arange(m)
    lo = lo.copy()
    hi = hi.copy()
    for it in range(1, max_iter + 1):
        cv, cs, ce = model.caps(w[active], s[active])
        vol[active], sec[active], err[active] = cv, cs, ce
        iters[active] = it
        resid = cv - target
        # too much volume means the level is too low
        low = resid > 0
        lo[active] = np.where(low, s[active], lo[active])
        hi[active] = np.where(low, hi[active], s[active])
        width = hi[active] - lo[active]
        done = (np.abs(resid) <= tol) | (width <= 8 * np.finfo(float).eps * np.maximum(
            1.0, np.maximum(np.abs(lo[active]), np.abs(hi[active]))))
        active_next = active[~done]
        if len(active_next) == 0:
            return s, vol, err, iters
        keep = ~done
        a = active[keep]
        with np.errstate(divide="ignore", invalid="ignore"):
            step = s[a] + resid[keep] / cs[keep]
        inside = np.isfinite(step) & (step > lo[a]) & (step < hi[a])
        s[a] = np.where(inside, step, 0.5 * (lo[a] + hi[a]))
        active = a
    raise ConvergenceError(
        f"cut level did not converge in {max_iter} iterations",
        bracket=(float(lo[active[0]]), float(hi[active[0]])))
