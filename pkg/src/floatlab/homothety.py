"""Homothety between a body and its floating body, and the explicit threshold.

``homothety_defect`` measures how far the discretized ``K_delta`` is from the
volume-matched scaled copy ``cK``.  ``petty_scan`` samples the functional
``kappa(x) / <x, N(x)>^(n+1)``, which is constant exactly on ellipsoids.
``threshold`` evaluates the closed-form bound ``delta(K)`` below which a
non-ellipsoid cannot be homothetic to its floating body.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np

from .bodies import (LpBall, direction_family, extent, flatten, is_smooth, recenter,
                     unit_ball_volume, uniform_directions)
from .errors import DomainError, InputError, NumericError, UnsupportedError
from .floating import floating_body
from .metrics import METRIC_DIRECTIONS, hausdorff, width

__all__ = ["hausdorff", "width", "HomothetyDefect", "homothety_defect", "HomothetyReport",
           "homothety_check", "PettyScan", "petty_scan", "ThresholdInputs", "ThresholdReport",
           "threshold", "ellipse_rolling_radii", "threshold_inputs_from_scan"]

HOMOTHETY_FLOOR = 1e-3


class HomothetyDefect(NamedTuple):
    c: float
    defect: float


def _defect(centered, hull, count=METRIC_DIRECTIONS):
    u = uniform_directions(count)
    hk = centered.support(u)
    hh = hull.support(u)
    c = (hull.area / centered.volume) ** 0.5
    wid = float(np.min(hk + centered.support(-u)))
    defect = float(np.max(np.abs(hh - c * hk))) / wid
    c_lsq = float(hh @ hk / (hk @ hk))
    return c, defect, c_lsq


def homothety_defect(body, delta, m=720):
    """``(c, defect)`` with ``c = (|K_delta| / |K|)^(1/2)`` and
    ``defect = Hausdorff(K_delta, cK) / width(K)``, after centering ``K`` at
    its centroid.
    """
    if body.dim != 2:
        raise UnsupportedError("homothety defect is computed for planar bodies")
    centered = recenter(body)
    hull = floating_body(centered, delta, m).hull
    c, defect, _ = _defect(centered, hull)
    return HomothetyDefect(c, defect)


@dataclass(frozen=True)
class HomothetyReport:
    delta: float
    m: int
    c: float
    defect: float
    discretization_error: float
    tolerance: float
    homothetic: bool
    c_least_squares: float

    @property
    def verdict(self):
        word = "homothetic" if self.homothetic else "NOT homothetic"
        return f"defect={self.defect:.6g}, {word} at resolution m={self.m}"


def homothety_check(body, delta, m=720, floor=HOMOTHETY_FLOOR):
    """Defect plus a numerical verdict.

    The discretization error is the change in the defect-normalized hull
    between ``m`` and ``2m`` directions; the body counts as homothetic at
    this resolution iff ``defect <= max(floor, 5 * error)``.  This is a
    numerical statement, not a proof.
    """
    if body.dim != 2:
        raise UnsupportedError("homothety check is computed for planar bodies")
    centered = recenter(body)
    coarse = floating_body(centered, delta, m)
    fine = floating_body(centered, delta, 2 * m)
    c, defect, c_lsq = _defect(centered, coarse.hull)
    err = hausdorff(coarse.hull, fine.hull) / width(centered)
    tol = max(floor, 5.0 * err)
    return HomothetyReport(float(delta), int(m), c, defect, err, tol, defect <= tol, c_lsq)


# ---------------------------------------------------------------------------
# Petty functional


@dataclass(frozen=True, eq=False)
class PettyScan:
    points: np.ndarray
    values: np.ndarray
    T_m: float
    T_M: float
    tau: float
    x_m: np.ndarray
    x_M: np.ndarray
    degenerate: bool
    tau_regular: float
    kappa_m: float
    kappa_M: float

    @property
    def samples(self):
        return list(zip(self.points, self.values))


def _distinguished_directions(body):
    """Normals at the images of ``±e_i`` when the base is an l_p ball."""
    base, t, _ = flatten(body)
    if not isinstance(base, LpBall):
        return np.empty((0, body.dim))
    ti = np.linalg.inv(t)
    e = np.vstack([np.eye(body.dim), -np.eye(body.dim)])
    d = e @ ti
    return d / np.linalg.norm(d, axis=1, keepdims=True)


def petty_scan(body, m=720):
    """Sample ``kappa(x) / <x, N(x)>^(n+1)`` over the boundary of the centered body."""
    if int(m) != m or m < 16:
        raise DomainError(f"m must be an integer >= 16, got {m!r}")
    if not is_smooth(body):
        raise UnsupportedError("petty scan needs a body with computable curvature")
    n = body.dim
    centered = recenter(body)
    u = np.vstack([direction_family(n, int(m)), _distinguished_directions(centered)])
    x = centered.boundary_point(u)
    normal = centered.normal(x)
    support = (x * normal).sum(axis=1)
    if np.any(support <= 1e-9 * extent(centered)):
        raise NumericError("boundary point with <x, N> ~ 0 after centering")
    kappa = centered.curvature(x)
    values = kappa / support ** (n + 1)
    degenerate = bool(np.any((kappa == 0) | ~np.isfinite(kappa)))
    root = 1.0 / (n + 1)
    finite = np.isfinite(values)
    lo = int(np.argmin(np.where(finite, values, np.inf)))
    hi = int(np.argmax(np.where(finite, values, -np.inf)))
    if degenerate:
        lo = int(np.argmin(values))
        hi = int(np.argmax(values))
    t_m = float(values[lo]) ** root
    t_big = float(values[hi]) ** root
    regular = finite & (values > 0)
    reg = values[regular]
    tau_reg = float((reg.max() / reg.min()) ** root) if len(reg) else math.inf
    tau = math.inf if degenerate else t_big / t_m
    return PettyScan(x, values, t_m, t_big, tau, x[lo].copy(), x[hi].copy(), degenerate, tau_reg,
                     float(kappa[lo]), float(kappa[hi]))


# ---------------------------------------------------------------------------
# explicit threshold


@dataclass(frozen=True)
class ThresholdInputs:
    n: int
    tau: float
    T_M: float
    r_m: float
    r_M: float
    D: float
    rho_0: float
    R: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InputError(f"n must be an integer >= 2, got {self.n!r}")
        for name in ("T_M", "r_m", "r_M", "D", "rho_0", "R"):
            val = getattr(self, name)
            if not (isinstance(val, (int, float)) and math.isfinite(val) and val > 0):
                raise InputError(f"{name} must be a positive finite number, got {val!r}")
        if not (math.isfinite(self.tau) and self.tau >= 1.0):
            raise InputError(f"tau must be >= 1, got {self.tau!r}")
        if self.rho_0 > self.R:
            raise InputError(f"rho_0 ({self.rho_0}) must not exceed R ({self.R})")


@dataclass(frozen=True)
class ThresholdReport:
    a: float
    delta_0: float
    delta_1: float
    delta_2: float
    delta_m: float
    delta_M: float
    ball_terms: tuple
    delta_K: float
    intermediates: dict = field(default_factory=dict)

    def components(self):
        return {"a": self.a, "delta_0": self.delta_0, "delta_1": self.delta_1,
                "delta_2": self.delta_2, "delta_m": self.delta_m, "delta_M": self.delta_M,
                "ball_m": self.ball_terms[0], "ball_M": self.ball_terms[1],
                "delta_K": self.delta_K}

    def as_dict(self):
        return asdict(self)


def _bracket(value, what):
    if value < -1e-12:
        raise NumericError(f"internal consistency: {what} bracket is negative ({value:.3g})")
    # the bracket vanishes identically when a sits on its defining branch
    return value if value > 1e-13 else 0.0


def threshold(inp, literal_variant=False, a_scale=1.0):
    """All components of the explicit threshold and their minimum ``delta_K``.

    ``a_scale`` multiplies the parameter ``a`` (default 1: the value as
    defined).  ``literal_variant`` switches ``Delta_{a,M}`` to the variant
    with denominators ``2 (1-a) r_m`` and ``2 (1-a) Rbar_M``; both variants
    are always reported in ``intermediates``.
    """
    if not 0.0 < a_scale <= 1.0:
        raise DomainError("a_scale must lie in (0, 1]")
    n, tau = inp.n, float(inp.tau)
    k = (n + 1) / (n - 1)
    h = (n + 1) / 2
    w1 = unit_ball_volume(n - 1)
    wn = unit_ball_volume(n)
    a = a_scale * min(1.0 - (2.0 / (1.0 + tau)) ** k, (3.0 * tau / (1.0 + 2.0 * tau)) ** k - 1.0)
    a = max(a, 0.0)

    z = (inp.rho_0 / (4.0 * inp.R)) ** 2
    gap = z / (1.0 + math.sqrt(1.0 - z))
    delta_0 = inp.rho_0 ** (n - 1) * inp.R * w1 / (n * 2 ** (n - 1)) * gap ** n

    rbar_m = (1 - a) * inp.r_m
    t_am = min(rbar_m, 3 * a / (inp.D * rbar_m * (n - 1) ** 3))
    delta_m = t_am ** (n + 1) * w1 / (2 ** ((n - 1) / 2) * (n + 1) * rbar_m)
    big_delta_am = t_am ** 2 / (2 * rbar_m)

    b2 = _bracket(1.0 - (2.0 / (tau + 1.0)) ** k / (1.0 - a), "delta_2")
    delta_2 = (2 ** (3 * h) * ((1 - a) / (1 + tau)) ** h * inp.r_m ** n * w1 / (n + 1)
               * b2 ** h)

    b1 = _bracket(1.0 - (1.0 + a) ** (1.0 / k) * (2 * tau + 1) / (3 * tau), "delta_1")
    delta_1 = (b1 ** h * 2 ** ((n + 3) / 2) * w1 * (1 + a) ** ((n - 1) / 2)
               / ((n - 1) ** h * inp.T_M ** h * (n + 1)))

    rbar_M = (1 - a) * inp.r_M
    Rbar_M = (1 + a) * inp.r_M
    xi = 1 + a / 2
    t_m1 = min(rbar_M, 3 * a / (inp.D * rbar_M * (n - 1) ** 3))
    t_m2 = min(2 * math.sqrt(xi - 1) / xi * Rbar_M, 3 * a / (2 * inp.D * Rbar_M * (n - 1) ** 3))
    big_delta_aM = min(t_m1 ** 2 / (2 * (1 - a) * inp.r_M), t_m2 ** 2 / (2 * (1 + a) * inp.r_M))
    big_delta_lit = min(t_m1 ** 2 / (2 * (1 - a) * inp.r_m), t_m2 ** 2 / (2 * (1 - a) * Rbar_M))

    def delta_big(dd):
        return 2 * w1 / (n + 1) * rbar_M ** ((n - 1) / 2) * dd ** h

    delta_M_corr = delta_big(big_delta_aM)
    delta_M_lit = delta_big(big_delta_lit)
    delta_M = delta_M_lit if literal_variant else delta_M_corr

    ball = ((1 - a) ** n * inp.r_m ** n * wn / 2, (1 - a) ** n * inp.r_M ** n * wn / 2)
    delta_k = min(delta_0, delta_1, delta_2, delta_m, delta_M, *ball)
    inter = {"t_am": t_am, "t_M1": t_m1, "t_M2": t_m2, "Delta_am": big_delta_am,
             "Delta_aM": big_delta_aM, "Delta_aM_literal": big_delta_lit, "xi": xi,
             "rbar_m": rbar_m, "rbar_M": rbar_M, "Rbar_M": Rbar_M,
             "delta_M_corrected": delta_M_corr, "delta_M_literal": delta_M_lit,
             "bracket_1": b1, "bracket_2": b2, "a_scale": a_scale,
             "literal_variant": bool(literal_variant)}
    return ThresholdReport(a, delta_0, delta_1, delta_2, delta_m, delta_M, ball, delta_k, inter)


def ellipse_rolling_radii(a, b):
    """``(rho_0, R)`` for the ellipse with semi-axes ``a >= b``: the extreme
    radii of curvature ``b^2/a`` and ``a^2/b``."""
    a, b = max(a, b), min(a, b)
    if not b > 0:
        raise DomainError("semi-axes must be positive")
    return b * b / a, a * a / b


def threshold_inputs_from_scan(scan, D, rho_0, R):
    """Assemble :class:`ThresholdInputs` from a nondegenerate Petty scan."""
    if scan.degenerate:
        raise DomainError("scan is degenerate (zero or infinite curvature); no threshold")
    n = scan.points.shape[1]
    return ThresholdInputs(n, scan.tau, scan.T_M, scan.kappa_m ** (-1.0 / (n - 1)),
                           scan.kappa_M ** (-1.0 / (n - 1)), D, rho_0, R)
