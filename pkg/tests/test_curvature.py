import math

import numpy as np
import pytest

import oracles
from floatlab import bodies
from floatlab.bodies import disk, ellipse, lp_ball, square
from floatlab.capvol import cut_level
from floatlab.curvature import (c_constant, floating_curvature, limit_ratio, q_matrix,
                                section_centroid)
from floatlab.errors import DomainError, InputError, UnsupportedError
from floatlab.homothety import ThresholdInputs, ellipse_rolling_radii, threshold

E2 = np.array([0.0, 1.0])


@pytest.mark.parametrize("c", [0.6, 0.8, 0.0, 0.33, -0.4])
def test_disk_q_closed_form(c):
    q = q_matrix(disk(), [0.0, c], E2)
    assert q.entries[0, 0] == pytest.approx(c, abs=1e-12)
    assert q.slice_volume == pytest.approx(2 * math.sqrt(1 - c * c))


def test_q_rejects_outside_points():
    with pytest.raises(InputError):
        q_matrix(disk(), [0.0, 1.0], E2)
    with pytest.raises(InputError):
        q_matrix(disk(), [0.0, 1.5], E2)


def test_q_needs_dimension_two_or_three():
    with pytest.raises(UnsupportedError):
        q_matrix(lp_ball(4, 2), [0, 0, 0, 0.1], [0, 0, 0, 1])


def test_disk_reciprocity():
    u = np.array([0.6, -0.8])
    for delta in np.linspace(0.01, 1.5, 20):
        kappa = floating_curvature(disk(), delta, u)
        assert kappa * cut_level(disk(), u, delta).level == pytest.approx(1.0, abs=1e-6)


def test_disk_value():
    expected = 1.0 / oracles.disk_cut_level(0.2)
    assert floating_curvature(disk(), 0.2, E2) == pytest.approx(expected, abs=1e-9)


def test_sentinel_near_half_volume():
    assert floating_curvature(disk(), math.pi / 2 - 1e-13, E2) == math.inf


def test_domain():
    with pytest.raises(DomainError):
        floating_curvature(disk(), math.pi / 2, E2)
    with pytest.raises(DomainError):
        floating_curvature(disk(), 0.0, E2)


def test_corner_hyperbola():
    u = np.array([1.0, 1.0]) / math.sqrt(2)
    assert floating_curvature(square(), 0.02, u) == pytest.approx(1 / math.sqrt(0.02), rel=1e-6)


@pytest.mark.parametrize("body, radii", [(disk(), (1.0, 1.0)),
                                         (ellipse(2.0, 1.0), ellipse_rolling_radii(2.0, 1.0))],
                         ids=["disk", "ellipse"])
def test_positive_definite_below_threshold(body, radii):
    rho_0, big_r = radii
    inp = ThresholdInputs(2, 1.0, 1.0, 1.0, 1.0, 1.0, rho_0, big_r)
    delta = threshold(inp).delta_0
    assert delta > 0
    for u in bodies.uniform_directions(100):
        t = cut_level(body, u, delta).level
        x = section_centroid(body, u, t)
        q = q_matrix(body, x, u)
        assert np.all(q.eigenvalues > 0)


def test_c_constant():
    assert c_constant(2) == pytest.approx(2 * (2 / 3) ** (2 / 3))
    assert c_constant(3) == pytest.approx(math.sqrt(math.pi))
    with pytest.raises(DomainError):
        c_constant(1)


@pytest.mark.slow
@pytest.mark.parametrize("body, x, kappa", [(disk(), [0.0, 1.0], 1.0),
                                            (ellipse(2.0, 1.0), [2.0, 0.0], 2.0)],
                         ids=["disk", "ellipse"])
def test_limit_ratio_convergence(body, x, kappa):
    target = kappa ** (1 / 3)
    errs = [abs(limit_ratio(body, x, 10.0 ** -k) - target) for k in range(2, 7)]
    assert all(b < a for a, b in zip(errs[:-2], errs[1:-1]))
    # the finest level may be limited by the cut tolerance
    assert errs[-1] <= 1.1 * errs[-2]


def test_limit_ratio_disk_oracle():
    # ratio = (c_2 / 2) (1 - s^2) / delta^(2/3) with s = t(delta) on the disk
    delta = 1e-3
    s = oracles.disk_cut_level(delta)
    expected = c_constant(2) / 2 * (1 - s * s) / delta ** (2 / 3)
    assert limit_ratio(disk(), [0.0, 1.0], delta) == pytest.approx(expected, rel=1e-6)


def test_limit_ratio_needs_boundary_point():
    with pytest.raises(InputError):
        limit_ratio(disk(), [0.0, 0.5], 1e-3)


def test_3d_nodes_converge():
    ball = lp_ball(3, 2)
    x = [0.0, 0.0, 0.5]
    u = [0.0, 0.0, 1.0]
    a = q_matrix(ball, x, u, nodes=64).entries
    b = q_matrix(ball, x, u, nodes=128).entries
    assert np.abs(a - b).max() < 1e-6
    np.testing.assert_allclose(b, 0.5 * np.eye(2), atol=1e-12)


def test_3d_ball_curvature():
    ball = lp_ball(3, 2)
    u = np.array([1.0, 2.0, 2.0]) / 3
    t = cut_level(ball, u, 0.3).level
    assert floating_curvature(ball, 0.3, u) == pytest.approx(1 / t ** 2, rel=1e-9)


def test_3d_ellipsoid_q_symmetric_positive():
    body = bodies.ellipsoid([2.0, 1.0, 0.7])
    u = np.array([1.0, 1.0, 1.0]) / math.sqrt(3)
    x = section_centroid(body, u, cut_level(body, u, 0.05).level)
    q = q_matrix(body, x, u)
    np.testing.assert_allclose(q.entries, q.entries.T)
    assert np.all(q.eigenvalues > 0)


@pytest.mark.parametrize("body", [ellipse(2.0, 0.5, angle=0.4), bodies.ellipsoid([2.0, 1.0, 0.7])],
                         ids=["ellipse", "ellipsoid"])
def test_ellipsoid_floating_body_is_homothetic(body):
    # K_delta = cK for ellipsoids, so its curvature is kappa_K / c^(n-1)
    n = body.dim
    rng = np.random.default_rng(2)
    for _ in range(5):
        u = rng.normal(size=n)
        u /= np.linalg.norm(u)
        c = cut_level(body, u, 0.1).level / float(body.support(u))
        kappa = float(body.curvature(body.boundary_point(u)))
        assert floating_curvature(body, 0.1, u) == pytest.approx(kappa / c ** (n - 1), rel=1e-6)
