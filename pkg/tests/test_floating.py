import math

import numpy as np
import pytest

import oracles
from floatlab import bodies
from floatlab.bodies import PolygonChain, apply_affine, disk, ellipse, lp_ball, square
from floatlab.errors import DomainError
from floatlab.floating import floating_body
from floatlab.metrics import hausdorff


def test_disk_example():
    res = floating_body(disk(), 0.2, 720)
    ref = PolygonChain(oracles.disk_cut_level(0.2) * bodies.uniform_directions(4096))
    assert hausdorff(res.hull, ref) <= 1e-3
    assert res.contained_in_source


def test_square_example():
    res = floating_body(square(), 0.5, 720)
    assert res.support([1.0, 0.0]) == pytest.approx(0.75, abs=1e-9)
    diag = np.array([1.0, 1.0]) / math.sqrt(2)
    assert res.support(diag) == pytest.approx(math.sqrt(2) - math.sqrt(0.5), abs=1e-9)


def test_delta_zero_is_body():
    res = floating_body(square(), 0.0)
    np.testing.assert_allclose(res.hull.vertices, square().vertices)
    res = floating_body(disk(), 0.0, 64)
    assert np.allclose(np.linalg.norm(res.hull.vertices, axis=1), 1)


def test_scaled_disk():
    big = apply_affine(disk(), 2 * np.eye(2))
    res = floating_body(big, 0.8, 720)
    r = np.linalg.norm(res.hull.vertices, axis=1)
    assert r.min() >= 2 * oracles.disk_cut_level(0.2) - 1e-9
    assert r.max() <= 2 * oracles.disk_cut_level(0.2) / math.cos(math.pi / 720) + 1e-9


def test_domain():
    with pytest.raises(DomainError):
        floating_body(disk(), math.pi / 2)
    with pytest.raises(DomainError):
        floating_body(disk(), 0.1, m=4)


SHAPES = [square(), disk(), lp_ball(2, 1.5), lp_ball(2, 4), ellipse(2, 0.7, (1, 1), 0.3),
          bodies.regular_polygon(5, 1.3)]


@pytest.mark.parametrize("body", SHAPES, ids=lambda b: type(b).__name__)
def test_containment_and_convexity(body):
    res = floating_body(body, 0.1 * body.volume, 360)
    assert np.all(body.contains(res.hull.vertices))
    assert res.hull.is_convex()
    sup = res.hull.support(res.directions)
    assert np.all(sup <= res.support_levels + 1e-9)


def test_nesting():
    rng = np.random.default_rng(9)
    for _ in range(50):
        body = SHAPES[rng.integers(len(SHAPES))]
        d1, d2 = np.sort(rng.uniform(0.01, 0.45, 2)) * body.volume
        outer = floating_body(body, d1, 128)
        inner = floating_body(body, d2, 128)
        assert np.all(outer.contains(inner.hull.vertices))


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 4.0])
def test_dihedral_symmetry(p):
    res = floating_body(lp_ball(2, p), 0.1, 720)
    v = res.hull.vertices
    for g in (np.array([[0, -1], [1, 0]]), np.array([[1, 0], [0, -1]]),
              np.array([[0, 1], [1, 0]])):
        w = v @ g.T
        d = np.linalg.norm(w[:, None, :] - v[None, :, :], axis=-1).min(axis=1)
        assert d.max() < 1e-9


@pytest.mark.parametrize("body", [disk(), lp_ball(2, 3), ellipse(2, 1)],
                         ids=["disk", "B2_3", "ellipse"])
def test_strict_convexity_proxy(body):
    res = floating_body(body, 0.1, 720)
    v = res.hull.vertices
    e = np.roll(v, -1, axis=0) - v
    ang = np.unwrap(np.arctan2(-e[:, 0], e[:, 1]))
    assert np.all(np.diff(ang) > 0)


def test_affine_equivariance_shear():
    shear = np.array([[1.0, 0.6], [0.0, 1.0]])
    body = lp_ball(2, 4)
    direct = floating_body(apply_affine(body, shear), 0.2, 720, estimate_error=True)
    image = floating_body(body, 0.2, 720).hull.transformed(shear)
    assert hausdorff(direct.hull, image) <= 5 * direct.discretization_error + 1e-12


def test_3d_table():
    res = floating_body(lp_ball(3, 2), 0.1, 200)
    assert res.hull is None and res.contained_in_source
    h = 1 - res.support_levels
    np.testing.assert_allclose(math.pi * h * h * (3 - h) / 3, 0.1, atol=1e-9)
    assert res.contains(np.zeros(3))
    assert not res.contains(np.array([0, 0, 0.99]))


def test_deterministic():
    a = floating_body(lp_ball(2, 3), 0.1, 720)
    b = floating_body(lp_ball(2, 3), 0.1, 720)
    assert np.array_equal(a.hull.vertices, b.hull.vertices)
