import math

import numpy as np
import pytest
from shapely.geometry import Polygon as SPolygon

import oracles
from floatlab import bodies, genbodies
from floatlab.bodies import regular_polygon, square
from floatlab.errors import DomainError, InputError

DISK = regular_polygon(1440)
U = bodies.uniform_directions(90)


def test_intersection_areas():
    sq = np.array(square().vertices)
    assert genbodies.polygon_intersection_area(sq, sq) == pytest.approx(4)
    assert genbodies.polygon_intersection_area(sq, sq + [1, 0]) == pytest.approx(2)
    assert genbodies.polygon_intersection_area(sq, sq + [3, 0]) == 0
    rot = regular_polygon(4, math.sqrt(2), math.pi / 2)
    ref = SPolygon(sq).intersection(SPolygon(np.array(rot.vertices))).area
    assert genbodies.polygon_intersection_area(sq, rot) == pytest.approx(ref)


@pytest.mark.parametrize("delta", [0.05, 0.1, 0.5])
def test_disk_illumination(delta):
    res = genbodies.illumination_body(DISK, delta)
    r = res.hull.support(U)
    assert np.std(r) <= 1e-4
    assert r.mean() == pytest.approx(oracles.disk_illumination_radius(delta), abs=1e-4)


@pytest.mark.parametrize("t", [0.2, 0.8, 1.4])
def test_disk_convolution(t):
    res = genbodies.convolution_body(DISK, t)
    r = res.hull.support(U)
    assert np.std(r) <= 1e-4
    assert r.mean() == pytest.approx(oracles.disk_cut_level(t), abs=1e-4)


@pytest.mark.parametrize("t", [0.5 / math.pi, 0.2, 0.3])
def test_disk_santalo(t):
    res = genbodies.santalo_region(DISK, t)
    r = res.hull.support(U)
    assert np.std(r) <= 1e-4
    assert r.mean() == pytest.approx(oracles.disk_santalo_radius(t), abs=1e-4)


def test_degenerate_and_empty():
    point = genbodies.convolution_body(DISK, math.pi / 2)
    assert point.degenerate and len(point.hull.vertices) == 1
    point = genbodies.santalo_region(DISK, 1 / math.pi)
    assert point.degenerate
    empty = genbodies.santalo_region(DISK, 0.5)
    assert empty.empty and not empty.contains([0.0, 0.0])


def test_polar_area():
    assert genbodies.polar_area(square(), [0, 0]) == pytest.approx(2.0)
    assert genbodies.polar_area(DISK, [0.6, 0.0]) == pytest.approx(oracles.disk_polar_area(0.6),
                                                                   rel=1e-4)
    with pytest.raises(DomainError):
        genbodies.polar_area(square(), [1.5, 0])


def test_santalo_point_square():
    np.testing.assert_allclose(genbodies.santalo_point(square()), [0, 0], atol=1e-8)


def test_santalo_point_triangle_is_centroid():
    # for a triangle the polar-area minimizer is the centroid
    tri = np.array([[0.0, 0.0], [3.0, 0.0], [0.5, 2.0]])
    np.testing.assert_allclose(genbodies.santalo_point(tri), tri.mean(axis=0), atol=1e-6)


def test_domain_errors():
    with pytest.raises(DomainError):
        genbodies.illumination_body(square(), -1)
    with pytest.raises(DomainError):
        genbodies.convolution_body(square(), 3.0)
    with pytest.raises(InputError):
        genbodies.convolution_body(np.array([[0, 0], [2, 0], [0, 1]]), 0.1)
    with pytest.raises(DomainError):
        genbodies.santalo_region(square(), 0)


def test_square_supports():
    ill = genbodies.illumination_body(square(), 0.2)
    # outside an edge the excess is the triangle area (d - 1) * 2 / 2
    assert ill.hull.support(np.array([1.0, 0.0])) == pytest.approx(1.2, abs=1e-6)
    conv = genbodies.convolution_body(square(), 1.0)
    # overlap (2 - 2s) * 2 = 2t gives s = 0.5 along an axis
    assert conv.hull.support(np.array([1.0, 0.0])) == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("kind", ["illumination", "convolution", "santalo"])
def test_monotone_in_parameter(kind):
    sq = square()
    if kind == "illumination":
        a, b = genbodies.illumination_body(sq, 0.1), genbodies.illumination_body(sq, 0.4)
    elif kind == "convolution":
        a, b = genbodies.convolution_body(sq, 1.5), genbodies.convolution_body(sq, 0.5)
    else:
        a, b = genbodies.santalo_region(sq, 0.45), genbodies.santalo_region(sq, 0.3)
    assert np.all(b.contains(a.hull.vertices, tol=1e-9))
    assert a.hull.area < b.hull.area


def test_hull_defect_disk():
    res = genbodies.convolution_body(DISK, 0.5)
    c, defect = genbodies.hull_defect(DISK, res)
    assert defect < 1e-4
    assert c == pytest.approx(oracles.disk_cut_level(0.5), abs=1e-4)
