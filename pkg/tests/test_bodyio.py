import math

import numpy as np
import pytest

from floatlab import bodyio
from floatlab.bodies import apply_affine, ellipse, lp_ball, regular_polygon
from floatlab.errors import ConvexityError, DomainError, InputError


@pytest.mark.parametrize("body", [
    regular_polygon(7, 1.3, 0.1),
    lp_ball(2, 4),
    lp_ball(3, 1.5),
    lp_ball(2, math.inf),
    ellipse(2.0, 0.3, (1e-7, -2.5), 0.123456789),
    apply_affine(lp_ball(2, 3), [[1.1, 0.2], [-0.3, 0.9]], [1 / 3, 2 / 7]),
], ids=["polygon", "lp", "lp3", "linf", "ellipse", "affine"])
def test_round_trip(body):
    text = bodyio.serialize_body_spec(body)
    assert bodyio.parse_body_spec(text) == body
    assert bodyio.serialize_body_spec(bodyio.parse_body_spec(text)) == text


def test_parse_kinds():
    d = bodyio.parse_body_spec("{kind: disk, radius: 2, center: [1, 0]}")
    assert d.volume == pytest.approx(4 * math.pi)
    e = bodyio.parse_body_spec("kind: ellipse\naxes: [2, 1]\n")
    assert e.volume == pytest.approx(2 * math.pi)
    j = bodyio.parse_body_spec('{"kind": "lp_ball", "n": 2, "p": "inf"}')
    assert j.volume == pytest.approx(4)
    s = bodyio.parse_body_spec("{kind: ellipsoid, axes: [1, 2, 3]}")
    assert s.volume == pytest.approx(8 * math.pi)


def test_errors():
    with pytest.raises(ConvexityError) as exc:
        bodyio.parse_body_spec("{kind: polygon, vertices: [[0, 0], [2, 0], [1, 0.2], [1, 2]]}")
    assert "vertex 2" in str(exc.value)
    with pytest.raises(DomainError):
        bodyio.parse_body_spec("{kind: lp_ball, n: 2, p: 0.5}")
    with pytest.raises(InputError, match="line 2"):
        bodyio.parse_body_spec("kind: disk\n  radius: [1\n")
    with pytest.raises(InputError, match="unknown body kind"):
        bodyio.parse_body_spec("{kind: blob}")
    with pytest.raises(InputError, match="unknown field"):
        bodyio.parse_body_spec("{kind: disk, radios: 1}")
    with pytest.raises(InputError):
        bodyio.parse_body_spec("[1, 2]")
    with pytest.raises(InputError):
        bodyio.parse_body_spec("{kind: lp_ball, n: 2.5, p: 2}")


def test_threshold_inputs():
    text = "{n: 2, tau: 2, T_M: 1, r_m: 1, r_M: 1, D: 1, rho_0: 0.5, R: 2}"
    inp = bodyio.parse_threshold_inputs(text)
    assert inp.n == 2 and inp.R == 2.0
    with pytest.raises(InputError, match="missing"):
        bodyio.parse_threshold_inputs("{n: 2}")


def test_fmt():
    for x in (0.1, 1 / 3, 1e-300, 1e22, -2.5e-8, 7.0):
        assert float(bodyio.fmt(x)) == x
    assert bodyio.fmt(math.inf) == ".inf"


def test_csv_cells():
    text = bodyio.csv_text(["a", "b", "c", "d"], [[1, 0.1, True, math.inf], [np.int64(2), np.float64(1 / 3), False, "x"]])
    lines = text.splitlines()
    assert lines[1] == "1,0.10000000000000001,true,inf"
    assert float(lines[2].split(",")[1]) == 1 / 3


def test_svg():
    svg = bodyio.svg_text([(np.array([[0, 0], [1, 0], [0, 1]]), "black", "K"),
                           (np.array([[0.2, 0.2]]), "red", "point")])
    assert svg.startswith("<svg") and "<polygon" in svg and "<circle" in svg
