import csv
import io
import json

import pytest

from floatlab import cli


@pytest.fixture
def files(tmp_path):
    paths = {
        "disk": "{kind: disk, radius: 1}",
        "square": "{kind: polygon, vertices: [[1, 1], [-1, 1], [-1, -1], [1, -1]]}",
        "lp4": "{kind: lp_ball, n: 2, p: 4}",
        "ellipse": "{kind: ellipse, axes: [2, 1]}",
        "triangle": "{kind: polygon, vertices: [[0, 0], [1, 0], [0, 1]]}",
        "bad": "{kind: polygon, vertices: [[0, 0], [2, 0], [1, 0.2], [1, 2]]}",
        "thr": json.dumps(dict(n=2, tau=2, T_M=1, r_m=1, r_M=1, D=1, rho_0=0.5, R=2)),
    }
    out = {}
    for name, text in paths.items():
        p = tmp_path / f"{name}.yaml"
        p.write_text(text)
        out[name] = str(p)
    return out


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_float(files):
    code, out, _ = call("float", "--body", files["square"], "--delta", "0.5", "--m", "8")
    assert code == 0
    table = rows(out)
    assert len(table) == 8
    assert float(table[0]["level"]) == pytest.approx(0.75)


def test_float_deterministic(files, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert call("float", "--body", files["lp4"], "--delta", "0.1", "--csv", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_curvature(files):
    code, out, _ = call("curvature", "--body", files["disk"], "--delta", "0.2",
                        "--directions", "4")
    assert code == 0
    for row in rows(out):
        assert float(row["curvature"]) == pytest.approx(1.2978273, abs=1e-6)


def test_square_curvature_corners_and_hyperbolas(files):
    code, out, _ = call("curvature", "--body", files["square"], "--delta", "0.1",
                        "--directions", "8")
    assert code == 0
    kappa = [float(r["curvature"]) for r in rows(out)]
    # edge directions hit corners of K_delta, diagonals the hyperbola xy = delta/2
    assert kappa[0] == float("inf")
    assert kappa[1] == pytest.approx(1 / 0.1 ** 0.5, rel=1e-6)


def test_limit_study(files):
    code, out, _ = call("limit-study", "--body", files["ellipse"], "--point", "2,0",
                        "--deltas", "1e-3,1e-4")
    assert code == 0
    assert len(rows(out)) == 2


def test_homothety(files, tmp_path):
    target = tmp_path / "h.csv"
    code, out, _ = call("homothety-check", "--body", files["lp4"], "--delta", "0.05",
                        "--csv", str(target))
    assert code == 0
    assert "NOT homothetic" in out


def test_petty(files):
    code, out, _ = call("petty-scan", "--body", files["ellipse"], "--m", "64")
    assert code == 0
    assert len(rows(out)) == 64


def test_threshold(files):
    code, out, _ = call("threshold", "--inputs", files["thr"])
    assert code == 0
    table = {r["component"]: r["value"] for r in rows(out)}
    assert float(table["a"]) == pytest.approx(0.7037037037037037)
    assert table["literal_variant"] == "false"
    code, lit, _ = call("threshold", "--inputs", files["thr"], "--literal-variant")
    assert code == 0


def test_genbody_svg(files, tmp_path):
    svg = tmp_path / "g.svg"
    code, out, _ = call("genbody", "--body", files["square"], "--kind", "convolution",
                        "--param", "1.0", "--rays", "64", "--svg", str(svg))
    assert code == 0
    assert svg.read_text().startswith("<svg")


def test_exit_codes(files):
    assert call("float")[0] == 1
    assert call("nonsense")[0] == 1
    assert call("float", "--body", files["disk"], "--delta", "x")[0] == 1
    assert call("float", "--body", files["bad"], "--delta", "0.1")[0] == 2
    assert call("float", "--body", "/nonexistent.yaml", "--delta", "0.1")[0] == 2
    assert call("float", "--body", files["disk"], "--delta", "5")[0] == 2
    assert call("float", "--body", files["disk"], "--delta", "0.1", "--m", "3")[0] == 2
    code, _, err = call("float", "--body", files["triangle"], "--delta", "0.245", "--m", "720")
    assert code == 3 and "numeric error" in err
