import io
import math

import numpy as np
import pytest

from mathieu_edge.cli import main, parse_alpha, parse_theta


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def table(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    rows = [[float(x) for x in l.split(",")] for l in lines[1:]]
    return header, np.array(rows)


def test_parse_helpers():
    from fractions import Fraction

    assert parse_alpha("1/8") == Fraction(1, 8)
    assert parse_alpha("3/n", 64) == Fraction(3, 64)
    assert parse_alpha("0.25") == 0.25
    assert parse_theta("pi/3") == pytest.approx(math.pi / 3)
    assert parse_theta("2*pi/3") == pytest.approx(2 * math.pi / 3)
    assert parse_theta("-pi") == pytest.approx(-math.pi)
    assert parse_theta("0.5") == 0.5


def test_spectrum_free_case():
    code, out, _ = run(["spectrum", "--n", "100", "--alpha", "0", "--beta", "1", "--theta", "0", "--operator", "finite"])
    assert code == 0
    header, t = table(out)
    assert header == ["rank", "value"]
    exact = 2 + 2 * np.cos(np.arange(1, 101) * np.pi / 101)
    np.testing.assert_allclose(t[:, 1], exact, atol=1e-10)


def test_spectrum_dense_row_count():
    code, out, _ = run(["spectrum", "--n", "8", "--alpha", "1/8", "--operator", "periodic", "--method", "dense"])
    assert code == 0
    header, t = table(out)
    assert header == ["rank", "value", "residual_l2"] and len(t) == 8


def test_spectrum_top_value_near_formula():
    code, out, _ = run(["spectrum", "--n", "2000", "--operator", "periodic", "--top", "1"])
    _, t = table(out)
    g = math.pi / 2000
    assert abs(t[0, 1] - (2 + 2 * math.exp(-g))) <= 10 * g * g


def test_spectrum_vectors_and_negative_edge(tmp_path):
    vec = tmp_path / "v.csv"
    code, out, _ = run(["spectrum", "--n", "32", "--top", "3", "--edge", "negative", "--vectors", str(vec)])
    assert code == 0
    _, t = table(out)
    assert list(t[:, 0]) == [31, 30, 29] and np.all(np.diff(t[:, 1]) > 0)
    header, v = table(vec.read_text())
    assert header == ["x", "rank31", "rank30", "rank29"] and v.shape == (32, 4)


def test_compare_csv_and_svg(tmp_path):
    svg = tmp_path / "fig.svg"
    code, out, _ = run(["compare", "--n", "1000", "--top", "5", "--svg", str(svg)])
    assert code == 0
    header, t = table(out)
    assert header[:4] == ["m", "true_value", "approx_value", "abs_err"]
    assert len(t) == 5
    assert np.all(t[:, 3] == np.abs(t[:, 1] - t[:, 2]))
    assert svg.read_text().startswith("<svg") and svg.with_suffix(".dat").exists()
    # plotting does not alter the CSV
    _, out2, _ = run(["compare", "--n", "1000", "--top", "5"])
    assert out2 == out


def test_sweep_csv(tmp_path):
    csv = tmp_path / "s.csv"
    code, _, _ = run(["sweep", "--sweep", "400,800", "--csv", str(csv), "--svg", str(tmp_path / "s.svg")])
    assert code == 0
    header, t = table(csv.read_text())
    assert header == ["n", "gamma", "count_within_gamma", "count_within_gamma_sq", "sqrt_inv_gamma"]
    np.testing.assert_allclose(t[:, 4], np.sqrt(t[:, 0] / np.pi), rtol=1e-15)
    assert "polyline" in (tmp_path / "s.svg").read_text()


def test_hermite_side_channel():
    code, out, err = run(["hermite", "--m", "4", "--gamma", "0.01", "--n", "64"])
    assert code == 0 and "coefficients=12,-96,64" in err
    code, out, err = run(["hermite", "--m", "2", "--gamma", "0.01", "--n", "64"])
    assert "sign_changes=2" in err
    code, out, _ = run(["hermite", "--m", "0", "--gamma", "0.05", "--n", "16"])
    _, t = table(out)
    np.testing.assert_allclose(t[:, 1], np.exp(-0.05 * t[:, 0] ** 2), rtol=1e-14)


def test_validate_exit_codes(monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    code, out, _ = run(["validate", "--n", "10000", "--alpha", "1/10000", "--epsilon", "0.5"])
    assert code == 0 and "extended_m_max=56" in out and "\033[" not in out
    code, out, _ = run(["validate", "--n", "16", "--alpha", "0.45", "--beta", "9"])
    assert code == 1 and "gamma_range_ok=false" in out and "FAIL" in out
    code, _, _ = run(["validate", "--epsilon", "1.5"])
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--n", "7"],
        ["spectrum", "--beta", "-1"],
        ["spectrum", "--alpha", "x/y"],
        ["spectrum", "--operator", "infinite"],
        ["spectrum", "--operator", "periodic", "--method", "bisection"],
        ["compare", "--n", "64", "--top", "40"],
        ["sweep", "--sweep", "100"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(argv):
    assert run(argv)[0] == 2


def test_solver_failure_exit_3():
    assert run(["spectrum", "--n", "2000", "--operator", "periodic", "--method", "dense"])[0] == 3


def test_header_records_config_seed_version():
    _, out, _ = run(["spectrum", "--n", "8", "--seed", "7", "--alpha", "1/8"])
    head = out.splitlines()[0]
    assert head.startswith("# mathieu_edge ")
    assert '"seed": 7' in head and '"version": "0.1.0"' in head and '"alpha_exact": true' in head
    _, out, _ = run(["spectrum", "--n", "8", "--alpha", "0.125"])
    assert '"alpha_exact": false' in out.splitlines()[0]


def test_byte_identical_reruns(tmp_path):
    argv = ["compare", "--n", "800", "--top", "8", "--seed", "3"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(argv + ["--csv", str(a)])
    run(argv + ["--csv", str(b)])
    assert a.read_bytes() == b.read_bytes()
