import math

import numpy as np
import pytest

import halfline_utm as hu


def test_constants_m3():
    c = hu.solve_constants(3)
    assert abs(c["Cprime"][0][0] - 3 / (2 * math.pi)) < 1e-12
    assert abs(c["C"][0][0] - np.exp(2j * np.pi / 3) / (2 * np.pi)) < 1e-12
    assert c["residual"] < 1e-10


def test_rotation_numbers():
    for m in (3, 5, 7):
        for p in range(1, (m - 1) // 2 + 1):
            for a in hu.rotation_numbers(m, p):
                assert abs(a**m - 1) < 1e-14


def test_linear_field_shape_and_initial_trace():
    spec = hu.ProblemSpec()
    spec.m = 3
    spec.T = 0.1
    spec.u0 = hu.DataHandle.builtin("x_exp")
    spec.g = [hu.DataHandle()]
    q = hu.QuadratureConfig()
    q.contour_panels = 512
    grid = hu.Grid.uniform(0.0, 5.0, 21, 0.0, 0.1, 3)
    f = hu.evaluate_linear(spec, grid, q)
    assert f.values.shape == (3, 21)
    u0 = np.array([x * math.exp(-x) for x in f.x])
    assert np.max(np.abs(f.values[0].real - u0)) < 1e-3
    assert f.max_imag() < 1e-6 * f.max_abs()


def test_errors_are_typed():
    spec = hu.ProblemSpec()
    spec.m = 4
    with pytest.raises(hu.ConfigError):
        hu.validated(spec)
    with pytest.raises(hu.ConfigError):
        hu.DataHandle.builtin("nosuch")
    assert issubclass(hu.DomainError, hu.UTMError)


def test_audits():
    r = hu.audit_dm_bound(3, samples=1000)
    assert abs(r["value"] - 3.0) < 1e-12
    assert abs(hu.calc_ratio(1, 0.75, 0.0, 0.0, 0.0) - 1.0) < 1e-6
    assert hu.dm(5, 2.0, 1.0) == pytest.approx(30.0)
    assert hu.beta(0.0, 3) == pytest.approx(1 / 36)


def test_config_round_trip_and_run(tmp_path):
    text = hu.parse_config(f"mode = constants\nm = 3\nout = {tmp_path}\n")
    assert hu.parse_config(text) == text
    code, err = hu.run_config(text)
    assert code == 0, err
    assert (tmp_path / "constants.txt").exists()
    with pytest.raises(hu.ConfigError):
        hu.parse_config("mode = linear\nm = 4\n")
