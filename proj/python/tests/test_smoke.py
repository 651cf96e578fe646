import math

import numpy as np
import pytest

import fvimex


def test_solve_shape_and_info():
    field, info = fvimex.solve(preset="test2", mesh=12)
    assert field.shape == (12, 12)
    assert np.all(np.isfinite(field))
    assert info["steps"] > 0
    assert info["bounds"]["xmax"] == 150.0


def test_solution_close_to_reference():
    field, _ = fvimex.solve(preset="test3", nx=40, ny=20)
    ref = fvimex.reference(preset="test3", nx=40, ny=20)
    assert field.shape == ref.shape == (20, 40)
    assert np.max(np.abs(field - ref)) < 0.05 * np.max(ref)


def test_converge_rows():
    rows = fvimex.converge(preset="test2", meshes="10,20")
    assert [r["nx"] for r in rows] == [10, 20]
    assert rows[0]["order"] is None
    assert rows[1]["order"] > 1.0
    assert not any(r["failed"] for r in rows)


def test_greeks_of_quadratic():
    x = (np.arange(10) + 0.5) / 10 * 4.0
    field = np.tile(x**2, (5, 1))
    g = fvimex.greeks(field, 0.0, 4.0, 0.0, 1.0)
    assert g["gamma"].shape == (5, 8)
    assert np.allclose(g["gamma"], 2.0)
    assert np.allclose(g["delta"][0], 2 * x[1:-1])


def test_pricers():
    assert fvimex.black_scholes_call(100, 100, 0.2, 0.05, 0.0, 1.0) == pytest.approx(10.450583572185565)
    h = fvimex.heston_price(100.0, 0.04, {"preset": "test3"})
    assert 2.0 < h < 10.0
    b = fvimex.basket_price(40.0, 0.0, {"preset": "test2"})
    assert b == pytest.approx(0.5 * fvimex.black_scholes_call(40.0, 60.0, 0.5, 0.1, 0.0, 0.25), rel=1e-8)


def test_preset_and_errors():
    p = fvimex.preset("test4")
    assert p["model"] == "heston" and float(p["sigma"]) == 0.025
    with pytest.raises(fvimex.ConfigError):
        fvimex.solve(preset="test2", mesh=1)
    with pytest.raises(ValueError):
        fvimex.solve(preset="test2", volatility=0.3)
    with pytest.raises(fvimex.FvimexError):
        fvimex.solve(preset="test2", mesh=20, maxit=1)
    assert not math.isnan(fvimex.heston_price(800.0, 0.0, {"preset": "test3"}))
