import math

import pytest

import abplab


def test_distance_and_exp():
    h = abplab.ModelSpace.hyperbolic(1.0)
    p = [math.cosh(1.0), math.sinh(1.0), 0.0]
    q = [1.0, 0.0, 0.0]
    assert abplab.distance(h, p, q) == pytest.approx(1.0, rel=1e-12)
    s = abplab.ModelSpace.sphere(1.0)
    e1 = abplab.exp_map(s, [0.0, 0.0, 1.0], [math.pi / 2, 0.0, 0.0])
    assert e1[0] == pytest.approx(1.0)


def test_ball_measure():
    s = abplab.ModelSpace.sphere(1.0)
    assert abplab.ball_measure(s, s.origin(), 1.0) == pytest.approx(2 * math.pi * (1 - math.cos(1.0)))


def test_ledger():
    led = abplab.ledger(0.0, 2.0, 1.0)
    assert led["alpha"] == pytest.approx(2.0)
    assert led["M"] == pytest.approx(2592.0)
    assert led["delta0"] == pytest.approx(1 / 32)


def test_harnack_functional():
    s = abplab.ModelSpace.sphere(1.0)
    d = 0.5 * math.sqrt(2.0)
    assert abplab.hfun_closed_form(s, d) == pytest.approx((1 + 2 * math.cos(0.5)) ** 2)
    assert abplab.hfun_numeric(s, d, 256, 256) == pytest.approx(abplab.hfun_closed_form(s, d), rel=1e-3)
    assert abplab.poisson_kernel_disc([0.5, 0.0], 0.0) == pytest.approx(3.0)


def test_pucci():
    lo, hi = abplab.pucci([[1.0, 0.0], [0.0, -1.0]], 2.0)
    assert (lo, hi) == pytest.approx((-1.0, 1.0))


def test_run_suite():
    out = abplab.run("constants", K=0.0, N=2.0, R=1.0)
    assert out[0]["suite"] == "constants"
    assert out[0]["all_pass"] is True


def test_errors():
    with pytest.raises(abplab.Error):
        abplab.hfun_closed_form(abplab.ModelSpace.sphere(1.0), 2.0)
    with pytest.raises(abplab.Error):
        abplab.run("constants", N=-3)
