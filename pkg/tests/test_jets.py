import math

import numpy as np
import pytest

from paraframe.jets import TJet


def test_variable_seed():
    j = TJet.variable(1, 0.7)
    assert j.value == 0.7
    assert j.first(1) == 1.0
    assert j.first(0) == j.first(2) == 0.0
    assert j.second(1, 1) == 0.0


def test_polynomial_derivatives():
    # f = u0^3 + u0*u1*u2: all partials known in closed form
    u0, u1, u2 = (TJet.variable(i, x) for i, x in enumerate((1.5, -0.5, 2.0)))
    f = u0 * u0 * u0 + u0 * u1 * u2
    assert f.value == pytest.approx(1.5**3 + 1.5 * -0.5 * 2.0)
    assert f.first(0) == pytest.approx(3 * 1.5**2 + (-0.5) * 2.0)
    assert f.second(0, 0) == pytest.approx(6 * 1.5)
    assert f.second(1, 2) == pytest.approx(1.5)
    assert f.third(0, 0, 0) == pytest.approx(6.0)
    assert f.third(0, 1, 2) == pytest.approx(1.0)
    assert f.third(1, 1, 2) == pytest.approx(0.0)


def test_trig_identity_exact():
    u = TJet.variable(0, 0.83)
    one = u.sin() * u.sin() + u.cos() * u.cos()
    assert abs(one.value - 1.0) < 1e-15
    # all derivative coefficients of a constant vanish
    assert np.max(np.abs(one.c[1:])) < 1e-15


def test_hyperbolic_identity_exact():
    u = TJet.variable(2, -1.2)
    one = u.cosh() * u.cosh() - u.sinh() * u.sinh()
    assert abs(one.value - 1.0) < 1e-14
    assert np.max(np.abs(one.c[1:])) < 1e-14


def test_transcendental_derivatives():
    # f = sin(u0) cosh(u1) + u2^2 u0, partials by hand
    x = (0.4, 0.9, -1.1)
    u0, u1, u2 = (TJet.variable(i, v) for i, v in enumerate(x))
    f = u0.sin() * u1.cosh() + u2 * u2 * u0
    s, c = math.sin(x[0]), math.cos(x[0])
    sh, ch = math.sinh(x[1]), math.cosh(x[1])
    assert f.first(0) == pytest.approx(c * ch + x[2] ** 2, abs=1e-14)
    assert f.first(1) == pytest.approx(s * sh, abs=1e-14)
    assert f.first(2) == pytest.approx(2 * x[2] * x[0], abs=1e-14)
    assert f.second(0, 1) == pytest.approx(c * sh, abs=1e-14)
    assert f.second(2, 2) == pytest.approx(2 * x[0], abs=1e-14)
    assert f.third(0, 0, 1) == pytest.approx(-s * sh, abs=1e-14)
    assert f.third(0, 2, 2) == pytest.approx(2.0, abs=1e-14)


def test_division_and_sqrt():
    u = TJet.variable(0, 2.0)
    w = u * u / u  # should reproduce u through degree... all coefficients
    assert np.allclose(w.c, u.c, atol=1e-15)
    r = (u * u).sqrt()
    assert np.allclose(r.c, u.c, atol=1e-15)
    inv = 1.0 / u
    assert inv.value == pytest.approx(0.5)
    assert inv.first(0) == pytest.approx(-0.25)
    assert inv.second(0, 0) == pytest.approx(0.25)


def test_deriv_shifts_coefficients():
    u0, u1 = TJet.variable(0, 0.3), TJet.variable(1, 1.4)
    f = u0.sin() * u1.cos()
    g = f.deriv(0)  # d/du0: cos(u0) cos(u1), valid to degree 2
    assert g.value == pytest.approx(math.cos(0.3) * math.cos(1.4), abs=1e-14)
    assert g.first(1) == pytest.approx(-math.cos(0.3) * math.sin(1.4), abs=1e-14)
    assert g.second(0, 1) == pytest.approx(math.sin(0.3) * math.sin(1.4), abs=1e-14)


def test_from_taylor_round_trip():
    u0, u1 = TJet.variable(0, 0.3), TJet.variable(1, 1.4)
    f = u0.sinh() * u1.sin()
    grad = np.array([f.first(l) for l in range(3)])
    hess = np.array([[f.second(l, m) for m in range(3)] for l in range(3)])
    g = TJet.from_taylor(f.value, grad, hess)
    assert g.value == f.value
    for l in range(3):
        assert g.first(l) == pytest.approx(f.first(l), abs=1e-15)
        for m in range(3):
            assert g.second(l, m) == pytest.approx(f.second(l, m), abs=1e-15)


def test_domain_errors():
    u = TJet.variable(0, -1.0)
    with pytest.raises(ValueError):
        u.sqrt()
    with pytest.raises(ZeroDivisionError):
        TJet.constant(0.0).reciprocal()
