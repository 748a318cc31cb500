import numpy as np
import pytest

from paraframe.tensors import (
    contract_metric,
    curvature_symmetry_residuals,
    kulkarni_nomizu,
    max_abs,
    trace2,
)

I3 = np.eye(3)


def constant_curvature(sign: float) -> np.ndarray:
    # hand-built R for a unit-radius space form: R_ijkl = s (d_ik d_jl - d_il d_jk)
    d = I3
    return sign * (np.einsum("ik,jl->ijkl", d, d) - np.einsum("il,jk->ijkl", d, d))


PHI = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])


def test_kn_identity_values():
    gg = kulkarni_nomizu(I3, I3)
    assert gg[0, 1, 1, 0] == -2.0
    assert gg[0, 1, 2, 0] == 0.0
    assert max_abs(kulkarni_nomizu(I3, np.zeros((3, 3)))) == 0.0


def test_kn_curvature_symmetries():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = rng.normal(size=(3, 3))
        g = g + g.T
        h = rng.normal(size=(3, 3))
        h = h + h.T
        res = curvature_symmetry_residuals(kulkarni_nomizu(g, h))
        assert max(res.values()) <= 1e-12


def test_kn_rejects_asymmetric():
    bad = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    with pytest.raises(ValueError):
        kulkarni_nomizu(bad, I3)
    with pytest.raises(ValueError):
        kulkarni_nomizu(I3, bad)


def test_ricci_of_space_form():
    r = constant_curvature(-1.0)  # unit sphere in Euclidean 4-space
    rho = contract_metric(r)
    assert np.allclose(rho, 2.0 * I3, atol=1e-14)
    assert trace2(rho) == pytest.approx(6.0)

    rho_star = contract_metric(r, PHI)
    expected = np.zeros((3, 3))
    expected[1, 2] = expected[2, 1] = -1.0
    assert np.allclose(rho_star, expected, atol=1e-14)
    assert trace2(rho_star) == pytest.approx(0.0)


def test_ricci_symmetry_of_curvature_tensor():
    rng = np.random.default_rng(11)
    g = rng.normal(size=(3, 3))
    g = g + g.T + 4 * I3
    h = rng.normal(size=(3, 3))
    h = h + h.T
    rho = contract_metric(kulkarni_nomizu(g, h))
    assert max_abs(rho - rho.T) <= 1e-12


def test_zero_and_validation():
    assert max_abs(contract_metric(np.zeros((3, 3, 3, 3)))) == 0.0
    assert trace2(I3) == 3.0
    with pytest.raises(ValueError):
        trace2(np.zeros((3, 3, 3)))
    with pytest.raises(ValueError):
        contract_metric(np.full((3, 3, 3, 3), np.nan))
