"""Closed-form reference values for the built-in models.

Every tensor the pipeline computes has a hand-transcribed counterpart here,
parametrized by (r, u).  These are the verification targets of the
`paraframe verify` command; none of them call back into the pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hypersurface import ModelPoint
from .tensors import DIM


@dataclass(frozen=True)
class ModelReference:
    """Expected frame tensors of a model at one point."""

    gamma: np.ndarray
    f: np.ndarray
    nijenhuis: np.ndarray
    assoc_nijenhuis: np.ndarray
    curvature: np.ndarray
    ricci: np.ndarray
    ricci_star: np.ndarray
    tau: float
    tau_star: float
    sectional: float
    kappa: float
    classes: tuple[int, ...]
    lee_params: dict[str, float]
    d_eta: np.ndarray
    nabla_xi_xi: np.ndarray


def _constant_curvature(sign: float, r: float) -> np.ndarray:
    """R[i,j,k,l] = s (d_ik d_jl - d_il d_jk) with s = sign / r^2."""
    d = np.eye(DIM)
    s = sign / r**2
    return s * (np.einsum("ik,jl->ijkl", d, d) - np.einsum("il,jk->ijkl", d, d))


def _s1_reference(r: float, u: np.ndarray) -> ModelReference:
    u1 = u[1]
    cot = math.cos(u1) / math.sin(u1)
    tan = math.tan(u1)
    a, b = cot / r, tan / r

    gamma = np.zeros((DIM, DIM, DIM))
    gamma[0, 0, 1] = -a
    gamma[0, 1, 0] = a
    gamma[2, 1, 2] = -b
    gamma[2, 2, 1] = b

    f = np.zeros((DIM, DIM, DIM))
    f[0, 0, 2] = f[0, 2, 0] = a
    f[2, 1, 1] = 2.0 * b
    f[2, 2, 2] = -2.0 * b

    n = np.zeros((DIM, DIM, DIM))
    n[0, 1, 0] = a
    n[1, 0, 0] = -a

    hn = np.zeros((DIM, DIM, DIM))
    hn[2, 2, 1] = hn[1, 1, 1] = 4.0 * b
    hn[1, 2, 2] = hn[2, 1, 2] = -4.0 * b
    hn[0, 0, 1] = -2.0 * a
    hn[0, 1, 0] = hn[1, 0, 0] = a

    rho = (2.0 / r**2) * np.eye(DIM)
    rho_star = np.zeros((DIM, DIM))
    rho_star[1, 2] = rho_star[2, 1] = -1.0 / r**2

    deta = np.zeros((DIM, DIM))
    deta[0, 1] = -a
    deta[1, 0] = a

    nxx = np.array([0.0, -a, 0.0])

    return ModelReference(
        gamma=gamma,
        f=f,
        nijenhuis=n,
        assoc_nijenhuis=hn,
        curvature=_constant_curvature(-1.0, r),
        ricci=rho,
        ricci_star=rho_star,
        tau=6.0 / r**2,
        tau_star=0.0,
        sectional=1.0 / r**2,
        kappa=1.0 / r**2,
        classes=(1, 11),
        lee_params={
            "theta_0": 0.0,
            "theta_1": 0.0,
            "theta_2": -2.0 * b,
            "theta_star_0": 0.0,
            "omega_1": 0.0,
            "omega_2": a,
            "lam": 0.0,
            "mu": 0.0,
            "nu": 0.0,
        },
        d_eta=deta,
        nabla_xi_xi=nxx,
    )


def _s2_reference(r: float, u: np.ndarray) -> ModelReference:
    u1 = u[0]
    coth = math.cosh(u1) / math.sinh(u1)
    tanh = math.tanh(u1)
    c, t = coth / r, tanh / r

    gamma = np.zeros((DIM, DIM, DIM))
    gamma[1, 0, 1] = c
    gamma[1, 1, 0] = -c
    gamma[2, 0, 2] = t
    gamma[2, 2, 0] = -t

    f = np.zeros((DIM, DIM, DIM))
    f[1, 0, 2] = f[1, 2, 0] = -c
    f[2, 0, 1] = f[2, 1, 0] = -t

    w = 2.0 / (r * math.sinh(2.0 * u1))  # equals c - t
    n = np.zeros((DIM, DIM, DIM))
    n[1, 0, 1] = w
    n[0, 1, 1] = -w
    n[0, 2, 2] = w
    n[2, 0, 2] = -w

    hn = np.zeros((DIM, DIM, DIM))
    hn[1, 0, 1] = hn[0, 1, 1] = w
    hn[2, 0, 2] = hn[0, 2, 2] = -w
    hn[1, 1, 0] = hn[2, 2, 0] = -2.0 * (c + t)

    rho = (-2.0 / r**2) * np.eye(DIM)
    rho_star = np.zeros((DIM, DIM))
    rho_star[1, 2] = rho_star[2, 1] = 1.0 / r**2

    return ModelReference(
        gamma=gamma,
        f=f,
        nijenhuis=n,
        assoc_nijenhuis=hn,
        curvature=_constant_curvature(1.0, r),
        ricci=rho,
        ricci_star=rho_star,
        tau=-6.0 / r**2,
        tau_star=0.0,
        sectional=-1.0 / r**2,
        kappa=-1.0 / r**2,
        classes=(5, 9),
        lee_params={
            "theta_0": 0.0,
            "theta_1": 0.0,
            "theta_2": 0.0,
            "theta_star_0": -(c + t),
            "omega_1": 0.0,
            "omega_2": 0.0,
            "lam": 0.0,
            "mu": 0.5 * (t - c),
            "nu": 0.0,
        },
        d_eta=np.zeros((DIM, DIM)),
        nabla_xi_xi=np.zeros(DIM),
    )


def model_reference(p: ModelPoint) -> ModelReference:
    """Closed-form targets for a built-in model at p."""
    if p.model == "s1":
        return _s1_reference(p.r, p.u)
    if p.model == "s2":
        return _s2_reference(p.r, p.u)
    raise ValueError(f"no reference values for model {p.model!r}")
