from types import SimpleNamespace

import numpy as np
import pytest

from paraframe import (
    bracket_field,
    fundamental_tensor,
    immerse,
    koszul,
    orthonormal_frame,
    sample_points,
    standard_structure,
)
from paraframe.hypersurface import ModelPoint
from paraframe.reference import model_reference
from paraframe.report import analyze_point

SEED = 42
N_POINTS = 100


def pipeline(model: str, r: float, u) -> SimpleNamespace:
    """Run the frame pipeline at one point and hand back every stage."""
    p = ModelPoint(model=model, r=r, u=np.asarray(u, dtype=float))
    jet = immerse(p)
    fc = orthonormal_frame(jet, p.spec.signature)
    sf = bracket_field(fc)
    conn = koszul(sf)
    s = standard_structure()
    f = fundamental_tensor(conn, s)
    return SimpleNamespace(p=p, jet=jet, fc=fc, sf=sf, conn=conn, s=s, f=f)


def _batch(model: str) -> list[dict]:
    out = []
    for p in sample_points(model, N_POINTS, SEED):
        out.append(
            {
                "point": p,
                "a": analyze_point(p, 1e-9),
                "ref": model_reference(p),
            }
        )
    return out


@pytest.fixture(scope="session")
def s1_batch():
    return _batch("s1")


@pytest.fixture(scope="session")
def s2_batch():
    return _batch("s2")


@pytest.fixture(scope="session")
def batches(s1_batch, s2_batch):
    return {"s1": s1_batch, "s2": s2_batch}
