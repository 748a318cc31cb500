"""Point analysis, verification suite and deterministic serialization.

Reports are plain dicts with a fixed key order; the JSON and CSV renderers
format every scalar with 17 significant digits, so identical configurations
produce byte-identical artifacts.
"""

from __future__ import annotations

import numpy as np

from . import classifier, frame, nijenhuis, tensors
from .hypersurface import ModelPoint, bracket_field, induced_metric, immerse, orthonormal_frame
from .hypersurface import closed_form_field, sample_points, sphere_residual
from .reference import model_reference
from .structure import AprStructure, standard_structure, verify_axioms
from .tensors import DIM, max_abs

#: Entries smaller than this are dropped from "nonzero component" listings.
REPORT_EPS = 1e-12


# ---------------------------------------------------------------------------
# per-point analysis
# ---------------------------------------------------------------------------


def analyze_point(p: ModelPoint, tol: float) -> dict:
    """Run the full pipeline at one point and collect tensors and residuals."""
    jet = immerse(p)
    g_coord = induced_metric(jet, p.spec.signature)
    fc = orthonormal_frame(jet, p.spec.signature)
    sf = bracket_field(fc)
    conn = frame.koszul(sf)
    s = standard_structure()

    f = classifier.fundamental_tensor(conn, s)
    lee = classifier.lee_forms(f)
    decomp = classifier.class_components(f, lee)
    label = classifier.classify(decomp, classifier.classification_tol(f))

    n_f = nijenhuis.nijenhuis_from_F(f, s)
    hn_f = nijenhuis.assoc_nijenhuis_from_F(f, s)
    n_d, hn_d = nijenhuis.nijenhuis_direct(conn, sf, s)

    r4 = frame.curvature(conn, sf)
    rho = tensors.contract_metric(r4)
    rho_star = tensors.contract_metric(r4, s.phi)
    tau = tensors.trace2(rho)
    tau_star = tensors.trace2(rho_star)
    basis = np.eye(DIM)
    k01 = frame.sectional(r4, s.metric, basis[0], basis[1])
    k02 = frame.sectional(r4, s.metric, basis[0], basis[2])
    k12 = frame.sectional(r4, s.metric, basis[1], basis[2])
    kappa = p.spec.kappa(p.r)

    fs1, fs2 = classifier.f_symmetry_residuals(f, s)
    rsym = tensors.curvature_symmetry_residuals(r4)
    cf = closed_form_field(p)
    # axioms checked against the true frame Gram metric, not the idealized identity
    s_at_p = AprStructure(phi=s.phi, xi=s.xi, eta=s.eta, metric=fc.a @ g_coord @ fc.a.T)
    residuals = {
        "on_sphere": sphere_residual(p, jet),
        "frame_gram": fc.gram_defect(g_coord),
        "structure_axioms": verify_axioms(s_at_p).worst,
        "bracket_vs_closed_form": max_abs(sf.c - cf.c),
        "bracket_deriv_vs_closed_form": max_abs(sf.dc - cf.dc),
        "jacobi_identity": frame.jacobi_residual(sf),
        "connection_metric": conn.metric_defect(),
        "connection_torsion": conn.torsion_defect(sf),
        "f_symmetry_first": fs1,
        "f_symmetry_second": fs2,
        "lee_omega_0": abs(float(lee.omega[0])),
        "lee_theta1_plus_thetastar2": abs(float(lee.theta[1] + lee.theta_star[2])),
        "lee_theta2_plus_thetastar1": abs(float(lee.theta[2] + lee.theta_star[1])),
        "nabla_eta_relation": classifier.check_nabla_eta_relation(conn, f, s),
        "class_decomposition": decomp.residual,
        "nijenhuis_cross_route": max_abs(n_f - n_d),
        "assoc_nijenhuis_cross_route": max_abs(hn_f - hn_d),
        "curvature_symmetries": max(rsym.values()),
        "ricci_symmetry": tensors.symmetry_defect(rho),
        "space_form": frame.space_form_residual(r4, s.metric, kappa),
    }
    return {
        "point": p,
        "structure": s,
        "field": sf,
        "connection": conn,
        "f": f,
        "lee": lee,
        "decomposition": decomp,
        "label": label,
        "nijenhuis": n_f,
        "assoc_nijenhuis": hn_f,
        "curvature": r4,
        "ricci": rho,
        "ricci_star": rho_star,
        "tau": tau,
        "tau_star": tau_star,
        "k": (k01, k02, k12),
        "kappa": kappa,
        "residuals": residuals,
        "status": "PASS" if max(residuals.values()) <= tol else "FAIL",
    }


def _entries(name: str, t: np.ndarray) -> dict[str, float]:
    """Nonzero components keyed like R_0101, in index order."""
    out = {}
    for idx in np.ndindex(t.shape):
        v = float(t[idx])
        if abs(v) > REPORT_EPS:
            out[f"{name}_" + "".join(str(i) for i in idx)] = v
    return out


def _class_names(label) -> list[str]:
    return [f"F{s}" for s in label.classes]


def classify_report(p: ModelPoint, tol: float) -> dict:
    a = analyze_point(p, tol)
    return {
        "command": "classify",
        "model": p.model,
        "r": p.r,
        "point": [float(x) for x in p.u],
        "classes": _class_names(a["label"]),
        "is_f0": a["label"].is_f0,
        "params": a["decomposition"].params,
        "class_residual": a["decomposition"].residual,
        "f_components": _entries("F", a["f"]),
        "status": a["status"],
    }


def curvature_report(p: ModelPoint, tol: float) -> dict:
    a = analyze_point(p, tol)
    k01, k02, k12 = a["k"]
    return {
        "command": "curvature",
        "model": p.model,
        "r": p.r,
        "point": [float(x) for x in p.u],
        "curvature_components": _entries("R", a["curvature"]),
        "ricci": _entries("rho", a["ricci"]),
        "ricci_star": _entries("rho_star", a["ricci_star"]),
        "tau": a["tau"],
        "tau_star": a["tau_star"],
        "k_01": k01,
        "k_02": k02,
        "k_12": k12,
        "kappa": a["kappa"],
        "space_form_residual": a["residuals"]["space_form"],
        "status": a["status"],
    }


def point_report(p: ModelPoint, tol: float) -> dict:
    """The full per-point geometry report (used by sweep rows)."""
    a = analyze_point(p, tol)
    k01, k02, k12 = a["k"]
    return {
        "model": p.model,
        "r": p.r,
        "point": [float(x) for x in p.u],
        "status": a["status"],
        "classes": _class_names(a["label"]),
        "is_f0": a["label"].is_f0,
        "params": a["decomposition"].params,
        "f_components": _entries("F", a["f"]),
        "nijenhuis_components": _entries("N", a["nijenhuis"]),
        "assoc_nijenhuis_components": _entries("NH", a["assoc_nijenhuis"]),
        "curvature_components": _entries("R", a["curvature"]),
        "ricci": _entries("rho", a["ricci"]),
        "ricci_star": _entries("rho_star", a["ricci_star"]),
        "tau": a["tau"],
        "tau_star": a["tau_star"],
        "k_01": k01,
        "k_02": k02,
        "k_12": k12,
        "kappa": a["kappa"],
        "residuals": a["residuals"],
    }


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------


def _verify_checks(p: ModelPoint, tol: float) -> dict[str, float]:
    """All identity residuals at one point, including closed-form targets."""
    a = analyze_point(p, tol)
    ref = model_reference(p)
    s = a["structure"]
    checks = dict(a["residuals"])
    checks.update(
        {
            "gamma_vs_closed_form": max_abs(a["connection"].gamma - ref.gamma),
            "f_vs_closed_form": max_abs(a["f"] - ref.f),
            "nijenhuis_vs_closed_form": max_abs(a["nijenhuis"] - ref.nijenhuis),
            "assoc_nijenhuis_vs_closed_form": max_abs(
                a["assoc_nijenhuis"] - ref.assoc_nijenhuis
            ),
            "curvature_vs_closed_form": max_abs(a["curvature"] - ref.curvature),
            "ricci_vs_closed_form": max_abs(a["ricci"] - ref.ricci),
            "ricci_star_vs_closed_form": max_abs(a["ricci_star"] - ref.ricci_star),
            "tau_vs_closed_form": abs(a["tau"] - ref.tau),
            "tau_star_vs_closed_form": abs(a["tau_star"] - ref.tau_star),
            "sectional_vs_closed_form": max(
                abs(k - ref.sectional) for k in a["k"]
            ),
            "lee_params_vs_closed_form": max(
                abs(a["decomposition"].params[key] - val)
                for key, val in ref.lee_params.items()
            ),
            "class_label": 0.0 if a["label"].classes == ref.classes else 1.0,
            "class_components_nonvanishing": 0.0
            if all(
                max_abs(a["decomposition"].components[sid]) > tol for sid in ref.classes
            )
            else 1.0,
            "d_eta_vs_closed_form": max_abs(frame.d_eta(a["connection"]) - ref.d_eta),
            "nabla_xi_xi_vs_closed_form": max_abs(
                frame.nabla_xi_xi(a["connection"]) - ref.nabla_xi_xi
            ),
        }
    )
    if p.model == "s1":
        # N = -d eta (x) xi on this model
        deta = frame.d_eta(a["connection"])
        checks["n_plus_deta_xi"] = max_abs(
            a["nijenhuis"] + np.einsum("ij,k->ijk", deta, s.eta)
        )
    else:
        checks["d_eta_zero"] = max_abs(frame.d_eta(a["connection"]))
        checks["nabla_xi_xi_zero"] = max_abs(frame.nabla_xi_xi(a["connection"]))
    return checks


def run_verify(model: str, r: float, samples: int, seed: int, tol: float) -> dict:
    """Evaluate every identity at seeded sample points; PASS iff all within tol."""
    points = sample_points(model, samples, seed, r=r)
    worst: dict[str, float] = {}
    for p in points:
        for name, value in _verify_checks(p, tol).items():
            worst[name] = max(worst.get(name, 0.0), value)
    checks = [
        {"name": name, "max_residual": value, "pass": value <= tol}
        for name, value in worst.items()
    ]
    failed = [c["name"] for c in checks if not c["pass"]]
    return {
        "command": "verify",
        "model": model,
        "r": r,
        "samples": samples,
        "seed": seed,
        "tol": tol,
        "checks": checks,
        "failed": failed,
        "status": "PASS" if not failed else "FAIL",
    }


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def format_scalar(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _json_escape(s: str) -> str:
    out = []
    for ch in s:
        if ch in ('"', "\\"):
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return '"' + "".join(out) + '"'


def render_json(obj, indent: int = 0) -> str:
    """Deterministic JSON: insertion-ordered keys, floats at 17 digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{inner}{_json_escape(str(k))}: {render_json(v, indent + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{render_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    return _json_escape(str(obj))


def render_text(obj, prefix: str = "") -> str:
    """Flat key = value lines for human reading."""
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            key = f"{prefix}.{k}" if prefix else str(k)
            if isinstance(v, (dict, list, tuple)):
                lines.append(render_text(v, key))
            else:
                lines.append(f"{key} = {format_scalar(v)}")
    elif isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            joined = ", ".join(format_scalar(v) for v in obj)
            lines.append(f"{prefix} = [{joined}]")
        else:
            for n, v in enumerate(obj):
                lines.append(render_text(v, f"{prefix}[{n}]"))
    else:
        lines.append(f"{prefix} = {format_scalar(obj)}")
    return "\n".join(lines)


SWEEP_COLUMNS = [
    "model",
    "r",
    "u0",
    "u1",
    "u2",
    "status",
    "warning",
    "classes",
    "is_f0",
    "class_residual",
    "theta_0",
    "theta_1",
    "theta_2",
    "theta_star_0",
    "omega_1",
    "omega_2",
    "lam",
    "mu",
    "nu",
    "tau",
    "tau_star",
    "k_01",
    "k_02",
    "k_12",
    "space_form_residual",
    "R_0101",
    "R_0202",
    "R_1212",
    "rho_00",
    "rho_11",
    "rho_22",
    "rho_star_12",
    "max_residual",
]


def _csv_field(v) -> str:
    s = v if isinstance(v, str) else format_scalar(v)
    if any(ch in s for ch in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s


def sweep_row(model: str, r: float, u: np.ndarray, tol: float) -> dict:
    """One sweep row; domain violations are reported, not raised."""
    base = {
        "model": model,
        "r": float(r),
        "u0": float(u[0]),
        "u1": float(u[1]),
        "u2": float(u[2]),
    }
    try:
        p = ModelPoint(model=model, r=r, u=np.asarray(u, dtype=float))
    except ValueError as exc:
        return {**base, "status": "skipped", "warning": str(exc)}
    rep = point_report(p, tol)
    row = {**base, "status": rep["status"], "warning": ""}
    row["classes"] = "+".join(rep["classes"])
    row["is_f0"] = rep["is_f0"]
    row["class_residual"] = rep["residuals"]["class_decomposition"]
    for key in ("theta_0", "theta_1", "theta_2", "theta_star_0", "omega_1", "omega_2", "lam", "mu", "nu"):
        row[key] = rep["params"][key]
    row["tau"] = rep["tau"]
    row["tau_star"] = rep["tau_star"]
    row["k_01"] = rep["k_01"]
    row["k_02"] = rep["k_02"]
    row["k_12"] = rep["k_12"]
    row["space_form_residual"] = rep["residuals"]["space_form"]
    for key in ("R_0101", "R_0202", "R_1212"):
        row[key] = rep["curvature_components"].get(key, 0.0)
    for key in ("rho_00", "rho_11", "rho_22", "rho_star_12"):
        section = "ricci_star" if key.startswith("rho_star") else "ricci"
        row[key] = rep[section].get(key, 0.0)
    row["max_residual"] = max(rep["residuals"].values())
    row["report"] = rep
    return row


def render_sweep_csv(rows: list[dict]) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        lines.append(",".join(_csv_field(row.get(col, "")) for col in SWEEP_COLUMNS))
    return "\n".join(lines)
