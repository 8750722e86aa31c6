"""Request handlers: pydantic request in, report dict (or CSV text) out.

Shared by the FastAPI routes and the CLI's in-process mode, so both
transports produce identical payloads.
"""

import numpy as np

from ..ambient import horizontality_defect
from ..biharmonic import (
    cpn_curve_bitension,
    hopf_relation_check,
    lambda_biharmonic_residual,
    quartic_ode_residual,
    sphere_curve_bitension,
    tension_coefficients,
)
from ..clifford import (
    HypersurfaceData,
    LagrangianTorusSpec,
    clifford_minus4_solve,
    hypersurface_predicates,
    locate_sphere_bundle_roots,
    sphere_bundle_analyze,
    sphere_bundle_minus4_roots,
    torus_extrinsic_oracle,
    zhang_residual,
    zhang_solve_two_block,
)
from ..curves import FrenetApparatus, frenet_apparatus
from ..errors import NoSolutionError, UsageError
from ..families import (
    ALPHA0_INTERVAL_WARNING,
    classify_helix_cp2,
    gram_condition_max_defect,
    great_circle,
    lift_curve_tau12_pm1,
    lift_curve_tau12_zero,
    solve_order4_helix,
)
from ..reports import (
    VERDICT_NO_SOLUTION,
    VERDICT_UNCLASSIFIED,
    build_report,
    derive_verdict,
    fmt_float,
    labeled,
)
from ..tolerances import DEFAULT_TOLERANCES, ToleranceConfig
from . import models

SPHERE_BUNDLE_WARNINGS = [
    "the bundle is never proper-biharmonic in the ambient sphere",
    "the Hopf projection of the bundle is never proper-biharmonic",
]


def _tolerances(tol_value) -> ToleranceConfig:
    if tol_value is None:
        return DEFAULT_TOLERANCES
    return DEFAULT_TOLERANCES.with_residual(float(tol_value))


def build_family(name: str, n=None, k1=None):
    if name == "tau12-pm1":
        return lift_curve_tau12_pm1(n if n is not None else 1)
    if name == "tau12-zero-circle":
        return lift_curve_tau12_zero("circle", n=n)
    if name == "tau12-zero-helix":
        if k1 is None:
            raise UsageError("family tau12-zero-helix requires --k1 in (0, 1)")
        return lift_curve_tau12_zero("helix", k1=k1, n=n)
    if name == "great-circle":
        # axes from different complex slots: a horizontal geodesic lift
        return great_circle(n if n is not None else 1, 0, 2)
    raise UsageError(f"unknown curve family {name!r}")


def handle_verify_curve(req: models.CurveVerifyRequest) -> dict:
    tol = _tolerances(req.tol)
    family = build_family(req.family, req.n, req.k1)
    svals = np.linspace(0.0, req.s_max, req.samples)

    maxima = {
        "tension_max": 0.0,
        "bitension_max": 0.0,
        "lambda_minus4_max": 0.0,
        "quartic_ode_max": 0.0,
        "horizontality_max": 0.0,
        "hopf_relation_max": 0.0,
    }
    for s in svals:
        jet = family.jet(float(s))
        app = frenet_apparatus(family, float(s), tol=tol)
        tau2 = sphere_curve_bitension(app)
        tau = tension_coefficients(app)
        lam4 = lambda_biharmonic_residual(tau2, tau, -4.0)
        hopf = hopf_relation_check(family, float(s), tol=tol)
        maxima["tension_max"] = max(maxima["tension_max"], float(np.linalg.norm(tau)))
        maxima["bitension_max"] = max(maxima["bitension_max"], tau2.norm)
        maxima["lambda_minus4_max"] = max(maxima["lambda_minus4_max"], lam4.norm)
        maxima["quartic_ode_max"] = max(maxima["quartic_ode_max"], quartic_ode_residual(jet))
        maxima["horizontality_max"] = max(
            maxima["horizontality_max"],
            abs(horizontality_defect(jet.position, jet.velocity, tol)),
        )
        maxima["hopf_relation_max"] = max(maxima["hopf_relation_max"], hopf.norm)

    if family.label == "tau12-pm1":
        maxima["gram_max_defect"] = gram_condition_max_defect(family)

    app0 = frenet_apparatus(family, 0.0, tol=tol)
    roots = [labeled("d", float(app0.d))]
    for i, k in enumerate(app0.curvatures, start=1):
        roots.append(labeled(f"k{i}", k))

    inputs = {"family": req.family, "n": family.n, "samples": req.samples,
              "s_max": req.s_max}
    if req.k1 is not None:
        inputs["k1"] = req.k1
    tolerances = tol.as_dict()
    verdict = derive_verdict("verify curve", maxima, {}, tolerances, roots)
    return build_report("verify curve", inputs, maxima, roots, verdict,
                        tolerances, warnings=[])


def handle_verify_torus(req: models.TorusVerifyRequest) -> dict:
    tol = _tolerances(req.tol)
    spec = LagrangianTorusSpec.from_squares(req.radii_sq)
    r, minimal = zhang_residual(spec, tol)
    residuals = {
        "zhang_system": float(np.linalg.norm(r)),
        "extrinsic_oracle": torus_extrinsic_oracle(spec, req.lam),
    }
    checks = {"minimal": minimal}
    inputs = {"radii_sq": [float(x) for x in req.radii_sq], "lambda": req.lam}
    tolerances = tol.as_dict()
    verdict = derive_verdict("verify torus", residuals, checks, tolerances, [])
    return build_report("verify torus", inputs, residuals, [], verdict,
                        tolerances, warnings=[], checks=checks)


def handle_verify_hypersurface(req: models.HypersurfaceVerifyRequest) -> dict:
    tol = _tolerances(req.tol)
    data = HypersurfaceData(
        n=req.n,
        mean_curvature_sq=req.mean_curvature_sq,
        second_ff_norm_sq=req.second_ff_norm_sq,
        c=req.c,
    )
    verdict_record = hypersurface_predicates(data, req.m_bar, tol)
    residuals = {"criterion_defect": verdict_record.criterion_defect}
    roots = [
        labeled("scalar_curvature", verdict_record.scalar_curvature),
        labeled("tangent_bound", verdict_record.tangent_bound),
        labeled("criterion_rhs", 2.0 * req.c * (req.n + 1)),
    ]
    checks = {
        "nonzero_mean_curvature": req.mean_curvature_sq > tol.minimality,
        "positive_holomorphic_curvature": req.c > 0.0,
        "tangent_bound_ok": verdict_record.tangent_bound_ok,
        "normal_bound_ok": verdict_record.normal_bound_ok,
    }
    warnings = []
    if verdict_record.nonexistence_note:
        warnings.append(verdict_record.nonexistence_note)
    inputs = {
        "n": req.n, "mean_curvature_sq": req.mean_curvature_sq,
        "second_ff_norm_sq": req.second_ff_norm_sq, "c": req.c,
        "m_bar": verdict_record.m_bar,
    }
    tolerances = tol.as_dict()
    verdict = derive_verdict("verify hypersurface", residuals, checks,
                             tolerances, roots)
    return build_report("verify hypersurface", inputs, residuals, roots, verdict,
                        tolerances, warnings=warnings, checks=checks)


def handle_solve_clifford(req: models.CliffordSolveRequest) -> dict:
    tol = _tolerances(req.tol)
    found = clifford_minus4_solve(req.m1, req.m2, tol)
    roots = []
    max_residual = 0.0
    for root in found:
        suffix = "_excluded_minimal" if root.minimal else ""
        roots.append(labeled(f"a_sq_{root.branch}{suffix}", root.a_sq))
        max_residual = max(max_residual, root.condition_residual)
    residuals = {"condition_residual_max": max_residual}
    inputs = {"m1": req.m1, "m2": req.m2}
    tolerances = tol.as_dict()
    verdict = derive_verdict("solve clifford", residuals, {}, tolerances, roots)
    return build_report("solve clifford", inputs, residuals, roots, verdict,
                        tolerances, warnings=[])


def handle_solve_zhang(req: models.ZhangSolveRequest) -> dict:
    tol = _tolerances(req.tol)
    specs = zhang_solve_two_block(req.n, tol)
    roots = []
    zmax = omax = 0.0
    for i, spec in enumerate(specs, start=1):
        roots.append(labeled(f"spec{i}_a1_sq", spec.radii[0] ** 2))
        roots.append(labeled(f"spec{i}_a_rest_sq", spec.radii[1] ** 2))
        r, _ = zhang_residual(spec, tol)
        zmax = max(zmax, float(np.linalg.norm(r)))
        omax = max(omax, torus_extrinsic_oracle(spec, -4.0))
    residuals = {"zhang_residual_max": zmax, "extrinsic_oracle_max": omax}
    inputs = {"n": req.n}
    tolerances = tol.as_dict()
    verdict = derive_verdict("solve zhang", residuals, {}, tolerances, roots)
    return build_report("solve zhang", inputs, residuals, roots, verdict,
                        tolerances, warnings=[])


def _helix_solution_apparatus(sol) -> FrenetApparatus:
    torsions = {
        (1, 2): sol.tau12, (1, 3): sol.tau13, (1, 4): sol.tau14,
        (2, 3): sol.tau23, (2, 4): sol.tau24, (3, 4): sol.tau34,
    }
    return FrenetApparatus(d=4, curvatures=(sol.k1, sol.k2, sol.k3),
                           torsions=torsions)


def handle_solve_helix(req: models.HelixSolveRequest) -> dict:
    tol = _tolerances(req.tol)
    inputs = {"alpha0": req.alpha0, "branch": req.branch}
    tolerances = tol.as_dict()
    try:
        sol = solve_order4_helix(req.alpha0, req.branch, tol)
    except NoSolutionError as exc:
        roots = [labeled("discriminant", exc.discriminant)]
        checks = {"no_real_solution": True}
        return build_report(
            "solve helix", inputs, {}, roots, VERDICT_NO_SOLUTION, tolerances,
            warnings=[ALPHA0_INTERVAL_WARNING, str(exc)], checks=checks,
        )

    s, c = np.sin(sol.alpha0), np.cos(sol.alpha0)
    k2sq = sol.k2**2
    residuals = {
        "k2_quartic_defect": abs(
            k2sq**2 + k2sq * s * s * (3 * c * c - 1.0) + 9.0 * s**4 * c * c
        ),
        "curvature_sum_defect": abs(sol.k1**2 + sol.k2**2 - (1.0 + 3.0 * c * c)),
        "torsion_product_defect": abs(sol.k2 * sol.k3 + 1.5 * np.sin(2.0 * sol.alpha0)),
        "cpn_bitension": cpn_curve_bitension(
            _helix_solution_apparatus(sol), sol.jE1_coefficients(), tol
        ).norm,
    }
    roots = [
        labeled("k1", sol.k1), labeled("k2", sol.k2), labeled("k3", sol.k3),
        labeled("tau12", sol.tau12), labeled("tau13", sol.tau13),
        labeled("tau14", sol.tau14), labeled("tau23", sol.tau23),
        labeled("tau24", sol.tau24), labeled("tau34", sol.tau34),
    ]
    verdict = derive_verdict("solve helix", residuals, {}, tolerances, roots)
    return build_report("solve helix", inputs, residuals, roots, verdict,
                        tolerances, warnings=[ALPHA0_INTERVAL_WARNING],
                        class_label=sol.class_label)


def handle_solve_sphere_bundle(req: models.SphereBundleSolveRequest) -> dict:
    tol = _tolerances(req.tol)
    tolerances = tol.as_dict()
    if req.a_sq is not None:
        record = sphere_bundle_analyze(req.p, req.a_sq, tol)
        residuals = {
            "biharmonic_residual": abs(record.biharmonic_residual),
            "minus4_residual": abs(record.minus4_residual),
        }
        roots = [labeled("mean_curvature_coef", record.mean_curvature_coef)]
        checks = {
            "minimal": record.minimal,
            "minimal_in_clifford_torus": record.minimal_in_clifford_torus,
            "proper_biharmonic_in_sphere": record.proper_biharmonic_in_sphere,
            "minus4_biharmonic": record.minus4_biharmonic,
            "projection_proper_biharmonic": record.projection_proper_biharmonic,
        }
        inputs = {"p": req.p, "a_sq": req.a_sq}
        verdict = derive_verdict("solve sphere-bundle", residuals, checks,
                                 tolerances, roots)
        return build_report("solve sphere-bundle", inputs, residuals, roots,
                            verdict, tolerances,
                            warnings=list(SPHERE_BUNDLE_WARNINGS), checks=checks)

    lo, hi = sphere_bundle_minus4_roots(req.p)
    located = locate_sphere_bundle_roots(req.p)
    location_defect = max(
        (min(abs(t - lo), abs(t - hi)) for t in located), default=1.0
    )
    residuals = {
        "minus4_at_roots_max": max(
            abs(sphere_bundle_analyze(req.p, t, tol).minus4_residual)
            for t in (lo, hi)
        ),
        "root_location_defect": location_defect,
    }
    roots = [labeled("a_sq_minus", lo), labeled("a_sq_plus", hi)]
    inputs = {"p": req.p}
    verdict = derive_verdict("solve sphere-bundle", residuals, {}, tolerances, roots)
    return build_report("solve sphere-bundle", inputs, residuals, roots, verdict,
                        tolerances, warnings=list(SPHERE_BUNDLE_WARNINGS))


def handle_classify_helix(req: models.HelixClassifyRequest) -> dict:
    tol = _tolerances(req.tol)
    result = classify_helix_cp2(req.k1, req.k2, req.k3, req.torsions, tol)
    residuals = {
        f"distance_{name}": value
        for name, value in sorted(result.distances.items())
    }
    roots = [labeled("mu", result.mu)]
    if result.nu is not None:
        roots.append(labeled("nu", result.nu))
    inputs = {"k1": req.k1, "k2": req.k2, "k3": req.k3,
              "torsions": [float(t) for t in req.torsions]}
    verdict = result.label if result.label else VERDICT_UNCLASSIFIED
    return build_report("classify helix", inputs, residuals, roots, verdict,
                        tol.as_dict(), warnings=[],
                        class_label=result.label or VERDICT_UNCLASSIFIED)


def handle_sample_curve(req: models.CurveSampleRequest) -> str:
    family = build_family(req.family, req.n, req.k1)
    dim = 2 * family.n + 2
    lines = ["s," + ",".join(f"x{i}" for i in range(1, dim + 1))]
    for i in range(req.count):
        s = i * req.ds
        pos = family.position(s)
        lines.append(",".join([fmt_float(s)] + [fmt_float(x) for x in pos]))
    return "\n".join(lines) + "\n"
