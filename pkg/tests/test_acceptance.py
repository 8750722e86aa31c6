"""Acceptance suite: every criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail
line per criterion.  Each criterion is self-contained and pins its own
tolerances; nothing here is calibrated after the fact.
"""

import functools
import json

import numpy as np
import pytest
import sympy

from bitension.ambient import horizontality_defect
from bitension.biharmonic import (
    helix_residual_grid,
    lambda_biharmonic_residual,
    quartic_ode_residual,
    sphere_curve_bitension,
    tension_coefficients,
)
from bitension.clifford import (
    HypersurfaceData,
    LagrangianTorusSpec,
    ProductSphereConfig,
    clifford_minus4_solve,
    clifford_tension_bitension,
    hypersurface_predicates,
    locate_sphere_bundle_roots,
    sphere_bundle_analyze,
    sphere_bundle_minus4_roots,
    torus_extrinsic_oracle,
    zhang_residual,
    zhang_solve_two_block,
)
from bitension.cli import run as cli_run
from bitension.curves import frenet_apparatus
from bitension.families import (
    admissible_alpha0_samples,
    classify_helix_cp2,
    gram_conditions,
    lift_curve_tau12_pm1,
    lift_curve_tau12_zero,
    solve_order4_helix,
)
from bitension.reports import check_report


def criterion(num, description):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {num:02d} ({description}): FAIL")
                raise
            print(f"criterion {num:02d} ({description}): PASS")
        return wrapper
    return decorate


@criterion(1, "unit-torsion circle lift")
def test_criterion_01_unit_torsion_lift():
    family = lift_curve_tau12_pm1()
    for s in np.linspace(0.0, 2.0 * np.pi, 100):
        jet = family.jet(float(s))
        assert quartic_ode_residual(jet) <= 1e-9
        assert abs(horizontality_defect(jet.position, jet.velocity)) <= 1e-10
        app = frenet_apparatus(family, float(s))
        assert app.d == 3
        assert abs(app.curvature(1) - 2.0) <= 1e-8
        assert abs(app.curvature(2) - 1.0) <= 1e-8
        lam = lambda_biharmonic_residual(
            sphere_curve_bitension(app), tension_coefficients(app), -4.0
        )
        assert lam.norm <= 1e-8


@criterion(2, "torsion-free circle and helix lifts")
def test_criterion_02_torsion_free_lifts():
    circle = lift_curve_tau12_zero("circle")
    for s in np.linspace(0.0, 2.0 * np.pi, 25):
        app = frenet_apparatus(circle, float(s))
        assert abs(app.curvature(1) - 1.0) <= 1e-8
        assert sphere_curve_bitension(app).norm <= 1e-8
    for kappa in (0.2, 0.5, 0.8):
        helix = lift_curve_tau12_zero("helix", k1=kappa)
        for s in np.linspace(0.0, 2.0 * np.pi, 25):
            app = frenet_apparatus(helix, float(s))
            assert abs(app.curvature(1) ** 2 + app.curvature(2) ** 2 - 1.0) <= 1e-7
            assert sphere_curve_bitension(app).norm <= 1e-8


@criterion(3, "ten Gram conditions of the lift")
def test_criterion_03_gram_conditions():
    conditions = gram_conditions(lift_curve_tau12_pm1())
    assert len(conditions) == 10
    for label, value, target in conditions:
        assert abs(value - target) <= 1e-12, label


@criterion(4, "Clifford-type radius solver")
def test_criterion_04_clifford_solver():
    sqrt2 = np.sqrt(2.0)

    def assert_roots(m1, m2, expected):
        roots = clifford_minus4_solve(m1, m2)
        values = sorted(r.a_sq for r in roots if not r.minimal)
        assert np.allclose(values, sorted(expected), atol=1e-12)
        for r in roots:
            assert r.condition_residual <= 1e-11

    assert_roots(1, 1, [(2.0 - sqrt2) / 4.0, (2.0 + sqrt2) / 4.0])
    assert_roots(1, 3, [(5.0 - np.sqrt(13.0)) / 12.0, (5.0 + np.sqrt(13.0)) / 12.0])
    for p in range(0, 11):
        m = 2 * p + 1
        s = np.sqrt(2.0 * p + 2.0)
        assert_roots(m, m, [(2 * p + 2 - s) / (4 * p + 4), (2 * p + 2 + s) / (4 * p + 4)])
    for p in (1, 3, 5):
        s = np.sqrt(32.0 * p + 25.0)
        assert_roots(2 * p + 1, 2 * p,
                     [(8 * p + 7 - s) / (16 * p + 12), (8 * p + 7 + s) / (16 * p + 12)])

    # the excluded-minimal filter fires on the balanced configuration
    balanced = ProductSphereConfig(p=1, q=1, a=np.sqrt(0.5), b=np.sqrt(0.5),
                                   m1=2, m2=2)
    tension, _ = clifford_tension_bitension(balanced)
    assert abs(tension) <= 1e-9  # below the minimality tolerance: excluded
    for m1, m2 in ((1, 1), (1, 3), (3, 3), (7, 6)):
        assert all(not r.minimal for r in clifford_minus4_solve(m1, m2))


@criterion(5, "tangent sphere bundle residuals")
def test_criterion_05_sphere_bundle():
    for p in range(1, 11):
        lo, hi = sphere_bundle_minus4_roots(p)
        grid = np.linspace(1e-4, 1.0 - 1e-4, 10_000)
        # refine the grid near both roots
        refined = np.concatenate([
            grid,
            lo + np.linspace(-5e-5, 5e-5, 101),
            hi + np.linspace(-5e-5, 5e-5, 101),
            [lo, hi],
        ])
        t = refined
        ratio = t / (1.0 - t) + (1.0 - t) / t
        minus4 = 4.0 * p + 4.0 - 2.0 * p * ratio
        bih = 4.0 * p - 2.0 * p * ratio
        coef = (2.0 * p / (4.0 * p + 1.0)) * (2.0 * t - 1.0) / t

        zeros = np.abs(minus4) <= 1e-12
        assert zeros.any()
        assert np.all(np.minimum(np.abs(t[zeros] - lo), np.abs(t[zeros] - hi)) <= 1e-4)
        # never proper-biharmonic in the sphere: bih = 0 only where tension = 0
        assert not np.any((np.abs(bih) <= 1e-9) & (np.abs(coef) > 1e-9))

        located = sorted(locate_sphere_bundle_roots(p))
        assert np.allclose(located, [lo, hi], atol=1e-12)
        for root in (lo, hi):
            verdict = sphere_bundle_analyze(p, root)
            assert abs(verdict.minus4_residual) <= 1e-12
            assert not verdict.proper_biharmonic_in_sphere
            assert not verdict.projection_proper_biharmonic
        # the analyze route agrees with the vectorized grid everywhere sampled
        for a_sq in (0.05, 0.3, 0.5, lo, 0.9):
            verdict = sphere_bundle_analyze(p, a_sq)
            assert not verdict.proper_biharmonic_in_sphere
            assert not verdict.projection_proper_biharmonic
            assert verdict.minimal_in_clifford_torus


@criterion(6, "circle-product system and oracle agreement")
def test_criterion_06_zhang():
    r41 = np.sqrt(41.0)
    closed_form = [
        [(9.0 + r41) / 20.0, (11.0 - r41) / 40.0, (11.0 - r41) / 40.0],
        [(9.0 - r41) / 20.0, (11.0 + r41) / 40.0, (11.0 + r41) / 40.0],
    ]
    for squares in closed_form:
        spec = LagrangianTorusSpec.from_squares(squares)
        r, minimal = zhang_residual(spec)
        assert np.linalg.norm(r) <= 1e-12 and not minimal
        assert torus_extrinsic_oracle(spec, -4.0) <= 1e-10

    specs = zhang_solve_two_block(2)
    assert len(specs) == 2
    solved = sorted(spec.radii[0] ** 2 for spec in specs)
    assert np.allclose(solved, sorted(s[0] for s in closed_form), atol=1e-12)

    rng = np.random.default_rng(41)
    for _ in range(1000):
        raw = rng.uniform(0.2, 1.0, size=3)
        spec = LagrangianTorusSpec.from_squares(raw**2 / np.sum(raw**2))
        r, _ = zhang_residual(spec)
        assert (np.linalg.norm(r) <= 1e-10) == (torus_extrinsic_oracle(spec, -4.0) <= 1e-10)


@criterion(7, "order-4 helix solver and classifier")
def test_criterion_07_helix_solver():
    from bitension.biharmonic import cpn_curve_bitension
    from bitension.curves import FrenetApparatus

    alphas = admissible_alpha0_samples(100)
    count = 0
    for alpha0 in alphas:
        for branch in ("plus", "minus"):
            sol = solve_order4_helix(float(alpha0), branch)
            s, c = np.sin(sol.alpha0), np.cos(sol.alpha0)
            k2sq = sol.k2**2
            assert abs(k2sq**2 + k2sq * s * s * (3 * c * c - 1.0)
                       + 9.0 * s**4 * c * c) <= 1e-12
            assert abs(sol.k1**2 + sol.k2**2 - (1.0 + 3.0 * c * c)) <= 1e-10
            assert abs(sol.k2 * sol.k3 + 1.5 * np.sin(2.0 * sol.alpha0)) <= 1e-10
            app = FrenetApparatus(
                d=4, curvatures=(sol.k1, sol.k2, sol.k3),
                torsions={(1, 2): sol.tau12, (1, 3): sol.tau13,
                          (1, 4): sol.tau14, (2, 3): sol.tau23,
                          (2, 4): sol.tau24, (3, 4): sol.tau34},
            )
            assert cpn_curve_bitension(app, sol.jE1_coefficients()).norm <= 1e-10
            label = classify_helix_cp2(
                sol.k1, sol.k2, sol.k3, sol.torsion_vector()
            ).label
            assert label == ("I3" if sol.tau12 < 0.0 else "I4")
            count += 1
    assert count == 200


@criterion(8, "characterization sweeps")
def test_criterion_08_sweeps():
    k1 = np.arange(1, 3001) * 1e-3
    k2 = np.arange(1, 2001) * 1e-3

    bitension = helix_residual_grid("bitension", k1, k2)
    zeros = np.argwhere(bitension <= 1e-12)
    assert len(zeros) > 0
    for i, j in zeros:
        assert abs(np.hypot(k1[i], k2[j]) - 1.0) <= 1e-3

    minus4 = helix_residual_grid("minus4-lift", k1, k2)
    zeros = np.argwhere(minus4 <= 1e-12)
    assert zeros.shape[0] >= 1
    for i, j in zeros:
        assert abs(k1[i] - 2.0) <= 1e-3 and abs(k2[j] - 1.0) <= 1e-3


@criterion(9, "hypersurface predicates vs symbolic substitution")
def test_criterion_09_hypersurface_table():
    n_s, h_s, c_s, m_s = sympy.symbols("n h c m", positive=True)
    scalar_formula = 4 * n_s**2 - 2 * n_s - 4 + (2 * n_s - 1) ** 2 * h_s
    rhs_formula = 2 * c_s * (n_s + 1)
    tangent_bound_formula = (m_s + 3) / m_s

    rows = []
    for n in (1, 2, 3, 4, 5):
        for c, h in ((sympy.Integer(1), sympy.Rational(1, 4)),
                     (sympy.Integer(1), sympy.Integer(2)),
                     (sympy.Rational(1, 2), sympy.Rational(3, 4)),
                     (sympy.Integer(-1), sympy.Rational(1, 2))):
            rows.append((n, c, h))
    assert len(rows) == 20

    for n, c, h in rows:
        rhs = rhs_formula.subs({c_s: c, n_s: n})
        for exact_match in (True, False):
            if rhs > 0:
                b_sq = rhs if exact_match else rhs + sympy.Rational(1, 10)
            else:
                # nonpositive curvature: any admissible |B|^2 misses the rhs
                b_sq = sympy.Integer(1) if exact_match else sympy.Rational(11, 10)
                exact_match = False
            data = HypersurfaceData(
                n=n, mean_curvature_sq=float(h),
                second_ff_norm_sq=float(b_sq), c=float(c),
            )
            verdict = hypersurface_predicates(data)
            expected_scalar = float(scalar_formula.subs({n_s: n, h_s: h}))
            assert verdict.scalar_curvature == pytest.approx(expected_scalar, abs=1e-12)
            expected_defect = float(abs(b_sq - rhs))
            assert verdict.criterion_defect == pytest.approx(expected_defect, abs=1e-12)
            expected_proper = bool(c > 0) and exact_match
            assert verdict.proper_biharmonic == expected_proper
            m = 2 * n - 1
            expected_tangent = float(tangent_bound_formula.subs({m_s: m}))
            assert verdict.tangent_bound == pytest.approx(expected_tangent, abs=1e-14)
            assert verdict.tangent_bound_ok == (float(h) <= expected_tangent + 1e-9)
            assert verdict.normal_bound_ok == (float(h) <= 1.0 + 1e-9)
            if c <= 0:
                assert verdict.nonexistence_note is not None


CLI_INVOCATIONS = [
    ["verify", "curve", "--family", "tau12-pm1", "--samples", "100", "--tol", "1e-9"],
    ["verify", "curve", "--family", "tau12-zero-circle", "--samples", "50"],
    ["verify", "curve", "--family", "tau12-zero-helix", "--k1", "0.2", "--samples", "50"],
    ["verify", "curve", "--family", "tau12-zero-helix", "--k1", "0.5", "--samples", "50"],
    ["verify", "curve", "--family", "tau12-zero-helix", "--k1", "0.8", "--samples", "50"],
    ["solve", "clifford", "--m1", "1", "--m2", "1"],
    ["solve", "clifford", "--m1", "1", "--m2", "3"],
    ["solve", "clifford", "--m1", "5", "--m2", "5"],
    ["solve", "clifford", "--m1", "7", "--m2", "6"],
    ["solve", "sphere-bundle", "--p", "1"],
    ["solve", "sphere-bundle", "--p", "3"],
    ["solve", "sphere-bundle", "--p", "1", "--a-sq", "0.78867513459481275"],
    ["solve", "zhang", "--n", "2"],
    ["verify", "torus", "--radii-sq",
     "0.7701562118716424,0.11492189406417878,0.11492189406417878"],
    ["solve", "helix", "--alpha0", "1.62", "--branch", "plus"],
    ["solve", "helix", "--alpha0", "1.62", "--branch", "minus"],
    ["solve", "helix", "--alpha0", "4.79", "--branch", "plus"],
    # solver output for alpha0 = 1.62, plus branch: class I4
    ["classify", "helix", "--k1", "0.19824032175079837", "--k2",
     "0.98384852484841112", "--k3", "0.14979225652685696",
     "--torsions=0.049183821914170554,0,-0.99878974347052396,"
     "0.99878974347052396,0,-0.049183821914170554"],
    ["verify", "hypersurface", "--n", "2", "--mean-curvature-sq", "0.25",
     "--second-ff-norm-sq", "6"],
    ["sample", "curve", "--family", "tau12-pm1", "--ds", "0.0628", "--count", "100"],
]


@criterion(10, "CLI determinism and report consistency")
def test_criterion_10_cli():
    expected_verdicts = {
        "verify curve tau12-pm1": "lambda-biharmonic(-4)",
        "verify curve tau12-zero-circle": "proper-biharmonic",
        "verify curve tau12-zero-helix": "proper-biharmonic",
        "solve clifford": "proper-biharmonic",
        "solve zhang": "proper-biharmonic",
        "verify torus": "proper-biharmonic",
        "solve helix": "proper-biharmonic",
        "verify hypersurface": "proper-biharmonic",
    }
    for argv in CLI_INVOCATIONS:
        first = cli_run(list(argv))
        second = cli_run(list(argv))
        assert first == second, f"nondeterministic output for {argv}"
        if argv[0] == "sample":
            assert first.startswith("s,x1,")
            continue
        report = json.loads(first)
        check_report(report)
        key = " ".join(argv[:2])
        if argv[:2] == ["verify", "curve"]:
            key = f"verify curve {argv[3]}"
        if key in expected_verdicts:
            assert report["verdict"] == expected_verdicts[key], argv
