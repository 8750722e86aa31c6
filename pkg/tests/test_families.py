"""Explicit families, Gram conditions, the order-4 solver, the classifier."""

import numpy as np
import pytest

from bitension.curves import frenet_apparatus
from bitension.errors import (
    ConstraintViolationError,
    DomainError,
    NoSolutionError,
    StructuralError,
)
from bitension.families import (
    COS_SQ_DISCRIMINANT_MAX,
    COS_SQ_ENDPOINT_NOMINAL,
    admissible_alpha0_samples,
    classify_helix_cp2,
    gram_condition_max_defect,
    gram_conditions,
    helix_discriminant,
    lift_curve_tau12_pm1,
    lift_curve_tau12_zero,
    solve_order4_helix,
)


class TestUnitTorsionLift:
    def test_on_sphere_unit_speed(self, rng):
        family = lift_curve_tau12_pm1()
        for s in rng.uniform(0.0, 2 * np.pi, size=100):
            jet = family.jet(float(s))
            assert abs(np.linalg.norm(jet.position) - 1.0) < 1e-14
            assert abs(np.linalg.norm(jet.velocity) - 1.0) < 1e-14

    def test_second_derivative_norm(self):
        # <gamma'', gamma''> = 1 + k1^2 = 5
        jet = lift_curve_tau12_pm1().jet(0.8)
        assert float(np.dot(jet.derivs[2], jet.derivs[2])) == pytest.approx(
            5.0, abs=1e-12
        )

    def test_bad_e3_rejected(self):
        e1 = np.array([1.0, 0.0, 0.0, 0.0])
        with pytest.raises(DomainError):
            lift_curve_tau12_pm1(n=1, e1=e1, e3=np.array([0.0, 1.0, 0.0, 0.0]))

    def test_custom_axes_accepted(self):
        e1 = np.array([0.0, 0.0, 1.0, 0.0, 0.0, 0.0])
        e3 = np.array([0.0, 0.0, 0.0, 0.0, 1.0, 0.0])
        family = lift_curve_tau12_pm1(n=2, e1=e1, e3=e3)
        app = frenet_apparatus(family, 0.3)
        assert app.curvature(1) == pytest.approx(2.0, abs=1e-10)


class TestZeroTorsionLifts:
    def test_circle_apparatus(self):
        app = frenet_apparatus(lift_curve_tau12_zero("circle"), 0.45)
        assert app.d == 2
        assert app.curvature(1) == pytest.approx(1.0, abs=1e-8)
        assert abs(app.torsion(1, 2)) < 1e-8

    def test_helix_complementary_curvature(self):
        app = frenet_apparatus(lift_curve_tau12_zero("helix", k1=0.6), 0.0)
        assert app.curvature(1) == pytest.approx(0.6, abs=1e-8)
        assert app.curvature(2) == pytest.approx(0.8, abs=1e-8)

    def test_helix_boundary_parameter_stays_finite(self):
        family = lift_curve_tau12_zero("helix", k1=1.0 - 1e-6)
        jet = family.jet(2.0)
        assert all(np.all(np.isfinite(d)) for d in jet.derivs)

    def test_parameter_domain(self):
        for bad in (0.0, 1.0, -0.3, 1.7):
            with pytest.raises(DomainError):
                lift_curve_tau12_zero("helix", k1=bad)
        with pytest.raises(DomainError):
            lift_curve_tau12_zero("spiral")

    def test_circle_needs_room(self):
        with pytest.raises(DomainError):
            lift_curve_tau12_zero("circle", n=1)


class TestGramConditions:
    def test_all_ten_within_1e12(self):
        family = lift_curve_tau12_pm1()
        conditions = gram_conditions(family)
        assert len(conditions) == 10
        for label, value, target in conditions:
            assert abs(value - target) <= 1e-12, label

    def test_max_defect_helper(self):
        assert gram_condition_max_defect(lift_curve_tau12_pm1()) <= 1e-12

    def test_requires_trig_constants(self):
        family = lift_curve_tau12_zero("circle")  # one nonzero frequency only
        with pytest.raises(StructuralError):
            gram_conditions(family)


class TestOrder4Solver:
    def test_frozen_branch_values(self):
        # frozen from the quartic-in-k2^2 oracle at cos(alpha0) = -0.1
        alpha0 = np.arccos(-0.1)
        plus = solve_order4_helix(alpha0, "plus")
        minus = solve_order4_helix(alpha0, "minus")
        assert plus.k2**2 == pytest.approx(0.8574231404433663, abs=1e-12)
        assert minus.k2**2 == pytest.approx(0.10287685955663366, abs=1e-12)
        for sol in (plus, minus):
            s, c = np.sin(alpha0), np.cos(alpha0)
            quartic = (sol.k2**4 + sol.k2**2 * s * s * (3 * c * c - 1.0)
                       + 9.0 * s**4 * c * c)
            assert abs(quartic) <= 1e-12

    def test_curvature_sum_identity(self):
        for alpha0 in admissible_alpha0_samples(12):
            for branch in ("plus", "minus"):
                sol = solve_order4_helix(float(alpha0), branch)
                c = np.cos(sol.alpha0)
                assert sol.k1**2 + sol.k2**2 == pytest.approx(
                    1.0 + 3.0 * c * c, abs=1e-10
                )
                assert sol.k2 * sol.k3 == pytest.approx(
                    -1.5 * np.sin(2.0 * sol.alpha0), abs=1e-10
                )

    def test_no_solution_discriminant(self):
        alpha0 = np.arccos(-0.5)
        assert helix_discriminant(alpha0) < 0.0
        with pytest.raises(NoSolutionError) as err:
            solve_order4_helix(alpha0, "plus")
        assert err.value.discriminant == pytest.approx(
            9.0 / 16.0 - 42.0 / 4.0 + 1.0, abs=1e-12
        )

    def test_degenerate_angles(self):
        with pytest.raises(DomainError):
            solve_order4_helix(np.pi, "plus")       # sin = 0
        with pytest.raises(DomainError):
            solve_order4_helix(np.pi / 2.0, "plus")  # cos = 0

    def test_wrong_quadrant_rejected_by_positivity(self):
        # cos > 0 and sin > 0 makes sin(2 alpha0) > 0, so k3 < 0
        alpha0 = np.arccos(0.1)
        assert helix_discriminant(alpha0) > 0.0
        with pytest.raises(ConstraintViolationError):
            solve_order4_helix(alpha0, "plus")

    def test_torsion_identities(self):
        for alpha0 in admissible_alpha0_samples(10):
            sol = solve_order4_helix(float(alpha0), "minus")
            nu = (sol.k1 - sol.k3) / np.hypot(sol.k2, sol.k1 - sol.k3)
            assert nu == pytest.approx(abs(sol.tau12), abs=1e-9)
            assert sol.k2 / np.hypot(sol.k2, sol.k1 - sol.k3) == pytest.approx(
                abs(sol.tau23), abs=1e-9
            )
            # k1 - k3 = -k2 cot(alpha0) > 0 in both regimes
            c, s = np.cos(sol.alpha0), np.sin(sol.alpha0)
            assert sol.k1 - sol.k3 == pytest.approx(-sol.k2 * c / s, abs=1e-10)
            assert sol.k1 - sol.k3 > 0.0

    def test_interval_constants(self):
        # the discriminant bound is strictly tighter than the nominal endpoint
        assert COS_SQ_DISCRIMINANT_MAX < COS_SQ_ENDPOINT_NOMINAL


class TestClassifier:
    def test_solver_outputs_split_by_torsion_sign(self):
        for alpha0 in admissible_alpha0_samples(20):
            for branch in ("plus", "minus"):
                sol = solve_order4_helix(float(alpha0), branch)
                expected = "I3" if sol.tau12 < 0.0 else "I4"
                assert sol.class_label == expected

    def test_primed_class_for_equal_curvatures(self):
        result = classify_helix_cp2(1.0, 0.7, 1.0, [0, 0, -1.0, 1.0, 0, 0])
        assert result.label == "I3'"
        result = classify_helix_cp2(1.0, 0.7, 1.0, [0, 0, 1.0, -1.0, 0, 0])
        assert result.label == "I4'"

    def test_mu_pattern_classes(self):
        k1, k2, k3 = 1.2, 0.5, 0.3
        mu = (k1 + k3) / np.hypot(k2, k1 + k3)
        tmu = k2 * mu / (k1 + k3)
        result = classify_helix_cp2(k1, k2, k3, [mu, 0, tmu, tmu, 0, mu])
        assert result.label == "I1"
        result = classify_helix_cp2(k1, k2, k3, [-mu, 0, -tmu, -tmu, 0, -mu])
        assert result.label == "I2"

    def test_unclassified_returns_distances(self):
        result = classify_helix_cp2(1.2, 0.5, 0.3, [0.9, 0.1, 0.0, 0.2, 0.0, -0.4])
        assert result.label is None
        assert set(result.distances) == {"I1", "I2", "I3", "I4"}
        assert min(result.distances.values()) > 1e-6

    def test_positive_curvatures_required(self):
        with pytest.raises(DomainError):
            classify_helix_cp2(0.0, 1.0, 1.0, [0] * 6)

    def test_torsion_length_guard(self):
        with pytest.raises(StructuralError):
            classify_helix_cp2(1.0, 1.0, 2.0, [0] * 5)
