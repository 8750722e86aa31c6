"""Complex structure, Hopf field, and tangent projection."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bitension.ambient import (
    hopf_vector_field,
    horizontality_defect,
    j_apply,
    sphere_tangent_project,
    standard_complex_axis,
)
from bitension.errors import DataError, DomainError, StructuralError
from bitension.families import lift_curve_tau12_pm1

from conftest import random_unit


@st.composite
def ambient_vectors(draw, unit=False):
    n = draw(st.integers(min_value=1, max_value=6))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2 * n + 2)
    if unit:
        v = v / np.linalg.norm(v)
    return v


def test_j_apply_block_formula():
    assert np.array_equal(j_apply([1.0, 0.0, 0.0, 0.0]), [0.0, 1.0, 0.0, 0.0])


def test_j_apply_squares_to_minus_identity_exactly():
    v = np.array([0.3, -1.2, 0.5, 2.0])
    assert np.array_equal(j_apply(j_apply(v)), -v)


@given(ambient_vectors())
def test_j_apply_preserves_inner_products(v):
    rng = np.random.default_rng(int(abs(v[0]) * 1e6) + 7)
    w = rng.normal(size=v.size)
    lhs = float(np.dot(j_apply(v), j_apply(w)))
    rhs = float(np.dot(v, w))
    assert lhs == pytest.approx(rhs, abs=1e-14 * max(1.0, abs(rhs)))


@given(ambient_vectors())
def test_j_of_v_is_orthogonal_to_v(v):
    scale = float(np.dot(v, v))
    assert abs(float(np.dot(j_apply(v), v))) <= 1e-14 * max(1.0, scale)


def test_hopf_field_at_first_axis():
    assert np.array_equal(hopf_vector_field([1.0, 0.0, 0.0, 0.0]),
                          [0.0, -1.0, 0.0, 0.0])


def test_hopf_field_unit_and_orthogonal(rng):
    for dim in (4, 6, 10):
        p = random_unit(rng, dim)
        xi = hopf_vector_field(p)
        assert abs(np.linalg.norm(xi) - 1.0) < 1e-14
        assert abs(np.dot(xi, p)) < 1e-14


def test_hopf_field_rejects_off_sphere_points():
    with pytest.raises(DomainError) as err:
        hopf_vector_field([2.0, 0.0, 0.0, 0.0])
    assert err.value.defect == pytest.approx(1.0)


def test_projection_kills_radial_direction(rng):
    p = random_unit(rng, 6)
    assert np.linalg.norm(sphere_tangent_project(p, p)) < 1e-15


def test_projection_fixes_tangent_vectors(rng):
    p = random_unit(rng, 6)
    t = rng.normal(size=6)
    t = t - np.dot(t, p) * p
    assert np.allclose(sphere_tangent_project(p, t), t, atol=1e-14)


def test_projection_idempotent_and_orthogonal(rng):
    for _ in range(20):
        p = random_unit(rng, 8)
        v = rng.normal(size=8)
        once = sphere_tangent_project(p, v)
        twice = sphere_tangent_project(p, once)
        assert np.allclose(once, twice, atol=1e-14)
        assert abs(np.dot(once, p)) <= 1e-14 * max(1.0, np.linalg.norm(v))


def test_projection_dimension_mismatch():
    with pytest.raises(StructuralError):
        sphere_tangent_project([1.0, 0, 0, 0], [1.0, 0, 0, 0, 0, 0])


def test_horizontality_of_vertical_field(rng):
    p = random_unit(rng, 6)
    xi = hopf_vector_field(p)
    assert horizontality_defect(p, xi) == pytest.approx(1.0, abs=1e-14)


def test_horizontality_of_lift_family():
    family = lift_curve_tau12_pm1()
    for s in np.linspace(0.0, 6.0, 17):
        jet = family.jet(s)
        assert abs(horizontality_defect(jet.position, jet.velocity)) < 1e-12


def test_horizontality_of_zero_vector(rng):
    p = random_unit(rng, 4)
    assert horizontality_defect(p, np.zeros(4)) == 0.0


def test_horizontality_rejects_non_tangent(rng):
    p = random_unit(rng, 4)
    with pytest.raises(DomainError):
        horizontality_defect(p, p)


def test_non_finite_vectors_rejected():
    with pytest.raises(DataError):
        j_apply([np.nan, 0.0, 0.0, 0.0])


def test_odd_length_rejected():
    with pytest.raises(StructuralError):
        j_apply([1.0, 0.0, 0.0])


def test_standard_complex_axis_layout():
    e2 = standard_complex_axis(2, 2)
    assert e2.size == 6 and e2[2] == 1.0 and np.count_nonzero(e2) == 1
    with pytest.raises(DomainError):
        standard_complex_axis(4, 2)
