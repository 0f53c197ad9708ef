import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from licstruct.lie_core import LieAlgebraId, quaternion_to_rotation, structure_constants
from licstruct.manifold import (
    OffManifoldError,
    SpherePoint,
    Su2Su2ManifoldPoint,
    U2ManifoldPoint,
    component_of,
    fd_jacobian,
    hopf_lift,
    hopf_project,
    numerical_rank,
    random_su2su2_point,
    random_u2_point,
    su2su2_local_coordinates,
    su2su2_local_map,
    su2su2_matrix_to_point,
    su2su2_point_to_matrix,
    su2su2_retract,
    u2_local_map,
    u2_matrix_to_point,
    u2_point_to_matrix,
    u2_retract,
)
from licstruct.torsion import is_complex_structure

U2 = structure_constants(LieAlgebraId.u2())
SU2SU2 = structure_constants(LieAlgebraId.su2_power(2))

xis = st.floats(-10, 10, allow_nan=False)
vec3 = arrays(float, 3, elements=st.floats(-3, 3)).filter(lambda v: 0.3 < np.linalg.norm(v))
unit3 = vec3.map(SpherePoint.normalized)
etas = st.floats(0.2, 5).flatmap(lambda e: st.sampled_from([e, -e]))


def _scaled_tol(j):
    return 1e-12 * max(1.0, float(np.abs(j).max()) ** 2)


@given(xis, vec3, st.sampled_from([1, -1]))
def test_u2_family_is_integrable_and_retracts(xi, a, sign):
    p = U2ManifoldPoint(xi, tuple(a), sign)
    j = u2_point_to_matrix(p)
    assert is_complex_structure(U2, j, tol=_scaled_tol(j))
    back = u2_matrix_to_point(j)
    assert back.sign == sign
    assert back.xi == pytest.approx(xi, abs=1e-12)
    assert np.allclose(back.a, a, atol=1e-12)


@given(xis, etas, unit3, unit3)
def test_su2su2_family_is_integrable_and_retracts(xi, eta, s1, s2):
    p = Su2Su2ManifoldPoint(xi, eta, s1, s2)
    j = su2su2_point_to_matrix(p)
    assert is_complex_structure(SU2SU2, j, tol=_scaled_tol(j))
    back = su2su2_matrix_to_point(j)
    assert back.xi == pytest.approx(xi, abs=1e-10)
    assert back.eta == pytest.approx(eta, rel=1e-12)
    assert np.allclose(back.s1.as_array(), s1.as_array(), atol=1e-12)
    assert np.allclose(back.s2.as_array(), s2.as_array(), atol=1e-12)


def test_u2_retraction_is_a_retraction(rng):
    for _ in range(50):
        j = u2_point_to_matrix(random_u2_point(rng))
        near = j + 1e-3 * rng.normal(size=(4, 4))
        image = u2_point_to_matrix(u2_retract(near))
        assert is_complex_structure(U2, image, tol=_scaled_tol(image))
        assert np.allclose(u2_point_to_matrix(u2_retract(image)), image, atol=1e-10)


def test_su2su2_retraction_is_a_retraction(rng):
    for _ in range(50):
        p = random_su2su2_point(rng)
        near = su2su2_point_to_matrix(p) + 1e-3 * rng.normal(size=(6, 6))
        eps = 1 if p.eta > 0 else -1
        image = su2su2_point_to_matrix(su2su2_retract(near, eps))
        assert is_complex_structure(SU2SU2, image, tol=_scaled_tol(image))


def test_off_manifold_inputs_raise():
    with pytest.raises(OffManifoldError) as err:
        u2_matrix_to_point(np.eye(4))
    assert err.value.residual > 0
    with pytest.raises(OffManifoldError):
        su2su2_matrix_to_point(np.eye(6))
    j = u2_point_to_matrix(U2ManifoldPoint(0.5, (1.0, 0.0, 0.0)))
    j[0, 0] += 1e-4
    with pytest.raises(OffManifoldError):
        u2_matrix_to_point(j)


def test_components(rng):
    for sign in (1, -1):
        j = u2_point_to_matrix(U2ManifoldPoint(0.3, (0.0, 0.0, 2.0), sign))
        assert component_of(LieAlgebraId.u2(), j) == sign
    p = random_su2su2_point(rng)
    assert component_of(LieAlgebraId.su2_power(2), su2su2_point_to_matrix(p)) == np.sign(p.eta)


@given(unit3)
def test_hopf_lift_is_a_section(t):
    q = hopf_lift(t)
    assert np.linalg.norm(q) == pytest.approx(1.0)
    assert np.allclose(hopf_project(q), t.as_array(), atol=1e-12)
    assert np.allclose(quaternion_to_rotation(q)[:, 2], t.as_array(), atol=1e-12)


def test_hopf_lift_reference_points():
    assert np.array_equal(hopf_lift([0.0, 0.0, 1.0]), [1.0, 0.0, 0.0, 0.0])
    assert np.array_equal(hopf_lift([0.0, 0.0, -1.0]), [0.0, 0.0, 0.0, 1.0])
    q = hopf_lift([1.0, 0.0, 0.0])
    assert np.allclose(q, [1 / math.sqrt(2), 0.0, -1 / math.sqrt(2), 0.0])
    with pytest.raises(ValueError):
        hopf_lift([1.0, 1.0, 0.0])


def test_local_ranks(rng):
    for _ in range(20):
        p = random_u2_point(rng)
        x = np.array([p.xi, *p.a]) if p.sign > 0 else None
        if x is not None:
            assert numerical_rank(fd_jacobian(u2_local_map, x)) == 4
        q = random_su2su2_point(rng)
        assert numerical_rank(fd_jacobian(su2su2_local_map, su2su2_local_coordinates(q))) == 6


def test_point_validation():
    with pytest.raises(ValueError):
        SpherePoint(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        U2ManifoldPoint(0.0, (0.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        Su2Su2ManifoldPoint(0.0, 0.0, SpherePoint(0, 0, 1), SpherePoint(0, 0, 1))
