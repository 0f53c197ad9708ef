from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from licstruct.lie_core import (
    Automorphism,
    LieAlgebraId,
    assemble_automorphism,
    bracket,
    cycle_type,
    is_automorphism,
    is_rotation,
    permutation_matrix,
    quaternion_to_rotation,
    random_automorphism,
    structure_constants,
)

ALGEBRAS = [
    LieAlgebraId.su2(),
    LieAlgebraId.u2(),
    LieAlgebraId.su2_power(2),
    LieAlgebraId.u2_power(2),
    LieAlgebraId.su2_power(3),
]

finite = st.floats(-10, 10, allow_nan=False)
quats = arrays(float, 4, elements=finite).filter(lambda q: np.linalg.norm(q) > 1e-3)


def test_su2_brackets_are_cyclic():
    sc = structure_constants(LieAlgebraId.su2())
    e = np.eye(3)
    assert np.array_equal(bracket(sc, e[0], e[1]), e[2])
    assert np.array_equal(bracket(sc, e[1], e[2]), e[0])
    assert np.array_equal(bracket(sc, e[2], e[0]), e[1])


def test_u2_center_commutes_with_everything():
    sc = structure_constants(LieAlgebraId.u2())
    for k in range(4):
        assert not bracket(sc, np.eye(4)[3], np.eye(4)[k]).any()


@pytest.mark.parametrize("alg", ALGEBRAS, ids=str)
def test_structure_constants_are_lie(alg):
    sc = structure_constants(alg)
    assert sc.dim == alg.dim
    assert sc.is_antisymmetric()
    if alg.dim <= 8:
        assert sc.satisfies_jacobi()
    assert all(isinstance(v, Fraction) for *_, v in sc.nonzero())


def test_factors_do_not_interact():
    alg = LieAlgebraId.u2_power(2)
    sc = structure_constants(alg)
    for i in alg.factor_indices(0):
        for j in alg.factor_indices(1):
            assert not bracket(sc, np.eye(8)[i], np.eye(8)[j]).any()


@pytest.mark.parametrize("tag,n", [("Nope", 1), ("Su2", 2), ("U2PowerN", 0)])
def test_bad_algebra_ids_rejected(tag, n):
    with pytest.raises(ValueError):
        LieAlgebraId(tag, n)


@given(quats)
def test_quaternion_gives_rotation_and_sign_is_irrelevant(q):
    q = q / np.linalg.norm(q)
    r = quaternion_to_rotation(q)
    assert is_rotation(r, 1e-10)
    assert np.allclose(quaternion_to_rotation(-q), r, atol=1e-12)


def test_quaternion_reference_points():
    assert np.array_equal(quaternion_to_rotation([1, 0, 0, 0]), np.eye(3))
    assert np.array_equal(quaternion_to_rotation([0, 0, 0, 1]), np.diag([1.0, -1.0, -1.0]))


@given(quats)
def test_third_column_closed_form(q):
    u, v, w, s = q / np.linalg.norm(q)
    r = quaternion_to_rotation((u, v, w, s))
    expected = [2 * (s * v - u * w), -2 * (s * u + v * w), 2 * u * u + 2 * v * v - 1]
    assert np.allclose(r[:, 2], expected, atol=1e-12)


def test_non_unit_quaternion_rejected():
    with pytest.raises(ValueError):
        quaternion_to_rotation([1, 1, 0, 0])


@pytest.mark.parametrize("alg", ALGEBRAS, ids=str)
def test_random_automorphisms_preserve_the_bracket(alg, rng):
    sc = structure_constants(alg)
    for _ in range(20):
        a = random_automorphism(alg, rng, with_perm=alg.n > 1)
        assert is_automorphism(sc, assemble_automorphism(a))


def test_non_automorphisms_detected(rng):
    sc = structure_constants(LieAlgebraId.u2())
    assert not is_automorphism(sc, np.diag([2.0, 1.0, 1.0, 1.0]))
    assert not is_automorphism(sc, np.zeros((4, 4)))
    # a center coefficient may be any nonzero number
    assert is_automorphism(sc, np.diag([1.0, 1.0, 1.0, -7.5]))


def test_center_mixing_on_u2_power():
    alg = LieAlgebraId.u2_power(2)
    a = Automorphism(alg, (np.eye(3), np.eye(3)), np.array([[1.0, 2.0], [3.0, 4.0]]))
    assert is_automorphism(structure_constants(alg), assemble_automorphism(a))


def test_automorphism_validation():
    with pytest.raises(ValueError):
        Automorphism(LieAlgebraId.su2(), (np.diag([1.0, 1.0, -1.0]),))
    with pytest.raises(ValueError):
        Automorphism(LieAlgebraId.u2(), (np.eye(3),), np.zeros((1, 1)))
    with pytest.raises(ValueError):
        Automorphism(LieAlgebraId.su2_power(2), (np.eye(3), np.eye(3)), perm=(0, 0))


@given(st.permutations(range(5)))
def test_permutation_matrix_and_cycle_type(perm):
    p = permutation_matrix(perm)
    assert np.array_equal(p @ p.T, np.eye(5))
    assert sum(cycle_type(perm)) == 5
    for j, i in enumerate(perm):
        assert p[i, j] == 1


def test_cycle_type_examples():
    assert cycle_type((0, 1, 2)) == (1, 1, 1)
    assert cycle_type((1, 0, 2)) == (2, 1)
    assert cycle_type((1, 2, 0)) == (3,)
