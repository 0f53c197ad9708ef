from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from licstruct.canonical import su2su2_normal_form, u2_normal_form
from licstruct.lie_core import LieAlgebraId, structure_constants
from licstruct.polynomial import Polynomial
from licstruct.serialize import equation_to_json, load_golden
from licstruct.torsion import (
    EQUATION_SIGN,
    CRStructureData,
    check_cr_structure,
    cramer_report,
    evaluate_torsion,
    holomorphic_subalgebra,
    is_complex_structure,
    product_conditions,
    torsion_equations,
    xi_variables,
)

from .oracles import PRINTED_SU2, nijenhuis_oracle


def to_sympy(poly: Polynomial):
    syms = sp.symbols(poly.variables)
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * sp.Mul(*(s**e for s, e in zip(syms, mon))) for mon, c in poly.terms.items()))


@pytest.mark.parametrize(
    "alg,count,nonzero",
    [
        (LieAlgebraId.su2(), 9, 9),
        (LieAlgebraId.u2(), 24, 24),
        (LieAlgebraId.su2_power(2), 90, 90),
        (LieAlgebraId.u2_power(2), 224, 222),
    ],
    ids=["su2", "u2", "su2^2", "u2^2"],
)
def test_equation_counts(alg, count, nonzero):
    eqs = torsion_equations(structure_constants(alg))
    assert len(eqs) == count == alg.dim * alg.dim * (alg.dim - 1) // 2
    assert sum(1 for e in eqs if e.poly) == nonzero


@pytest.mark.parametrize(
    "kind,n,alg",
    [("su2", 1, LieAlgebraId.su2()), ("u2", 1, LieAlgebraId.u2()), ("su2", 2, LieAlgebraId.su2_power(2))],
    ids=["su2", "u2", "su2^2"],
)
def test_equations_match_sympy_nijenhuis(kind, n, alg):
    oracle = nijenhuis_oracle(kind, n)
    for eq in torsion_equations(structure_constants(alg)):
        assert sp.expand(to_sympy(eq.poly) - eq.scale * oracle[eq.label]) == 0, eq.label


def test_reference_su2_equations_up_to_normalization():
    names = xi_variables(3)
    syms = dict(zip(names, sp.symbols(names)))
    eqs = {e.label: e.poly for e in torsion_equations(structure_constants(LieAlgebraId.su2()))}
    assert set(eqs) == set(PRINTED_SU2)
    for label, text in PRINTED_SU2.items():
        printed = sp.Poly(sp.sympify(text, locals=syms), *syms.values())
        ours = sp.Poly(to_sympy(eqs[label]), *syms.values())
        assert ours == printed or ours == -printed, label


def test_sign_convention_reproduces_two_reference_lines_literally():
    names = xi_variables(3)
    syms = dict(zip(names, sp.symbols(names)))
    eqs = {e.label: e.poly for e in torsion_equations(structure_constants(LieAlgebraId.su2()))}
    for label in [(1, 2, 1), (1, 2, 3)]:
        assert sp.expand(to_sympy(eqs[label]) - sp.sympify(PRINTED_SU2[label], locals=syms)) == 0
    assert EQUATION_SIGN == -1


@pytest.mark.parametrize("name", ["su2", "u2", "su2^2", "u2^2"])
def test_golden_files_match_generator(name):
    from licstruct.serialize import parse_algebra

    alg = parse_algebra(name)
    golden = load_golden(name)
    eqs = torsion_equations(structure_constants(alg))
    assert golden["count"] == len(eqs)
    assert golden["equations"] == [equation_to_json(e) for e in eqs]


@pytest.mark.parametrize("alg", [LieAlgebraId.su2(), LieAlgebraId.u2(), LieAlgebraId.su2_power(2)], ids=str)
@given(data=st.data())
def test_numeric_torsion_matches_polynomials(alg, data):
    n = alg.dim
    j = data.draw(arrays(float, (n, n), elements=st.floats(-3, 3, allow_nan=False)))
    res = evaluate_torsion(structure_constants(alg), j)
    values = {name: float(x) for name, x in zip(xi_variables(n), j.ravel())}
    for eq in torsion_equations(structure_constants(alg)):
        # poly = scale * N_k, residuals use the bare sign convention
        expected = eq.poly.evaluate(values) / float(eq.scale) * float(EQUATION_SIGN)
        assert res[eq.label] == pytest.approx(expected, abs=1e-9, rel=1e-9)


@given(st.floats(-10, 10), st.floats(0.1, 5), st.booleans())
def test_normal_forms_are_complex_structures(xi, eta, neg):
    eta = -eta if neg else eta
    assert is_complex_structure(structure_constants(LieAlgebraId.u2()), u2_normal_form(xi), tol=1e-9 * (1 + xi * xi))
    assert is_complex_structure(
        structure_constants(LieAlgebraId.su2_power(2)), su2su2_normal_form(xi, eta), tol=1e-9 * (1 + xi * xi) / eta**2
    )


def test_identity_is_not_a_complex_structure():
    rep = is_complex_structure(structure_constants(LieAlgebraId.u2()), np.eye(4))
    assert not rep
    assert rep.torsion > 0 and rep.square_defect == 2.0


def test_almost_complex_with_torsion_rejected(rng):
    # conjugating by a generic linear map keeps J^2 = -I but breaks integrability
    p = rng.normal(size=(4, 4))
    j = p @ u2_normal_form(0.5) @ np.linalg.inv(p)
    rep = is_complex_structure(structure_constants(LieAlgebraId.u2()), j)
    assert rep.square_defect < 1e-9 and rep.torsion > 1e-3
    assert not rep


def test_holomorphic_subalgebra_closes_and_is_not_abelian():
    sc = structure_constants(LieAlgebraId.u2())
    h = holomorphic_subalgebra(sc, u2_normal_form(0.7))
    assert h.basis.shape == (4, 2)
    assert h.defect < 1e-12
    assert not h.abelian


def test_holomorphic_subalgebra_of_su2su2_not_abelian():
    h = holomorphic_subalgebra(structure_constants(LieAlgebraId.su2_power(2)), su2su2_normal_form(0.3, -2.0))
    assert h.defect < 1e-12 and not h.abelian


def test_product_conditions_hold_for_normal_forms():
    alg = LieAlgebraId.su2_power(2)
    rep = product_conditions(structure_constants(alg), [alg.factor_indices(0), alg.factor_indices(1)], su2su2_normal_form(1.5, 0.5))
    assert rep.holds()


def test_cramer_detects_forced_zero():
    names = ("u", "v", "x")
    u, v, x = (Polynomial.variable(names, n) for n in names)
    systems = cramer_report({(1,): u + x * v, (2,): v - x * u}, unknowns_pool=("u", "v"))
    assert len(systems) == 1
    s = systems[0]
    assert s.unknowns == ("u", "v") and s.forces_zero
    assert s.determinant == 1 + x * x


def test_cramer_on_su2_after_partial_normal_form():
    # the su(2) equations with J e3 in span(e3) and an eigen-2-plane: xi_3_1 = xi_3_2 = 0,
    # 12|1 and 12|2 become a homogeneous system in (xi_1_3, xi_2_3)
    sc = structure_constants(LieAlgebraId.su2())
    sub = {"xi_3_1": Fraction(0), "xi_3_2": Fraction(0)}
    eqs = {e.label: e.poly.substitute(sub) for e in torsion_equations(sc)}
    pairs = cramer_report(eqs, unknowns_pool=("xi_1_3", "xi_2_3"))
    assert any(set(s.unknowns) == {"xi_1_3", "xi_2_3"} for s in pairs)


# CR structures on su(2)


def test_cr0_extensions_are_exactly_the_torsion_free_normal_forms():
    rep = check_cr_structure(structure_constants(LieAlgebraId.su2()), CRStructureData(((1, 0, 0), (0, 1, 0)), ((0, 1), (-1, 0))))
    assert rep.ok and rep.defect == 0.0
    ext = rep.extension
    assert ext.torsion_free_exists
    assert {"xi_1_3": "0", "xi_2_3": "0"} in [dict(s) for s in ext.real_solutions]


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(-3), Fraction(2)])
def test_cri_has_no_torsion_free_extension(a):
    p = ((1, 0, 0), (0, 1, -a))
    rep = check_cr_structure(structure_constants(LieAlgebraId.su2()), CRStructureData(p, ((0, 1), (-1, 0))))
    assert rep.ok
    assert not rep.extension.torsion_free_exists


def test_cr_non_unit_rotation_has_no_extension():
    cr = CRStructureData(((1, 0, 0), (0, 1, 0)), ((0, 2), (Fraction(-1, 2), 0)))
    rep = check_cr_structure(structure_constants(LieAlgebraId.su2()), cr)
    assert rep.ok
    assert not rep.extension.torsion_free_exists


def test_cr_data_validation():
    with pytest.raises(ValueError):
        CRStructureData(((1, 0, 0), (2, 0, 0)), ((0, 1), (-1, 0)))
    with pytest.raises(ValueError):
        CRStructureData(((1, 0, 0), (0, 1, 0)), ((1, 0), (0, 1)))
