from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from licstruct.polynomial import Polynomial

VARS = ("x", "y", "z")
small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
monos = st.tuples(*(st.integers(0, 3) for _ in VARS))
polys = st.dictionaries(monos, small, max_size=5).map(lambda t: Polynomial(VARS, t))
points = st.tuples(*(st.fractions(-3, 3, max_denominator=4) for _ in VARS))


def ev(p, pt):
    return p.evaluate(dict(zip(VARS, pt)))


@given(polys, polys, points)
def test_ring_operations_commute_with_evaluation(a, b, pt):
    assert ev(a + b, pt) == ev(a, pt) + ev(b, pt)
    assert ev(a - b, pt) == ev(a, pt) - ev(b, pt)
    assert ev(a * b, pt) == ev(a, pt) * ev(b, pt)


@given(polys)
def test_normalized_is_integral_with_positive_lead(p):
    n = p.normalized()
    if not p:
        assert not n
        return
    assert all(c.denominator == 1 for c in n.terms.values())
    assert n.leading_term()[1] > 0
    (mon, c_n), (mon_p, c_p) = n.leading_term(), p.leading_term()
    assert mon == mon_p
    assert n == p * (c_n / c_p)
    assert n.normalized() == n


@given(polys)
def test_clear_denominators_scales(p):
    q, s = p.clear_denominators()
    assert q == p * s
    assert all(c.denominator == 1 for c in q.terms.values())


def test_zero_terms_dropped_and_power():
    x = Polynomial.variable(VARS, "x")
    assert not (x - x)
    assert (x + 1) ** 2 == x * x + 2 * x + 1


def test_substitute_and_coefficient():
    x, y = Polynomial.variable(VARS, "x"), Polynomial.variable(VARS, "y")
    p = x * x * y + 3 * y
    assert p.substitute({"y": Fraction(2)}) == 2 * x * x + 6
    assert p.coefficient("x", 2) == y


def test_floats_rejected():
    with pytest.raises(TypeError):
        Polynomial(VARS, {(1, 0, 0): 0.5})


def test_string_form():
    x, y = Polynomial.variable(VARS, "x"), Polynomial.variable(VARS, "y")
    assert str(x * x - y + 1) == "x^2 - y + 1"
