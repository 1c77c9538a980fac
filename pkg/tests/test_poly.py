from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigvar.poly import Poly, leibniz_det

N = 3
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 3)] * N)
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda d: Poly(N, d))
points = st.tuples(*[st.fractions(min_value=-4, max_value=4, max_denominator=3)] * N)


@given(polys, polys, points)
def test_ring_operations_commute_with_evaluation(p, q, x):
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)


@given(polys, polys, polys)
def test_distributive(p, q, r):
    assert p * (q + r) == p * q + p * r


@given(polys, points)
def test_diff_is_derivation(p, x):
    a = Poly.variables(N)
    # d/da1 (a1 * p) = p + a1 * dp/da1
    assert (a[0] * p).diff(0) == p + a[0] * p.diff(0)


@given(polys, points)
def test_substitute_then_evaluate(p, x):
    a = Poly.variables(N)
    images = [a[0] + a[1], a[1], a[2] * 2]
    y = (x[0] + x[1], x[1], 2 * x[2])
    assert p.substitute(images)(x) == p(y)


def test_power_and_formatting():
    a1, a2 = Poly.variables(2)
    p = (a1 + a2) ** 2
    assert p.coefficient((1, 1)) == 2
    assert str(a1 * a1 * a2 / 2) == "1/2*a1^2*a2"
    assert Poly.from_json(p.to_json()) == p


def test_leibniz_det_2x2():
    a1, a2, a3, a4 = Poly.variables(4)
    assert leibniz_det([[a1, a2], [a3, a4]]) == a1 * a4 - a2 * a3


def test_homogeneity_and_monomials():
    a1, a2 = Poly.variables(2)
    assert (a1 * a2 + a1 * a1).is_homogeneous()
    assert not (a1 + a1 * a2).is_homogeneous()
    assert (a1 * a2 * 3).is_monomial()
    assert (a1 * a1 * a2).divisible_by_monomial((1, 1))


def test_mixed_variable_sets_rejected():
    with pytest.raises(ValueError):
        Poly.var(2, 0) + Poly.var(3, 0)


def test_zero_terms_are_dropped():
    assert Poly(2, {(1, 0): Fraction(0)}).is_zero()
