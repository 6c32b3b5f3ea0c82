import pytest
from hypothesis import given

from hkt_lab.errors import DimensionError
from hkt_lab.poly import Polynomial
from hkt_lab.scalars import ONE, Scalar

from conftest import polynomials, scalars

x = Polynomial.variable(2, 0)
y = Polynomial.variable(2, 1)


def test_constructor_strips_zeros():
    p = Polynomial(2, {(1, 0): Scalar(0), (0, 1): ONE})
    assert list(p.terms) == [(0, 1)]
    assert Polynomial(2, {}).is_zero()


def test_arity_guard():
    with pytest.raises(DimensionError):
        Polynomial(2, {(1,): ONE})
    with pytest.raises(DimensionError):
        x + Polynomial.variable(3, 0)


def test_hand_product():
    # (x + y)(x - y) = x^2 - y^2
    assert (x + y) * (x - y) == x * x - y * y


def test_diff_hand_values():
    p = x * x * y + y  # x^2 y + y
    assert p.diff(0) == Polynomial(2, {(1, 1): Scalar(2)})
    assert p.diff(1) == x * x + Polynomial.constant(2, ONE)
    assert p.diff(0).diff(1) == Polynomial(2, {(1, 0): Scalar(2)})


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)


@given(polynomials(), polynomials())
def test_diff_is_a_derivation(p, q):
    for i in range(2):
        assert (p * q).diff(i) == p.diff(i) * q + p * q.diff(i)


@given(polynomials(), polynomials())
def test_mixed_partials_commute(p, q):
    s = p * q
    assert s.diff(0).diff(1) == s.diff(1).diff(0)


@given(polynomials(), scalars())
def test_scale_and_conjugate(p, c):
    assert p.scale(c) == p * Polynomial.constant(2, c)
    assert p.conjugate().conjugate() == p
    assert (p.scale(c)).conjugate() == p.conjugate().scale(c.conjugate())


def test_degree_and_constant_views():
    assert (x * y).total_degree() == 2
    assert Polynomial(2, {}).total_degree() == -1
    c = Polynomial.constant(2, Scalar(5))
    assert c.is_constant() and c.constant_value() == Scalar(5)
    with pytest.raises(ValueError):
        x.constant_value()
