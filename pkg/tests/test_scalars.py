from fractions import Fraction

import pytest
from hypothesis import given

from hkt_lab.scalars import HALF, I, ONE, Scalar, ZERO, rational, rational_sqrt

from conftest import nonzero_scalars, scalars


def test_normalization():
    assert Scalar(2, 4, 6) == Scalar(1, 2, 3)
    assert Scalar(1, 0, -2) == Scalar(-1, 0, 2)
    assert Scalar(0, 0, 7) == ZERO
    assert Scalar(3, 0, 3) == ONE
    assert Scalar(3, 0, 3).d == 1


def test_division_against_hand_values():
    # (1+i)/(2i) = (1-i)/2
    assert Scalar(1, 1) / Scalar(0, 2) == Scalar(1, -1, 2)
    assert (I * I) == Scalar(-1)
    assert ONE / I == -I
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_parse_roundtrip():
    for s in [ZERO, ONE, HALF, I, Scalar(-3, 5, 7)]:
        assert Scalar.parse(s.to_json()) == s
    assert Scalar.parse("3/4") == rational(3, 4)
    assert Scalar.parse(5) == Scalar(5)
    assert Scalar.parse({"re": "1/2", "im": "-2"}) == Scalar(1, -4, 2)


def test_real_imag_views():
    s = Scalar(3, -2, 6)
    assert s.real() == Fraction(1, 2)
    assert s.imag() == Fraction(-1, 3)
    assert rational(-5).real_sign() == -1
    with pytest.raises(ValueError):
        I.real_sign()


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO


@given(scalars(), nonzero_scalars())
def test_field_axioms(a, b):
    assert (a / b) * b == a
    assert b * b.inverse() == ONE


@given(scalars(), scalars())
def test_conjugation(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    assert a.conjugate().conjugate() == a
    prod = a * a.conjugate()
    assert prod.is_real()
    assert prod.real() >= 0


@given(scalars())
def test_hash_eq_consistency(a):
    b = Scalar(a.a * 3, a.b * 3, a.d * 3)
    assert a == b and hash(a) == hash(b)
    if a.is_real() and a.d == 1:
        assert a == a.a


def test_powers():
    assert I ** 2 == Scalar(-1)
    assert HALF ** -2 == Scalar(4)
    assert Scalar(1, 1) ** 4 == Scalar(-4)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(0)) == 0
    with pytest.raises(ValueError):
        rational_sqrt(Fraction(-1))
