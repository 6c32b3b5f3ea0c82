from math import comb

import pytest

from hkt_lab.basis import FormBasis, SubspaceBasis, monomials_up_to
from hkt_lab.errors import DimensionError, ProjectionError
from hkt_lab.forms import Form
from hkt_lab.poly import Polynomial
from hkt_lab.scalars import ONE, Scalar, rational


def test_monomials_up_to_counts():
    # stars and bars: C(nvars + d, nvars) exponent tuples of degree <= d
    for nvars in (1, 2, 4):
        for d in (0, 1, 3):
            assert len(monomials_up_to(nvars, d)) == comb(nvars + d, nvars)
    assert monomials_up_to(0, 5) == [()]


def test_monomials_graded_then_lex():
    ms = monomials_up_to(2, 2)
    degrees = [sum(m) for m in ms]
    assert degrees == sorted(degrees)
    assert ms.index((0, 1)) < ms.index((1, 0))      # lex inside a degree block


def test_form_basis_roundtrip():
    basis = FormBasis(4, 2, 1)
    assert basis.size == 16 * 3
    for i in (0, 5, basis.size - 1):
        f = basis.element_form(i)
        assert basis.to_coords(f) == {i: ONE}
    v = {3: rational(2, 7), 11: Scalar(0, 1)}
    assert basis.to_coords(basis.from_coords(v)) == v


def test_form_basis_escape_raises():
    basis = FormBasis(4, 2, 1)
    f = Form(4, 2, {(0,): Polynomial(2, {(1, 1): ONE})})
    with pytest.raises(ProjectionError):
        basis.to_coords(f)
    assert not basis.contains(f)


def test_form_basis_degree_indexing():
    basis = FormBasis(4, 0, 0)
    for k in range(5):
        idx = basis.indices_of_degree(k)
        assert len(idx) == comb(4, k)
        assert all(basis.degree_of_index(i) == k for i in idx)
    assert basis.indices_of_degree(9) == []


def test_form_basis_wrong_frame():
    basis = FormBasis(4, 0, 0)
    with pytest.raises(DimensionError):
        basis.to_coords(Form.zero(6, 0))


def test_subspace_basis_dedupes_dependent_spanning_forms():
    amb = FormBasis(4, 0, 0)
    a = Form.covector(4, 0, 0)
    b = Form.covector(4, 0, 1)
    sub = SubspaceBasis(amb, [a, b, a + b, a.scale(rational(3))])
    assert sub.size == 2
    assert sub.indices_of_degree(1) == [0, 1]
    combo = sub.to_coords(a.scale(rational(2)) - b)
    assert combo == {0: rational(2), 1: -ONE}


def test_subspace_basis_outside_raises():
    amb = FormBasis(4, 0, 0)
    sub = SubspaceBasis(amb, [Form.covector(4, 0, 0)])
    assert not sub.contains(Form.covector(4, 0, 2))
    with pytest.raises(ProjectionError):
        sub.to_coords(Form.covector(4, 0, 2))


def test_subspace_basis_requires_homogeneous():
    amb = FormBasis(4, 0, 0)
    mixed = Form.covector(4, 0, 0) + Form.scalar(4, 0, ONE)
    with pytest.raises(DimensionError):
        SubspaceBasis(amb, [mixed])


def test_subspace_roundtrip():
    amb = FormBasis(4, 1, 1)
    x = Polynomial.variable(1, 0)
    a = Form.covector(4, 1, 0).scale_poly(x)
    b = Form.covector(4, 1, 1)
    sub = SubspaceBasis(amb, [a, b])
    v = {0: rational(1, 3), 1: Scalar(2)}
    assert sub.to_coords(sub.from_coords(v)) == v
