import pytest

from hkt_lab.basis import FormBasis
from hkt_lab.errors import StructureError
from hkt_lab.forms import Form
from hkt_lab.frames import (QuaternionTriple, Sp1Action, apply_derivation_map,
                            apply_multiplicative_map, covector_images,
                            derivation_extension, holomorphic_coframe,
                            multiplicative_extension, multiplicative_images,
                            so3_from_quaternion, validate_so3)
from hkt_lab.linalg import identity_matrix, mat_eq, mat_mul, mat_neg, mat_transpose
from hkt_lab.operators import GradedOperator
from hkt_lab.scalars import ONE, Scalar, rational


def test_standard_triple_relations():
    for n in (1, 2):
        t = QuaternionTriple.standard(n)
        dim = 4 * n
        minus = mat_neg(identity_matrix(dim))
        assert mat_eq(mat_mul(t.I, t.I), minus)
        assert mat_eq(mat_mul(t.J, t.J), minus)
        assert mat_eq(mat_mul(t.K, t.K), minus)
        assert mat_eq(mat_mul(t.I, t.J), t.K)
        assert mat_eq(mat_mul(t.J, t.I), mat_neg(t.K))


def test_bad_triple_rejected():
    with pytest.raises(StructureError):
        QuaternionTriple(identity_matrix(4), identity_matrix(4))


def test_so3_from_quaternion_is_orthogonal():
    rot = so3_from_quaternion(3, 1, 2, 2)
    validate_so3(rot)
    assert mat_eq(mat_mul(mat_transpose(rot), rot), identity_matrix(3))


def test_so3_identity_quaternion():
    rot = so3_from_quaternion(1, 0, 0, 0)
    assert mat_eq(rot, identity_matrix(3))


def test_rotate_preserves_quaternion_relations():
    t = QuaternionTriple.standard(1)
    rot = so3_from_quaternion(1, 2, 0, 2)
    t2 = t.rotate(rot)
    dim = 4
    minus = mat_neg(identity_matrix(dim))
    assert mat_eq(mat_mul(t2.I, t2.I), minus)
    assert mat_eq(mat_mul(t2.I, t2.J), t2.K)


def test_rotate_rejects_non_orthogonal():
    t = QuaternionTriple.standard(1)
    bad = [[ONE, ONE, Scalar(0)], [Scalar(0), ONE, Scalar(0)],
           [Scalar(0), Scalar(0), ONE]]
    with pytest.raises(StructureError):
        t.rotate(bad)


def test_derivation_vs_multiplicative_extension():
    # derivation acts by Leibniz, multiplicative acts on every factor
    t = QuaternionTriple.standard(1)
    space = FormBasis(4, 0, 0)
    images = covector_images(mat_transpose(t.I), 4, 0)
    mimages = multiplicative_images(t.I, 4, 0)
    a, b = Form.covector(4, 0, 0), Form.covector(4, 0, 2)
    der = apply_derivation_map(a.wedge(b), images)
    assert der == apply_derivation_map(a, images).wedge(b) + \
        a.wedge(apply_derivation_map(b, images))
    mult = apply_multiplicative_map(a.wedge(b), mimages)
    assert mult == apply_multiplicative_map(a, mimages).wedge(
        apply_multiplicative_map(b, mimages))


def test_multiplicative_extension_operator_matches_map():
    t = QuaternionTriple.standard(1)
    space = FormBasis(4, 0, 0)
    op = multiplicative_extension(space, t.J)
    images = multiplicative_images(t.J, 4, 0)
    for i in range(space.size):
        f = space.element_form(i)
        assert op.apply(f) == apply_multiplicative_map(f, images)


def test_holomorphic_coframe_eigenvectors():
    # each coframe element is an eigenvector of the transpose action: L eta = i eta
    t = QuaternionTriple.standard(2)
    cof = holomorphic_coframe(t.I, 8, 0)
    assert len(cof) == 4
    images = covector_images(mat_transpose(t.I), 8, 0)
    for eta in cof:
        assert apply_derivation_map(eta, images) == eta.scale(Scalar(0, 1))


def test_sp1_commutator_table():
    t = QuaternionTriple.standard(1)
    space = FormBasis(4, 0, 0)
    sp1 = Sp1Action(space, t)
    residuals = sp1.commutator_table_residuals()
    assert all(r.is_zero() for r in residuals.values())


def test_sp1_weight_split_is_complete():
    t = QuaternionTriple.standard(1)
    space = FormBasis(4, 0, 0)
    sp1 = Sp1Action(space, t)
    for i in range(space.size):
        f = space.element_form(i)
        parts = sp1.weight_split(f)
        total = Form.zero(4, 0)
        for w, part in parts.items():
            assert w >= 0
            total = total + part
        assert total == f


def test_sp1_casimir_diagonal_on_weight_components():
    t = QuaternionTriple.standard(1)
    space = FormBasis(4, 0, 0)
    sp1 = Sp1Action(space, t)
    cas = sp1.casimir()
    # Casimir acts as w(w+2) on an irreducible of highest weight w
    f = Form.covector(4, 0, 0).wedge(Form.covector(4, 0, 1))
    for w, part in sp1.weight_split(f).items():
        if part.is_zero():
            continue
        assert cas.apply(part) == part.scale(Scalar(w * (w + 2)))


def test_plus_projector_image_dimension():
    # the weight-k part of degree-k forms has dimension (k+1) * C(2n, k)
    from math import comb
    for n in (1, 2):
        t = QuaternionTriple.standard(n)
        space = FormBasis(4 * n, 0, 0)
        sp1 = Sp1Action(space, t)
        for k in range(0, 2 * n + 1):
            pk = sp1.plus_projector(k)
            assert pk.rank() == (k + 1) * comb(2 * n, k)


def test_bigrade_projectors_resolve_identity_in_degree():
    t = QuaternionTriple.standard(1)
    space = FormBasis(4, 0, 0)
    sp1 = Sp1Action(space, t)
    for k in range(3):
        f = space.element_form(space.indices_of_degree(k)[0])
        total = Form.zero(4, 0)
        for p in range(k + 1):
            total = total + sp1.bigrade_component(f, p, k - p)
        # bigrade components of weight-pure pieces reassemble the plus part
        assert sp1.plus_projector(k).apply(f) == total
