import pytest
from hypothesis import given, settings

from hkt_lab.basis import FormBasis, SubspaceBasis
from hkt_lab.errors import DimensionError
from hkt_lab.forms import Form
from hkt_lab.operators import GradedOperator
from hkt_lab.scalars import ONE, Scalar, rational

from conftest import homogeneous_forms, scalars

BASIS = FormBasis(4, 0, 0)


def cov(i):
    return Form.covector(4, 0, i)


def test_wedge_by_matches_pointwise_wedge():
    phi = cov(0).wedge(cov(2)) + cov(1).wedge(cov(3)).scale(rational(-2))
    L = GradedOperator.wedge_by(BASIS, phi)
    assert L.shift == 2
    for i in range(BASIS.size):
        b = BASIS.element_form(i)
        assert L.apply(b) == phi.wedge(b)


def test_compose_is_application_order():
    a, b = cov(0), cov(1)
    La, Lb = GradedOperator.wedge_by(BASIS, a), GradedOperator.wedge_by(BASIS, b)
    ab = La.compose(Lb)
    for i in BASIS.indices_of_degree(1):
        x = BASIS.element_form(i)
        assert ab.apply(x) == a.wedge(b.wedge(x))


def test_wedge_operators_supercommute_to_zero():
    # odd wedge operators anticommute: {L_a, L_b} = L_{a^b+b^a} = 0
    La = GradedOperator.wedge_by(BASIS, cov(0))
    Lb = GradedOperator.wedge_by(BASIS, cov(3))
    assert La.supercommutator(Lb).is_zero()
    assert La.supercommutator(La).is_zero()


def test_add_requires_equal_shifts():
    La = GradedOperator.wedge_by(BASIS, cov(0))
    L2 = GradedOperator.wedge_by(BASIS, cov(0).wedge(cov(1)))
    with pytest.raises(DimensionError):
        La + L2


def test_identity_and_scalar_multiple():
    ident = GradedOperator.identity(BASIS)
    two = GradedOperator.scalar_multiple(BASIS, Scalar(2))
    assert two.equals(ident.scale(Scalar(2)))
    assert (two - ident - ident).is_zero()


def test_power():
    L = GradedOperator.wedge_by(BASIS, cov(0).wedge(cov(1)))
    sq = L.power(2)
    assert sq.is_zero()           # (e0^e1)^2 = 0
    assert L.power(0).equals(GradedOperator.identity(BASIS))


def test_conj_transpose_is_hermitian_adjoint_for_orthonormal_basis():
    phi = cov(0).wedge(cov(1)).scale(Scalar(0, 1)) + cov(2).wedge(cov(3))
    L = GradedOperator.wedge_by(BASIS, phi)
    A = L.conj_transpose()
    # <L x, y> = <x, A y> with the standard coordinate inner product,
    # conjugate-linear in the second slot
    def inner(u, v):
        uu, vv = BASIS.to_coords(u), BASIS.to_coords(v)
        total = Scalar(0)
        for i, c in uu.items():
            if i in vv:
                total = total + c * vv[i].conjugate()
        return total
    for i in BASIS.indices_of_degree(1):
        for j in BASIS.indices_of_degree(3):
            x, y = BASIS.element_form(i), BASIS.element_form(j)
            assert inner(L.apply(x), y) == inner(x, A.apply(y))


def test_kernel_and_rank_in_degree():
    L = GradedOperator.wedge_by(BASIS, cov(0))
    # wedging by e0 on 1-forms kills exactly span{e0}
    kern = L.kernel_in_degree(1)
    assert len(kern) == 1
    assert kern[0] == cov(0) or kern[0] == cov(0).scale(kern[0].coefficient((0,)).constant_value())
    assert L.rank_in_degree(1) == 3
    assert L.rank() == sum(L.rank_in_degree(k) for k in range(5))


def test_restrict_to_subspace():
    sub = SubspaceBasis(BASIS, [cov(0), cov(1), cov(0).wedge(cov(1))])
    L = GradedOperator.wedge_by(BASIS, cov(0))
    R = L.restrict(sub)
    assert R.shift == 1
    assert R.apply(cov(1)) == cov(0).wedge(cov(1))


@settings(max_examples=30)
@given(homogeneous_forms(degree=1), homogeneous_forms(degree=1),
       homogeneous_forms(degree=2))
def test_supercommutator_graded_jacobi(a, b, c):
    # [A,[B,C]] = [[A,B],C] + (-1)^{|A||B|} [B,[A,C]] for wedge operators
    A = GradedOperator.wedge_by(BASIS, a) if not a.is_zero() else GradedOperator.zero(BASIS, 1)
    B = GradedOperator.wedge_by(BASIS, b) if not b.is_zero() else GradedOperator.zero(BASIS, 1)
    C = GradedOperator.wedge_by(BASIS, c) if not c.is_zero() else GradedOperator.zero(BASIS, 2)
    lhs = A.supercommutator(B.supercommutator(C))
    sign = -ONE if (A.parity and B.parity) else ONE
    rhs = A.supercommutator(B).supercommutator(C) + \
        B.supercommutator(A.supercommutator(C)).scale(sign)
    assert lhs.equals(rhs)


def test_flatten_distinguishes_operators():
    La = GradedOperator.wedge_by(BASIS, cov(0))
    Lb = GradedOperator.wedge_by(BASIS, cov(1))
    assert La.flatten() != Lb.flatten()
    assert GradedOperator.zero(BASIS, 1).flatten() == {}
