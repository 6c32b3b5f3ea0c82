import random

import pytest
import sympy

from hkt_lab.errors import DegeneracyError, DimensionError
from hkt_lab.linalg import (Echelon, identity_matrix, is_symmetric_positive_definite,
                            kernel_basis, mat_det, mat_eq, mat_invert, mat_mul,
                            rank_columns, rref_rows, solve_columns,
                            symmetric_signature, vec_axpy)
from hkt_lab.scalars import ONE, Scalar


def rand_matrix(rng, n, m, lo=-4, hi=4, imag=False):
    return [[Scalar(rng.randint(lo, hi), rng.randint(lo, hi) if imag else 0)
             for _ in range(m)] for _ in range(n)]


def to_sympy(mat):
    return sympy.Matrix([[sympy.Rational(c.a, c.d) + sympy.I * sympy.Rational(c.b, c.d)
                          for c in row] for row in mat])


def columns_of(mat):
    n, m = len(mat), len(mat[0])
    return [{i: mat[i][j] for i in range(n) if mat[i][j]} for j in range(m)]


@pytest.mark.parametrize("seed", range(12))
def test_rank_and_kernel_against_sympy(seed):
    rng = random.Random(seed)
    n, m = rng.randint(2, 5), rng.randint(2, 5)
    mat = rand_matrix(rng, n, m, imag=(seed % 2 == 0))
    cols = columns_of(mat)
    sm = to_sympy(mat)
    assert rank_columns(cols) == sm.rank()
    kern = kernel_basis(cols, ncols=m)
    assert len(kern) == m - sm.rank()
    for v in kern:
        out = {}
        for j, c in v.items():
            out = vec_axpy(out, c, cols[j])
        assert not out


@pytest.mark.parametrize("seed", range(8))
def test_solve_columns(seed):
    rng = random.Random(100 + seed)
    n, m = rng.randint(2, 5), rng.randint(2, 5)
    mat = rand_matrix(rng, n, m, imag=True)
    cols = columns_of(mat)
    x = [Scalar(rng.randint(-3, 3), rng.randint(-2, 2)) for _ in range(m)]
    target = {}
    for j, c in enumerate(x):
        target = vec_axpy(target, c, cols[j])
    sol = solve_columns(cols, target)
    assert sol is not None
    out = {}
    for j, c in sol.items():
        out = vec_axpy(out, c, cols[j])
    assert out == target


def test_solve_columns_detects_inconsistency():
    cols = [{0: ONE}, {0: Scalar(2)}]
    assert solve_columns(cols, {1: ONE}) is None


def test_echelon_expression_tracking():
    ech = Echelon()
    v1 = {0: ONE, 1: Scalar(2)}
    v2 = {1: ONE, 2: Scalar(-1)}
    assert ech.add(v1, "a")
    assert ech.add(v2, "b")
    assert not ech.add(vec_axpy(dict(v1), Scalar(3), v2), "c")
    combo = ech.coordinates({0: Scalar(2), 1: Scalar(5), 2: Scalar(-1)})
    assert combo == {"a": Scalar(2), "b": ONE}
    assert ech.coordinates({3: ONE}) is None


def test_rref_rows_idempotent_pivots():
    rows = [{0: Scalar(2), 1: Scalar(4)}, {0: ONE, 1: Scalar(2)}, {1: ONE}]
    reduced, pivots = rref_rows(rows)
    assert pivots == [0, 1]
    assert reduced[0] == {0: ONE}
    assert reduced[1] == {1: ONE}


@pytest.mark.parametrize("seed", range(10))
def test_inverse_and_det_against_sympy(seed):
    rng = random.Random(200 + seed)
    n = rng.randint(2, 4)
    mat = rand_matrix(rng, n, n, imag=True)
    sm = to_sympy(mat)
    det = mat_det(mat)
    sdet = sympy.simplify(sm.det())
    assert sympy.Rational(det.a, det.d) + sympy.I * sympy.Rational(det.b, det.d) == sdet
    if det:
        inv = mat_invert(mat)
        assert mat_eq(mat_mul(mat, inv), identity_matrix(n))
    else:
        with pytest.raises(DegeneracyError):
            mat_invert(mat)


@pytest.mark.parametrize("seed", range(10))
def test_signature_against_sympy_real_roots(seed):
    rng = random.Random(300 + seed)
    n = rng.randint(2, 5)
    raw = rand_matrix(rng, n, n)
    mat = [[raw[i][j] + raw[j][i] for j in range(n)] for i in range(n)]
    pos, neg, zero = symmetric_signature(mat)
    lam = sympy.symbols("lam")
    cp = to_sympy(mat).charpoly(lam)
    roots = sympy.real_roots(cp.as_expr(), lam)
    spos = sum(1 for r in roots if r > 0)
    sneg = sum(1 for r in roots if r < 0)
    assert (pos, neg, zero) == (spos, sneg, n - spos - sneg)


def test_signature_guards():
    with pytest.raises(DimensionError):
        symmetric_signature([[ONE, Scalar(2)], [Scalar(3), ONE]])
    with pytest.raises(DimensionError):
        symmetric_signature([[Scalar(0, 1)]])


def test_spd_detector():
    assert is_symmetric_positive_definite(identity_matrix(3))
    assert not is_symmetric_positive_definite([[ONE, Scalar(2)], [Scalar(2), ONE]])
    # off-diagonal-only matrix: the hyperbolic plane, signature (1,1)
    hyp = [[Scalar(0), ONE], [ONE, Scalar(0)]]
    assert symmetric_signature(hyp) == (1, 1, 0)
