"""Quaternionic frames and the induced su(2) action on forms.

A QuaternionTriple holds three almost-complex structures I, J, K on the
tangent frame with the quaternion relations I J = K etc.  Two extensions to
the exterior algebra are used, and keeping them straight is the whole game:

* derivation extension of the covector action eta -> eta o L (matrix L^T on
  components).  These are the su(2) generators; they annihilate functions.
  With this convention the generator attached to I acts as (p - q)*sqrt(-1)
  on (p, q)-forms and the realized bracket table is [A_I, A_J] = -2 A_K and
  cyclic.
* multiplicative extension of the contragredient action (L^{-1})^T = -L^T.
  This is the degree-preserving algebra automorphism (the "rotate every
  covector" map) used for twisted differentials and the quaternionic
  Dolbeault complex.  The contragredient (not the plain transpose) is what
  makes inner products and Lefschetz commutator identities come out right.

The raising operator of the realized su(2) is (A_J + i A_K)/2: it shifts
the A_I eigenvalue by +2i, mapping (p, q) to (p+1, q-1).
"""

from __future__ import annotations

from .errors import StructureError
from .forms import Form, wedge_all
from .linalg import (identity_matrix, kernel_basis, mat_eq, mat_invert, mat_mul,
                     mat_neg, mat_transpose, zero_matrix)
from .operators import GradedOperator
from .scalars import HALF, I as IMAG, MINUS_ONE, ONE, Scalar, ZERO


def _to_scalar_matrix(rows) -> list[list[Scalar]]:
    return [[Scalar.parse(x) for x in row] for row in rows]


class QuaternionTriple:
    """Three anticommuting complex structures with I J = K."""

    def __init__(self, I, J, K=None):
        self.I = _to_scalar_matrix(I)
        self.J = _to_scalar_matrix(J)
        self.K = _to_scalar_matrix(K) if K is not None else mat_mul(self.I, self.J)
        self.dim = len(self.I)
        self.validate()

    def validate(self):
        n = self.dim
        if any(len(m) != n or any(len(r) != n for r in m)
               for m in (self.I, self.J, self.K)):
            raise StructureError("frame matrices must be square of equal size")
        if n % 4:
            raise StructureError("quaternionic frame dimension must be divisible by 4")
        minus = mat_neg(identity_matrix(n))
        for name, m in (("I", self.I), ("J", self.J), ("K", self.K)):
            if not mat_eq(mat_mul(m, m), minus):
                raise StructureError(f"{name}^2 != -1")
        if not mat_eq(mat_mul(self.I, self.J), self.K):
            raise StructureError("I J != K")
        if not mat_eq(mat_mul(self.J, self.K), self.I):
            raise StructureError("J K != I")
        if not mat_eq(mat_mul(self.K, self.I), self.J):
            raise StructureError("K I != J")

    @classmethod
    def standard(cls, n: int) -> "QuaternionTriple":
        """Block-diagonal left-multiplication frame on H^n.

        On each coordinate block (x0, x1, x2, x3): I maps the frame vectors
        d0 -> d1 -> -d0 and d2 -> d3 -> -d2; J maps d0 -> d2, d1 -> -d3.
        """
        dim = 4 * n
        I = zero_matrix(dim)
        J = zero_matrix(dim)
        for b in range(n):
            o = 4 * b
            I[o + 1][o + 0] = ONE
            I[o + 0][o + 1] = MINUS_ONE
            I[o + 3][o + 2] = ONE
            I[o + 2][o + 3] = MINUS_ONE
            J[o + 2][o + 0] = ONE
            J[o + 3][o + 1] = MINUS_ONE
            J[o + 0][o + 2] = MINUS_ONE
            J[o + 1][o + 3] = ONE
        return cls(I, J)

    def rotate(self, rot: list[list[Scalar]]) -> "QuaternionTriple":
        """New triple L'_a = sum_b rot[a][b] L_b for an exact SO(3) matrix."""
        validate_so3(rot)
        mats = (self.I, self.J, self.K)
        new = []
        for a in range(3):
            acc = zero_matrix(self.dim)
            for b in range(3):
                c = rot[a][b]
                if c:
                    acc = [[x + c * y for x, y in zip(ra, rb)]
                           for ra, rb in zip(acc, mats[b])]
            new.append(acc)
        return QuaternionTriple(*new)

    def matrices(self):
        return {"I": self.I, "J": self.J, "K": self.K}


def validate_so3(rot: list[list[Scalar]]):
    if len(rot) != 3 or any(len(r) != 3 for r in rot):
        raise StructureError("rotation must be 3x3")
    if not mat_eq(mat_mul(mat_transpose(rot), rot), identity_matrix(3)):
        raise StructureError("rotation is not orthogonal")
    from .linalg import mat_det
    if mat_det(rot) != ONE:
        raise StructureError("rotation has determinant != 1")


def so3_from_quaternion(a: int, b: int, c: int, d: int) -> list[list[Scalar]]:
    """Exact rational SO(3) matrix from an integer quaternion (a,b,c,d)."""
    n = a * a + b * b + c * c + d * d
    if n == 0:
        raise StructureError("zero quaternion")
    def q(x):
        return Scalar(x, 0, n)
    return [
        [q(a * a + b * b - c * c - d * d), q(2 * (b * c - a * d)), q(2 * (b * d + a * c))],
        [q(2 * (b * c + a * d)), q(a * a - b * b + c * c - d * d), q(2 * (c * d - a * b))],
        [q(2 * (b * d - a * c)), q(2 * (c * d + a * b)), q(a * a - b * b - c * c + d * d)],
    ]


# -- covector-level actions ---------------------------------------------------


def covector_images(matrix: list[list[Scalar]], dim: int, nvars: int) -> list[Form]:
    """1-forms M(e^i) = sum_j M[j][i] e^j for a matrix acting on components."""
    out = []
    for i in range(dim):
        out.append(Form.from_components(dim, nvars,
                                        [matrix[j][i] for j in range(dim)]))
    return out


def apply_derivation_map(form: Form, images: list[Form]) -> Form:
    """Extend a covector endomorphism as an even derivation killing functions."""
    out = Form.zero(form.dim, form.nvars)
    covs = [Form.covector(form.dim, form.nvars, i) for i in range(form.dim)]
    for blade, p in form.items():
        for t in range(len(blade)):
            factors = [covs[i] for i in blade]
            factors[t] = images[blade[t]]
            out = out + wedge_all(factors).scale_poly(p)
    return out


def apply_multiplicative_map(form: Form, images: list[Form]) -> Form:
    """Extend a covector endomorphism as an algebra map (identity on functions)."""
    out = Form.zero(form.dim, form.nvars)
    for blade, p in form.items():
        if not blade:
            out = out + Form(form.dim, form.nvars, {(): p})
            continue
        out = out + wedge_all([images[i] for i in blade]).scale_poly(p)
    return out


def derivation_extension(space, matrix, name="ad") -> GradedOperator:
    images = covector_images(matrix, space.dim, space.nvars)
    return GradedOperator.from_function(
        space, lambda f: apply_derivation_map(f, images), 0, name)


def multiplicative_extension(space, matrix, name="mult") -> GradedOperator:
    """Multiplicative extension of the contragredient of ``matrix``.

    ``matrix`` is the tangent-side endomorphism; covectors transform by
    (matrix^{-1})^T so that pairings are preserved.
    """
    contr = mat_transpose(mat_invert(matrix))
    images = covector_images(contr, space.dim, space.nvars)
    return GradedOperator.from_function(
        space, lambda f: apply_multiplicative_map(f, images), 0, name)


def multiplicative_images(matrix, dim, nvars) -> list[Form]:
    contr = mat_transpose(mat_invert(matrix))
    return covector_images(contr, dim, nvars)


def holomorphic_coframe(L: list[list[Scalar]], dim: int, nvars: int) -> list[Form]:
    """Basis of (1,0)-covectors of a complex structure L: ker(L^T - i)."""
    lt = mat_transpose(L)
    shifted = [[lt[r][c] - (IMAG if r == c else ZERO) for c in range(dim)]
               for r in range(dim)]
    cols = [{r: shifted[r][c] for r in range(dim) if shifted[r][c]}
            for c in range(dim)]
    kern = kernel_basis(cols, ncols=dim)
    out = []
    for v in kern:
        comps = [v.get(i, ZERO) for i in range(dim)]
        out.append(Form.from_components(dim, nvars, comps))
    if len(out) != dim // 2:
        raise StructureError("complex structure has wrong (1,0) eigenspace size")
    return out


# -- the su(2) (weight) action ----------------------------------------------


class Sp1Action:
    """Realized su(2) acting on the coordinatized form space.

    generators: A_I, A_J, A_K (derivation extensions of the transpose
    covector actions), raising = (A_J + i A_K)/2, lowering its conjugate,
    casimir = A_I^2 + A_J^2 + A_K^2 with eigenvalue -w(w+2) on weight-w
    irreducibles.
    """

    def __init__(self, space, triple: QuaternionTriple):
        self.space = space
        self.triple = triple
        self.A_I = derivation_extension(space, mat_transpose(triple.I), "A_I")
        self.A_J = derivation_extension(space, mat_transpose(triple.J), "A_J")
        self.A_K = derivation_extension(space, mat_transpose(triple.K), "A_K")
        self.raising = (self.A_J + self.A_K.scale(IMAG)).scale(HALF)
        self.lowering = (self.A_J - self.A_K.scale(IMAG)).scale(HALF)
        self.casimir = (self.A_I.compose(self.A_I) + self.A_J.compose(self.A_J)
                        + self.A_K.compose(self.A_K))
        self._weight_cache: dict[int, GradedOperator] = {}
        self._adI_cache: dict[int, GradedOperator] = {}

    def commutator_table_residuals(self) -> dict[str, GradedOperator]:
        """Residuals of the realized table [A_I, A_J] + 2 A_K (cyclic)."""
        two = Scalar(2)
        return {
            "[A_I,A_J]+2A_K": self.A_I.supercommutator(self.A_J) + self.A_K.scale(two),
            "[A_J,A_K]+2A_I": self.A_J.supercommutator(self.A_K) + self.A_I.scale(two),
            "[A_K,A_I]+2A_J": self.A_K.supercommutator(self.A_I) + self.A_J.scale(two),
        }

    def max_weight(self) -> int:
        return self.space.dim // 2

    def weight_projector(self, w: int) -> GradedOperator:
        """Projector onto the weight-w isotypic part, exact Lagrange form."""
        if w not in self._weight_cache:
            if w < 0 or w > self.max_weight():
                self._weight_cache[w] = GradedOperator.zero(self.space)
            else:
                cands = list(range(self.max_weight() + 1))
                eig = {u: Scalar(-u * (u + 2)) for u in cands}
                self._weight_cache[w] = _lagrange_projector(self.casimir, eig, w)
        return self._weight_cache[w]

    def weight_component(self, form: Form, w: int) -> Form:
        return self.weight_projector(w).apply(form)

    def weight_split(self, form: Form) -> dict[int, Form]:
        out = {}
        for w in range(self.max_weight() + 1):
            part = self.weight_component(form, w)
            if part:
                out[w] = part
        return out

    def adI_eigen_projector(self, s: int) -> GradedOperator:
        """Projector onto the A_I-eigenvalue s*sqrt(-1) subspace."""
        if s not in self._adI_cache:
            m = self.max_weight()
            eig = {u: Scalar(0, u) for u in range(-m, m + 1)}
            self._adI_cache[s] = _lagrange_projector(self.A_I, eig, s)
        return self._adI_cache[s]

    def bigrade_projector(self, p: int, q: int) -> GradedOperator:
        """Projector onto (p, q)-forms with respect to I."""
        proj = self.adI_eigen_projector(p - q)
        return _degree_filter(proj, p + q)

    def bigrade_component(self, form: Form, p: int, q: int) -> Form:
        return self.bigrade_projector(p, q).apply(form.degree_part(p + q))

    def plus_projector(self, k: int) -> GradedOperator:
        """Weight-k ("plus") part of degree k; zero once k exceeds half dim."""
        return _degree_filter(self.weight_projector(k), k)

    def plus_bigrade_projector(self, p: int, q: int) -> GradedOperator:
        return self.weight_projector(p + q).compose(self.bigrade_projector(p, q))

    def plus_bigrade_iso(self, p: int, q: int) -> GradedOperator:
        """Isomorphism of the top-weight (p, q) part onto (p+q, 0)-forms.

        Raising by q steps, normalized by (i/2)^q so the standard Hermitian
        form of I maps to the canonical (2,0)-form of the triple.
        """
        step = self.raising.scale(IMAG * HALF)
        out = self.plus_bigrade_projector(p, q)
        for _ in range(q):
            out = step.compose(out)
        return out


def _degree_filter(op: GradedOperator, k: int) -> GradedOperator:
    cols = [op.cols[j] if op.space.degree_of_index(j) == k else {}
            for j in range(op.space.size)]
    return GradedOperator(op.space, op.shift, cols, f"{op.name}|deg{k}")


def _lagrange_projector(op: GradedOperator, eigenvalues: dict[int, Scalar],
                        target: int) -> GradedOperator:
    """prod_{u != target} (op - lam_u) / (lam_target - lam_u), exact."""
    space = op.space
    out = GradedOperator.identity(space)
    lam_t = eigenvalues[target]
    for u, lam in eigenvalues.items():
        if u == target:
            continue
        factor = op - GradedOperator.scalar_multiple(space, lam)
        out = factor.compose(out).scale((lam_t - lam).inverse())
    return out
