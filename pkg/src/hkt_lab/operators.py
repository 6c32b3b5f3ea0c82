"""Graded operators as exact sparse matrices over a form basis.

A GradedOperator is a linear endomorphism of the coordinatized form space
with a definite degree shift; parity is the shift mod 2.  Operators are
built from functions on forms (columns = images of basis elements) and then
combined matrix-side, so identities are checked as exact matrix equalities.

supercommutator implements [A, B] = AB - (-1)^{|A||B|} BA, the graded
bracket used throughout the superalgebra machinery.
"""

from __future__ import annotations

from typing import Callable

from .errors import DimensionError
from .forms import Form
from .linalg import (Echelon, Vec, kernel_basis, rank_columns, vec_axpy,
                     vec_scale)
from .scalars import ONE, Scalar


class GradedOperator:
    __slots__ = ("space", "shift", "cols", "name")

    def __init__(self, space, shift: int, cols: list[Vec], name: str = "?"):
        self.space = space
        self.shift = shift
        self.cols = cols
        self.name = name

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_function(cls, space, fn: Callable[[Form], Form], shift: int,
                      name: str = "?") -> "GradedOperator":
        cols = []
        for i in range(space.size):
            image = fn(space.element_form(i))
            cols.append(space.to_coords(image))
        return cls(space, shift, cols, name)

    @classmethod
    def zero(cls, space, shift: int = 0) -> "GradedOperator":
        return cls(space, shift, [{} for _ in range(space.size)], "0")

    @classmethod
    def identity(cls, space) -> "GradedOperator":
        return cls(space, 0, [{i: ONE} for i in range(space.size)], "id")

    @classmethod
    def wedge_by(cls, space, form: Form, name: str = "?") -> "GradedOperator":
        deg = form.homogeneous_degree()
        if deg is None:
            deg = 0 if form.is_zero() else max(form.degrees())
        return cls.from_function(space, lambda x: form.wedge(x), deg, name)

    @classmethod
    def scalar_multiple(cls, space, c: Scalar) -> "GradedOperator":
        return cls(space, 0, [{i: c} if c else {} for i in range(space.size)],
                   f"{c}*id")

    # -- parity / shape ----------------------------------------------------

    @property
    def parity(self) -> int:
        return self.shift % 2

    def _check(self, other: "GradedOperator"):
        if self.space is not other.space:
            raise DimensionError("operators over different bases")

    # -- algebra -----------------------------------------------------------

    def apply(self, form: Form) -> Form:
        vec = self.space.to_coords(form)
        out: Vec = {}
        for j, c in vec.items():
            out = vec_axpy(out, c, self.cols[j])
        return self.space.from_coords(out)

    def compose(self, other: "GradedOperator") -> "GradedOperator":
        """self after other."""
        self._check(other)
        cols = []
        for col in other.cols:
            out: Vec = {}
            for k, c in col.items():
                out = vec_axpy(out, c, self.cols[k])
            cols.append(out)
        return GradedOperator(self.space, self.shift + other.shift, cols,
                              f"({self.name}.{other.name})")

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._check(other)
        if self.shift != other.shift:
            # mixed-degree sums are legal linear maps; shift becomes meaningless
            raise DimensionError(
                f"sum of operators with different shifts {self.shift} vs {other.shift}")
        cols = [vec_axpy(a, ONE, b) for a, b in zip(self.cols, other.cols)]
        return GradedOperator(self.space, self.shift, cols,
                              f"({self.name}+{other.name})")

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + (-other)

    def __neg__(self) -> "GradedOperator":
        return self.scale(Scalar(-1))

    def scale(self, c: Scalar) -> "GradedOperator":
        return GradedOperator(self.space, self.shift,
                              [vec_scale(col, c) for col in self.cols],
                              f"({c}*{self.name})")

    def supercommutator(self, other: "GradedOperator") -> "GradedOperator":
        """[A, B] = A B - (-1)^{|A| |B|} B A (anticommutator for odd-odd)."""
        self._check(other)
        ab = self.compose(other)
        ba = other.compose(self)
        sign = -1 if (self.parity and other.parity) else 1
        cols = [vec_axpy(x, Scalar(-sign), y) for x, y in zip(ab.cols, ba.cols)]
        return GradedOperator(self.space, self.shift + other.shift, cols,
                              f"[{self.name},{other.name}]")

    def power(self, k: int) -> "GradedOperator":
        out = GradedOperator.identity(self.space)
        for _ in range(k):
            out = self.compose(out)
        return out

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return self.space is other.space and self.cols == other.cols

    def equals(self, other: "GradedOperator") -> bool:
        self._check(other)
        return self.cols == other.cols

    def __hash__(self):
        return hash((id(self.space), self.shift,
                     tuple(frozenset(c.items()) for c in self.cols)))

    # -- views -----------------------------------------------------------------

    def flatten(self) -> Vec:
        """Matrix as a sparse vector keyed by flat int row*size + col."""
        n = self.space.size
        out: Vec = {}
        for j, col in enumerate(self.cols):
            for i, c in col.items():
                out[i * n + j] = c
        return out

    def conj_transpose(self) -> "GradedOperator":
        """Plain conjugate transpose (adjoint for an orthonormal basis)."""
        cols: list[Vec] = [{} for _ in range(self.space.size)]
        for j, col in enumerate(self.cols):
            for i, c in col.items():
                cols[i][j] = c.conjugate()
        return GradedOperator(self.space, -self.shift, cols, f"{self.name}^*")

    def block_columns(self, degree: int) -> list[Vec]:
        return [self.cols[j] for j in self.space.indices_of_degree(degree)]

    def kernel_in_degree(self, degree: int) -> list[Form]:
        """Basis of ker(self) within the given form degree."""
        idxs = self.space.indices_of_degree(degree)
        cols = [self.cols[j] for j in idxs]
        kern = kernel_basis(cols, ncols=len(cols))
        out = []
        for v in kern:
            out.append(self.space.from_coords({idxs[j]: c for j, c in v.items()}))
        return out

    def rank_in_degree(self, degree: int) -> int:
        return rank_columns(self.block_columns(degree))

    def rank(self) -> int:
        return rank_columns(self.cols)

    def image_echelon(self) -> Echelon:
        ech = Echelon()
        for j, col in enumerate(self.cols):
            ech.add(col, j)
        return ech

    def restrict(self, subspace) -> "GradedOperator":
        """Matrix of self on a SubspaceBasis (must map the span into itself)."""
        cols = []
        for i in range(subspace.size):
            image = self.apply(subspace.element_form(i))
            cols.append(subspace.to_coords(image))
        return GradedOperator(subspace, self.shift, cols, self.name)

    def __repr__(self) -> str:
        nz = sum(len(c) for c in self.cols)
        return f"GradedOperator({self.name}, shift={self.shift}, nnz={nz})"
