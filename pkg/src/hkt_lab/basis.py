"""Finite coordinatizations of form spaces.

FormBasis enumerates blade x monomial pairs up to a polynomial degree cap
(cap 0 = constant coefficients, the left-invariant case).  Coordinates are
exact; a form whose support escapes the enumeration raises ProjectionError
rather than being truncated, so no operator comparison can silently lose
terms.

SubspaceBasis coordinatizes a span of homogeneous forms inside an ambient
FormBasis (used for the holomorphic-side complex and for harmonic spaces).
"""

from __future__ import annotations

from itertools import combinations

from .errors import DimensionError, ProjectionError
from .forms import Form
from .linalg import Echelon, Vec
from .poly import Polynomial
from .scalars import Scalar


def monomials_up_to(nvars: int, max_degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples with total degree <= max_degree, graded lex."""
    if nvars == 0:
        return [()]
    out: list[tuple[int, ...]] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for k in range(remaining + 1):
            rec(prefix + (k,), remaining - k, slots - 1)

    for total in range(max_degree + 1):
        start = len(out)
        rec((), total, nvars)
        out[start:] = sorted(out[start:])
    return out


class FormBasis:
    """Ordered basis {monomial * blade} of the truncated form space."""

    def __init__(self, dim: int, nvars: int, max_poly_degree: int = 0):
        self.dim = dim
        self.nvars = nvars
        self.max_poly_degree = max_poly_degree
        monos = monomials_up_to(nvars, max_poly_degree)
        self.elements: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        for k in range(dim + 1):
            for blade in combinations(range(dim), k):
                for mono in monos:
                    self.elements.append((blade, mono))
        self.index = {el: i for i, el in enumerate(self.elements)}
        self._by_degree: dict[int, list[int]] = {}
        for i, (blade, _) in enumerate(self.elements):
            self._by_degree.setdefault(len(blade), []).append(i)

    @property
    def size(self) -> int:
        return len(self.elements)

    def degree_of_index(self, i: int) -> int:
        return len(self.elements[i][0])

    def indices_of_degree(self, k: int) -> list[int]:
        return self._by_degree.get(k, [])

    def degrees(self) -> list[int]:
        return sorted(self._by_degree)

    def element_form(self, i: int) -> Form:
        blade, mono = self.elements[i]
        return Form(self.dim, self.nvars,
                    {blade: Polynomial.monomial(mono) if self.nvars else
                     Polynomial.constant(0, Scalar(1))})

    def to_coords(self, form: Form) -> Vec:
        if form.dim != self.dim or form.nvars != self.nvars:
            raise DimensionError("form does not live on this frame")
        vec: Vec = {}
        for blade, p in form.items():
            for mono, c in p.items():
                i = self.index.get((blade, mono))
                if i is None:
                    raise ProjectionError(
                        f"term {mono} * e{list(blade)} escapes the degree-"
                        f"{self.max_poly_degree} enumeration")
                vec[i] = c
        return vec

    def from_coords(self, vec: Vec) -> Form:
        coeffs: dict[tuple[int, ...], Polynomial] = {}
        for i, c in vec.items():
            blade, mono = self.elements[i]
            p = coeffs.get(blade)
            term = Polynomial.monomial(mono, c) if self.nvars else \
                Polynomial.constant(0, c)
            coeffs[blade] = p + term if p is not None else term
        return Form(self.dim, self.nvars,
                    {b: p for b, p in coeffs.items() if p})

    def contains(self, form: Form) -> bool:
        try:
            self.to_coords(form)
            return True
        except ProjectionError:
            return False


class SubspaceBasis:
    """Span of homogeneous forms, coordinatized inside an ambient basis."""

    def __init__(self, ambient: FormBasis, spanning: list[Form]):
        self.ambient = ambient
        self.dim = ambient.dim
        self.nvars = ambient.nvars
        self.forms: list[Form] = []
        self._degrees: list[int] = []
        self._ech = Echelon()
        for f in spanning:
            deg = f.homogeneous_degree()
            if deg is None and f:
                raise DimensionError("subspace spanning forms must be homogeneous")
            vec = ambient.to_coords(f)
            if self._ech.add(vec, len(self.forms)):
                self.forms.append(f)
                self._degrees.append(deg if deg is not None else 0)
        self._by_degree: dict[int, list[int]] = {}
        for i, d in enumerate(self._degrees):
            self._by_degree.setdefault(d, []).append(i)

    @property
    def size(self) -> int:
        return len(self.forms)

    def degree_of_index(self, i: int) -> int:
        return self._degrees[i]

    def indices_of_degree(self, k: int) -> list[int]:
        return self._by_degree.get(k, [])

    def degrees(self) -> list[int]:
        return sorted(self._by_degree)

    def element_form(self, i: int) -> Form:
        return self.forms[i]

    def to_coords(self, form: Form) -> Vec:
        vec = self.ambient.to_coords(form)
        combo = self._ech.coordinates(vec)
        if combo is None:
            raise ProjectionError("form lies outside the subspace")
        return combo

    def from_coords(self, vec: Vec) -> Form:
        out = Form.zero(self.dim, self.nvars)
        for i, c in vec.items():
            out = out + self.forms[i].scale(c)
        return out

    def contains(self, form: Form) -> bool:
        try:
            self.to_coords(form)
            return True
        except ProjectionError:
            return False
