"""Sparse polynomials with Gaussian-rational coefficients.

A Polynomial in ``nvars`` variables is a zero-free mapping from exponent
tuples to Scalar.  The left-invariant (Lie algebra) backend only ever uses
constants (nvars == 0), the flat backend uses genuine polynomials; keeping
one representation for both means every operator upstream is written once.

Conjugation treats the variables as real coordinates: it conjugates the
coefficients only.
"""

from __future__ import annotations

from typing import Iterator

from .errors import DimensionError
from .scalars import ONE, Scalar


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], Scalar] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Scalar] = {}
        if terms:
            for expo, c in terms.items():
                if len(expo) != nvars:
                    raise DimensionError(f"exponent {expo} has wrong arity for {nvars} variables")
                if c:
                    clean[expo] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Polynomial":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = {(0,) * nvars: value} if value else {}
        return p

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise DimensionError(f"variable {index} out of range for {nvars} variables")
        expo = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {expo: ONE})

    @classmethod
    def monomial(cls, expo: tuple[int, ...], coeff: Scalar = ONE) -> "Polynomial":
        return cls(len(expo), {expo: coeff})

    # -- ring operations --------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise DimensionError("polynomials over different variable sets")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for expo, c in other.terms.items():
            s = out.get(expo)
            if s is None:
                out[expo] = c
            else:
                s = s + c
                if s:
                    out[expo] = s
                else:
                    del out[expo]
        p = object.__new__(Polynomial)
        p.nvars = self.nvars
        p.terms = out
        return p

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        p = object.__new__(Polynomial)
        p.nvars = self.nvars
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out: dict[tuple[int, ...], Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    out[e] = c
                else:
                    s = s + c
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        p = object.__new__(Polynomial)
        p.nvars = self.nvars
        p.terms = out
        return p

    def scale(self, c: Scalar) -> "Polynomial":
        if not c:
            return Polynomial.constant(self.nvars, c)
        p = object.__new__(Polynomial)
        p.nvars = self.nvars
        p.terms = {e: v * c for e, v in self.terms.items()}
        return p

    def conjugate(self) -> "Polynomial":
        p = object.__new__(Polynomial)
        p.nvars = self.nvars
        p.terms = {e: c.conjugate() for e, c in self.terms.items()}
        return p

    def diff(self, index: int) -> "Polynomial":
        """Partial derivative with respect to variable ``index``."""
        out: dict[tuple[int, ...], Scalar] = {}
        for expo, c in self.terms.items():
            k = expo[index]
            if k == 0:
                continue
            e = expo[:index] + (k - 1,) + expo[index + 1:]
            nc = c * Scalar(k)
            s = out.get(e)
            out[e] = s + nc if s is not None else nc
        return Polynomial(self.nvars, out)

    # -- predicates / views ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(all(k == 0 for k in e) for e in self.terms)

    def constant_value(self) -> Scalar:
        if not self.terms:
            return Scalar(0)
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention here."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def items(self) -> Iterator[tuple[tuple[int, ...], Scalar]]:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for expo in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[expo]
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}"
                            for i, k in enumerate(expo) if k)
            if mono:
                bits.append(f"{c}*{mono}")
            else:
                bits.append(str(c))
        return " + ".join(bits)
