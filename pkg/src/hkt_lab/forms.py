"""Differential forms with polynomial coefficients, all arithmetic exact.

A Form on a ``dim``-dimensional frame is a zero-free mapping from blades
(strictly increasing tuples of covector indices) to Polynomial coefficients.
Forms may be inhomogeneous; graded code asks for degree parts explicitly.

Blade products are computed by merging index tuples and counting
inversions, so wedge signs are exact by construction.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import DimensionError
from .poly import Polynomial
from .scalars import ONE, Scalar


def merge_blades(b1: tuple[int, ...], b2: tuple[int, ...]):
    """Merge two strictly increasing blades; returns (sign, blade).

    sign is 0 when the blades share an index.  The sign counts the
    transpositions needed to sort the concatenation b1 + b2.
    """
    if not b1:
        return 1, b2
    if not b2:
        return 1, b1
    out = []
    i = j = 0
    inversions = 0
    n1, n2 = len(b1), len(b2)
    while i < n1 and j < n2:
        x, y = b1[i], b2[j]
        if x == y:
            return 0, None
        if x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
            inversions += n1 - i
    out.extend(b1[i:])
    out.extend(b2[j:])
    return (1 if inversions % 2 == 0 else -1), tuple(out)


def complement_blade(blade: tuple[int, ...], dim: int) -> tuple[int, ...]:
    s = set(blade)
    return tuple(i for i in range(dim) if i not in s)


class Form:
    __slots__ = ("dim", "nvars", "coeffs")

    def __init__(self, dim: int, nvars: int,
                 coeffs: dict[tuple[int, ...], Polynomial] | None = None):
        self.dim = dim
        self.nvars = nvars
        clean: dict[tuple[int, ...], Polynomial] = {}
        if coeffs:
            for blade, p in coeffs.items():
                if any(not 0 <= k < dim for k in blade):
                    raise DimensionError(f"blade {blade} out of range for dim {dim}")
                if any(blade[t] >= blade[t + 1] for t in range(len(blade) - 1)):
                    raise DimensionError(f"blade {blade} is not strictly increasing")
                if p.nvars != nvars:
                    raise DimensionError("coefficient over wrong variable set")
                if p:
                    clean[blade] = p
        self.coeffs = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, dim: int, nvars: int) -> "Form":
        return cls(dim, nvars)

    @classmethod
    def scalar(cls, dim: int, nvars: int, value) -> "Form":
        """0-form from a Scalar or Polynomial."""
        if isinstance(value, Scalar):
            value = Polynomial.constant(nvars, value)
        return cls(dim, nvars, {(): value})

    @classmethod
    def covector(cls, dim: int, nvars: int, index: int, coeff: Scalar = ONE) -> "Form":
        return cls(dim, nvars, {(index,): Polynomial.constant(nvars, coeff)})

    @classmethod
    def from_components(cls, dim: int, nvars: int, components) -> "Form":
        """1-form sum_i components[i] * e^i; entries Scalar or Polynomial."""
        coeffs = {}
        for i, c in enumerate(components):
            if isinstance(c, Scalar):
                c = Polynomial.constant(nvars, c)
            if c:
                coeffs[(i,)] = c
        return cls(dim, nvars, coeffs)

    @classmethod
    def blade(cls, dim: int, nvars: int, indices: tuple[int, ...],
              coeff: Scalar = ONE) -> "Form":
        return cls(dim, nvars, {tuple(indices): Polynomial.constant(nvars, coeff)})

    # -- linear structure --------------------------------------------------

    def _check(self, other: "Form"):
        if self.dim != other.dim or self.nvars != other.nvars:
            raise DimensionError("forms live on different frames")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.coeffs)
        for blade, p in other.coeffs.items():
            q = out.get(blade)
            if q is None:
                out[blade] = p
            else:
                q = q + p
                if q:
                    out[blade] = q
                else:
                    del out[blade]
        return self._raw(out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return self._raw({b: -p for b, p in self.coeffs.items()})

    def scale(self, c: Scalar) -> "Form":
        if not c:
            return Form(self.dim, self.nvars)
        return self._raw({b: p.scale(c) for b, p in self.coeffs.items()})

    def scale_poly(self, q: Polynomial) -> "Form":
        out = {}
        for b, p in self.coeffs.items():
            r = p * q
            if r:
                out[b] = r
        return self._raw(out)

    def conjugate(self) -> "Form":
        return self._raw({b: p.conjugate() for b, p in self.coeffs.items()})

    def _raw(self, coeffs: dict[tuple[int, ...], Polynomial]) -> "Form":
        f = object.__new__(Form)
        f.dim = self.dim
        f.nvars = self.nvars
        f.coeffs = coeffs
        return f

    # -- multiplication -----------------------------------------------------

    def wedge(self, other: "Form") -> "Form":
        self._check(other)
        out: dict[tuple[int, ...], Polynomial] = {}
        for b1, p1 in self.coeffs.items():
            for b2, p2 in other.coeffs.items():
                sign, blade = merge_blades(b1, b2)
                if sign == 0:
                    continue
                p = p1 * p2
                if sign < 0:
                    p = -p
                q = out.get(blade)
                if q is None:
                    if p:
                        out[blade] = p
                else:
                    q = q + p
                    if q:
                        out[blade] = q
                    else:
                        del out[blade]
        return self._raw(out)

    def wedge_power(self, k: int) -> "Form":
        out = Form.scalar(self.dim, self.nvars, ONE)
        for _ in range(k):
            out = out.wedge(self)
        return out

    # -- grading ------------------------------------------------------------

    def degree_part(self, k: int) -> "Form":
        return self._raw({b: p for b, p in self.coeffs.items() if len(b) == k})

    def degrees(self) -> set[int]:
        return {len(b) for b in self.coeffs}

    def homogeneous_degree(self) -> int | None:
        """Degree if homogeneous (zero form reports None too)."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    # -- views ----------------------------------------------------------------

    def coefficient(self, blade: tuple[int, ...]) -> Polynomial:
        return self.coeffs.get(tuple(blade), Polynomial.constant(self.nvars, Scalar(0)))

    def one_form_components(self) -> list[Polynomial]:
        """Components of a 1-form (inhomogeneous input is an error)."""
        if any(len(b) != 1 for b in self.coeffs):
            raise DimensionError("not a 1-form")
        zero = Polynomial.constant(self.nvars, Scalar(0))
        comps = [zero] * self.dim
        for (i,), p in self.coeffs.items():
            comps[i] = p
        return comps

    def items(self) -> Iterator[tuple[tuple[int, ...], Polynomial]]:
        return iter(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.dim == other.dim and self.nvars == other.nvars
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.dim, self.nvars, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        return f"Form({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for blade in sorted(self.coeffs, key=lambda b: (len(b), b)):
            p = self.coeffs[blade]
            name = "^".join(f"e{i}" for i in blade) if blade else "1"
            bits.append(f"({p})*{name}" if not _is_plain_one(p) else name)
        return " + ".join(bits)


def _is_plain_one(p: Polynomial) -> bool:
    return p.is_constant() and p.constant_value().is_one()


def wedge_all(factors: Iterable[Form]) -> Form:
    """Wedge product of a non-empty sequence of forms, left to right."""
    it = iter(factors)
    out = next(it)
    for f in it:
        out = out.wedge(f)
    return out
