"""Exact scalars over the Gaussian rationals Q(i).

Every quantity in the library is a ``Scalar``: a number (a + b*i)/d with
integer a, b and positive integer d, kept fully reduced (gcd(a, b, d) == 1).
This normal form makes equality, hashing and zero tests exact and cheap,
which the rest of the package leans on heavily (echelon pivots, operator
comparisons at zero tolerance).

No floats anywhere.  Conversion helpers exist only for serialization
("p/q" strings) and for interop with Fraction-based oracles in tests.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class Scalar:
    """Gaussian rational (a + b*i)/d in lowest terms, d > 0."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: int = 0, b: int = 0, d: int = 1):
        if d == 0:
            raise ZeroDivisionError("scalar with zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        self.a = a
        self.b = b
        self.d = d

    # -- constructors ---------------------------------------------------

    @staticmethod
    def _raw(a: int, b: int, d: int) -> "Scalar":
        # caller guarantees normal form
        s = object.__new__(Scalar)
        s.a = a
        s.b = b
        s.d = d
        return s

    @classmethod
    def from_fraction(cls, re: Fraction, im: Fraction = Fraction(0)) -> "Scalar":
        den = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return cls(re.numerator * (den // re.denominator),
                   im.numerator * (den // im.denominator), den)

    @classmethod
    def parse(cls, value) -> "Scalar":
        """Accept int, Scalar, "p/q" strings, or {"re": .., "im": ..} dicts."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, str):
            return cls.from_fraction(Fraction(value))
        if isinstance(value, dict):
            re = Fraction(value.get("re", 0))
            im = Fraction(value.get("im", 0))
            return cls.from_fraction(re, im)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return cls.from_fraction(Fraction(value[0]), Fraction(value[1]))
        raise TypeError(f"cannot parse scalar from {value!r}")

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        return Scalar(self.a * other.d + other.a * self.d,
                      self.b * other.d + other.b * self.d,
                      self.d * other.d)

    def __sub__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        return Scalar(self.a * other.d - other.a * self.d,
                      self.b * other.d - other.b * self.d,
                      self.d * other.d)

    def __mul__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        return Scalar(self.a * other.a - self.b * other.b,
                      self.a * other.b + self.b * other.a,
                      self.d * other.d)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        n = other.a * other.a + other.b * other.b
        if n == 0:
            raise ZeroDivisionError("division by zero scalar")
        # 1/((a+bi)/d) = d*(a-bi)/(a^2+b^2)
        return Scalar((self.a * other.a + self.b * other.b) * other.d,
                      (self.b * other.a - self.a * other.b) * other.d,
                      self.d * n)

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.a, -self.b, self.d)

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return ONE / self.__pow__(-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.a, -self.b, self.d)

    def inverse(self) -> "Scalar":
        return ONE / self

    # -- predicates / views ----------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_real(self) -> bool:
        return self.b == 0

    def is_one(self) -> bool:
        return self.a == self.d and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def real(self) -> Fraction:
        return Fraction(self.a, self.d)

    def imag(self) -> Fraction:
        return Fraction(self.b, self.d)

    def real_sign(self) -> int:
        """Sign of the real part (value must be real)."""
        if self.b != 0:
            raise ValueError(f"sign of non-real scalar {self}")
        return (self.a > 0) - (self.a < 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.d == 1 and self.b == 0 and self.a == other
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    # -- formatting --------------------------------------------------------

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        if self.b == 0:
            return _frac_str(self.a, self.d)
        if self.a == 0:
            return f"{_frac_str(self.b, self.d)}*i"
        op = "+" if self.b > 0 else "-"
        return f"({_frac_str(self.a, self.d)} {op} {_frac_str(abs(self.b), self.d)}*i)"

    def to_json(self):
        """Canonical JSON view: "p/q" for real values, {re, im} otherwise."""
        if self.b == 0:
            return _frac_str(self.a, self.d)
        return {"re": _frac_str(self.a, self.d), "im": _frac_str(self.b, self.d)}


def _frac_str(num: int, den: int) -> str:
    return str(num) if den == 1 else f"{num}/{den}"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
MINUS_ONE = Scalar(-1)
HALF = Scalar(1, 0, 2)


def rational(p: int, q: int = 1) -> Scalar:
    return Scalar(p, 0, q)


def imaginary(p: int, q: int = 1) -> Scalar:
    return Scalar(0, p, q)


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    if x < 0:
        raise ValueError("square root of negative rational")
    from math import isqrt
    pn, pd = x.numerator, x.denominator
    rn, rd = isqrt(pn), isqrt(pd)
    if rn * rn == pn and rd * rd == pd:
        return Fraction(rn, rd)
    return None
