"""Exact scalars: rationals and elements of real quadratic fields Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` values.  Irrationals are
:class:`Quadratic` instances ``a + b*sqrt(d)`` with ``b != 0``; any operation
whose result has a vanishing irrational part collapses back to ``Fraction``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Union


class ScalarError(ArithmeticError):
    pass


class MixedFields(ScalarError):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


def _squarefree_part(d: int) -> tuple[int, int]:
    """Return (k, r) with d = k*k*r and r square-free."""
    if d <= 0:
        raise ValueError(f"need a positive radicand, got {d}")
    k, r = 1, d
    p = 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            k *= p
        p += 1
    return k, r


class Quadratic:
    """a + b*sqrt(d) with rational a, b (b != 0) and square-free d >= 2."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)
        if self.b == 0:
            raise ValueError("Quadratic with b == 0; use Fraction")
        k, r = _squarefree_part(self.d)
        if r == 1 or k != 1:
            raise ValueError(f"radicand {d} is not square-free")

    @staticmethod
    def make(a, b, d: int) -> "Scalar":
        """Build a + b*sqrt(d) for any positive d, reducing to canonical form."""
        a, b = Fraction(a), Fraction(b)
        k, r = _squarefree_part(int(d))
        b *= k
        if b == 0 or r == 1:
            return tidy(a + b)
        return Quadratic(a, b, r)

    # conversions -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Quadratic):
            if other.d != self.d:
                raise MixedFields(f"sqrt({self.d}) mixed with sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def conjugate(self) -> "Quadratic":
        return Quadratic(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.d ** 0.5

    # arithmetic --------------------------------------------------------

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Quadratic.make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Quadratic(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Quadratic.make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Quadratic.make(c[0] - self.a, c[1] - self.b, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        x, y = c
        return Quadratic.make(self.a * x + self.b * y * self.d, self.a * y + self.b * x, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "Quadratic":
        # the norm never vanishes: d is not a perfect square and b != 0
        n = self.norm()
        return Quadratic(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, Quadratic):
            return self * other.inverse()
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        if c[0] == 0:
            raise DivisionByZero("division by zero")
        return Quadratic(self.a / c[0], self.b / c[0], self.d)

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self.inverse() * c[0]

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # order -------------------------------------------------------------

    def sign(self) -> int:
        a, b = self.a, self.b
        if a >= 0 and b > 0:
            return 1
        if a <= 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d (never equal)
        bigger_rational = a * a > b * b * self.d
        if a > 0:
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1

    def _cmp(self, other) -> int:
        diff = self - other
        return sign(diff)

    def __eq__(self, other):
        if isinstance(other, Quadratic):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash(("Q", self.a, self.b, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Quadratic({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, Quadratic]


def to_scalar(x) -> Scalar:
    if isinstance(x, Quadratic):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not exact scalars")
    if isinstance(x, int):
        return x
    return tidy(Fraction(x))


def tidy(x):
    """Integral rationals become ``int`` so hot loops stay on machine-friendly types."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def div(x, y) -> Scalar:
    """Exact quotient, keeping integers as ``int`` where possible."""
    if y == 0:
        raise DivisionByZero("division by zero")
    if type(x) is int and type(y) is int:
        return tidy(Fraction(x, y))
    return tidy(x / y)


def sign(x) -> int:
    if isinstance(x, Quadratic):
        return x.sign()
    return (x > 0) - (x < 0)


def is_integer(x) -> bool:
    return not isinstance(x, Quadratic) and Fraction(x).denominator == 1


def arith(op: str, x, y) -> Scalar:
    """Dispatch ``op`` in {add, sub, mul, div} on two scalars."""
    x, y = to_scalar(x), to_scalar(y)
    if op == "add":
        return tidy(x + y)
    if op == "sub":
        return tidy(x - y)
    if op == "mul":
        return tidy(x * y)
    if op == "div":
        if y == 0:
            raise DivisionByZero("division by zero")
        if isinstance(x, int) and isinstance(y, int):
            return tidy(Fraction(x, y))
        return tidy(x / y)
    raise ValueError(f"unknown operation {op!r}")


def sort_key(x) -> tuple:
    """Total order used for canonical forms: every rational sorts before every
    quadratic; rationals by value, quadratics by (d, a, b)."""
    if isinstance(x, Quadratic):
        return (1, x.d, x.a, x.b)
    return (0, x)


def field_of(values) -> int:
    """Radicand shared by the irrational values (1 when all are rational)."""
    d = 1
    for v in values:
        if isinstance(v, Quadratic):
            if d not in (1, v.d):
                raise MixedFields(f"sqrt({d}) mixed with sqrt({v.d})")
            d = v.d
    return d


# text encoding ---------------------------------------------------------

_RAT = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_QUAD = re.compile(
    r"^\s*\(\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*(\d+)\s*$"
)


def parse_scalar(text: str) -> Scalar:
    m = _RAT.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return tidy(Fraction(int(m.group(1)), den))
    m = _QUAD.match(text)
    if m:
        p, s, q, d, r = m.groups()
        q = int(q) if s == "+" else -int(q)
        if int(r) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Quadratic.make(Fraction(int(p), int(r)), Fraction(q, int(r)), int(d))
    raise ValueError(f"cannot parse scalar {text!r}")


def format_scalar(x) -> str:
    if isinstance(x, Quadratic):
        r = x.a.denominator * x.b.denominator // _gcd(x.a.denominator, x.b.denominator)
        p = x.a * r
        q = x.b * r
        sgn = "+" if q > 0 else "-"
        return f"({int(p)} {sgn} {abs(int(q))}*sqrt({x.d}))/{r}"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def quadratic_roots(a, b, c) -> tuple[Scalar, Scalar]:
    """Real roots of a*x^2 + b*x + c (a != 0), smaller first."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    disc = b * b - 4 * a * c
    if disc < 0:
        raise ValueError("complex roots")
    # sqrt(disc) = sqrt(num*den)/den
    num, den = disc.numerator, disc.denominator
    rad = num * den
    s = isqrt(rad)
    if s * s == rad:
        root = Fraction(s, den)
        r1, r2 = (-b - root) / (2 * a), (-b + root) / (2 * a)
    else:
        r1 = Quadratic.make(-b / (2 * a), Fraction(-1, den) / (2 * a), rad)
        r2 = Quadratic.make(-b / (2 * a), Fraction(1, den) / (2 * a), rad)
    return (r1, r2) if r1 <= r2 else (r2, r1)
