"""Exact scalars over Q and Q(i).

Rationals are plain :class:`fractions.Fraction` values, which already keep
a reduced numerator and a positive denominator.  Gaussian rationals are
:class:`GaussianRational`, a pair of Fractions.  The two never mix: any
binary operation between them raises :class:`FieldMismatchError`.  Bare
Python ints are accepted as untagged literals and coerced into whichever
field they meet.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import DivisionByZero, ExactArithmeticError, FieldMismatchError, ParseError

RATIONAL = "rational"
GAUSSIAN = "gaussian"
FIELDS = (RATIONAL, GAUSSIAN)


def normalize(num: int, den: int) -> Fraction:
    """Reduced rational num/den with a positive denominator."""
    if den == 0:
        raise DivisionByZero(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


@total_ordering
class GaussianRational:
    """re + im*i with rational parts; ordered lexicographically on (re, im)."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational) or isinstance(im, GaussianRational):
            raise FieldMismatchError("GaussianRational parts must be rational")
        self.re = Fraction(re)
        self.im = Fraction(im)
        self._hash = None

    @classmethod
    def _new(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        obj._hash = None
        return obj

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, int):
            return GaussianRational._new(Fraction(other), Fraction(0))
        if isinstance(other, Fraction):
            raise FieldMismatchError("cannot combine GaussianRational with Fraction")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        return GaussianRational._new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        norm = c * c + d * d
        if not norm:
            raise DivisionByZero("division by zero GaussianRational")
        return GaussianRational._new((a * c + b * d) / norm, (b * c - a * d) / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational._new(Fraction(1), Fraction(0)) / (self ** -k)
        result = GaussianRational._new(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._new(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, GaussianRational):
            return (self.re, self.im) < (other.re, other.im)
        if isinstance(other, Fraction):
            raise FieldMismatchError("cannot order GaussianRational against Fraction")
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((GAUSSIAN, self.re, self.im))
        return h

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        return format_scalar(self)

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))


Scalar = Union[Fraction, GaussianRational]


def field_of(x) -> str:
    if isinstance(x, GaussianRational):
        return GAUSSIAN
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return RATIONAL
    raise FieldMismatchError(f"not an exact scalar: {x!r}")


def check_same_field(x, y) -> str:
    fx, fy = field_of(x), field_of(y)
    if fx != fy:
        raise FieldMismatchError(f"mixed fields: {fx} and {fy}")
    return fx


def to_field(x, field: str) -> Scalar:
    """Coerce an int, Fraction, or GaussianRational into ``field``.

    Only ints cross fields; a Fraction will not silently become Gaussian.
    """
    if field == RATIONAL:
        if isinstance(x, GaussianRational):
            raise FieldMismatchError("GaussianRational in a rational computation")
        return Fraction(x)
    if field == GAUSSIAN:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, int):
            return GaussianRational._new(Fraction(x), Fraction(0))
        raise FieldMismatchError(f"{type(x).__name__} in a gaussian computation")
    raise FieldMismatchError(f"unknown field {field!r}")


def embed_gaussian(x: Fraction) -> GaussianRational:
    """The rational x viewed as x + 0i."""
    return GaussianRational._new(Fraction(x), Fraction(0))


def add(x, y):
    check_same_field(x, y)
    return x + y


def subtract(x, y):
    check_same_field(x, y)
    return x - y


def multiply(x, y):
    check_same_field(x, y)
    return x * y


def divide(x, y):
    check_same_field(x, y)
    if not y:
        raise DivisionByZero(f"division of {format_scalar(x)} by zero")
    return x / y


def zero(field: str) -> Scalar:
    return to_field(0, field)


def one(field: str) -> Scalar:
    return to_field(1, field)


def canonical_compare(x, y) -> int:
    """-1, 0 or 1.  Numeric order on Q, lexicographic (re, im) on Q(i)."""
    check_same_field(x, y)
    if x == y:
        return 0
    return -1 if x < y else 1


def is_integral(x: Scalar) -> bool:
    if isinstance(x, GaussianRational):
        return x.re.denominator == 1 and x.im.denominator == 1
    return Fraction(x).denominator == 1


# -- text encoding -----------------------------------------------------------

def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    """"p/q" for rationals, "p/q+r/si" (or "p/q-r/si") for Gaussian rationals."""
    if isinstance(x, GaussianRational):
        sign = "-" if x.im < 0 else "+"
        return f"{format_rational(x.re)}{sign}{format_rational(abs(x.im))}i"
    return format_rational(x)


_RAT = r"[+-]?\d+(?:/\d+)?"
_RATIONAL_RE = re.compile(rf"^({_RAT})$")
_GAUSS_FULL_RE = re.compile(rf"^({_RAT})([+-])(\d+(?:/\d+)?)?i$")
_GAUSS_IMAG_RE = re.compile(r"^([+-]?(?:\d+(?:/\d+)?)?)i$")


def _parse_rational(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/")
        return normalize(int(num), int(den))
    return Fraction(int(text))


def parse_scalar(text: str, field: str | None = None) -> Scalar:
    """Parse the report encoding; "p" is accepted for "p/1".

    With ``field=None`` the field is inferred: anything mentioning ``i`` is
    Gaussian.  With ``field=GAUSSIAN`` a plain rational is embedded as x+0i.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty scalar")
    try:
        m = _RATIONAL_RE.match(s)
        if m:
            value = _parse_rational(m.group(1))
            if field == GAUSSIAN:
                return embed_gaussian(value)
            return value
        m = _GAUSS_FULL_RE.match(s)
        if m:
            re_part = _parse_rational(m.group(1))
            im_part = _parse_rational(m.group(3)) if m.group(3) else Fraction(1)
            if m.group(2) == "-":
                im_part = -im_part
            value = GaussianRational._new(re_part, im_part)
        else:
            m = _GAUSS_IMAG_RE.match(s)
            if not m:
                raise ParseError(f"cannot parse scalar {text!r}")
            coeff = m.group(1)
            if coeff in ("", "+"):
                im_part = Fraction(1)
            elif coeff == "-":
                im_part = Fraction(-1)
            else:
                im_part = _parse_rational(coeff)
            value = GaussianRational._new(Fraction(0), im_part)
    except DivisionByZero as exc:
        raise ParseError(f"cannot parse scalar {text!r}: {exc}") from exc
    if field == RATIONAL:
        raise ParseError(f"{text!r} is not a rational")
    return value


# -- Gaussian integers -------------------------------------------------------
# Plain (re, im) int pairs; used to canonicalize lines over Q(i).

def gi_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def gi_norm(x) -> int:
    return x[0] * x[0] + x[1] * x[1]


def _round_div(a: int, b: int) -> int:
    # nearest integer to a/b, b > 0
    return (2 * a + b) // (2 * b)


def gi_divmod(x, y):
    """Euclidean division in Z[i]: x = q*y + r with N(r) < N(y)."""
    n = gi_norm(y)
    if n == 0:
        raise DivisionByZero("Gaussian integer division by zero")
    num = gi_mul(x, (y[0], -y[1]))
    q = (_round_div(num[0], n), _round_div(num[1], n))
    qy = gi_mul(q, y)
    return q, (x[0] - qy[0], x[1] - qy[1])


def gi_exact_div(x, y):
    q, r = gi_divmod(x, y)
    if r != (0, 0):
        raise ExactArithmeticError(f"{x} is not divisible by {y}")
    return q


def gi_gcd(x, y):
    while y != (0, 0):
        _, r = gi_divmod(x, y)
        x, y = y, r
    return x


def gi_unit_normalize(x):
    """The associate of x lying in {re > 0, im >= 0}; zero maps to zero."""
    a, b = x
    if (a, b) == (0, 0):
        return x
    for _ in range(4):
        if a > 0 and b >= 0:
            return (a, b)
        a, b = -b, a  # multiply by i
    raise AssertionError("unreachable")
