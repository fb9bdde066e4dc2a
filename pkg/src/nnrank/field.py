"""Exact scalars over Q and real quadratic fields Q(sqrt D).

Rationals are plain :class:`fractions.Fraction` values.  Elements of
Q(sqrt D) are :class:`QuadraticNumber` instances ``a + b*sqrt(D)`` with
rational ``a`` and ``b``.  Nothing in here touches floating point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

__all__ = [
    "FieldDescriptor",
    "FieldError",
    "QuadraticNumber",
    "Scalar",
    "RATIONALS",
    "QUADRATIC2",
    "as_rational",
    "format_scalar",
    "is_rational_value",
    "is_squarefree",
    "parse_scalar",
    "quad_arith",
    "quad_sign",
    "sign",
    "to_field",
]


class FieldError(ValueError):
    """Raised on malformed scalars, cross-field mixing or illegal coercions."""


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """Either the rationals (``d is None``) or Q(sqrt d)."""

    d: int | None = None

    def __post_init__(self):
        if self.d is not None and (self.d < 2 or not is_squarefree(self.d)):
            raise FieldError(f"Q(sqrt {self.d}) needs a squarefree D >= 2")

    @property
    def is_rational(self) -> bool:
        return self.d is None

    @classmethod
    def quadratic(cls, d: int) -> FieldDescriptor:
        return cls(d)

    @classmethod
    def from_tag(cls, tag: str) -> FieldDescriptor:
        text = tag.replace(" ", "")
        if text == "Q":
            return RATIONALS
        m = re.fullmatch(r"Q\(sqrt(\d+)\)", text)
        if m is None:
            raise FieldError(f"unknown field tag {tag!r}")
        return cls(int(m.group(1)))

    @property
    def tag(self) -> str:
        return "Q" if self.d is None else f"Q(sqrt {self.d})"

    def __str__(self) -> str:
        return self.tag


RATIONALS = FieldDescriptor()
QUADRATIC2 = FieldDescriptor(2)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise FieldError(f"cannot use {x!r} as an exact rational")


class QuadraticNumber:
    """An element ``a + b*sqrt(d)`` of Q(sqrt d).

    Instances are immutable and canonical: ``a`` and ``b`` are reduced
    fractions, so equal values have equal fields.  Binary operations with
    ``int`` or ``Fraction`` embed the rational with ``b = 0``; mixing two
    different ``d`` raises :class:`FieldError`.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, a=0, b=0, d: int = 2):
        if not isinstance(d, int) or d < 2 or not is_squarefree(d):
            raise FieldError(f"discriminant must be squarefree and >= 2, got {d!r}")
        object.__setattr__(self, "_a", _frac(a))
        object.__setattr__(self, "_b", _frac(b))
        object.__setattr__(self, "_d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def d(self) -> int:
        return self._d

    @property
    def field(self) -> FieldDescriptor:
        return FieldDescriptor(self._d)

    def is_rational(self) -> bool:
        return self._b == 0

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return self._a * self._a - self._d * self._b * self._b

    def _coerce(self, other) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            if other._d != self._d:
                raise FieldError(f"cannot mix Q(sqrt {self._d}) with Q(sqrt {other._d})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadraticNumber(other, 0, self._d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self._a + o._a, self._b + o._b, self._d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self._a - o._a, self._b - o._b, self._d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(
            self._a * o._a + self._d * self._b * o._b,
            self._a * o._b + o._a * self._b,
            self._d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt %d)" % self._d)
        num = self * o.conjugate()
        return QuadraticNumber(num._a / n, num._b / n, self._d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return QuadraticNumber(1, 0, self._d) / (self ** -e)
        out = QuadraticNumber(1, 0, self._d)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self._a, self._b, self._d) == (other._a, other._b, other._d)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return self._a != 0 or self._b != 0

    # Ordering goes through the exact sign, so comparisons never round.
    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __repr__(self):
        return f"QuadraticNumber({self._a}, {self._b}, d={self._d})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, QuadraticNumber]


def quad_arith(x: QuadraticNumber, y: QuadraticNumber, op: str) -> QuadraticNumber:
    """Apply ``op`` (one of add, sub, mul, div) to two elements of the same field."""
    if not isinstance(x, QuadraticNumber) or not isinstance(y, QuadraticNumber):
        raise FieldError("quad_arith expects two QuadraticNumber operands")
    if x.d != y.d:
        raise FieldError(f"cannot mix Q(sqrt {x.d}) with Q(sqrt {y.d})")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise FieldError(f"unknown operation {op!r}")


def _fsign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def quad_sign(x: QuadraticNumber) -> int:
    a, b = x.a, x.b
    sa, sb = _fsign(a), _fsign(b)
    if sa == 0 and sb == 0:
        return 0
    if sa >= 0 and sb >= 0:
        return 1
    if sa <= 0 and sb <= 0:
        return -1
    # a and b have strictly opposite signs: whichever of a^2, D b^2 is larger wins
    return sa * _fsign(a * a - x.d * b * b)


def sign(x) -> int:
    """Exact sign of an int, Fraction or QuadraticNumber."""
    if isinstance(x, QuadraticNumber):
        return quad_sign(x)
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    raise FieldError(f"no exact sign for {x!r}")


def is_rational_value(x) -> bool:
    if isinstance(x, QuadraticNumber):
        return x.b == 0
    return isinstance(x, (int, Fraction))


def as_rational(x) -> Fraction:
    """Project a scalar back to Q; fails unless its sqrt part vanishes."""
    if isinstance(x, QuadraticNumber):
        if x.b != 0:
            raise FieldError(f"{format_scalar(x)} is irrational")
        return x.a
    return _frac(x)


def to_field(x, field: FieldDescriptor) -> Scalar:
    """Coerce ``x`` into ``field`` (embedding Q into Q(sqrt D) when needed)."""
    if field.is_rational:
        return as_rational(x)
    if isinstance(x, QuadraticNumber):
        if x.d != field.d:
            raise FieldError(f"cannot move Q(sqrt {x.d}) element into {field}")
        return x
    return QuadraticNumber(x, 0, field.d)


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Canonical text: ``p/q`` (or ``p``) for rationals, ``p/q+r/s*sqrt(D)`` otherwise."""
    if isinstance(x, QuadraticNumber):
        b = x.b
        op = "-" if b < 0 else "+"
        return f"{_fmt_frac(x.a)}{op}{_fmt_frac(abs(b))}*sqrt({x.d})"
    return _fmt_frac(_frac(x))


_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"({_RAT})")
_QUAD_RE = re.compile(rf"(?:({_RAT}))?(?:([+-])(\d+(?:/\d+)?)\*sqrt\((\d+)\))?")


def _parse_rat(text: str) -> Fraction:
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise FieldError(f"zero denominator in {text!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def parse_scalar(text: str, field: FieldDescriptor = RATIONALS) -> Scalar:
    """Parse a scalar in the text grammar produced by :func:`format_scalar`.

    Whitespace is ignored.  In Q only ``p`` or ``p/q`` is accepted; in
    Q(sqrt D) a trailing ``+r/s*sqrt(D)`` term is allowed and its ``D``
    must match the field.
    """
    if not isinstance(text, str):
        raise FieldError(f"scalar must be text, got {type(text).__name__}")
    s = "".join(text.split())
    if not s:
        raise FieldError("empty scalar")
    if field.is_rational:
        if _RAT_RE.fullmatch(s) is None:
            raise FieldError(f"malformed rational {text!r}")
        return _parse_rat(s)
    m = _QUAD_RE.fullmatch(s)
    if m is None or (m.group(1) is None and m.group(2) is None):
        raise FieldError(f"malformed quadratic scalar {text!r}")
    a = _parse_rat(m.group(1)) if m.group(1) is not None else Fraction(0)
    b = Fraction(0)
    if m.group(2) is not None:
        d = int(m.group(4))
        if d != field.d:
            raise FieldError(f"sqrt({d}) does not belong to {field}")
        b = _parse_rat(m.group(3))
        if m.group(2) == "-":
            b = -b
    return QuadraticNumber(a, b, field.d)
