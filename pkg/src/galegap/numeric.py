"""Exact scalars: rationals, extended reals and the integer square root.

Rationals are :class:`fractions.Fraction` values (unbounded integers,
always kept in lowest terms with a positive denominator).  Extended reals
add the two infinities on top of them.  Nothing in here touches floats.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import ParseError, UndefinedOperation

Ratio = Fraction
RatioLike = Union[Fraction, int]

_RATIO_RE = re.compile(r"-?\d+(?:/\d+)?")

__all__ = [
    "Ratio",
    "XReal",
    "NEG_INF",
    "POS_INF",
    "ZERO",
    "isqrt",
    "as_ratio",
    "parse_ratio",
    "format_ratio",
    "parse_xreal",
    "format_xreal",
    "xreal_cmp",
    "floor_ratio",
    "ceil_ratio",
]


def isqrt(n: int) -> int:
    """Return ``floor(sqrt(n))`` for a nonnegative integer ``n``."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"isqrt expects an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"isqrt domain error: {n} < 0")
    return math.isqrt(n)


def as_ratio(value: RatioLike) -> Fraction:
    """Coerce ints and Fractions to Fraction; refuse floats and strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {value!r}")


def floor_ratio(q: Fraction) -> int:
    return q.numerator // q.denominator


def ceil_ratio(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def parse_ratio(text: str, location=None) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional leading ``-``) into a Fraction.

    Decimal points, exponents, whitespace inside the token and a zero
    denominator are all rejected.
    """
    token = text.strip()
    if not _RATIO_RE.fullmatch(token):
        raise ParseError(f"not a rational literal: {text!r}", location)
    num, _, den = token.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}", location)
    return Fraction(int(num), int(den) if den else 1)


def format_ratio(q: RatioLike) -> str:
    q = as_ratio(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@total_ordering
@dataclass(frozen=True)
class XReal:
    """An element of the extended real line over the rationals.

    ``sign`` is -1 for minus infinity, +1 for plus infinity and 0 for a
    finite value stored in ``value``.  Instances are immutable and hashable.
    """

    sign: int
    value: Fraction | None = None

    def __post_init__(self):
        if self.sign == 0:
            if not isinstance(self.value, Fraction):
                object.__setattr__(self, "value", as_ratio(self.value))
        elif self.sign in (-1, 1):
            if self.value is not None:
                raise ValueError("infinite XReal carries no finite value")
        else:
            raise ValueError(f"bad XReal sign tag {self.sign!r}")

    @classmethod
    def of(cls, value: "XReal | RatioLike") -> "XReal":
        if isinstance(value, XReal):
            return value
        return cls(0, as_ratio(value))

    @property
    def is_finite(self) -> bool:
        return self.sign == 0

    @property
    def is_pos_inf(self) -> bool:
        return self.sign == 1

    @property
    def is_neg_inf(self) -> bool:
        return self.sign == -1

    def finite(self) -> Fraction:
        """The rational value; raises if the number is infinite."""
        if self.sign:
            raise UndefinedOperation(f"{self} has no finite value")
        return self.value

    def _key(self):
        return (self.sign, self.value if self.sign == 0 else Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = XReal.of(other)
        if not isinstance(other, XReal):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = XReal.of(other)
        if not isinstance(other, XReal):
            return NotImplemented
        if self.sign != other.sign:
            return self.sign < other.sign
        return self.sign == 0 and self.value < other.value

    def __neg__(self):
        if self.sign:
            return XReal(-self.sign)
        return XReal(0, -self.value)

    def __add__(self, other):
        other = XReal.of(other)
        if self.sign and other.sign and self.sign != other.sign:
            raise UndefinedOperation("inf + -inf is undefined")
        if self.sign:
            return self
        if other.sign:
            return other
        return XReal(0, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-XReal.of(other))

    def __rsub__(self, other):
        return XReal.of(other) + (-self)

    def __mul__(self, other):
        # only scaling by a finite rational is supported
        if isinstance(other, XReal):
            other = other.finite()
        k = as_ratio(other)
        if self.sign:
            if k == 0:
                raise UndefinedOperation("0 * inf is undefined")
            return XReal(self.sign if k > 0 else -self.sign)
        return XReal(0, self.value * k)

    __rmul__ = __mul__

    def __str__(self):
        return format_xreal(self)

    def __repr__(self):
        return f"XReal({format_xreal(self)})"


NEG_INF = XReal(-1)
POS_INF = XReal(1)
ZERO = XReal(0, Fraction(0))


def xreal_cmp(a: XReal, b: XReal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    a, b = XReal.of(a), XReal.of(b)
    return (a > b) - (a < b)


def format_xreal(x: "XReal | RatioLike") -> str:
    x = XReal.of(x)
    if x.sign < 0:
        return "-inf"
    if x.sign > 0:
        return "inf"
    return format_ratio(x.value)


def parse_xreal(text: str, location=None) -> XReal:
    token = text.strip()
    if token == "inf":
        return POS_INF
    if token == "-inf":
        return NEG_INF
    return XReal(0, parse_ratio(token, location))
