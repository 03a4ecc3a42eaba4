"""Extended real numbers over exact rationals.

Two arithmetic conventions live side by side:

* the standard one, where ``inf + (-inf)`` is undefined (``add_checked``,
  also used by ``+``);
* the measure-theory one, where ``0 * (+-inf) = 0`` makes multiplication
  total (``mul_mt``, also used by ``*``), together with the matching
  division on nonnegative numbers and exponentiation.

Values are immutable and hashable.  Finite values hash like the
corresponding :class:`fractions.Fraction`, so ``XReal(3) == 3`` behaves as
expected inside sets and dicts.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Iterable, Union

from .errors import NegativeTerm, UndefinedSum, UnsupportedExponent

__all__ = [
    "XReal",
    "INF",
    "NEG_INF",
    "ZERO",
    "ONE",
    "xr",
    "add_checked",
    "add_total_zero",
    "mul_mt",
    "neg",
    "xabs",
    "cmp",
    "pow_mt",
    "sum_nonneg",
    "div_nonneg_mt",
    "parse_xreal",
    "format_xreal",
    "parse_rational",
]

_NEG, _FIN, _POS = -1, 0, 1


@total_ordering
class XReal:
    """An element of the extended real line.

    ``kind`` is -1 for ``-inf``, 0 for a finite value and 1 for ``+inf``.
    """

    __slots__ = ("_kind", "_value")

    def __init__(self, value: Union[int, Fraction, str, "XReal"] = 0):
        if isinstance(value, XReal):
            kind, val = value._kind, value._value
        elif isinstance(value, str):
            parsed = parse_xreal(value)
            kind, val = parsed._kind, parsed._value
        elif isinstance(value, bool):
            raise TypeError("booleans are not extended reals")
        elif isinstance(value, Rational):
            kind, val = _FIN, Fraction(value)
        elif isinstance(value, float) and math.isinf(value):
            kind, val = (_POS if value > 0 else _NEG), None
        else:
            raise TypeError(f"cannot build an exact extended real from {value!r}")
        object.__setattr__(self, "_kind", kind)
        object.__setattr__(self, "_value", val)

    @classmethod
    def _make(cls, kind, value=None):
        obj = object.__new__(cls)
        object.__setattr__(obj, "_kind", kind)
        object.__setattr__(obj, "_value", value)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("XReal is immutable")

    @property
    def kind(self) -> int:
        return self._kind

    @property
    def value(self) -> Fraction:
        """The rational value; raises ``OverflowError`` for infinities."""
        if self._kind != _FIN:
            raise OverflowError(f"{self} has no finite value")
        return self._value

    def is_finite(self) -> bool:
        return self._kind == _FIN

    def is_inf(self) -> bool:
        return self._kind != _FIN

    def is_pos_inf(self) -> bool:
        return self._kind == _POS

    def is_neg_inf(self) -> bool:
        return self._kind == _NEG

    def is_zero(self) -> bool:
        return self._kind == _FIN and self._value == 0

    def sign(self) -> int:
        if self._kind != _FIN:
            return self._kind
        return (self._value > 0) - (self._value < 0)

    # ordering and hashing

    def _key(self):
        return (self._kind, self._value if self._kind == _FIN else 0)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        if self._kind == _FIN:
            return hash(self._value)
        return hash(("xreal-inf", self._kind))

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add_checked(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add_checked(self, neg(other))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add_checked(other, neg(self))

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul_mt(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return neg(self)

    def __abs__(self):
        return xabs(self)

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        if self._kind == _POS:
            return math.inf
        if self._kind == _NEG:
            return -math.inf
        return float(self._value)

    def __repr__(self):
        return f"XReal({format_xreal(self)!r})"

    def __str__(self):
        return format_xreal(self)

    def __reduce__(self):
        return (XReal, (format_xreal(self),))


INF = XReal._make(_POS)
NEG_INF = XReal._make(_NEG)
ZERO = XReal._make(_FIN, Fraction(0))
ONE = XReal._make(_FIN, Fraction(1))


def _coerce(x):
    if isinstance(x, XReal):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, Rational) or (isinstance(x, float) and math.isinf(x)):
        return XReal(x)
    return NotImplemented


def xr(x) -> XReal:
    """Coerce an int, Fraction, rational string or XReal to :class:`XReal`."""
    if isinstance(x, XReal):
        return x
    return XReal(x)


def add_checked(a, b) -> XReal:
    """Sum in the standard convention; ``inf + (-inf)`` raises :class:`UndefinedSum`."""
    a, b = xr(a), xr(b)
    if a._kind == _FIN and b._kind == _FIN:
        return XReal._make(_FIN, a._value + b._value)
    if a._kind != _FIN and b._kind != _FIN and a._kind != b._kind:
        raise UndefinedSum(f"{a} + {b} is undefined")
    return a if a._kind != _FIN else b


def add_total_zero(a, b) -> XReal:
    """Total variant of addition where ``inf + (-inf)`` is 0."""
    try:
        return add_checked(a, b)
    except UndefinedSum:
        return ZERO


def mul_mt(a, b) -> XReal:
    """Product with the measure-theory rule ``0 * (+-inf) = 0``."""
    a, b = xr(a), xr(b)
    if a._kind == _FIN and b._kind == _FIN:
        return XReal._make(_FIN, a._value * b._value)
    sa, sb = a.sign(), b.sign()
    if sa == 0 or sb == 0:
        return ZERO
    return INF if sa * sb > 0 else NEG_INF


def neg(a) -> XReal:
    a = xr(a)
    if a._kind == _FIN:
        return XReal._make(_FIN, -a._value)
    return XReal._make(-a._kind)


def xabs(a) -> XReal:
    a = xr(a)
    return max(neg(a), a)


def cmp(a, b) -> int:
    """Three-way comparison: -1, 0 or 1."""
    a, b = xr(a), xr(b)
    return (a > b) - (a < b)


def pow_mt(a, b) -> XReal:
    """``a ** b`` for ``a >= 0`` under the measure-theory convention.

    ``0**0 = inf**0 = 1**(+-inf) = 1``.  A finite positive base other than 1
    only accepts an integer exponent, since anything else would leave the
    rationals.
    """
    a, b = xr(a), xr(b)
    if a < ZERO:
        raise ValueError(f"base must be nonnegative, got {a}")
    if b.is_zero() or a == ONE:
        return ONE
    if b._kind == _FIN:
        if a.is_zero():
            return ZERO if b > ZERO else INF
        if a._kind == _POS:
            return INF if b > ZERO else ZERO
        if b._value.denominator != 1:
            raise UnsupportedExponent(f"{a} ** {b} is not rational in general")
        return XReal._make(_FIN, a._value ** int(b._value))
    small = a < ONE  # a in [0, 1)
    if b._kind == _POS:
        return ZERO if small else INF
    return INF if small else ZERO


def sum_nonneg(terms: Iterable) -> XReal:
    """Exact sum of nonnegative extended reals."""
    total = Fraction(0)
    infinite = False
    for t in terms:
        t = xr(t)
        if t < ZERO:
            raise NegativeTerm(f"negative term {t} in a nonnegative sum")
        if t._kind == _POS:
            infinite = True
        else:
            total += t._value
    return INF if infinite else XReal._make(_FIN, total)


def div_nonneg_mt(a, b) -> XReal:
    """Quotient on ``[0, inf]``: ``x/0 = inf`` for ``x > 0``, ``0/0 = inf/inf = 0``."""
    a, b = xr(a), xr(b)
    if a < ZERO or b < ZERO:
        raise ValueError("division is only defined on nonnegative extended reals")
    if b._kind == _POS:
        return ZERO
    if b.is_zero():
        return ZERO if a.is_zero() else INF
    if a._kind == _POS:
        return INF
    return XReal._make(_FIN, a._value / b._value)


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a Fraction (no decimals, no floats)."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def parse_xreal(text: str) -> XReal:
    s = str(text).strip().lower()
    if s in ("inf", "+inf"):
        return INF
    if s == "-inf":
        return NEG_INF
    return XReal._make(_FIN, parse_rational(s))


def format_xreal(a) -> str:
    a = xr(a)
    if a._kind == _POS:
        return "inf"
    if a._kind == _NEG:
        return "-inf"
    v = a._value
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
