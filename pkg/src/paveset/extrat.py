"""Exact extended rationals.

Finite values are plain :class:`fractions.Fraction` objects.  The two
infinities are singletons (:data:`INF`, :data:`NEG_INF`) that order and
combine correctly with fractions and ints, and that bake in the measure
theory convention ``0 * inf = inf * 0 = 0``.

>>> Fraction(3) < INF
True
>>> 0 * INF
Fraction(0, 1)
>>> fmt(Fraction(1, 3)), fmt(INF)
('1/3', 'inf')
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union


class _Infinity:
    __slots__ = ("_sign",)

    def __init__(self, sign: int) -> None:
        self._sign = sign

    @property
    def sign(self) -> int:
        return self._sign

    def __repr__(self) -> str:
        return "INF" if self._sign > 0 else "NEG_INF"

    def __str__(self) -> str:
        return "inf" if self._sign > 0 else "-inf"

    def __hash__(self) -> int:
        return hash(("paveset-inf", self._sign))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, _Infinity):
            return self._sign == other._sign
        if isinstance(other, float) and math.isinf(other):
            return (other > 0) == (self._sign > 0)
        if isinstance(other, (Rational, float)):
            return False
        return NotImplemented

    def _cmp(self, other: object) -> int:
        if isinstance(other, _Infinity):
            return (self._sign > other._sign) - (self._sign < other._sign)
        if isinstance(other, (Rational, float)):
            if isinstance(other, float) and math.isinf(other):
                return self._cmp(INF if other > 0 else NEG_INF)
            return self._sign
        raise TypeError(f"cannot compare {self!r} with {other!r}")

    def __lt__(self, other: object) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: object) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: object) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: object) -> bool:
        return self._cmp(other) >= 0

    def __neg__(self) -> _Infinity:
        return NEG_INF if self._sign > 0 else INF

    def __pos__(self) -> _Infinity:
        return self

    def __abs__(self) -> _Infinity:
        return INF

    def __add__(self, other: object) -> _Infinity:
        if isinstance(other, _Infinity):
            if other._sign != self._sign:
                raise ArithmeticError("inf - inf is undefined")
            return self
        if isinstance(other, Rational):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: object) -> _Infinity:
        if isinstance(other, (_Infinity, Rational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: object) -> _Infinity:
        if isinstance(other, Rational):
            return -self
        return NotImplemented

    def __mul__(self, other: object) -> ExtRat:
        if isinstance(other, _Infinity):
            return INF if self._sign == other._sign else NEG_INF
        if isinstance(other, Rational):
            if other == 0:
                return Fraction(0)
            return self if other > 0 else -self
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> _Infinity:
        if isinstance(other, Rational) and other != 0:
            return self if other > 0 else -self
        if isinstance(other, Rational):
            raise ZeroDivisionError("inf / 0")
        return NotImplemented

    def __rtruediv__(self, other: object) -> Fraction:
        if isinstance(other, Rational):
            return Fraction(0)
        return NotImplemented

    def __bool__(self) -> bool:
        return True


INF = _Infinity(1)
NEG_INF = _Infinity(-1)

ExtRat = Union[Fraction, _Infinity]

_INF_WORDS = {"inf": INF, "+inf": INF, "∞": INF, "+∞": INF, "-inf": NEG_INF, "-∞": NEG_INF}


def ext(value: object) -> ExtRat:
    """Coerce ``value`` to an exact extended rational.

    Accepts ints, fractions, the infinity singletons, ``math.inf`` and strings
    such as ``"3"``, ``"1/3"``, ``"inf"``.  Finite floats are rejected since
    they would silently introduce rounding.
    """
    if isinstance(value, _Infinity):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if math.isinf(value):
            return INF if value > 0 else NEG_INF
        raise TypeError(f"refusing inexact float {value!r}; pass a string or Fraction")
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in _INF_WORDS:
            return _INF_WORDS[text.lower()]
        return Fraction(text)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot interpret {value!r} as an extended rational")


def fmt(value: ExtRat) -> str:
    """Canonical text form: ``"p/q"``, ``"p"``, ``"inf"`` or ``"-inf"``."""
    return str(value)


def is_finite(value: ExtRat) -> bool:
    return not isinstance(value, _Infinity)


def is_inf(value: object) -> bool:
    return isinstance(value, _Infinity)


def ext_min(values: Iterable[ExtRat]) -> ExtRat:
    """Infimum with ``inf of nothing = +inf``."""
    return min(values, default=INF)


def ext_max(values: Iterable[ExtRat]) -> ExtRat:
    """Supremum over nonnegative values, ``sup of nothing = 0``."""
    return max(values, default=Fraction(0))


def ext_sum(values: Iterable[ExtRat]) -> ExtRat:
    total: ExtRat = Fraction(0)
    for v in values:
        total = total + v
    return total
