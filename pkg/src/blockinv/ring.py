"""Scalar rings: exact rationals, quaternions, and the ring interface.

Elements are plain immutable Python values that support ``+``, ``-`` and ``*``.
Everything that needs more than operators (zero, one, inversion, zero tests)
goes through a :class:`Ring` object, so the matrix and block algorithms never
look at the concrete element type.
"""

from __future__ import annotations

import math
import os
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Union

import gmpy2

from .errors import NotInvertible

Rational = type(gmpy2.mpq(0))

DEFAULT_TOLERANCE = float(os.environ.get("BLOCKINV_TOLERANCE", "1e-9"))

_Scalar = Union[int, float, Any]


def rational(value) -> Rational:
    """Coerce ``value`` (int, "p/q" string, Fraction, mpq) to an exact rational.

    Floats are rejected: silently converting them would smuggle rounding
    error into exact mode.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing to convert float {value!r} to an exact rational")
    if isinstance(value, str):
        value = value.strip()
        if not _RATIONAL_RE.fullmatch(value):
            raise ValueError(f"not a rational literal: {value!r}")
        num, _, den = value.partition("/")
        if den and int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
    return gmpy2.mpq(value)


_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


@dataclass(frozen=True, slots=True)
class Quaternion:
    """``a + b i + c j + d k`` with components either all exact or all float."""

    a: _Scalar
    b: _Scalar = 0
    c: _Scalar = 0
    d: _Scalar = 0

    @classmethod
    def exact(cls, a=0, b=0, c=0, d=0) -> "Quaternion":
        return cls(rational(a), rational(b), rational(c), rational(d))

    @classmethod
    def parse(cls, text: str) -> "Quaternion":
        """Parse a human-readable literal such as ``"2-3i+4k"`` or ``"1/2j"``."""
        s = text.replace(" ", "")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if not s or "".join(terms) != s:
            raise ValueError(f"cannot parse quaternion literal {text!r}")
        comps = {"": gmpy2.mpq(0), "i": gmpy2.mpq(0), "j": gmpy2.mpq(0), "k": gmpy2.mpq(0)}
        for term in terms:
            m = _TERM_RE.fullmatch(term)
            if m is None:
                raise ValueError(f"cannot parse term {term!r} in {text!r}")
            sign, coef, unit = m.groups()
            value = rational(coef) if coef else gmpy2.mpq(1)
            comps[unit] += -value if sign == "-" else value
        return cls(comps[""], comps["i"], comps["j"], comps["k"])

    @property
    def components(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)
        return Quaternion(self.a + other, self.b, self.c, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)
        return Quaternion(self.a - other, self.b, self.c, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a1, b1, c1, d1 = self.a, self.b, self.c, self.d
            a2, b2, c2, d2 = other.a, other.b, other.c, other.d
            return Quaternion(
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            )
        if isinstance(other, (int, float, Rational)):
            return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)
        return NotImplemented

    def __rmul__(self, other):
        # real scalars are central, so left and right scaling agree
        if isinstance(other, (int, float, Rational)):
            return self * other
        return NotImplemented

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm2(self):
        """Squared norm ``a² + b² + c² + d²``; exact in exact mode."""
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def __abs__(self) -> float:
        return math.sqrt(float(self.norm2()))

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0:
            raise NotInvertible(f"quaternion {self} is zero")
        return Quaternion(self.a / n2, -self.b / n2, -self.c / n2, -self.d / n2)

    def is_exact(self) -> bool:
        return all(isinstance(x, (int, Rational)) for x in self.components)

    def to_float(self) -> "Quaternion":
        return Quaternion(*(float(x) for x in self.components))

    def to_exact(self) -> "Quaternion":
        return Quaternion(*(gmpy2.mpq(x) for x in self.components))

    def __str__(self) -> str:
        parts = []
        for value, unit in zip(self.components, ("", "i", "j", "k")):
            if value == 0:
                continue
            text = str(value)
            if unit and value in (1, -1):
                text = "-" if value < 0 else ""
            if parts and not text.startswith("-"):
                text = "+" + text
            parts.append(text + unit)
        return "".join(parts) or "0"


_TERM_RE = re.compile(r"([+-]?)(\d+(?:/\d+)?)?([ijk]?)")


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return p * q


def quat_invert(q: Quaternion) -> Quaternion:
    return q.inverse()


def quat_abs(q: Quaternion) -> float:
    return abs(q)


class Ring(ABC):
    """Operations on ring elements beyond the arithmetic operators.

    Commutativity is never assumed. ``try_invert`` returns ``None`` for
    elements without a two-sided inverse (or whose inverse this ring cannot
    find); ``invert`` raises :class:`NotInvertible` instead.
    """

    exact = True
    tolerance = 0.0

    @abstractmethod
    def zero(self): ...

    @abstractmethod
    def one(self): ...

    @abstractmethod
    def try_invert(self, x): ...

    @abstractmethod
    def magnitude(self, x) -> float: ...

    def invert(self, x):
        y = self.try_invert(x)
        if y is None:
            raise NotInvertible(f"element {x} is not invertible")
        return y

    def is_zero(self, x, scale: float = 1.0) -> bool:
        if self.exact:
            return x == self.zero()
        return self.magnitude(x) <= self.tolerance * scale

    def close(self, x, y, rtol: float) -> bool:
        """Relative closeness; exact rings require equality."""
        if self.exact:
            return x == y
        diff = self.magnitude(x - y)
        return diff <= rtol * max(self.magnitude(x), self.magnitude(y))


class QuaternionRing(Ring):
    """Quaternions over exact rationals (default) or binary floats."""

    def __init__(self, exact: bool = True, tolerance: float = DEFAULT_TOLERANCE):
        self.exact = exact
        self.tolerance = 0.0 if exact else tolerance
        if exact:
            self._zero = Quaternion.exact(0)
            self._one = Quaternion.exact(1)
        else:
            self._zero = Quaternion(0.0, 0.0, 0.0, 0.0)
            self._one = Quaternion(1.0, 0.0, 0.0, 0.0)

    def __repr__(self):
        if self.exact:
            return "QuaternionRing(exact=True)"
        return f"QuaternionRing(exact=False, tolerance={self.tolerance:g})"

    def __eq__(self, other):
        return (
            isinstance(other, QuaternionRing)
            and self.exact == other.exact
            and self.tolerance == other.tolerance
        )

    def __hash__(self):
        return hash((QuaternionRing, self.exact, self.tolerance))

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def coerce(self, value) -> Quaternion:
        if isinstance(value, Quaternion):
            return value.to_exact() if self.exact else value.to_float()
        if isinstance(value, str):
            q = Quaternion.parse(value)
            return q if self.exact else q.to_float()
        if isinstance(value, (tuple, list)):
            return Quaternion.exact(*value) if self.exact else Quaternion(*(float(x) for x in value))
        return Quaternion.exact(value) if self.exact else Quaternion(float(value), 0.0, 0.0, 0.0)

    def magnitude(self, x: Quaternion) -> float:
        return abs(x)

    def is_zero(self, x, scale: float = 1.0) -> bool:
        if self.exact:
            return x.a == 0 and x.b == 0 and x.c == 0 and x.d == 0
        return abs(x) <= self.tolerance * scale

    def try_invert(self, x: Quaternion):
        if self.is_zero(x):
            return None
        return x.inverse()


class RationalField(Ring):
    """The commutative field of exact rationals; handy as a sanity baseline."""

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(RationalField)

    def zero(self):
        return gmpy2.mpq(0)

    def one(self):
        return gmpy2.mpq(1)

    def coerce(self, value):
        return rational(value)

    def magnitude(self, x) -> float:
        return abs(float(x))

    def try_invert(self, x):
        if x == 0:
            return None
        return 1 / gmpy2.mpq(x)
