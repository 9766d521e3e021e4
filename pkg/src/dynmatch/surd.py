"""Exact arithmetic in Q(sqrt 2): numbers a + b*sqrt(2) with rational a, b."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational


def _q(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"cannot use {type(v).__name__} in exact surd arithmetic")


@total_ordering
class QSqrt2:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _q(a)
        self.b = _q(b)

    @staticmethod
    def lift(v) -> QSqrt2:
        return v if isinstance(v, QSqrt2) else QSqrt2(v, 0)

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with 2 b^2 (never equal, sqrt 2 is irrational)
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    def __add__(self, o):
        try:
            o = QSqrt2.lift(o)
        except TypeError:
            return NotImplemented
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, o):
        try:
            o = QSqrt2.lift(o)
        except TypeError:
            return NotImplemented
        return QSqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        try:
            o = QSqrt2.lift(o)
        except TypeError:
            return NotImplemented
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, QSqrt2):
            # multiply by the conjugate
            den = o.a * o.a - 2 * o.b * o.b
            num = self * QSqrt2(o.a, -o.b)
            return QSqrt2(num.a / den, num.b / den)
        q = _q(o)
        return QSqrt2(self.a / q, self.b / q)

    def __rtruediv__(self, o):
        return QSqrt2.lift(o) / self

    def __eq__(self, o):
        try:
            o = QSqrt2.lift(o)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, o):
        try:
            return (self - QSqrt2.lift(o)).sign() < 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b)) if self.b else hash(self.a)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __bool__(self):
        return bool(self.a or self.b)

    def __repr__(self):
        return f"QSqrt2({self.a}, {self.b})"

    def __str__(self):
        return f"{float(self):.6g}"


SQRT2 = QSqrt2(0, 1)
B = QSqrt2(1, 1)  # 1 + sqrt 2
ONE_MINUS_INV_B = QSqrt2(2, -1)  # 1 - 1/b = 2 - sqrt 2
INV_B = QSqrt2(-1, 1)  # 1/b = sqrt 2 - 1
INV_B_PLUS_1 = QSqrt2(1, Fraction(-1, 2))  # 1/(b+1) = 1 - sqrt(2)/2
TWO_MINUS_SQRT2 = ONE_MINUS_INV_B


def exact(v):
    """Lift ints/Fractions/QSqrt2 into QSqrt2; floats are rejected."""
    return QSqrt2.lift(v)
