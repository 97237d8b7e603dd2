"""Exact scalars: rationals for the real field, Gaussian rationals for the
complex field.  Real coefficients are plain ``fractions.Fraction``; complex
ones are :class:`GaussianRational` pairs.  Both close under ring operations,
so series arithmetic is written once against the shared protocol.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

REAL = "R"
COMPLEX = "C"

Rat = Fraction


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}im)"


Scalar = Union[Fraction, GaussianRational]


def conj_scalar(c: Scalar) -> Scalar:
    return c.conjugate() if isinstance(c, GaussianRational) else c


def scalar_abs_sq(c: Scalar) -> Fraction:
    return c.abs_sq() if isinstance(c, GaussianRational) else c * c


def scalar_zero(field: str) -> Scalar:
    return GaussianRational(0) if field == COMPLEX else Fraction(0)


def scalar_one(field: str) -> Scalar:
    return GaussianRational(1) if field == COMPLEX else Fraction(1)


def as_scalar(value, field: str) -> Scalar:
    if field == COMPLEX:
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(Fraction(value))
    if isinstance(value, GaussianRational):
        if value.im:
            raise ValueError(f"{value} is not a real scalar")
        return value.re
    return Fraction(value)


def rat_sqrt(c: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if c < 0:
        return None
    p, q = c.numerator, c.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None
