"""Quaternions over the real generalized numbers.

Hamilton's relations on the basis {1, i, j, k} with exact component
arithmetic.  The reduced norm ``n(x)**2 = x * conj(x)`` drives every decision
procedure: squaring avoids the square root (which can leave the rational
class) while preserving all support and leading-exponent data that the
unit/zero-divisor and density questions depend on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InexactInputError,
    NonRealIdempotentError,
    NotIdempotentError,
)
from .gennum import (
    Classification,
    GenNumber,
    Kind,
    Valuation,
    _combine_min,
    alpha,
    chi,
    classify,
    from_scalar,
    invert,
    sqrt,
    valuation,
    zero,
)
from .indexsets import IndexSet
from .scalars import REAL


@dataclass(frozen=True)
class GenQuaternion:
    x0: GenNumber
    x1: GenNumber
    x2: GenNumber
    x3: GenNumber

    def __post_init__(self):
        for c in self.components():
            if c.field != REAL:
                raise ValueError("quaternion components live over the real field")

    def components(self) -> tuple[GenNumber, GenNumber, GenNumber, GenNumber]:
        return (self.x0, self.x1, self.x2, self.x3)

    def is_exact(self) -> bool:
        return all(c.is_exact() for c in self.components())

    def _coerce(self, other) -> "GenQuaternion | None":
        if isinstance(other, GenQuaternion):
            return other
        if isinstance(other, GenNumber):
            return scalar_quat(other)
        if isinstance(other, (int, Fraction)):
            return scalar_quat(from_scalar(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GenQuaternion(self.x0 + o.x0, self.x1 + o.x1,
                             self.x2 + o.x2, self.x3 + o.x3)

    __radd__ = __add__

    def __neg__(self):
        return GenQuaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a0, a1, a2, a3 = self.components()
        b0, b1, b2, b3 = o.components()
        return GenQuaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * qinverse(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * qinverse(self)

    def __str__(self) -> str:
        from .exprlang import format_value
        return format_value(self)

    def mesh_eval_abs_sq(self, n: int) -> Fraction:
        """Exact |rep(eps_n)|**2 of the componentwise representative."""
        total = Fraction(0)
        for c in self.components():
            v = c.mesh_eval(n)
            total += v * v
        return total


def quat(x0, x1=0, x2=0, x3=0) -> GenQuaternion:
    comps = []
    for c in (x0, x1, x2, x3):
        comps.append(c if isinstance(c, GenNumber) else from_scalar(c))
    return GenQuaternion(*comps)


def scalar_quat(c: GenNumber) -> GenQuaternion:
    z = zero()
    return GenQuaternion(c, z, z, z)


def q_one() -> GenQuaternion:
    return quat(1)


def q_i() -> GenQuaternion:
    return quat(0, 1)


def q_j() -> GenQuaternion:
    return quat(0, 0, 1)


def q_k() -> GenQuaternion:
    return quat(0, 0, 0, 1)


def qconj(x: GenQuaternion) -> GenQuaternion:
    return GenQuaternion(x.x0, -x.x1, -x.x2, -x.x3)


def norm_sq(x: GenQuaternion) -> GenNumber:
    """Sum of component squares; the scalar part of ``x * conj(x)``."""
    a0, a1, a2, a3 = x.components()
    return a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3


def norm(x: GenQuaternion, window=None) -> GenNumber:
    """The reduced norm, when representable: sqrt of norm_sq."""
    return sqrt(norm_sq(x), window)


@dataclass(frozen=True)
class QClassification:
    kind: Kind
    inverse: "GenQuaternion | None" = None
    witness: GenNumber | None = None


def qclassify(x: GenQuaternion, window=None) -> QClassification:
    """Unit or zero divisor, decided through the reduced norm.

    A unit exactly when norm_sq is; then ``x**-1 = conj(x) * norm_sq(x)**-1``.
    A zero divisor exactly when norm_sq vanishes on a nonempty region union Z;
    the central idempotent chi(Z) annihilates every component exactly (a sum
    of real squares vanishes only when each square does).
    """
    c = classify(norm_sq(x), window)
    if c.kind is Kind.UNIT:
        return QClassification(Kind.UNIT, inverse=qconj(x) * c.inverse)
    if c.kind is Kind.ZERO_DIVISOR:
        return QClassification(Kind.ZERO_DIVISOR, witness=c.witness)
    return QClassification(c.kind)


def qinverse(x: GenQuaternion, window=None) -> GenQuaternion:
    return qconj(x) * invert(norm_sq(x), window)


def qvaluation(x: GenQuaternion) -> Valuation:
    """min over components; the quaternion modulus is squeezed between the
    max component modulus and twice it, so the valuations coincide."""
    return _combine_min((v.value, v.exact)
                        for v in map(valuation, x.components()))


def qdistance(x: GenQuaternion, y: GenQuaternion) -> Valuation:
    return qvaluation(x - y)


def is_idempotent(x: GenQuaternion) -> bool:
    if not x.is_exact():
        raise InexactInputError("idempotence is only decidable for exact elements")
    return x * x == x


def idempotent_decompose(x: GenQuaternion) -> IndexSet:
    """The region A with ``x == chi(A) * 1``.

    Every exact quaternion idempotent is a scalar characteristic function;
    anything else would contradict the idempotent-rigidity theorem and is
    reported as a diagnostic.
    """
    if not is_idempotent(x):
        raise NotIdempotentError("element is not idempotent")
    for c in (x.x1, x.x2, x.x3):
        if not c.zero_region().is_full():
            raise NonRealIdempotentError(
                "idempotent with a nonzero vector part: rigidity violated")
    region = None
    for r, s in x.x0.pieces:
        if s.is_exact_zero():
            continue
        if s.terms == ((Fraction(0), Fraction(1)),) and s.is_exact():
            region = r if region is None else region | r
        else:
            raise NonRealIdempotentError(
                "scalar part is not a characteristic function")
    from .indexsets import empty_set
    return empty_set() if region is None else region


def unit_near_quat(x: GenQuaternion, n) -> GenQuaternion:
    """A unit within sharp distance valuation >= n, by bumping the common
    zero region of the reduced norm on the scalar component."""
    if not x.is_exact():
        raise InexactInputError("unit_near needs an exact element")
    z = norm_sq(x).zero_region()
    if z.is_empty():
        return x
    bump = chi(z) * alpha(Fraction(n))
    return GenQuaternion(x.x0 + bump, x.x1, x.x2, x.x3)
