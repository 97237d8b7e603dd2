"""Generalized numbers as piecewise truncated Puiseux series.

The continuum (0,1] is discretized to the dyadic mesh ``eps_n = 2**-n`` with
piecewise-constant extension, so a representative net is determined by its
values at the mesh indices.  A :class:`GenNumber` is a finite list of pieces
``(region, series)`` whose regions partition the naturals; on each region the
net is the finite Puiseux sum of the series, known exactly below the series'
truncation order and unknown (but of valuation at least that order) above it.

Everything downstream -- the sharp valuation, the ultrametric, the
unit/zero-divisor dichotomy with constructive witnesses, q-positivity, square
roots -- is decided by exact rational comparisons on this representation.
Truncation orders are tracked through every operation so that a predicate is
only ever answered ``yes``/``no`` when the finite data certifies it;
otherwise the three-valued answers say so explicitly.

Canonical form: region partitions are purely periodic (threshold 0).  Editing
a net on finitely many mesh indices is a negligible perturbation, so every
element has exactly one such representative; structural equality of canonical
forms then decides equality in the quotient ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    ComplexOrderUndefinedError,
    FieldMismatchError,
    IndeterminateSignError,
    InexactInputError,
    IrrationalLeadingCoefficientError,
    NotAUnitError,
    NotQPositiveError,
)
from .indexsets import IndexSet, empty_set, full_set
from .scalars import (
    COMPLEX,
    REAL,
    GaussianRational,
    Scalar,
    as_scalar,
    conj_scalar,
    rat_sqrt,
    scalar_one,
    scalar_zero,
)

INF = math.inf

ExpLike = Union[int, Fraction]

DEFAULT_WINDOW = Fraction(16)


def resolve_window(window) -> Fraction:
    return DEFAULT_WINDOW if window is None else Fraction(window)


# ---------------------------------------------------------------------------
# truncated Puiseux series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PuiseuxSeries:
    """Finite sum of ``c * eps**q`` terms plus a truncation order.

    ``order`` is a rational or +inf; all omitted terms have exponent >= order,
    and ``order == INF`` marks an exact element.  Terms are kept sorted by
    exponent with nonzero coefficients only.
    """

    terms: tuple[tuple[Fraction, Scalar], ...]
    order: Union[Fraction, float] = INF

    def __post_init__(self):
        order = self.order if self.order == INF else Fraction(self.order)
        merged: dict[Fraction, Scalar] = {}
        for q, c in self.terms:
            q = Fraction(q)
            merged[q] = merged[q] + c if q in merged else c
        clean = tuple((q, c) for q, c in sorted(merged.items())
                      if c and q < order)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "order", order)

    # -- structure -----------------------------------------------------------

    def is_exact(self) -> bool:
        return self.order == INF

    def is_exact_zero(self) -> bool:
        return not self.terms and self.order == INF

    def leading_exponent(self) -> Union[Fraction, float]:
        """Exponent of the first term; the order for a termless series."""
        return self.terms[0][0] if self.terms else self.order

    def leading_coeff(self) -> Scalar:
        return self.terms[0][1]

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        return PuiseuxSeries(self.terms + other.terms,
                             min(self.order, other.order))

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries(tuple((q, -c) for q, c in self.terms), self.order)

    def __sub__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        return self + (-other)

    def __mul__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        # Orders add against the opposite factor's leading exponent: the
        # tightest truncation certifiable from the operands.
        order = min(self.order + other.leading_exponent(),
                    other.order + self.leading_exponent())
        terms = [(qa + qb, ca * cb)
                 for qa, ca in self.terms for qb, cb in other.terms]
        return PuiseuxSeries(tuple(terms), order)

    def truncated(self, order: Union[Fraction, float]) -> "PuiseuxSeries":
        return PuiseuxSeries(self.terms, min(self.order, order))

    def shift_scale(self, dq: Fraction, c: Scalar) -> "PuiseuxSeries":
        return PuiseuxSeries(tuple((q + dq, co * c) for q, co in self.terms),
                             self.order if self.order == INF else self.order + dq)

    def conjugated(self) -> "PuiseuxSeries":
        return PuiseuxSeries(tuple((q, conj_scalar(c)) for q, c in self.terms),
                             self.order)

    def mesh_eval(self, n: int) -> Scalar:
        """Exact value of the finite-sum representative at ``eps_n = 2**-n``.

        Requires every ``n*q`` to be an integer so the power stays rational.
        """
        total = None
        for q, c in self.terms:
            e = -n * q
            if e.denominator != 1:
                raise ValueError(f"2**({e}) is not rational; pick n divisible "
                                 f"by the exponent denominators")
            p = int(e)
            w = Fraction(2 ** p) if p >= 0 else Fraction(1, 2 ** (-p))
            total = c * w if total is None else total + c * w
        return total if total is not None else Fraction(0)


def series(terms: Iterable[tuple[ExpLike, Scalar]],
           order: Union[ExpLike, float] = INF) -> PuiseuxSeries:
    return PuiseuxSeries(tuple((Fraction(q), c) for q, c in terms), order)


ZERO_SERIES_R = PuiseuxSeries((), INF)


def _const_series(c: Scalar) -> PuiseuxSeries:
    return PuiseuxSeries(((Fraction(0), c),), INF)


# ---------------------------------------------------------------------------
# generalized numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenNumber:
    """Element of the generalized-number ring, in canonical form.

    ``pieces`` is a finite list of (region, series) pairs whose regions
    partition the naturals.  Construction canonicalizes: the partition is
    re-cut along the eventual residue pattern (finite regions dissolve into
    it -- a negligible edit), pieces with equal series merge, and pieces are
    sorted; so dataclass equality decides ring equality for exact elements.
    """

    field: str
    pieces: tuple[tuple[IndexSet, PuiseuxSeries], ...]

    def __post_init__(self):
        if self.field not in (REAL, COMPLEX):
            raise FieldMismatchError(f"unknown scalar field {self.field!r}")
        if not self.pieces:
            raise ValueError("a GenNumber needs at least one piece")
        want = Fraction if self.field == REAL else GaussianRational
        for _, s in self.pieces:
            for _, c in s.terms:
                if not isinstance(c, want):
                    raise FieldMismatchError(
                        f"coefficient {c!r} does not belong to field {self.field}")

        regions = [r for r, _ in self.pieces]
        mod = 1
        for r in regions:
            mod = math.lcm(mod, r.modulus)
        n_max = max(r.threshold for r in regions)
        for n in range(n_max):
            if sum(n in r for r in regions) != 1:
                raise ValueError(f"regions do not partition the naturals at {n}")

        # Reassign each residue class mod `mod` to the piece that eventually
        # owns it; finitely many low indices may change hands, which is a
        # negligible perturbation and yields the unique periodic canonical form.
        by_series: dict[PuiseuxSeries, set[int]] = {}
        for r in range(mod):
            owners = [i for i, (reg, _) in enumerate(self.pieces)
                      if r % reg.modulus in reg.residues]
            if len(owners) != 1:
                raise ValueError("regions do not partition the naturals "
                                 f"eventually (class {r} mod {mod})")
            s = self.pieces[owners[0]][1]
            by_series.setdefault(s, set()).add(r)

        canon = tuple(sorted(
            ((IndexSet(mod, frozenset(res)), s) for s, res in by_series.items()),
            key=lambda p: p[0].sort_key()))
        object.__setattr__(self, "pieces", canon)

    # -- structure ------------------------------------------------------------

    def is_exact(self) -> bool:
        return all(s.is_exact() for _, s in self.pieces)

    def support(self) -> IndexSet:
        """Union of the regions where the series has at least one term."""
        out = empty_set()
        for r, s in self.pieces:
            if s.terms:
                out = out | r
        return out

    def zero_region(self) -> IndexSet:
        """Union of the regions where the element vanishes exactly."""
        out = empty_set()
        for r, s in self.pieces:
            if s.is_exact_zero():
                out = out | r
        return out

    def indeterminate_region(self) -> IndexSet:
        out = empty_set()
        for r, s in self.pieces:
            if not s.terms and not s.is_exact():
                out = out | r
        return out

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "GenNumber | None":
        if isinstance(other, GenNumber):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot mix fields {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return from_scalar(other, self.field)
        return None

    def _zip(self, other: "GenNumber"):
        for rx, sx in self.pieces:
            for ry, sy in other.pieces:
                r = rx & ry
                if not r.is_empty():
                    yield r, sx, sy

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GenNumber(self.field,
                         tuple((r, sx + sy) for r, sx, sy in self._zip(o)))

    __radd__ = __add__

    def __neg__(self):
        return GenNumber(self.field, tuple((r, -s) for r, s in self.pieces))

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
        return GenNumber(self.field,
                         tuple((r, sx * sy) for r, sx, sy in self._zip(o)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * invert(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * invert(self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = one(self.field)
        for _ in range(k):
            out = out * self
        return out

    def __abs__(self):
        return gen_abs(self)

    def __str__(self) -> str:
        from .exprlang import format_gennum
        return format_gennum(self)

    def mesh_eval(self, n: int) -> Scalar:
        for r, s in self.pieces:
            if n in r:
                return s.mesh_eval(n)
        raise AssertionError("partition does not cover the naturals")


# -- constructors -------------------------------------------------------------


def piecewise(pieces: Sequence[tuple[IndexSet, PuiseuxSeries]],
              field: str = REAL) -> GenNumber:
    return GenNumber(field, tuple(pieces))


def from_scalar(c, field: str = REAL) -> GenNumber:
    c = as_scalar(c, field)
    s = _const_series(c) if c else PuiseuxSeries((), INF)
    return GenNumber(field, ((full_set(), s),))


def zero(field: str = REAL) -> GenNumber:
    return GenNumber(field, ((full_set(), PuiseuxSeries((), INF)),))


def one(field: str = REAL) -> GenNumber:
    return from_scalar(1, field)


def monomial(q: ExpLike, c=1, field: str = REAL) -> GenNumber:
    c = as_scalar(c, field)
    s = PuiseuxSeries(((Fraction(q), c),), INF) if c else PuiseuxSeries((), INF)
    return GenNumber(field, ((full_set(), s),))


def alpha(r: ExpLike, field: str = REAL) -> GenNumber:
    """The element with representative ``eps -> eps**r``."""
    return monomial(Fraction(r), 1, field)


def chi(region: IndexSet, field: str = REAL) -> GenNumber:
    """Characteristic function of an index set: 1 on it, 0 off it.

    An idempotent, and a nontrivial one exactly when the region is sharp.
    """
    if region.is_full():
        return one(field)
    if region.is_empty():
        return zero(field)
    return GenNumber(field, ((region, _const_series(scalar_one(field))),
                             (region.complement(), PuiseuxSeries((), INF))))


def conj(x: GenNumber) -> GenNumber:
    return GenNumber(x.field, tuple((r, s.conjugated()) for r, s in x.pieces))


# ---------------------------------------------------------------------------
# valuation and the sharp ultrametric
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Valuation:
    """Sharp valuation: a rational or +inf, plus an exactness flag.

    ``exact=False`` means some region is zero only up to finite order, so the
    value is a certified lower bound rather than the exact valuation.  The
    sharp norm is ``e**-value``; it is rendered only for display, never used
    in decisions.
    """

    value: Union[Fraction, float]
    exact: bool = True

    def display(self) -> str:
        if self.value == INF:
            return "0.000000"
        try:
            return f"{math.exp(-float(self.value)):.6f}"
        except OverflowError:
            return "inf"

    def value_str(self) -> str:
        return "inf" if self.value == INF else str(self.value)


def _combine_min(parts: Iterable[tuple[Union[Fraction, float], bool]]) -> Valuation:
    exact_min, bound_min = INF, INF
    for v, ex in parts:
        if ex:
            exact_min = min(exact_min, v)
        else:
            bound_min = min(bound_min, v)
    if exact_min <= bound_min:
        return Valuation(exact_min, True)
    return Valuation(bound_min, False)


def valuation(x: GenNumber) -> Valuation:
    """min over regions of the leading exponent (termless: the order).

    Well defined on the quotient: canonical forms carry no finite regions.
    """
    return _combine_min(
        (s.leading_exponent(), bool(s.terms) or s.is_exact())
        for _, s in x.pieces)


def sharp_norm(x: GenNumber) -> Valuation:
    return valuation(x)


def distance(x: GenNumber, y: GenNumber) -> Valuation:
    return valuation(x - y)


# ---------------------------------------------------------------------------
# three-valued predicates
# ---------------------------------------------------------------------------


class Negligibility(Enum):
    YES = "yes"
    NO = "no"
    ZERO_UP_TO_PRECISION = "zero_up_to_precision"


class Sign(Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


class Equality(Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    EQUAL_UP_TO_PRECISION = "equal_up_to_precision"


def is_negligible(x: GenNumber) -> Negligibility:
    if any(s.terms for _, s in x.pieces):
        return Negligibility.NO
    if all(s.is_exact() for _, s in x.pieces):
        return Negligibility.YES
    return Negligibility.ZERO_UP_TO_PRECISION


def equals(x: GenNumber, y: GenNumber) -> Equality:
    n = is_negligible(x - y)
    if n is Negligibility.YES:
        return Equality.EQUAL
    if n is Negligibility.NO:
        return Equality.NOT_EQUAL
    return Equality.EQUAL_UP_TO_PRECISION


def is_qpositive(x: GenNumber) -> Sign:
    """Quasi-positivity: eventually >= -eps**b for every b.

    The leading term dominates the truncated tail on each region, so a
    positive leading coefficient certifies the region and a negative one
    refutes the whole element; inexact zero regions stay indeterminate.
    """
    if x.field != REAL:
        raise ComplexOrderUndefinedError("order predicates need the real field")
    indeterminate = False
    for _, s in x.pieces:
        if s.terms:
            if s.leading_coeff() < 0:
                return Sign.NO
        elif not s.is_exact():
            indeterminate = True
    return Sign.INDETERMINATE if indeterminate else Sign.YES


def gen_abs(x: GenNumber) -> GenNumber:
    """Regionwise absolute value; agrees with eps -> |rep(eps)| eventually."""
    if x.field != REAL:
        raise ComplexOrderUndefinedError(
            "abs needs the real field; use abs_sq over the complex field")
    out = []
    for r, s in x.pieces:
        if not s.terms and not s.is_exact():
            raise IndeterminateSignError(
                "a region is zero only up to finite order; sign unknown")
        out.append((r, -s if s.terms and s.leading_coeff() < 0 else s))
    return GenNumber(x.field, tuple(out))


def abs_sq(x: GenNumber) -> GenNumber:
    """x * conj(x); the complex-field stand-in for abs."""
    return x * conj(x)


# ---------------------------------------------------------------------------
# the unit / zero-divisor dichotomy
# ---------------------------------------------------------------------------


class Kind(Enum):
    UNIT = "unit"
    ZERO_DIVISOR = "zero_divisor"
    ZERO = "zero"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    inverse: GenNumber | None = None
    witness: GenNumber | None = None


def classify(x: GenNumber, window=None) -> Classification:
    """Fundamental dichotomy with constructive data.

    Unit: every region has a leading term, so ``|rep(eps)| >= eps**a``
    eventually; the inverse is computed to the given window.  Zero divisor:
    the element vanishes exactly on a nonempty region union Z, and chi(Z) is
    a nonzero idempotent annihilator.  Inexact zero regions (with no exact
    ones) certify neither branch.
    """
    neg = is_negligible(x)
    if neg is Negligibility.YES:
        return Classification(Kind.ZERO)
    z = x.zero_region()
    if not z.is_empty():
        return Classification(Kind.ZERO_DIVISOR, witness=chi(z, x.field))
    if all(s.terms for _, s in x.pieces):
        return Classification(Kind.UNIT, inverse=invert(x, window))
    return Classification(Kind.INDETERMINATE)


def _series_invert(s: PuiseuxSeries, window: Fraction) -> PuiseuxSeries:
    q, c = s.terms[0]
    u = PuiseuxSeries(tuple((e - q, co / c) for e, co in s.terms[1:]),
                      s.order if s.order == INF else s.order - q)
    if u.is_exact_zero():
        return PuiseuxSeries(((-q, 1 / c),), INF)
    delta = u.leading_exponent()
    steps = max(1, math.ceil(window / delta)) if delta != INF else 1
    one_s = _const_series(c / c)
    g = one_s
    for _ in range(steps):
        g = (one_s - u * g).truncated(window)
    return g.shift_scale(-q, 1 / c)


def invert(x: GenNumber, window=None) -> GenNumber:
    """Multiplicative inverse to the requested window.

    Regionwise geometric series around the leading monomial; the result has
    order ``window - q`` on each region, so ``x*invert(x, W) - 1`` has
    valuation at least W.  Monomial regions invert exactly.
    """
    if not all(s.terms for _, s in x.pieces):
        raise NotAUnitError("element has a region with no leading term")
    w = resolve_window(window)
    return GenNumber(x.field,
                     tuple((r, _series_invert(s, w)) for r, s in x.pieces))


def _binom_half(k: int) -> Fraction:
    num = Fraction(1)
    for i in range(k):
        num *= Fraction(1, 2) - i
    return num / math.factorial(k)


def _series_sqrt(s: PuiseuxSeries, window: Fraction) -> PuiseuxSeries:
    if s.is_exact_zero():
        return s
    q, c = s.terms[0]
    d = rat_sqrt(c)
    if d is None:
        raise IrrationalLeadingCoefficientError(
            f"leading coefficient {c} has no rational square root")
    u = PuiseuxSeries(tuple((e - q, co / c) for e, co in s.terms[1:]),
                      s.order if s.order == INF else s.order - q)
    if u.is_exact_zero():
        return PuiseuxSeries(((q / 2, d),), INF)
    rel = window - q
    delta = u.leading_exponent()
    steps = max(0, math.ceil(rel / delta)) if delta != INF else 0
    acc = _const_series(_binom_half(steps))
    for k in range(steps - 1, -1, -1):
        acc = (_const_series(_binom_half(k)) + u * acc).truncated(rel)
    return acc.truncated(rel).shift_scale(q / 2, d)


def sqrt(x: GenNumber, window=None) -> GenNumber:
    """Regionwise binomial-series square root of a q-positive element.

    ``sqrt(x, W)**2 - x`` has valuation at least W.  Partial: the leading
    coefficients must be rational squares, or the result leaves the class.
    """
    if is_qpositive(x) is not Sign.YES:
        raise NotQPositiveError("square roots need a certified q-positive argument")
    w = resolve_window(window)
    return GenNumber(x.field,
                     tuple((r, _series_sqrt(s, w)) for r, s in x.pieces))


def unit_near(x: GenNumber, n: ExpLike) -> GenNumber:
    """A unit within sharp distance valuation >= n of x.

    Constructive density of the unit group: bump the exact-zero region union
    Z by ``chi(Z) * alpha(n)``; when Z is empty, x is already a unit.
    """
    if not x.is_exact():
        raise InexactInputError("unit_near needs an exact element")
    z = x.zero_region()
    if z.is_empty():
        return x
    return x + chi(z, x.field) * alpha(Fraction(n), x.field)
