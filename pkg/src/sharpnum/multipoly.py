"""Multivariate polynomials over the generalized numbers and their constant
annihilators.

Over this coefficient ring (commutative, reduced) a polynomial with any
nonzero annihilator in the polynomial ring already has a nonzero *constant*
one: an element annihilates ``f * R[x1..xn]`` iff it annihilates every
coefficient, so the maximal annihilator is the characteristic idempotent of
the common zero region of the coefficients.  ``verify_annihilator`` keeps
the two-sided sandwich form ``f * h * b`` so the check exercises the general
statement's shape rather than the commutative shortcut.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ArityMismatchError,
    InexactCoefficientError,
    PreconditionFailedError,
)
from .gennum import (
    GenNumber,
    Negligibility,
    from_scalar,
    is_negligible,
    zero,
)
from .ideals import annihilator_idempotent, fg_ideal
from .scalars import REAL

Monomial = tuple[int, ...]


def _grlex(m: Monomial):
    return (sum(m), m)


@dataclass(frozen=True)
class MultiPoly:
    nvars: int
    terms: tuple[tuple[Monomial, GenNumber], ...]

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("nvars must be positive")
        merged: dict[Monomial, GenNumber] = {}
        for mono, c in self.terms:
            mono = tuple(mono)
            if len(mono) != self.nvars or any(e < 0 for e in mono):
                raise ArityMismatchError(
                    f"monomial {mono} does not fit {self.nvars} variables")
            merged[mono] = merged[mono] + c if mono in merged else c
        clean = tuple(sorted(
            ((m, c) for m, c in merged.items()
             if is_negligible(c) is not Negligibility.YES),
            key=lambda t: _grlex(t[0])))
        object.__setattr__(self, "terms", clean)

    @property
    def field(self) -> str:
        return self.terms[0][1].field if self.terms else REAL

    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return all(c.is_exact() for _, c in self.terms)

    def coefficients(self) -> tuple[GenNumber, ...]:
        return tuple(c for _, c in self.terms)


def multi_poly(nvars: int, coeffs: dict[Monomial, GenNumber]) -> MultiPoly:
    return MultiPoly(nvars, tuple(coeffs.items()))


def constant(nvars: int, c: GenNumber) -> MultiPoly:
    return MultiPoly(nvars, (((0,) * nvars, c),))


def variable(nvars: int, i: int) -> MultiPoly:
    mono = tuple(1 if k == i else 0 for k in range(nvars))
    return MultiPoly(nvars, ((mono, from_scalar(1)),))


def _check_arity(f: MultiPoly, g: MultiPoly):
    if f.nvars != g.nvars:
        raise ArityMismatchError(f"{f.nvars} variables vs {g.nvars}")


def padd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    _check_arity(f, g)
    return MultiPoly(f.nvars, f.terms + g.terms)


def pneg(f: MultiPoly) -> MultiPoly:
    return MultiPoly(f.nvars, tuple((m, -c) for m, c in f.terms))


def pmul(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    _check_arity(f, g)
    out = []
    for ma, ca in f.terms:
        for mb, cb in g.terms:
            out.append((tuple(x + y for x, y in zip(ma, mb)), ca * cb))
    return MultiPoly(f.nvars, tuple(out))


def scale(f: MultiPoly, r: GenNumber) -> MultiPoly:
    return MultiPoly(f.nvars, tuple((m, c * r) for m, c in f.terms))


def extend_vars(f: MultiPoly, nvars: int) -> MultiPoly:
    """Embed into a larger polynomial ring (new variables appended)."""
    if nvars < f.nvars:
        raise ArityMismatchError("cannot shrink the variable count")
    pad = (0,) * (nvars - f.nvars)
    return MultiPoly(nvars, tuple((m + pad, c) for m, c in f.terms))


def ann_constant(f: MultiPoly) -> GenNumber:
    """Maximal constant annihilator: chi of the common zero region of the
    coefficients.  Zero iff f has no nonzero polynomial annihilator at all."""
    if not f.is_exact():
        raise InexactCoefficientError("annihilators need exact coefficients")
    gens = f.coefficients() or (zero(f.field),)
    return annihilator_idempotent(fg_ideal(*gens))


def verify_annihilator(f: MultiPoly, b: GenNumber, trials: int = 20,
                       rng: random.Random | None = None) -> bool:
    """Coefficientwise annihilation cross-checked against random sandwiches.

    Checks ``b*c = 0`` for every coefficient c of f, then ``f * h * b = 0``
    for `trials` random polynomials h; the two must agree.
    """
    if not (f.is_exact() and b.is_exact()):
        raise InexactCoefficientError("verification needs exact inputs")
    coeffwise = all(is_negligible(c * b) is Negligibility.YES
                    for c in f.coefficients())
    rng = rng or random.Random(20210 + trials)
    bconst = constant(f.nvars, b)
    for _ in range(trials):
        h = _random_sandwich_poly(f.nvars, rng, f.field)
        if not pmul(pmul(f, h), bconst).is_zero():
            return False
    return coeffwise


def _random_sandwich_poly(nvars: int, rng: random.Random, field: str) -> MultiPoly:
    terms = []
    for _ in range(rng.randint(1, 3)):
        mono = tuple(rng.randint(0, 2) for _ in range(nvars))
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if c:
            terms.append((mono, from_scalar(c, field)))
    if not terms:
        terms.append(((0,) * nvars, from_scalar(1, field)))
    return MultiPoly(nvars, tuple(terms))


def operator_obstruction(a: GenNumber, lf: MultiPoly,
                         target: MultiPoly) -> str:
    """Pointwise obstruction to solving ``L(u) = target`` for an operator
    with symbol polynomial lf and annihilator a.

    With ``a * L(u) = 0`` for every u, any solution forces ``a * target = 0``;
    a nonvanishing product is a certificate of unsolvability.
    """
    if not a.is_exact() or is_negligible(a) is Negligibility.YES:
        raise PreconditionFailedError("the annihilator must be exact and nonzero")
    if not all(is_negligible(c * a) is Negligibility.YES
               for c in lf.coefficients()):
        raise PreconditionFailedError(
            "the element does not annihilate the operator's coefficients")
    if not scale(target, a).is_zero():
        return "unsolvable"
    return "no_verdict"
