"""Univariate generalized polynomials and the identity-theorem criterion.

A polynomial with generalized-number coefficients is the computable stand-in
for a holomorphic generalized function: its Taylor expansion is finite and
exact, so the coefficient ideal at a point is finitely generated and its
density is decidable.

Density of that ideal is necessary for the identity theorem.  When it fails,
the failure is constructive: the annihilating idempotent e of the ideal
yields the nonconstant sequence ``z0 + e * alpha(n)``, which converges
sharply to z0 while the polynomial never moves -- an explicit accumulation
of solutions.  A dense verdict is only the necessary-condition pass, not a
proof of the identity theorem; degree <= 2 admits the finer case analysis in
:func:`quadratic_unique_solution_check`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (
    DegreeTooHighError,
    InexactInputError,
    NotIdempotentError,
    PreconditionFailedError,
)
from .gennum import (
    Equality,
    GenNumber,
    Kind,
    Negligibility,
    Valuation,
    alpha,
    classify,
    equals,
    from_scalar,
    invert,
    is_negligible,
    one,
    valuation,
    zero,
)
from .ideals import FgIdeal, annihilator_idempotent, fg_ideal, is_dense


@dataclass(frozen=True)
class GenPolynomial:
    """Coefficients a_0..a_d over one scalar field; top coefficient nonzero."""

    coeffs: tuple[GenNumber, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        fields = {c.field for c in self.coeffs}
        if len(fields) != 1:
            raise ValueError("coefficients over mixed scalar fields")
        trimmed = list(self.coeffs)
        while len(trimmed) > 1 and is_negligible(trimmed[-1]) is Negligibility.YES:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed))

    @property
    def field(self) -> str:
        return self.coeffs[0].field

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_exact(self) -> bool:
        return all(c.is_exact() for c in self.coeffs)

    def coeff(self, k: int) -> GenNumber:
        return self.coeffs[k] if k <= self.degree else zero(self.field)


def poly(coeffs) -> GenPolynomial:
    return GenPolynomial(tuple(coeffs))


def eval_poly(f: GenPolynomial, z: GenNumber) -> GenNumber:
    """Horner evaluation."""
    acc = zero(f.field)
    for c in reversed(f.coeffs):
        acc = acc * z + c
    return acc


def derivative(f: GenPolynomial) -> GenPolynomial:
    if f.degree == 0:
        return GenPolynomial((zero(f.field),))
    return GenPolynomial(tuple(c * k for k, c in enumerate(f.coeffs) if k >= 1))


def taylor_shift(f: GenPolynomial, z0: GenNumber) -> GenPolynomial:
    """Coefficients of ``f(z0 + w)`` in w, by exact binomial expansion."""
    d = f.degree
    out = [zero(f.field) for _ in range(d + 1)]
    powers = [one(f.field)]
    for _ in range(d):
        powers.append(powers[-1] * z0)
    for j, a in enumerate(f.coeffs):
        for k in range(j + 1):
            out[k] = out[k] + a * math.comb(j, k) * powers[j - k]
    return GenPolynomial(tuple(out))


def cf_ideal(f: GenPolynomial, z0: GenNumber) -> FgIdeal:
    """Ideal of the Taylor coefficients of index >= 1 at z0."""
    shifted = taylor_shift(f, z0)
    gens = shifted.coeffs[1:]
    if not gens:
        gens = (zero(f.field),)
    return fg_ideal(*gens)


@dataclass(frozen=True)
class IdentityCheckResult:
    dense: bool
    idempotent: GenNumber | None = None
    sequence_description: str | None = None
    verified_n: tuple[Fraction, ...] = ()


def _check_bounded_point(z0: GenNumber):
    v = valuation(z0)
    if v.value < 0:
        raise PreconditionFailedError(
            f"the expansion point must lie in the unit ball (valuation {v.value} < 0)")


def identity_check(f: GenPolynomial, z0: GenNumber,
                   verify_n=(1, 2, 5, 16)) -> IdentityCheckResult:
    """Density of the coefficient ideal, or a constructive counterexample.

    A non-dense ideal gives an idempotent e killing every Taylor coefficient
    of index >= 1; the sequence ``z0 + e*alpha(n)`` is nonconstant, converges
    sharply to z0, and leaves f fixed at f(z0) -- so the identity theorem
    fails.  Each requested n is verified exactly.
    """
    if not (f.is_exact() and z0.is_exact()):
        raise InexactInputError("identity check needs exact inputs")
    _check_bounded_point(z0)
    ideal = cf_ideal(f, z0)
    if is_dense(ideal):
        return IdentityCheckResult(dense=True)
    e = annihilator_idempotent(ideal)
    verified = tuple(Fraction(n) for n in verify_n
                     if verify_counterexample(f, z0, e, n))
    return IdentityCheckResult(
        dense=False,
        idempotent=e,
        sequence_description="x_n = z0 + e*alpha(n)",
        verified_n=verified)


def verify_counterexample(f: GenPolynomial, z0: GenNumber, e: GenNumber,
                          n) -> bool:
    """Check that ``x_n = z0 + e*alpha(n)`` really refutes the identity
    theorem at z0: f does not move, but x_n is a fresh point at sharp
    distance valuation exactly n."""
    if not (e.is_exact() and equals(e * e, e) is Equality.EQUAL):
        raise NotIdempotentError("counterexample witness must be idempotent")
    n = Fraction(n)
    step = e * alpha(n, e.field)
    if is_negligible(step) is Negligibility.YES:
        return False
    if valuation(step) != Valuation(n, True):
        return False
    moved = eval_poly(f, z0 + step) - eval_poly(f, z0)
    return is_negligible(moved) is Negligibility.YES


class QuadraticVerdict(Enum):
    UNIQUE_IN_UNIT_BALL = "unique_in_unit_ball"
    IDEMPOTENT_KILLS_QUADRATIC = "idempotent_kills_quadratic"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class QuadraticResult:
    verdict: QuadraticVerdict
    idempotent: GenNumber | None = None
    ratio_valuation: Valuation | None = None


def quadratic_unique_solution_check(p: GenPolynomial,
                                    z0: GenNumber) -> QuadraticResult:
    """Case analysis for ``p(z) = p(z0)`` with p of degree <= 2.

    With a1 a unit: if an idempotent kills a2, multiplying the solution
    equation by it forces e*(z - z0) = 0, and no nonconstant solution
    sequence can converge to z0.  If a2 is also a unit and
    ``valuation(a1**-1 * a2) > 0``, then for any z in the unit ball
    ``1 + a1**-1*a2*(z + z0)`` is 1 plus something of positive valuation,
    hence a unit, and z = z0 is the only solution there.  The norm lattice
    here is ``e**-q`` for rational q, so the boundary valuation 0 cannot be
    resolved against a strict norm bound and stays inconclusive.
    """
    if p.degree > 2:
        raise DegreeTooHighError("the case analysis covers degree <= 2 only")
    _check_bounded_point(z0)
    a1 = p.coeff(1)
    a2 = p.coeff(2)
    if classify(a1).kind is not Kind.UNIT:
        return QuadraticResult(QuadraticVerdict.INCONCLUSIVE)
    if is_negligible(a2) is Negligibility.YES:
        return QuadraticResult(QuadraticVerdict.UNIQUE_IN_UNIT_BALL)
    e = annihilator_idempotent(fg_ideal(a2))
    if is_negligible(e) is not Negligibility.YES:
        return QuadraticResult(QuadraticVerdict.IDEMPOTENT_KILLS_QUADRATIC,
                               idempotent=e)
    if classify(a2).kind is Kind.UNIT:
        ratio = invert(a1) * a2
        v = valuation(ratio)
        if v.exact and v.value > 0:
            return QuadraticResult(QuadraticVerdict.UNIQUE_IN_UNIT_BALL,
                                   ratio_valuation=v)
        return QuadraticResult(QuadraticVerdict.INCONCLUSIVE,
                               ratio_valuation=v)
    return QuadraticResult(QuadraticVerdict.INCONCLUSIVE)


def solve_linear(f: GenPolynomial, z0: GenNumber, window=None) -> GenNumber:
    """The unique solution of ``f(z) = f(z0)`` for degree-1 f with unit slope."""
    if f.degree != 1:
        raise PreconditionFailedError("linear solve needs degree exactly 1")
    a1 = f.coeff(1)
    if classify(a1).kind is not Kind.UNIT:
        raise PreconditionFailedError("linear solve needs a unit slope")
    return invert(a1, window) * (a1 * z0)
