"""Finitely generated ideals: annihilators, density, membership.

For exact generators everything reduces to supports.  The canonical support
of an ideal is the union of the regions where some generator has a leading
term; its complement Z carries the maximal annihilating idempotent chi(Z).
An ideal is dense (in the algebraic sense: zero annihilator) exactly when
the support is everything, and -- for finitely generated ideals -- exactly
when it is the whole ring, which is checked through an independent route:
the sum of generator absolute values is classified as a unit.

Membership is the support criterion: y lies in the ideal iff its support is
covered, because regionwise quotients of Puiseux series are again moderate
(dividing by the leading monomial shifts exponents and rescales
coefficients, both of which stay in the class).

Quaternion ideals reduce to scalar ones through the reduced norm.  Squared
norms are used throughout (the square root can leave the rational class),
which is harmless: an ideal generated by norms and one generated by their
squares have identical supports, so density transfers, the annihilator is
central, and the scalar hull contains every generator componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ContainmentViolationError,
    InexactElementError,
    InexactGeneratorError,
)
from .gennum import (
    GenNumber,
    Kind,
    abs_sq,
    chi,
    classify,
    gen_abs,
    zero,
)
from .indexsets import IndexSet, empty_set
from .quaternion import GenQuaternion, norm_sq, scalar_quat
from .scalars import REAL


@dataclass(frozen=True)
class FgIdeal:
    generators: tuple[GenNumber, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("an ideal needs at least one generator")
        fields = {g.field for g in self.generators}
        if len(fields) != 1:
            raise InexactGeneratorError("generators over mixed scalar fields")
        for g in self.generators:
            if not g.is_exact():
                raise InexactGeneratorError(
                    "density is not certifiable from truncated generators")

    @property
    def field(self) -> str:
        return self.generators[0].field

    def support(self) -> IndexSet:
        out = empty_set()
        for g in self.generators:
            out = out | g.support()
        return out


@dataclass(frozen=True)
class QuatFgIdeal:
    generators: tuple[GenQuaternion, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("an ideal needs at least one generator")
        for g in self.generators:
            if not g.is_exact():
                raise InexactGeneratorError(
                    "density is not certifiable from truncated generators")


def fg_ideal(*generators: GenNumber) -> FgIdeal:
    return FgIdeal(tuple(generators))


def quat_fg_ideal(*generators: GenQuaternion) -> QuatFgIdeal:
    return QuatFgIdeal(tuple(generators))


def annihilator_idempotent(ideal: FgIdeal) -> GenNumber:
    """chi of the common exact-zero region of all generators.

    Annihilates every generator exactly, and dominates every idempotent
    annihilator in the class; zero iff the ideal has full support.
    """
    return chi(ideal.support().complement(), ideal.field)


def is_dense(ideal: FgIdeal) -> bool:
    """Dense in the algebraic sense: zero annihilator."""
    return ideal.support().is_full()


def is_whole_ring(ideal: FgIdeal) -> bool:
    """Whether the generators span everything: classify the absolute sum.

    Independent of the support computation: sums |g| over the real field
    (g*conj(g) over the complex one) and asks the dichotomy for a unit.
    For finitely generated ideals this coincides with density.
    """
    total = zero(ideal.field)
    for g in ideal.generators:
        total = total + (gen_abs(g) if ideal.field == REAL else abs_sq(g))
    return classify(total).kind is Kind.UNIT


def contains(ideal: FgIdeal, y: GenNumber) -> bool:
    """Support criterion for membership; sound and complete in the class."""
    if not y.is_exact():
        raise InexactElementError("membership needs an exact element")
    return y.support().is_subset(ideal.support())


def norm_ideal(ideal: QuatFgIdeal) -> FgIdeal:
    """Scalar ideal generated by the reduced norms of the generators."""
    return FgIdeal(tuple(norm_sq(g) for g in ideal.generators))


def quat_annihilator(ideal: QuatFgIdeal) -> GenNumber:
    """Central idempotent annihilating the ideal on both sides."""
    return annihilator_idempotent(norm_ideal(ideal))


def quat_is_dense(ideal: QuatFgIdeal) -> bool:
    """Density transfers through the norm ideal."""
    return is_dense(norm_ideal(ideal))


def quat_hull(ideal: QuatFgIdeal) -> QuatFgIdeal:
    """Quaternion ideal generated by the norm ideal's scalars.

    Contains the original ideal: each generator component is supported
    inside the norm support.  A violation cannot occur for exact elements
    and is raised as a diagnostic.
    """
    scalars = norm_ideal(ideal)
    for g in ideal.generators:
        for comp in g.components():
            if not contains(scalars, comp):
                raise ContainmentViolationError(
                    "component escapes the norm-ideal hull")
    return QuatFgIdeal(tuple(scalar_quat(s) for s in scalars.generators))
