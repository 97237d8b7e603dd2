"""Seeded random instance generators for the randomized suites.

Deterministic given the Random instance, so the acceptance runs are
reproducible.  Sizes are desk scale: small moduli, a few pieces, a few terms,
exponent denominators 1 or 2 -- large enough to exercise every branch,
small enough that exact arithmetic stays fast.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .gennum import GenNumber, PuiseuxSeries, piecewise
from .indexsets import IndexSet
from .quaternion import GenQuaternion
from .scalars import REAL

MODULI = (2, 3, 4, 6)


def random_rational(rng: random.Random, bound: int = 9,
                    nonzero: bool = False) -> Fraction:
    while True:
        c = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if c or not nonzero:
            return c


def random_exponent(rng: random.Random, den: int = 2, lo: int = -3,
                    hi: int = 3) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_partition(rng: random.Random, max_parts: int = 3) -> tuple[IndexSet, ...]:
    m = rng.choice(MODULI)
    classes = list(range(m))
    rng.shuffle(classes)
    k = rng.randint(1, min(max_parts, m))
    cuts = sorted(rng.sample(range(1, m), k - 1)) + [m]
    groups, prev = [], 0
    for c in cuts:
        groups.append(classes[prev:c])
        prev = c
    return tuple(IndexSet(m, frozenset(g)) for g in groups)


def random_series(rng: random.Random, max_terms: int = 3, exp_den: int = 2,
                  exp_lo: int = -3, exp_hi: int = 3,
                  order: Fraction | None = None) -> PuiseuxSeries:
    n = rng.randint(1, max_terms)
    exps = set()
    while len(exps) < n:
        exps.add(random_exponent(rng, exp_den, exp_lo, exp_hi))
    terms = tuple((q, random_rational(rng, nonzero=True)) for q in sorted(exps))
    if order is None:
        return PuiseuxSeries(terms)
    return PuiseuxSeries(terms, order)


def random_gennum(rng: random.Random, max_parts: int = 3,
                  zero_prob: float = 0.25, max_terms: int = 3,
                  exp_den: int = 2, exp_lo: int = -3, exp_hi: int = 3,
                  inexact_prob: float = 0.0) -> GenNumber:
    pieces = []
    for region in random_partition(rng, max_parts):
        if rng.random() < zero_prob:
            s = PuiseuxSeries(())
        else:
            s = random_series(rng, max_terms, exp_den, exp_lo, exp_hi)
            if rng.random() < inexact_prob:
                s = s.truncated(s.leading_exponent() + rng.randint(1, 4))
        pieces.append((region, s))
    return piecewise(pieces, REAL)


def random_unit(rng: random.Random, **kw) -> GenNumber:
    return random_gennum(rng, zero_prob=0.0, **kw)


def random_quat(rng: random.Random, zero_prob: float = 0.35,
                comp_zero_prob: float = 0.25, **kw) -> GenQuaternion:
    comps = []
    for _ in range(4):
        if rng.random() < zero_prob:
            comps.append(piecewise([(IndexSet(1, frozenset({0})),
                                     PuiseuxSeries(()))]))
        else:
            comps.append(random_gennum(rng, zero_prob=comp_zero_prob, **kw))
    return GenQuaternion(*comps)


def random_gennum_list(rng: random.Random, count: int, **kw) -> list[GenNumber]:
    return [random_gennum(rng, **kw) for _ in range(count)]
