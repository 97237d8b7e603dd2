"""Canonical JSON documents for values and valuations.

Exact data only: rationals are emitted as strings, truncation orders as a
rational string or "inf".  Field order is fixed and canonical values are
already deterministically sorted, so serialization is byte-stable.
"""

from __future__ import annotations

from fractions import Fraction

from .gennum import INF, GenNumber, PuiseuxSeries, Valuation
from .indexsets import IndexSet
from .quaternion import GenQuaternion
from .scalars import GaussianRational


def frac_doc(q) -> str:
    return "inf" if q == INF else str(Fraction(q))


def scalar_doc(c):
    if isinstance(c, GaussianRational):
        return {"re": str(c.re), "im": str(c.im)}
    return str(c)


def indexset_doc(s: IndexSet) -> dict:
    return {
        "m": s.modulus,
        "T": sorted(s.residues),
        "N": s.threshold,
        "in": sorted(s.exceptions_in),
        "out": sorted(s.exceptions_out),
    }


def series_doc(s: PuiseuxSeries) -> dict:
    return {
        "terms": [{"exp": str(q), "coeff": scalar_doc(c)} for q, c in s.terms],
        "order": frac_doc(s.order),
    }


def gennum_doc(x: GenNumber) -> dict:
    return {
        "type": "gennum",
        "field": x.field,
        "pieces": [{"region": indexset_doc(r), "series": series_doc(s)}
                   for r, s in x.pieces],
    }


def quat_doc(x: GenQuaternion) -> dict:
    return {
        "type": "genquat",
        "components": [gennum_doc(c) for c in x.components()],
    }


def value_doc(v) -> dict:
    return quat_doc(v) if isinstance(v, GenQuaternion) else gennum_doc(v)


def valuation_doc(v: Valuation) -> dict:
    return {
        "valuation": v.value_str(),
        "exact": v.exact,
        "display": v.display(),
    }
