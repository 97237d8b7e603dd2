"""Boolean algebra of index sets on the dyadic mesh.

An :class:`IndexSet` denotes a subset S of the naturals, read as the mesh
points ``eps_n = 2**-n`` with n in S.  The representable class is the
eventually periodic sets with finitely many exceptions: membership is decided
by residues mod a modulus from some threshold on, and by an explicit member
list below the threshold.  The class is closed under complement, union and
intersection, every set has a computable canonical form, and infinitude is
decidable -- which is what makes the characteristic idempotents chi_S and all
predicates built on them exactly decidable.

Raw semantics of the constructor data ``(m, T, N, ins, outs)``::

    n in S  <=>  ((n >= N and n % m in T) or n in ins) and n not in outs

Exceptions live strictly below N, so membership below the threshold is
governed by the exception lists alone.  Canonical form uses the least modulus
and least threshold, lists every member below the threshold in ``ins``, and
has an empty ``outs`` (under the semantics above ``outs`` can never remove
anything once the lists are disjoint; it is accepted for symmetry and
canonicalized away).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import IndexSetError


def _divisors(m: int) -> list[int]:
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


@dataclass(frozen=True)
class IndexSet:
    """Eventually periodic subset of the naturals, always in canonical form."""

    modulus: int
    residues: frozenset[int]
    threshold: int = 0
    exceptions_in: frozenset[int] = field(default_factory=frozenset)
    exceptions_out: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        m = self.modulus
        if m < 1:
            raise IndexSetError(f"modulus must be positive, got {m}")
        T = frozenset(self.residues)
        if any(r < 0 or r >= m for r in T):
            raise IndexSetError(f"residues {sorted(T)} out of range for modulus {m}")
        N = self.threshold
        if N < 0:
            raise IndexSetError(f"threshold must be a natural, got {N}")
        ins = frozenset(self.exceptions_in)
        outs = frozenset(self.exceptions_out)
        if any(e < 0 or e >= N for e in ins | outs):
            raise IndexSetError("exceptions must lie strictly below the threshold")
        if ins & outs:
            raise IndexSetError(f"overlapping exception lists: {sorted(ins & outs)}")

        def raw_member(n: int) -> bool:
            return ((n >= N and n % m in T) or n in ins) and n not in outs

        # Least modulus: the first divisor d of m for which T is a union of
        # full residue classes mod d.
        for d in _divisors(m):
            if all((r in T) == ((r + d * k) in T)
                   for r in range(d) for k in range(m // d)):
                canon_m = d
                canon_T = frozenset(x % d for x in T)
                break

        # Least threshold: walk down while membership keeps matching the
        # periodic pattern.
        canon_N = N
        while canon_N > 0 and raw_member(canon_N - 1) == ((canon_N - 1) % canon_m in canon_T):
            canon_N -= 1
        canon_ins = frozenset(n for n in range(canon_N) if raw_member(n))

        object.__setattr__(self, "modulus", canon_m)
        object.__setattr__(self, "residues", canon_T)
        object.__setattr__(self, "threshold", canon_N)
        object.__setattr__(self, "exceptions_in", canon_ins)
        object.__setattr__(self, "exceptions_out", frozenset())

    # -- membership ---------------------------------------------------------

    def __contains__(self, n: int) -> bool:
        if n < self.threshold:
            return n in self.exceptions_in
        return n % self.modulus in self.residues

    def members_below(self, k: int) -> list[int]:
        return [n for n in range(k) if n in self]

    def iter_members(self, start: int = 0) -> Iterator[int]:
        """Yield members in increasing order, forever (unless finite)."""
        n = start
        while True:
            if n in self:
                yield n
            n += 1
            if self.is_finite() and n > self.threshold:
                return

    # -- classification -----------------------------------------------------

    def is_empty(self) -> bool:
        return not self.residues and not self.exceptions_in

    def is_full(self) -> bool:
        return len(self.residues) == self.modulus and \
            len(self.exceptions_in) == self.threshold

    def is_finite(self) -> bool:
        return not self.residues

    def is_cofinite(self) -> bool:
        return self.complement().is_finite()

    def is_sharp(self) -> bool:
        """True iff both the set and its complement are infinite.

        Exactly the condition for chi of the set to be a nontrivial
        idempotent: 0 must be an accumulation point of the mesh both inside
        and outside the set.
        """
        return not self.is_finite() and not self.is_cofinite()

    # -- Boolean algebra ----------------------------------------------------

    def _combine(self, other: IndexSet, op) -> IndexSet:
        import math
        m = math.lcm(self.modulus, other.modulus)
        n = max(self.threshold, other.threshold)
        residues = frozenset(r for r in range(m)
                             if op(r % self.modulus in self.residues,
                                   r % other.modulus in other.residues))
        ins = frozenset(k for k in range(n) if op(k in self, k in other))
        return IndexSet(m, residues, n, ins)

    def union(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a or b)

    def intersection(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> IndexSet:
        residues = frozenset(r for r in range(self.modulus) if r not in self.residues)
        ins = frozenset(k for k in range(self.threshold) if k not in self.exceptions_in)
        return IndexSet(self.modulus, residues, self.threshold, ins)

    def is_subset(self, other: IndexSet) -> bool:
        return self.difference(other).is_empty()

    def is_disjoint(self, other: IndexSet) -> bool:
        return self.intersection(other).is_empty()

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __invert__ = complement

    # -- misc ----------------------------------------------------------------

    def sort_key(self):
        return (self.modulus, tuple(sorted(self.residues)), self.threshold,
                tuple(sorted(self.exceptions_in)))

    def __repr__(self) -> str:
        parts = [f"m={self.modulus}", f"T={sorted(self.residues)}", f"N={self.threshold}"]
        if self.exceptions_in:
            parts.append(f"in={sorted(self.exceptions_in)}")
        return "IndexSet(" + ", ".join(parts) + ")"


def make_periodic(modulus: int,
                  residues: Iterable[int],
                  threshold: int = 0,
                  exceptions_in: Iterable[int] = (),
                  exceptions_out: Iterable[int] = ()) -> IndexSet:
    """Build a canonical IndexSet from raw constructor data."""
    return IndexSet(modulus, frozenset(residues), threshold,
                    frozenset(exceptions_in), frozenset(exceptions_out))


def full_set() -> IndexSet:
    return IndexSet(1, frozenset({0}))


def empty_set() -> IndexSet:
    return IndexSet(1, frozenset())


def finite_set(members: Iterable[int]) -> IndexSet:
    ms = frozenset(members)
    bound = max(ms) + 1 if ms else 0
    return IndexSet(1, frozenset(), bound, ms)


def evens() -> IndexSet:
    return IndexSet(2, frozenset({0}))


def odds() -> IndexSet:
    return IndexSet(2, frozenset({1}))
