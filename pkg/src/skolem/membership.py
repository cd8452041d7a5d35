"""Membership of ground tuples in (semi)skolemian sets.

A tuple ``w`` of positive integers is factored; each prime dividing some
component contributes its valuation vector.  ``w`` lies in
``Def(a1..an; a)`` iff, in the bipartite graph joining primes to the slots
whose set contains their valuation vector, (a) the primes whose vector is
not in ``a`` can all be matched and (b) all slots can be matched.  The two
matchings combine into one: in a bipartite graph, a matching covering a
set of left nodes and one covering a set of right nodes can always be
merged into a single matching covering both.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from . import semilinear as sl
from .errors import DimensionError, DomainError
from .matching import LEFT, RIGHT, BipartiteGraph, has_matching_covering
from .skolemian import SemiskolemianSet, SkolemianSet, decide_dim_zero

MAX_COMPONENT = 2 ** 63


@functools.lru_cache(maxsize=1 << 14)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` by trial division, as ``(p, e)`` pairs."""
    if n < 1:
        raise DomainError(f"cannot factor {n}: values must be positive integers")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p, step = 5, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@dataclass(frozen=True)
class ValuationProfile:
    """Prime -> nonzero valuation vector, primes increasing."""

    dim: int
    entries: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    def reconstruct(self) -> tuple[int, ...]:
        out = [1] * self.dim
        for p, exps in self.entries:
            for k, e in enumerate(exps):
                out[k] *= p ** e
        return tuple(out)


def valuation_profile(w: Sequence[int]) -> ValuationProfile:
    w = tuple(w)
    for x in w:
        if not isinstance(x, int) or isinstance(x, bool):
            raise DomainError(f"component {x!r} is not an integer")
        if x < 1:
            raise DomainError(f"component {x} is not a positive integer")
        if x >= MAX_COMPONENT:
            raise DomainError(f"component {x} exceeds the supported bound 2**63")
    table: dict[int, list[int]] = {}
    for k, x in enumerate(w):
        for p, e in factorize(x):
            table.setdefault(p, [0] * len(w))[k] = e
    return ValuationProfile(len(w), tuple((p, tuple(table[p])) for p in sorted(table)))


def membership_graph(s: SkolemianSet, profile: ValuationProfile) -> tuple[BipartiteGraph, list[int]]:
    """Bipartite graph primes x slots and the indices of primes outside the rest set."""
    edges = set()
    outside = []
    for li, (_, vec) in enumerate(profile.entries):
        if not sl.member(s.rest, vec):
            outside.append(li)
        for ri, slot in enumerate(s.exceptional):
            if sl.member(slot, vec):
                edges.add((li, ri))
    return BipartiteGraph(len(profile.entries), s.n, frozenset(edges)), outside


def member_skolemian(s: SkolemianSet, w: Sequence[int]) -> bool:
    w = tuple(w)
    if len(w) != s.dim:
        raise DimensionError(f"tuple of length {len(w)} for a set of dimension {s.dim}")
    if s.dim == 0:
        return decide_dim_zero(s)
    profile = valuation_profile(w)
    if len(profile.entries) < s.n:
        return False
    g, outside = membership_graph(s, profile)
    if len(outside) > s.n:
        return False
    return (has_matching_covering(g, LEFT, outside)
            and has_matching_covering(g, RIGHT, range(s.n)))


def member_semi(a: SemiskolemianSet, w: Sequence[int]) -> bool:
    w = tuple(w)
    if len(w) != a.dim:
        raise DimensionError(f"tuple of length {len(w)} for a set of dimension {a.dim}")
    valuation_profile(w)
    return any(member_skolemian(d, w) for d in a.disjuncts)
