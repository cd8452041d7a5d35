"""Semilinear subsets of N^d carried by quantifier-free Presburger formulas.

A :class:`SemilinearSet` pairs a dimension with a formula over ``v1..vd``.
Dimension 0 is the one-point space ``{()}``; sets of dimension 0 are kept
as the constant formulas ``TRUE`` (``TOP``) and ``FALSE`` (``BOT``).
"""
from __future__ import annotations

import functools
from typing import Mapping, Sequence

from . import presburger as pb
from .errors import DimensionError
from .presburger import FALSE, TRUE, Formula, LinearTerm


class SemilinearSet:
    __slots__ = ("dim", "formula", "_members")

    def __init__(self, dim: int, formula: Formula):
        if dim < 0:
            raise DimensionError("dimension must be >= 0")
        if formula.max_var() > dim:
            raise DimensionError(f"formula mentions v{formula.max_var()} in dimension {dim}")
        if dim == 0 and formula is not TRUE and formula is not FALSE:
            formula = pb.simplify(formula)
        self.dim = dim
        self.formula = formula
        self._members: dict[tuple, bool] = {}

    def __eq__(self, other):
        if not isinstance(other, SemilinearSet):
            return NotImplemented
        return self.dim == other.dim and self.formula == other.formula

    def __hash__(self):
        return hash((self.dim, self.formula))

    def __repr__(self):
        return f"SemilinearSet({render(self)})"

    def __str__(self):
        return render(self)

    def sort_key(self):
        return (self.dim, self.formula._key)

    def __contains__(self, point: Sequence[int]) -> bool:
        return member(self, point)

    def __and__(self, other: SemilinearSet) -> SemilinearSet:
        return intersect(self, other)

    def __or__(self, other: SemilinearSet) -> SemilinearSet:
        return union(self, other)

    def __invert__(self) -> SemilinearSet:
        return complement(self)


def full(dim: int) -> SemilinearSet:
    return SemilinearSet(dim, TRUE)


def empty(dim: int) -> SemilinearSet:
    return SemilinearSet(dim, FALSE)


TOP = full(0)
BOT = empty(0)


def from_formula(dim: int, formula: Formula) -> SemilinearSet:
    return SemilinearSet(dim, formula)


def atom_linear(dim: int, lhs: Mapping[int, int], rhs: Mapping[int, int]) -> SemilinearSet:
    """``{v in N^dim : sum lhs[i]*v_i == sum rhs[i]*v_i}``."""
    for i in (*lhs, *rhs):
        if not 1 <= i <= dim:
            raise DimensionError(f"index {i} outside 1..{dim}")
    term = LinearTerm(lhs) - LinearTerm(rhs)
    return SemilinearSet(dim, pb.eq(term))


def _same_dim(sets: Sequence[SemilinearSet]) -> int:
    dims = {s.dim for s in sets}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


@functools.lru_cache(maxsize=65536)
def _tidy(f: Formula) -> Formula:
    # coordinates are naturals, which lets sibling bounds prune more
    return pb.simplify(f, naturals=True)


def intersect(*sets: SemilinearSet) -> SemilinearSet:
    return SemilinearSet(_same_dim(sets), _tidy(pb.conj(*(s.formula for s in sets))))


def union(*sets: SemilinearSet) -> SemilinearSet:
    return SemilinearSet(_same_dim(sets), _tidy(pb.disj(*(s.formula for s in sets))))


def complement(s: SemilinearSet) -> SemilinearSet:
    return SemilinearSet(s.dim, pb.neg(s.formula))


def combine(op: str, *args: SemilinearSet) -> SemilinearSet:
    """Boolean combination; ``op`` is ``"and"``, ``"or"`` or ``"not"``."""
    op = op.lower()
    if op == "and":
        return intersect(*args)
    if op == "or":
        return union(*args)
    if op == "not":
        if len(args) != 1:
            raise TypeError("'not' takes exactly one set")
        return complement(args[0])
    raise ValueError(f"unknown operation {op!r}")


def project_away(s: SemilinearSet, coord: int) -> SemilinearSet:
    """Drop coordinate ``coord`` (1-based); later coordinates shift down."""
    if not 1 <= coord <= s.dim:
        raise DimensionError(f"coordinate {coord} outside 1..{s.dim}")
    g = pb.eliminate_exists(s.formula, coord)
    g = pb.rename(g, lambda v: v - 1 if v > coord else v)
    if s.dim == 1:
        return TOP if pb.simplify(g) is TRUE else BOT
    return SemilinearSet(s.dim - 1, g)


def insert_coordinate(s: SemilinearSet, coord: int) -> SemilinearSet:
    """Cylindrify: add an unconstrained coordinate at position ``coord``."""
    if not 1 <= coord <= s.dim + 1:
        raise DimensionError(f"coordinate {coord} outside 1..{s.dim + 1}")
    g = pb.rename(s.formula, lambda v: v + 1 if v >= coord else v)
    return SemilinearSet(s.dim + 1, g)


def member(s: SemilinearSet, point: Sequence[int]) -> bool:
    point = tuple(point)
    if len(point) != s.dim:
        raise DimensionError(f"point of length {len(point)} for a set of dimension {s.dim}")
    hit = s._members.get(point)
    if hit is None:
        hit = s._members[point] = pb.eval_formula(s.formula, point)
    return hit


def contains_zero(s: SemilinearSet) -> bool:
    return member(s, (0,) * s.dim)


def is_empty(s: SemilinearSet) -> bool:
    return not pb.is_satisfiable(s.formula)


def is_full(s: SemilinearSet) -> bool:
    return not pb.is_satisfiable(pb.neg(s.formula))


@functools.lru_cache(maxsize=None)
def _nonzero(dim: int) -> Formula:
    # coordinates are naturals, so v != 0 is v >= 1
    return pb.disj(*(pb.gt(pb.var(i)) for i in range(1, dim + 1)))


def remove_zero(s: SemilinearSet) -> SemilinearSet:
    """``s`` minus the zero vector (dimension 0: the empty set)."""
    if s.dim == 0:
        return BOT
    return SemilinearSet(s.dim, pb.conj(s.formula, _nonzero(s.dim)))


def add_zero(s: SemilinearSet) -> SemilinearSet:
    if s.dim == 0:
        return TOP
    return SemilinearSet(s.dim, pb.disj(s.formula, pb.neg(_nonzero(s.dim))))


def is_subset(a: SemilinearSet, b: SemilinearSet) -> bool:
    _same_dim((a, b))
    return not pb.is_satisfiable(pb.conj(a.formula, pb.neg(b.formula)))


def render(s: SemilinearSet) -> str:
    if s.dim == 0:
        return "TOP" if s.formula is TRUE else "BOT"
    names = ",".join(f"v{i}" for i in range(1, s.dim + 1))
    return f"{{ {names} | {pb.render(s.formula)} }}"
