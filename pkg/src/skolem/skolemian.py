"""Skolemian and semiskolemian sets and their closure operations.

``Def(a1, ..., an; a)`` is the set of tuples ``w`` of positive integers for
which there are pairwise distinct primes ``p1..pn`` with the valuation
vector of ``w`` at ``pi`` in ``ai``, and the valuation vector at every
other prime in ``a``.  The representation requires ``0 in a`` and
``0 not in ai`` (waived in dimension 0).  A semiskolemian set is a finite
union of such sets.

All operations return normalized semiskolemian sets: disjuncts with an
empty exceptional slot are dropped, exceptional slots are kept sorted,
duplicates and easily detected subsumed disjuncts are removed.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import presburger as pb
from . import semilinear as sl
from .config import check_disjuncts, check_enumeration
from .errors import DimensionError, InvariantError
from .semilinear import SemilinearSet


@dataclass(frozen=True)
class SkolemianSet:
    dim: int
    exceptional: tuple[SemilinearSet, ...]
    rest: SemilinearSet

    @property
    def n(self) -> int:
        return len(self.exceptional)

    def __str__(self):
        return render_skolemian(self)


@dataclass(frozen=True)
class SemiskolemianSet:
    dim: int
    disjuncts: tuple[SkolemianSet, ...] = ()

    def __post_init__(self):
        for d in self.disjuncts:
            if d.dim != self.dim:
                raise DimensionError(f"disjunct of dimension {d.dim} in a set of dimension {self.dim}")

    def __str__(self):
        return render_semi(self)

    def __len__(self):
        return len(self.disjuncts)

    def __iter__(self) -> Iterator[SkolemianSet]:
        return iter(self.disjuncts)


def make_def(exceptional: Sequence[SemilinearSet], rest: SemilinearSet) -> SkolemianSet:
    """Validated ``Def(exceptional; rest)``; slots are stored in canonical order."""
    dim = rest.dim
    for i, s in enumerate(exceptional):
        if s.dim != dim:
            raise DimensionError(f"exceptional set {i + 1} has dimension {s.dim}, rest has {dim}")
    if dim > 0:
        if not sl.contains_zero(rest):
            raise InvariantError(f"rest set {rest} must contain the zero vector")
        for i, s in enumerate(exceptional):
            if sl.contains_zero(s):
                raise InvariantError(f"exceptional set {i + 1} ({s}) must not contain the zero vector")
    return SkolemianSet(dim, tuple(sorted(exceptional, key=SemilinearSet.sort_key)), rest)


def _key(d: SkolemianSet):
    return (tuple(s.sort_key() for s in d.exceptional), d.rest.sort_key())


def universe(dim: int) -> SkolemianSet:
    """``Def(N^dim)``: every tuple of positive integers."""
    return make_def((), sl.full(dim))


def semi(dim: int, disjuncts: Iterable[SkolemianSet] = ()) -> SemiskolemianSet:
    return _normalize(dim, disjuncts)


def empty_semi(dim: int) -> SemiskolemianSet:
    return SemiskolemianSet(dim, ())


def full_semi(dim: int) -> SemiskolemianSet:
    return SemiskolemianSet(dim, (universe(dim),))


def from_skolemian(s: SkolemianSet) -> SemiskolemianSet:
    return _normalize(s.dim, (s,))


# ---------------------------------------------------------------------------
# Normalization


def _has_empty_slot(d: SkolemianSet) -> bool:
    return any(sl.is_empty(s) for s in d.exceptional)


def _subsumed_by_plain(d: SkolemianSet, bigger: SemilinearSet) -> bool:
    """``d`` is contained in ``Def(; bigger)``: every component lies in ``bigger``."""
    return sl.is_subset(d.rest, bigger) and all(sl.is_subset(s, bigger) for s in d.exceptional)


def _normalize(dim: int, disjuncts: Iterable[SkolemianSet]) -> SemiskolemianSet:
    unique: dict[tuple, SkolemianSet] = {}
    for d in disjuncts:
        if d.dim != dim:
            raise DimensionError(f"dimension mismatch: {d.dim} != {dim}")
        if _has_empty_slot(d):
            continue
        unique.setdefault(_key(d), d)
        check_disjuncts(len(unique))
    if dim == 0:
        if any(decide_dim_zero(d) for d in unique.values()):
            return full_semi(0)
        return empty_semi(0)
    items = [unique[k] for k in sorted(unique)]
    plain = [d for d in items if not d.exceptional]
    for p in plain:
        if sl.is_full(p.rest):
            return SemiskolemianSet(dim, (p,))
    if plain and len(items) > 1:
        removed: set[int] = set()
        for k, d in enumerate(items):
            for p in plain:
                if p is d or id(p) in removed:
                    continue
                if _subsumed_by_plain(d, p.rest):
                    removed.add(id(d))
                    break
        items = [d for d in items if id(d) not in removed]
    return SemiskolemianSet(dim, tuple(items))


# ---------------------------------------------------------------------------
# Closure operations on single skolemian sets


def _count_correct_sets(n: int, m: int) -> int:
    return sum(math.comb(n, k) * math.comb(m, k) * math.factorial(k) for k in range(min(n, m) + 1))


def correct_sets(n: int, m: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All correct pairings between slots ``1..n`` and ``1..m`` (0 = rest).

    Each ``i`` in ``1..n`` occurs in exactly one pair ``(i, j)`` with ``j`` in
    ``0..m`` and vice versa; the pair ``(0, 0)`` is never included.
    """

    def rec(i: int, used: frozenset) -> Iterator[tuple]:
        if i > n:
            yield tuple((0, j) for j in range(1, m + 1) if j not in used)
            return
        for j in range(0, m + 1):
            if j and j in used:
                continue
            for tail in rec(i + 1, used | {j} if j else used):
                yield ((i, j),) + tail

    yield from rec(1, frozenset())


def intersect_skolemian(s: SkolemianSet, t: SkolemianSet) -> SemiskolemianSet:
    if s.dim != t.dim:
        raise DimensionError(f"dimension mismatch: {s.dim} != {t.dim}")
    n, m = s.n, t.n
    check_enumeration(_count_correct_sets(n, m), "intersection")
    alphas = (s.rest,) + s.exceptional
    betas = (t.rest,) + t.exceptional
    slot_cache: dict[tuple[int, int], SemilinearSet | None] = {}

    def slot(i: int, j: int) -> SemilinearSet | None:
        if (i, j) not in slot_cache:
            c = sl.intersect(alphas[i], betas[j])
            slot_cache[i, j] = None if sl.is_empty(c) else c
        return slot_cache[i, j]

    rest = sl.intersect(s.rest, t.rest)
    out: list[SkolemianSet] = []

    # depth-first over correct sets, pruning pairs whose slot is empty
    def rec(i: int, used: frozenset, acc: list[SemilinearSet]) -> None:
        if i > n:
            tail = []
            for j in range(1, m + 1):
                if j not in used:
                    c = slot(0, j)
                    if c is None:
                        return
                    tail.append(c)
            out.append(make_def(acc + tail, rest))
            check_disjuncts(len(out))
            return
        for j in range(0, m + 1):
            if j and j in used:
                continue
            c = slot(i, j)
            if c is None:
                continue
            rec(i + 1, used | {j} if j else used, acc + [c])

    rec(1, frozenset(), [])
    return _normalize(s.dim, out)


def complement_skolemian(s: SkolemianSet) -> SemiskolemianSet:
    """Complement within the positive-integer tuples of dimension ``s.dim``.

    A tuple lies outside ``s`` exactly when one of the two matching conditions
    of the membership test fails: (a) the primes whose valuation misses the
    rest set cannot all be matched to slots, or (b) the slots cannot all be
    matched to primes.  Both failures are expressed through Hall's condition.
    """
    if s.dim == 0:
        return complement_semi(from_skolemian(s))
    n, d = s.n, s.dim
    check_enumeration((n + 1) * (1 << n), "complement")
    everything = sl.full(d)
    not_rest = sl.complement(s.rest)
    slots = s.exceptional
    out: list[SkolemianSet] = []

    # (a) more than n primes miss the rest set
    out.append(make_def([not_rest] * (n + 1), everything))
    # (a) Hall violation among at most n such primes: n' primes adjacent to
    # none of n - n' + 1 slots
    for k in range(1, n + 1):
        for subset in itertools.combinations(range(n), n - k + 1):
            beta = sl.intersect(not_rest, *(sl.complement(slots[i]) for i in subset))
            out.append(make_def([beta] * k, everything))
    # (b) Hall violation on the slots: fewer than |I| primes land in the
    # union of the slots of I
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            gamma = sl.union(*(slots[i] for i in subset))
            gamma_c = sl.complement(gamma)
            for k in range(size):
                out.append(make_def([gamma] * k, gamma_c))
    return _normalize(d, out)


def project_skolemian(s: SkolemianSet, coord: int) -> SemiskolemianSet:
    """Project away coordinate ``coord`` (1-based).

    A projected slot that contains the zero vector is split into the slot
    without zero and the slot dropped: a zero valuation means the slot's
    prime can be taken to be one that does not divide the projected tuple.
    """
    if not 1 <= coord <= s.dim:
        raise DimensionError(f"coordinate {coord} outside 1..{s.dim}")
    rest = sl.project_away(s.rest, coord)
    slots = [sl.project_away(a, coord) for a in s.exceptional]
    if s.dim == 1:
        return _normalize(0, (make_def(slots, rest),))
    options: list[list[SemilinearSet | None]] = []
    for a in slots:
        if sl.contains_zero(a):
            options.append([sl.remove_zero(a), None])
        else:
            options.append([a])
    out = []
    for choice in itertools.product(*options):
        out.append(make_def([c for c in choice if c is not None], rest))
    return _normalize(s.dim - 1, out)


def decide_dim_zero(s: SkolemianSet) -> bool:
    """Truth of a dimension-0 skolemian set: every slot must be TOP."""
    if s.dim != 0:
        raise DimensionError(f"decide_dim_zero needs dimension 0, got {s.dim}")
    return all(a.formula is pb.TRUE for a in s.exceptional)


# ---------------------------------------------------------------------------
# Lifted operations


def _check_same(a: SemiskolemianSet, b: SemiskolemianSet) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} != {b.dim}")


def union_semi(a: SemiskolemianSet, b: SemiskolemianSet) -> SemiskolemianSet:
    _check_same(a, b)
    return _normalize(a.dim, a.disjuncts + b.disjuncts)


def intersect_semi(a: SemiskolemianSet, b: SemiskolemianSet) -> SemiskolemianSet:
    _check_same(a, b)
    if a.dim == 0:
        return full_semi(0) if a.disjuncts and b.disjuncts else empty_semi(0)
    out: list[SkolemianSet] = []
    for s in a.disjuncts:
        for t in b.disjuncts:
            out.extend(intersect_skolemian(s, t).disjuncts)
            check_disjuncts(len(out))
    return _normalize(a.dim, out)


def complement_semi(a: SemiskolemianSet) -> SemiskolemianSet:
    if a.dim == 0:
        return empty_semi(0) if a.disjuncts else full_semi(0)
    if not a.disjuncts:
        return full_semi(a.dim)
    parts = [complement_skolemian(d) for d in a.disjuncts]
    parts.sort(key=len)
    result = parts[0]
    for p in parts[1:]:
        if not result.disjuncts:
            break
        result = intersect_semi(result, p)
    return result


def project_semi(a: SemiskolemianSet, coord: int) -> SemiskolemianSet:
    if not 1 <= coord <= a.dim:
        raise DimensionError(f"coordinate {coord} outside 1..{a.dim}")
    out: list[SkolemianSet] = []
    for d in a.disjuncts:
        out.extend(project_skolemian(d, coord).disjuncts)
    return _normalize(a.dim - 1, out)


# ---------------------------------------------------------------------------
# Rendering and JSON


def render_skolemian(s: SkolemianSet) -> str:
    parts = [sl.render(a) for a in s.exceptional]
    if parts:
        return f"Def({', '.join(parts)} ; {sl.render(s.rest)})"
    return f"Def({sl.render(s.rest)})"


def render_semi(a: SemiskolemianSet) -> str:
    if not a.disjuncts:
        return "EMPTY" if a.dim else "BOT"
    return " ∪ ".join(render_skolemian(d) for d in a.disjuncts)


def to_json(a: SemiskolemianSet) -> dict:
    return {
        "dim": a.dim,
        "disjuncts": [
            {"exceptional": [pb.render(s.formula) for s in d.exceptional],
             "rest": pb.render(d.rest.formula)}
            for d in a.disjuncts
        ],
    }


def from_json(data: dict | str) -> SemiskolemianSet:
    if isinstance(data, str):
        data = json.loads(data)
    dim = int(data["dim"])
    disjuncts = []
    for entry in data["disjuncts"]:
        rest = SemilinearSet(dim, pb.parse_formula(entry["rest"]))
        slots = [SemilinearSet(dim, pb.parse_formula(x)) for x in entry["exceptional"]]
        disjuncts.append(make_def(slots, rest))
    return SemiskolemianSet(dim, tuple(disjuncts))
