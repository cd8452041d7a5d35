"""Brute-force reference semantics used to cross-check the compiler.

Nothing here touches the semilinear machinery: formulas are evaluated by
direct multiplication with quantifiers ranging over ``1..bound``, and
skolemian membership is decided from the set-builder definition by trying
every injective assignment of slots to primes.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import semilinear as sl
from .errors import DomainError, SkolemError
from .frontend import And, Atom, Exists, Forall, Iff, Implies, Not, Or, SkolemFormula, free_variables
from .membership import valuation_profile
from .skolemian import SkolemianSet, decide_dim_zero


class InstanceTooLarge(SkolemError):
    """The brute-force oracle refuses instances beyond its size limits."""


@dataclass(frozen=True)
class BoundedModel:
    """Positive integers ``1..bound`` as the quantifier range."""

    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("bound must be >= 1")

    def eval(self, f: SkolemFormula, assignment: Mapping[str, int]) -> bool:
        return bounded_eval(f, assignment, self.bound)


def bounded_eval(f: SkolemFormula, assignment: Mapping[str, int], bound: int) -> bool:
    """Tarskian truth of ``f`` with every quantifier restricted to ``1..bound``.

    Python integers are unbounded, so products never wrap.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    missing = set(free_variables(f)) - set(assignment)
    if missing:
        raise ValueError(f"unassigned free variables {sorted(missing)}")
    for name, value in assignment.items():
        if value < 1:
            raise DomainError(f"{name} = {value} is not a positive integer")
    return _eval(f, dict(assignment), bound)


def _eval(f: SkolemFormula, env: dict, bound: int) -> bool:
    if isinstance(f, Atom):
        return math.prod(env[v] for v in f.lhs.factors) == math.prod(env[v] for v in f.rhs.factors)
    if isinstance(f, Not):
        return not _eval(f.arg, env, bound)
    if isinstance(f, And):
        return _eval(f.left, env, bound) and _eval(f.right, env, bound)
    if isinstance(f, Or):
        return _eval(f.left, env, bound) or _eval(f.right, env, bound)
    if isinstance(f, Implies):
        return (not _eval(f.left, env, bound)) or _eval(f.right, env, bound)
    if isinstance(f, Iff):
        return _eval(f.left, env, bound) == _eval(f.right, env, bound)
    if isinstance(f, (Exists, Forall)):
        saved = env.get(f.var)
        want_any = isinstance(f, Exists)
        result = not want_any
        for value in range(1, bound + 1):
            env[f.var] = value
            if _eval(f.body, env, bound) == want_any:
                result = want_any
                break
        if saved is None:
            env.pop(f.var, None)
        else:
            env[f.var] = saved
        return result
    raise TypeError(f"not a formula node: {f!r}")


def skolemian_oracle_member(s: SkolemianSet, w: Sequence[int], max_primes: int = 8,
                            max_slots: int = 4) -> bool:
    """Membership straight from the definition of ``Def(a1..an; a)``."""
    w = tuple(w)
    if s.dim == 0:
        return decide_dim_zero(s)
    profile = valuation_profile(w)
    entries = profile.entries
    if len(entries) > max_primes or s.n > max_slots:
        raise InstanceTooLarge(f"{len(entries)} primes / {s.n} slots exceed oracle limits")
    for chosen in itertools.permutations(range(len(entries)), s.n):
        if not all(sl.member(slot, entries[k][1]) for slot, k in zip(s.exceptional, chosen)):
            continue
        taken = set(chosen)
        if all(sl.member(s.rest, vec) for k, (_, vec) in enumerate(entries) if k not in taken):
            return True
    return False
