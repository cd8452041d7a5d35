"""Quantifier-free Presburger formulas over natural-number variables.

Variables are 1-based indices ``v1, v2, ...``.  Formulas are immutable,
hash-consed-by-value trees kept in negation normal form: the only ``Not``
nodes sit directly on equality or divisibility atoms (a negated ``<=`` atom
is rewritten to another ``<=`` atom).

Existential quantifiers are eliminated with Cooper's method over the
integers, with a ``v >= 0`` guard conjoined so that variables range over
the naturals.
"""
from __future__ import annotations

import functools
import itertools
import math
import re
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .config import check_formula_size
from .errors import DimensionError, ParseError

__all__ = [
    "LinearTerm", "Formula", "Atom", "Not", "And", "Or", "TRUE", "FALSE",
    "var", "const", "eq", "le", "lt", "ge", "gt", "ne", "dvd", "atom",
    "neg", "conj", "disj", "implies", "iff", "simplify", "substitute", "rename",
    "eval_formula", "eval_array", "eliminate_exists", "decide_sentence",
    "is_satisfiable", "render", "parse_formula",
]


class LinearTerm:
    """``sum(c * v_i) + const`` with integer coefficients, zero coefficients dropped."""

    __slots__ = ("coeffs", "const", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = (), const: int = 0):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for v, c in items:
            if v < 1:
                raise DimensionError(f"variable index must be >= 1, got {v}")
            acc[v] = acc.get(v, 0) + c
        self.coeffs: tuple[tuple[int, int], ...] = tuple(sorted((v, c) for v, c in acc.items() if c))
        self.const: int = int(const)
        self._hash = hash((self.coeffs, self.const))

    @classmethod
    def _raw(cls, coeffs: tuple[tuple[int, int], ...], const: int) -> LinearTerm:
        t = object.__new__(cls)
        t.coeffs = coeffs
        t.const = const
        t._hash = hash((coeffs, const))
        return t

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, LinearTerm):
            return NotImplemented
        return self._hash == other._hash and self.coeffs == other.coeffs and self.const == other.const

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LinearTerm({dict(self.coeffs)!r}, {self.const})"

    def __str__(self):
        return _render_term(self)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.coeffs)

    def coeff(self, v: int) -> int:
        for w, c in self.coeffs:
            if w == v:
                return c
        return 0

    def is_constant(self) -> bool:
        return not self.coeffs

    def __add__(self, other: LinearTerm | int) -> LinearTerm:
        if isinstance(other, int):
            return LinearTerm._raw(self.coeffs, self.const + other)
        return LinearTerm(itertools.chain(self.coeffs, other.coeffs), self.const + other.const)

    def __neg__(self) -> LinearTerm:
        return LinearTerm._raw(tuple((v, -c) for v, c in self.coeffs), -self.const)

    def __sub__(self, other: LinearTerm | int) -> LinearTerm:
        return self + (-other)

    def scale(self, k: int) -> LinearTerm:
        if k == 0:
            return LinearTerm._raw((), 0)
        return LinearTerm._raw(tuple((v, c * k) for v, c in self.coeffs), self.const * k)

    def drop(self, v: int) -> LinearTerm:
        return LinearTerm._raw(tuple(p for p in self.coeffs if p[0] != v), self.const)

    def substitute(self, v: int, e: LinearTerm) -> LinearTerm:
        c = self.coeff(v)
        if not c:
            return self
        return self.drop(v) + e.scale(c)

    def rename(self, mapping: Callable[[int], int]) -> LinearTerm:
        return LinearTerm(((mapping(v), c) for v, c in self.coeffs), self.const)

    def evaluate(self, point: Sequence[int]) -> int:
        total = self.const
        for v, c in self.coeffs:
            total += c * point[v - 1]
        return total


def var(i: int) -> LinearTerm:
    return LinearTerm({i: 1})


def const(c: int) -> LinearTerm:
    return LinearTerm((), c)


# ---------------------------------------------------------------------------
# Formula nodes


class Formula:
    __slots__ = ("_hash", "_key", "_vars", "_size", "_neg")

    def _init(self, h: int, key: tuple, variables: frozenset, size: int):
        self._hash = h
        self._key = key
        self._vars = variables
        self._size = size
        self._neg = None

    @property
    def variables(self) -> frozenset[int]:
        return self._vars

    @property
    def size(self) -> int:
        """Node count."""
        return self._size

    def max_var(self) -> int:
        return max(self._vars, default=0)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"<{type(self).__name__} {render(self)}>"

    def __and__(self, other: Formula) -> Formula:
        return conj(self, other)

    def __or__(self, other: Formula) -> Formula:
        return disj(self, other)

    def __invert__(self) -> Formula:
        return neg(self)


class _Const(Formula):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        self.value = value
        key = (0, value)
        self._init(hash(key), key, frozenset(), 1)

    def __reduce__(self):
        return (_const_node, (self.value,))


TRUE = _Const(True)
FALSE = _Const(False)


def _const_node(value: bool) -> Formula:
    return TRUE if value else FALSE


EQ, LE, DVD = "eq", "le", "dvd"
_KIND_RANK = {EQ: 0, LE: 1, DVD: 2}


class Atom(Formula):
    """``term = 0``, ``term <= 0`` or ``modulus | term``.

    Build atoms through :func:`eq`, :func:`le`, :func:`dvd` (or :func:`atom`),
    which canonicalize and fold constant atoms to ``TRUE``/``FALSE``.
    """

    __slots__ = ("kind", "term", "modulus")

    def __init__(self, kind: str, term: LinearTerm, modulus: int = 1):
        self.kind = kind
        self.term = term
        self.modulus = modulus
        key = (1, _KIND_RANK[kind], term.coeffs, term.const, modulus)
        self._init(hash(key), key, frozenset(term.variables), 1)


class Not(Formula):
    __slots__ = ("arg",)

    def __init__(self, arg: Atom):
        if not isinstance(arg, Atom) or arg.kind == LE:
            raise TypeError("Not only wraps equality or divisibility atoms")
        self.arg = arg
        key = (2, arg._key)
        self._init(hash(key), key, arg._vars, 2)


class _NAry(Formula):
    __slots__ = ("args",)
    _rank = -1

    def __init__(self, args: tuple[Formula, ...]):
        self.args = args
        key = (self._rank, tuple(a._key for a in args))
        self._init(hash(key), key, frozenset().union(*(a._vars for a in args)),
                   1 + sum(a._size for a in args))


class And(_NAry):
    __slots__ = ()
    _rank = 3


class Or(_NAry):
    __slots__ = ()
    _rank = 4


def _is_literal(f: Formula) -> bool:
    return isinstance(f, (Atom, Not))


# ---------------------------------------------------------------------------
# Smart constructors


def _gcd_coeffs(coeffs) -> int:
    g = 0
    for _, c in coeffs:
        g = math.gcd(g, c)
    return g


def eq(term: LinearTerm) -> Formula:
    """``term = 0``."""
    coeffs, c = term.coeffs, term.const
    if not coeffs:
        return TRUE if c == 0 else FALSE
    g = _gcd_coeffs(coeffs)
    if c % g:
        return FALSE
    if coeffs[0][1] < 0:
        g = -g
    if g != 1:
        term = LinearTerm._raw(tuple((v, a // g) for v, a in coeffs), c // g)
    return Atom(EQ, term)


def le(term: LinearTerm) -> Formula:
    """``term <= 0``."""
    coeffs, c = term.coeffs, term.const
    if not coeffs:
        return TRUE if c <= 0 else FALSE
    g = _gcd_coeffs(coeffs)
    if g != 1:
        term = LinearTerm._raw(tuple((v, a // g) for v, a in coeffs), -((-c) // g))
    return Atom(LE, term)


def dvd(modulus: int, term: LinearTerm) -> Formula:
    """``modulus | term``."""
    m = abs(modulus)
    if m == 0:
        return eq(term)
    coeffs = tuple((v, a % m) for v, a in term.coeffs if a % m)
    c = term.const % m
    if not coeffs:
        return TRUE if c == 0 else FALSE
    g = m
    for _, a in coeffs:
        g = math.gcd(g, a)
    if c % g:
        return FALSE
    if g > 1:
        m //= g
        coeffs = tuple((v, a // g) for v, a in coeffs)
        c //= g
    if m == 1:
        return TRUE
    lead = coeffs[0][1]
    if lead != 1 and math.gcd(lead, m) == 1:
        inv = pow(lead, -1, m)
        coeffs = tuple((v, a * inv % m) for v, a in coeffs)
        c = c * inv % m
    return Atom(DVD, LinearTerm._raw(coeffs, c), m)


def atom(kind: str, term: LinearTerm, modulus: int = 1) -> Formula:
    if kind == EQ:
        return eq(term)
    if kind == LE:
        return le(term)
    if kind == DVD:
        if modulus < 1:
            raise ValueError("divisibility modulus must be >= 1")
        return dvd(modulus, term)
    raise ValueError(f"unknown atom kind {kind!r}")


def lt(term: LinearTerm) -> Formula:
    """``term < 0``."""
    return le(term + 1)


def ge(term: LinearTerm) -> Formula:
    """``term >= 0``."""
    return le(-term)


def gt(term: LinearTerm) -> Formula:
    return le(-term + 1)


def ne(term: LinearTerm) -> Formula:
    return neg(eq(term))


def neg(f: Formula) -> Formula:
    cached = f._neg
    if cached is not None:
        return cached
    if f is TRUE:
        r = FALSE
    elif f is FALSE:
        r = TRUE
    elif isinstance(f, Atom):
        r = le(-f.term + 1) if f.kind == LE else Not(f)
    elif isinstance(f, Not):
        r = f.arg
    elif isinstance(f, And):
        r = disj(*(neg(a) for a in f.args))
    elif isinstance(f, Or):
        r = conj(*(neg(a) for a in f.args))
    else:
        raise TypeError(f)
    f._neg = r
    if r._neg is None:
        r._neg = f
    return r


def implies(a: Formula, b: Formula) -> Formula:
    return disj(neg(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return disj(conj(a, b), conj(neg(a), neg(b)))


# Literal merging: literals on the same primitive linear form L (first
# coefficient positive) constrain the integer value of L to an interval
# with finitely many holes.


def _shape(term: LinearTerm) -> tuple[tuple, int]:
    coeffs = term.coeffs
    if coeffs[0][1] > 0:
        return coeffs, 1
    return tuple((v, -c) for v, c in coeffs), -1


class _Bounds:
    __slots__ = ("lo", "hi", "holes")

    def __init__(self, lo=None, hi=None, holes=frozenset()):
        self.lo = lo
        self.hi = hi
        self.holes = holes

    def copy(self):
        return _Bounds(self.lo, self.hi, self.holes)

    def add(self, f: Formula) -> None:
        """Intersect with the constraint of literal ``f`` (already shaped)."""
        kind, val = _literal_constraint(f)
        if kind == "hi":
            self.hi = val if self.hi is None else min(self.hi, val)
        elif kind == "lo":
            self.lo = val if self.lo is None else max(self.lo, val)
        elif kind == "eq":
            self.lo = val if self.lo is None else max(self.lo, val)
            self.hi = val if self.hi is None else min(self.hi, val)
        else:
            self.holes = self.holes | {val}

    def tighten(self) -> bool:
        """Normalize; return False when the constraint set is infeasible."""
        holes = self.holes
        if self.lo is not None:
            while self.lo in holes:
                self.lo += 1
        if self.hi is not None:
            while self.hi in holes:
                self.hi -= 1
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            return False
        self.holes = frozenset(h for h in holes
                               if (self.lo is None or h > self.lo) and (self.hi is None or h < self.hi))
        return True

    def entails(self, f: Formula) -> bool | None:
        """True/False when ``f`` is decided by these bounds, else None."""
        kind, val = _literal_constraint(f)
        lo, hi = self.lo, self.hi
        if kind == "hi":
            if hi is not None and hi <= val:
                return True
            if lo is not None and lo > val:
                return False
        elif kind == "lo":
            if lo is not None and lo >= val:
                return True
            if hi is not None and hi < val:
                return False
        elif kind == "eq":
            if lo is not None and lo == hi == val:
                return True
            if (lo is not None and val < lo) or (hi is not None and val > hi) or val in self.holes:
                return False
        else:
            if (lo is not None and val < lo) or (hi is not None and val > hi) or val in self.holes:
                return True
            if lo is not None and lo == hi == val:
                return False
        return None

    def emit(self, shape: tuple) -> list[Formula]:
        base = LinearTerm._raw(shape, 0)
        out: list[Formula] = []
        if self.lo is not None and self.lo == self.hi:
            return [eq(base - self.lo)]
        if self.lo is not None:
            out.append(le(-base + self.lo))
        if self.hi is not None:
            out.append(le(base - self.hi))
        for h in sorted(self.holes):
            out.append(Not(eq(base - h)))
        return out


def _literal_constraint(f: Formula) -> tuple[str, int]:
    if isinstance(f, Not):
        t = f.arg.term
        return "ne", -t.const
    t = f.term
    if f.kind == EQ:
        return "eq", -t.const
    if t.coeffs[0][1] > 0:
        return "hi", -t.const
    return "lo", t.const


def _shape_of_literal(f: Formula):
    """Shape key for LE/EQ/negated-EQ literals, None for divisibility."""
    a = f.arg if isinstance(f, Not) else f
    if a.kind == DVD:
        return None
    return _shape(a.term)[0]


def _merge_literals(lits: list[Formula]) -> list[Formula] | None:
    groups: dict[tuple, _Bounds] = {}
    order: list[tuple] = []
    others: list[Formula] = []
    dvd_seen: dict[tuple, int] = {}
    for f in lits:
        shape = _shape_of_literal(f)
        if shape is None:
            if isinstance(f, Atom):
                k = (f.modulus, f.term.coeffs)
                prev = dvd_seen.get(k)
                if prev is not None and prev != f.term.const:
                    return None
                dvd_seen[k] = f.term.const
            others.append(f)
            continue
        b = groups.get(shape)
        if b is None:
            b = groups[shape] = _Bounds()
            order.append(shape)
        b.add(f)
    out: list[Formula] = []
    for shape in order:
        b = groups[shape]
        if not b.tighten():
            return None
        out.extend(b.emit(shape))
    others_set = set(others)
    for f in others:
        if isinstance(f, Not) and f.arg in others_set:
            return None
    out.extend(others)
    return out


def _flatten(args: Iterable[Formula], cls, absorbing: Formula, unit: Formula):
    seen: dict[Formula, None] = {}
    for a in args:
        if a is unit:
            continue
        if a is absorbing:
            return None
        if isinstance(a, cls):
            for b in a.args:
                seen[b] = None
        else:
            seen[a] = None
    return list(seen)


def _sorted(items: list[Formula]) -> tuple[Formula, ...]:
    return tuple(sorted(items, key=lambda f: f._key))


def conj(*args: Formula) -> Formula:
    flat = _flatten(args, And, FALSE, TRUE)
    if flat is None:
        return FALSE
    lits = [a for a in flat if _is_literal(a)]
    comp = [a for a in flat if not _is_literal(a)]
    merged = _merge_literals(lits)
    if merged is None:
        return FALSE
    merged = [m for m in merged if m is not TRUE]
    if any(m is FALSE for m in merged):
        return FALSE
    present = set(merged)
    present.update(comp)
    comp = [c for c in comp if not any(a in present for a in c.args)]
    items = merged + comp
    if not items:
        return TRUE
    if len(items) == 1:
        return items[0]
    return And(_sorted(items))


def disj(*args: Formula) -> Formula:
    flat = _flatten(args, Or, TRUE, FALSE)
    if flat is None:
        return TRUE
    lits = [a for a in flat if _is_literal(a)]
    comp = [a for a in flat if not _is_literal(a)]
    merged = _merge_literals([neg(a) for a in lits])
    if merged is None:
        return TRUE
    merged = [neg(m) for m in merged]
    merged = [m for m in merged if m is not FALSE]
    if any(m is TRUE for m in merged):
        return TRUE
    present = set(merged)
    present.update(comp)
    comp = [c for c in comp if not any(a in present for a in c.args)]
    items = merged + comp
    if not items:
        return FALSE
    if len(items) == 1:
        return items[0]
    return Or(_sorted(items))


# ---------------------------------------------------------------------------
# Context simplification


class _Context:
    """Literals known to hold, indexed for entailment lookups."""

    __slots__ = ("bounds", "lits")

    def __init__(self, bounds=None, lits=frozenset()):
        self.bounds: dict[tuple, _Bounds] = bounds or {}
        self.lits: frozenset = lits

    def extend(self, lits: Iterable[Formula]) -> _Context:
        bounds = dict(self.bounds)
        extra = set()
        for f in lits:
            shape = _shape_of_literal(f)
            if shape is None:
                extra.add(f)
                continue
            b = bounds.get(shape)
            b = _Bounds() if b is None else b.copy()
            b.add(f)
            bounds[shape] = b
        return _Context(bounds, self.lits | extra)

    def lookup(self, f: Formula) -> Formula:
        shape = _shape_of_literal(f)
        if shape is None:
            if f in self.lits:
                return TRUE
            if neg(f) in self.lits:
                return FALSE
            if isinstance(f, Atom):
                for g in self.lits:
                    if (isinstance(g, Atom) and g.modulus == f.modulus
                            and g.term.coeffs == f.term.coeffs):
                        return FALSE
            return f
        b = self.bounds.get(shape)
        if b is None:
            return f
        r = b.entails(f)
        if r is None:
            return f
        return TRUE if r else FALSE


_EMPTY_CONTEXT = _Context()


def simplify(f: Formula, naturals: bool = False) -> Formula:
    """Constant folding plus propagation of sibling literals into subformulas.

    With ``naturals`` every variable is assumed nonnegative, which discharges
    literals such as ``-v1 <= 0``.
    """
    ctx = _EMPTY_CONTEXT
    if naturals and f._vars:
        ctx = ctx.extend(le(LinearTerm._raw(((v, -1),), 0)) for v in sorted(f._vars))
    return _simplify(f, ctx, {})


def _simplify(f: Formula, ctx: _Context, memo: dict) -> Formula:
    if f is TRUE or f is FALSE:
        return f
    if _is_literal(f):
        return ctx.lookup(f) if (ctx.bounds or ctx.lits) else f
    key = (ctx, f)
    hit = memo.get(key)
    if hit is not None:
        return hit
    is_and = isinstance(f, And)
    lits = []
    for a in f.args:
        if _is_literal(a):
            r = ctx.lookup(a) if (ctx.bounds or ctx.lits) else a
            if r is (FALSE if is_and else TRUE):
                memo[key] = r
                return r
            if _is_literal(r):
                lits.append(r)
    comp = [a for a in f.args if not _is_literal(a)]
    if is_and:
        inner = ctx.extend(lits) if lits else ctx
        merged = conj(*lits)
        if merged is FALSE:
            memo[key] = FALSE
            return FALSE
        out = conj(merged, *(_simplify(c, inner, memo) for c in comp))
    else:
        inner = ctx.extend(neg(a) for a in lits) if lits else ctx
        merged = disj(*lits)
        if merged is TRUE:
            memo[key] = TRUE
            return TRUE
        out = disj(merged, *(_simplify(c, inner, memo) for c in comp))
    memo[key] = out
    return out


# ---------------------------------------------------------------------------
# Structural maps


def _map_literals(f: Formula, x: int | None, fn: Callable[[Formula], Formula], memo=None) -> Formula:
    """Rebuild ``f`` replacing every literal mentioning ``x`` (every literal if None)."""
    if memo is None:
        memo = {}
    if x is not None and x not in f._vars:
        return f
    if f is TRUE or f is FALSE:
        return f
    if _is_literal(f):
        return fn(f)
    hit = memo.get(f)
    if hit is not None:
        return hit
    parts = [_map_literals(a, x, fn, memo) for a in f.args]
    out = conj(*parts) if isinstance(f, And) else disj(*parts)
    memo[f] = out
    return out


def _rebuild_literal(f: Formula, term_fn: Callable[[LinearTerm], LinearTerm]) -> Formula:
    if isinstance(f, Not):
        return neg(_rebuild_literal(f.arg, term_fn))
    return atom(f.kind, term_fn(f.term), f.modulus)


def substitute(f: Formula, x: int, e: LinearTerm) -> Formula:
    """Replace variable ``x`` by the linear term ``e``."""
    return _map_literals(f, x, lambda lit: _rebuild_literal(lit, lambda t: t.substitute(x, e)))


def rename(f: Formula, mapping: Callable[[int], int]) -> Formula:
    """Rename variables through ``mapping`` (must be injective on f's variables)."""
    return _map_literals(f, None, lambda lit: _rebuild_literal(lit, lambda t: t.rename(mapping)))


def literals(f: Formula) -> set[Formula]:
    out: set[Formula] = set()

    def walk(g):
        if _is_literal(g):
            out.add(g)
        elif isinstance(g, _NAry):
            for a in g.args:
                walk(a)

    walk(f)
    return out


# ---------------------------------------------------------------------------
# Evaluation


def eval_formula(f: Formula, point: Sequence[int]) -> bool:
    """Truth of ``f`` with ``v_i`` bound to ``point[i-1]``."""
    if f._vars and max(f._vars) > len(point):
        raise DimensionError(f"point of length {len(point)} but formula mentions v{max(f._vars)}")
    return _eval(f, point)


def _eval(f: Formula, point) -> bool:
    if isinstance(f, Atom):
        t = f.term.evaluate(point)
        if f.kind == EQ:
            return t == 0
        if f.kind == LE:
            return t <= 0
        return t % f.modulus == 0
    if isinstance(f, Not):
        return not _eval(f.arg, point)
    if isinstance(f, And):
        return all(_eval(a, point) for a in f.args)
    if isinstance(f, Or):
        return any(_eval(a, point) for a in f.args)
    return f is TRUE


def eval_array(f: Formula, arrays: Sequence[np.ndarray]) -> np.ndarray:
    """Vectorized evaluation; ``arrays[i-1]`` holds values of ``v_i`` (broadcastable)."""
    if f._vars and max(f._vars) > len(arrays):
        raise DimensionError(f"{len(arrays)} arrays but formula mentions v{max(f._vars)}")
    shape = np.broadcast_shapes(*(np.shape(a) for a in arrays)) if arrays else ()
    return np.broadcast_to(_eval_arr(f, arrays), shape)


def _eval_arr(f: Formula, arrays):
    if isinstance(f, Atom):
        t = f.term.const
        for v, c in f.term.coeffs:
            t = t + c * np.asarray(arrays[v - 1], dtype=np.int64)
        t = np.asarray(t)
        if f.kind == EQ:
            return t == 0
        if f.kind == LE:
            return t <= 0
        return t % f.modulus == 0
    if isinstance(f, Not):
        return ~_eval_arr(f.arg, arrays)
    if isinstance(f, And):
        out = _eval_arr(f.args[0], arrays)
        for a in f.args[1:]:
            out = out & _eval_arr(a, arrays)
        return out
    if isinstance(f, Or):
        out = _eval_arr(f.args[0], arrays)
        for a in f.args[1:]:
            out = out | _eval_arr(a, arrays)
        return out
    return np.bool_(f is TRUE)


# ---------------------------------------------------------------------------
# Quantifier elimination

# Distribute a conjunction over a disjunctive child before falling back to
# the general Cooper step, as long as the disjunct count stays this small.
_DISTRIBUTE_LIMIT = 16


def _coeff_of(lit: Formula, x: int) -> int:
    a = lit.arg if isinstance(lit, Not) else lit
    return a.term.coeff(x)


def _literal_atom(lit: Formula) -> Atom:
    return lit.arg if isinstance(lit, Not) else lit


@functools.lru_cache(maxsize=1 << 16)
def eliminate_exists(f: Formula, x: int) -> Formula:
    """Quantifier-free equivalent of ``exists x >= 0 . f`` not mentioning ``x``."""
    if x < 1:
        raise DimensionError(f"variable index must be >= 1, got {x}")
    if x not in f._vars:
        return f
    guard = le(LinearTerm._raw(((x, -1),), 0))
    out = simplify(_exists(conj(f, guard), x), naturals=True)
    check_formula_size(out.size)
    return out


def _exists(f: Formula, x: int) -> Formula:
    if x not in f._vars:
        return f
    if isinstance(f, Or):
        return disj(*(_exists(a, x) for a in f.args))
    if isinstance(f, And):
        inner = [a for a in f.args if x in a._vars]
        outer = [a for a in f.args if x not in a._vars]
        if outer:
            body = conj(*inner)
            out = conj(*outer, _exists(body, x))
            check_formula_size(out.size)
            return out
        eqs = [a for a in inner if isinstance(a, Atom) and a.kind == EQ]
        if eqs:
            best = min(eqs, key=lambda a: (abs(a.term.coeff(x)), a.size))
            return _solve_equality(f, x, best)
        ors = [a for a in inner if isinstance(a, Or)]
        if ors:
            widths = math.prod(len(o.args) for o in ors)
            if widths <= _DISTRIBUTE_LIMIT:
                pick = min(ors, key=lambda o: len(o.args))
                rest = [a for a in inner if a is not pick]
                out = disj(*(_exists(conj(*rest, d), x) for d in pick.args))
                check_formula_size(out.size)
                return out
    return _cooper(f, x)


def _solve_equality(f: Formula, x: int, equation: Atom) -> Formula:
    """exists x . (a*x + t = 0 and rest)  ==  a | t and rest[a*x := -t]."""
    a = equation.term.coeff(x)
    t = equation.term.drop(x)
    if a < 0:
        a, t = -a, -t

    def replace(lit: Formula) -> Formula:
        def term_fn(s: LinearTerm) -> LinearTerm:
            b = s.coeff(x)
            return s.drop(x).scale(a) - t.scale(b)

        at = _literal_atom(lit)
        new = atom(at.kind, term_fn(at.term), at.modulus * a if at.kind == DVD else 1)
        return neg(new) if isinstance(lit, Not) else new

    out = conj(dvd(a, t), _map_literals(f, x, replace))
    check_formula_size(out.size)
    return out


def _cooper(f: Formula, x: int) -> Formula:
    lits = [l for l in literals(f) if x in l._vars]
    delta = 1
    for l in lits:
        delta = math.lcm(delta, abs(_coeff_of(l, x)))
    # In terms of y = delta*x every literal has x-coefficient +-1.
    period = delta
    lower: set[LinearTerm] = set()
    upper: set[LinearTerm] = set()
    for l in lits:
        at = _literal_atom(l)
        a = at.term.coeff(x)
        k = delta // abs(a)
        s = at.term.drop(x).scale(k)
        sg = 1 if a > 0 else -1
        if at.kind == DVD:
            period = math.lcm(period, at.modulus * k)
        elif at.kind == LE:
            if sg > 0:  # y <= -s
                upper.add(-s + 1)
            else:  # y >= s
                lower.add(s - 1)
        else:
            val = -s if sg > 0 else s  # y = val
            if isinstance(l, Not):
                lower.add(val)
                upper.add(val)
            else:
                lower.add(val - 1)
                upper.add(val + 1)

    use_lower = len(lower) <= len(upper)
    points = lower if use_lower else upper
    direction = -1 if use_lower else 1

    def instantiate(e: LinearTerm, at_infinity: bool) -> Formula:
        def replace(lit: Formula) -> Formula:
            at = _literal_atom(lit)
            a = at.term.coeff(x)
            k = delta // abs(a)
            sg = 1 if a > 0 else -1
            s = at.term.drop(x).scale(k)
            if at_infinity and at.kind != DVD:
                if at.kind == EQ:
                    r = FALSE
                else:
                    # sg*y + s <= 0 as y -> direction*inf
                    r = TRUE if sg * direction < 0 else FALSE
            else:
                r = atom(at.kind, e.scale(sg) + s, at.modulus * k if at.kind == DVD else 1)
            return neg(r) if isinstance(lit, Not) else r

        return conj(dvd(delta, e), _map_literals(f, x, replace))

    parts: list[Formula] = []
    total = 0
    for j in range(1, period + 1):
        parts.append(instantiate(LinearTerm._raw((), direction * j), True))
    for p in sorted(points, key=lambda t: (t.coeffs, t.const)):
        for j in range(1, period + 1):
            g = instantiate(p - direction * j, False)
            if g is TRUE:
                return TRUE
            parts.append(g)
            total += g.size
            check_formula_size(total)
    out = disj(*parts)
    check_formula_size(out.size)
    return out


def _pick_variable(f: Formula) -> int:
    """Heuristic elimination order: equalities first, then fewest bounds."""
    counts: dict[int, int] = {}
    top = f.args if isinstance(f, And) else (f,)
    eq_vars = set()
    for a in top:
        if isinstance(a, Atom) and a.kind == EQ:
            for v, c in a.term.coeffs:
                if abs(c) == 1:
                    eq_vars.add(v)
    for l in literals(f):
        for v in l._vars:
            counts[v] = counts.get(v, 0) + 1
    if eq_vars:
        return min(eq_vars, key=lambda v: (counts.get(v, 0), v))
    return min(counts, key=lambda v: (counts[v], v))


def _quick_witness(f: Formula, bound: int) -> bool:
    vs = sorted(f._vars)
    n = max(vs)
    point = [0] * n
    for values in itertools.product(range(bound + 1), repeat=len(vs)):
        for v, val in zip(vs, values):
            point[v - 1] = val
        if _eval(f, point):
            return True
    return False


@functools.lru_cache(maxsize=1 << 16)
def is_satisfiable(f: Formula) -> bool:
    """Whether some natural-number assignment satisfies ``f``."""
    if f is TRUE or f is FALSE:
        return f is TRUE
    k = len(f._vars)
    bound = {1: 8, 2: 5, 3: 3, 4: 2}.get(k, 1)
    if _quick_witness(f, bound):
        return True
    g = f
    while g._vars:
        g = eliminate_exists(g, _pick_variable(g))
        if g is TRUE or g is FALSE:
            break
    return g is TRUE


def decide_sentence(prefix: Sequence[tuple[str, int]], matrix: Formula) -> bool:
    """Truth of ``Q1 v1 ... Qk vk . matrix`` with quantifiers over the naturals.

    ``prefix`` lists ``("exists" | "forall", index)`` outermost first.
    """
    bound = {v for _, v in prefix}
    free = matrix._vars - bound
    if free:
        raise DimensionError(f"unbound variables in sentence: {sorted(free)}")
    f = matrix
    for q, v in reversed(prefix):
        if q == "exists":
            f = eliminate_exists(f, v)
        elif q == "forall":
            f = neg(eliminate_exists(neg(f), v))
        else:
            raise ValueError(f"unknown quantifier {q!r}")
    f = simplify(f)
    if f is not TRUE and f is not FALSE:
        raise AssertionError(f"closed formula did not fold to a constant: {f}")
    return f is TRUE


# ---------------------------------------------------------------------------
# Text form


def _render_term(t: LinearTerm) -> str:
    pieces: list[str] = []
    for v, c in t.coeffs:
        mag = abs(c)
        body = f"v{v}" if mag == 1 else f"{mag}*v{v}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    if t.const or not pieces:
        if not pieces:
            pieces.append(str(t.const))
        else:
            pieces.append(("+ " if t.const > 0 else "- ") + str(abs(t.const)))
    return " ".join(pieces)


def render(f: Formula) -> str:
    if f is TRUE:
        return "true"
    if f is FALSE:
        return "false"
    if isinstance(f, Atom):
        if f.kind == EQ:
            return f"{_render_term(f.term)} = 0"
        if f.kind == LE:
            return f"{_render_term(f.term)} <= 0"
        return f"{f.modulus} | {_render_term(f.term)}"
    if isinstance(f, Not):
        return f"!({render(f.arg)})"
    sep = " & " if isinstance(f, And) else " | "
    parts = []
    for a in f.args:
        s = render(a)
        if isinstance(a, _NAry) or (isinstance(a, Atom) and a.kind == DVD):
            s = f"({s})"
        parts.append(s)
    return sep.join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|v(\d+)|(true|false)|(<=|[-+*=|&!()]))")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", 1, pos + 1)
        col = m.start(0) + (len(m.group(0)) - len(m.group(0).lstrip())) + 1
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), col))
        elif m.group(2) is not None:
            tokens.append(("var", int(m.group(2)), col))
        elif m.group(3) is not None:
            tokens.append(("const", m.group(3) == "true", col))
        else:
            tokens.append((m.group(4), None, col))
        pos = m.end()
    tokens.append(("eof", None, len(text) + 1))
    return tokens


class _Reader:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind: str | None = None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", 1, tok[2])
        self.i += 1
        return tok

    def formula(self) -> Formula:
        parts = [self.conjunction()]
        while self.peek()[0] == "|":
            self.take()
            parts.append(self.conjunction())
        return disj(*parts)

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.peek()[0] == "&":
            self.take()
            parts.append(self.unary())
        return conj(*parts)

    def unary(self) -> Formula:
        kind = self.peek()[0]
        if kind == "!":
            self.take()
            return neg(self.unary())
        if kind == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if kind == "const":
            return TRUE if self.take()[1] else FALSE
        if kind == "int" and self.peek(1)[0] == "|":
            m = self.take()[1]
            self.take("|")
            if m < 1:
                raise ParseError("modulus must be >= 1", 1, self.peek()[2])
            return dvd(m, self.term())
        lhs = self.term()
        op = self.peek()
        if op[0] == "=":
            self.take()
            return eq(lhs - self.term())
        if op[0] == "<=":
            self.take()
            return le(lhs - self.term())
        raise ParseError(f"expected '=' or '<=', found {op[0]!r}", 1, op[2])

    def term(self) -> LinearTerm:
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        acc = self.monomial().scale(sign)
        while self.peek()[0] in ("+", "-"):
            sign = 1 if self.take()[0] == "+" else -1
            acc = acc + self.monomial().scale(sign)
        return acc

    def monomial(self) -> LinearTerm:
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            if self.peek()[0] == "*":
                self.take()
                v = self.take("var")[1]
                return LinearTerm({v: tok[1]})
            return const(tok[1])
        if tok[0] == "var":
            self.take()
            if tok[1] < 1:
                raise ParseError("variable index must be >= 1", 1, tok[2])
            return var(tok[1])
        raise ParseError(f"expected a term, found {tok[0]!r}", 1, tok[2])


def parse_formula(text: str) -> Formula:
    """Read the textual form produced by :func:`render`."""
    r = _Reader(text)
    f = r.formula()
    tok = r.peek()
    if tok[0] != "eof":
        raise ParseError(f"trailing input at {tok[0]!r}", 1, tok[2])
    return f
