"""Skolem-arithmetic formulas: syntax tree, parser and compiler.

The language has variables ranging over the positive integers, products of
variables, equality, the boolean connectives and both quantifiers::

    prime(x):  !(forall y . x*y = y) & forall d . ((exists z . d*z = x) -> ((forall y . d*y = y) | d = x))

:func:`compile_formula` turns a formula into a semiskolemian set by
structural recursion.  An atom ``t1 = t2`` holds iff every prime has the
same valuation on both sides, and the valuation of a product is the sum of
valuations, so the atom compiles to ``Def(a)`` with ``a`` the linear
equation between the factor multiplicities.  Conjunction, negation and
existential quantification map to intersection, complement and
projection.
"""
from __future__ import annotations

import functools
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import presburger as pb
from . import skolemian as sk
from .errors import DomainError, ParseError, ResourceLimitError
from .membership import member_semi, valuation_profile
from .semilinear import SemilinearSet
from .skolemian import SemiskolemianSet

_POS = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Product:
    """A product of variables; ``factors`` is kept sorted (a multiset)."""

    factors: tuple[str, ...]
    pos: tuple[int, int] | None = _POS

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a product needs at least one factor")
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    def __str__(self):
        return "*".join(self.factors)


class SkolemFormula:
    """Base class of formula nodes."""

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Atom(SkolemFormula):
    lhs: Product
    rhs: Product
    pos: tuple[int, int] | None = _POS


@dataclass(frozen=True)
class Not(SkolemFormula):
    arg: SkolemFormula
    pos: tuple[int, int] | None = _POS


@dataclass(frozen=True)
class And(SkolemFormula):
    left: SkolemFormula
    right: SkolemFormula
    pos: tuple[int, int] | None = _POS


@dataclass(frozen=True)
class Or(SkolemFormula):
    left: SkolemFormula
    right: SkolemFormula
    pos: tuple[int, int] | None = _POS


@dataclass(frozen=True)
class Implies(SkolemFormula):
    left: SkolemFormula
    right: SkolemFormula
    pos: tuple[int, int] | None = _POS


@dataclass(frozen=True)
class Iff(SkolemFormula):
    left: SkolemFormula
    right: SkolemFormula
    pos: tuple[int, int] | None = _POS


@dataclass(frozen=True)
class Exists(SkolemFormula):
    var: str
    body: SkolemFormula
    pos: tuple[int, int] | None = _POS


@dataclass(frozen=True)
class Forall(SkolemFormula):
    var: str
    body: SkolemFormula
    pos: tuple[int, int] | None = _POS


def free_variables(f: SkolemFormula) -> tuple[str, ...]:
    """Free variables in order of first occurrence."""
    seen: dict[str, None] = {}

    def walk(g: SkolemFormula, bound: frozenset):
        if isinstance(g, Atom):
            for name in (*g.lhs.factors, *g.rhs.factors):
                if name not in bound:
                    seen.setdefault(name)
        elif isinstance(g, Not):
            walk(g.arg, bound)
        elif isinstance(g, (Exists, Forall)):
            walk(g.body, bound | {g.var})
        else:
            walk(g.left, bound)
            walk(g.right, bound)

    walk(f, frozenset())
    return tuple(seen)


# ---------------------------------------------------------------------------
# Text


_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}


def to_text(f: SkolemFormula) -> str:
    if isinstance(f, Atom):
        return f"{f.lhs} = {f.rhs}"
    if isinstance(f, Not):
        inner = to_text(f.arg)
        return f"!{inner}" if isinstance(f.arg, Not) else f"!({inner})"
    if isinstance(f, (Exists, Forall)):
        word = "exists" if isinstance(f, Exists) else "forall"
        return f"{word} {f.var} . {to_text(f.body)}"
    op = {And: "&", Or: "|", Implies: "->", Iff: "<->"}[type(f)]

    def side(g):
        s = to_text(g)
        if isinstance(g, (Exists, Forall)) or (type(g) in _PREC and type(g) is not type(f)) \
                or (type(g) is type(f) and type(f) in (Implies, Iff)):
            return f"({s})"
        return s

    return f"{side(f.left)} {op} {side(f.right)}"


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<ident>[a-z][a-z0-9_]*)
  | (?P<op><->|->|[!&|().=*])
""", re.VERBOSE)

_KEYWORDS = {"forall", "exists"}


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            word = m.group()
            tokens.append(("kw" if word in _KEYWORDS else "ident", word, line, col))
        elif kind == "op":
            tokens.append(("op", m.group(), line, col))
        pos = m.end()
    tokens.append(("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def at(self, value: str) -> bool:
        tok = self.toks[self.i]
        return tok[0] in ("op", "kw") and tok[1] == value

    def expect(self, value: str):
        tok = self.toks[self.i]
        if not self.at(value):
            shown = tok[1] or "end of input"
            raise ParseError(f"expected {value!r}, found {shown!r}", tok[2], tok[3])
        self.i += 1
        return tok

    def formula(self) -> SkolemFormula:
        if self.peek()[0] == "kw":
            return self.binder()
        return self.iff()

    def binder(self) -> SkolemFormula:
        kw = self.toks[self.i]
        self.i += 1
        names = []
        while self.peek()[0] == "ident":
            tok = self.toks[self.i]
            names.append((tok[1], (tok[2], tok[3])))
            self.i += 1
        if not names:
            tok = self.peek()
            raise ParseError(f"expected a variable after {kw[1]!r}", tok[2], tok[3])
        self.expect(".")
        body = self.formula()
        cls = Exists if kw[1] == "exists" else Forall
        for name, pos in reversed(names):
            body = cls(name, body, pos=pos)
        return body

    def iff(self) -> SkolemFormula:
        left = self.imp()
        while self.at("<->"):
            tok = self.expect("<->")
            left = Iff(left, self.imp(), pos=(tok[2], tok[3]))
        return left

    def imp(self) -> SkolemFormula:
        left = self.disjunction()
        if self.at("->"):
            tok = self.expect("->")
            return Implies(left, self.imp(), pos=(tok[2], tok[3]))
        return left

    def disjunction(self) -> SkolemFormula:
        left = self.conjunction()
        while self.at("|"):
            tok = self.expect("|")
            left = Or(left, self.conjunction(), pos=(tok[2], tok[3]))
        return left

    def conjunction(self) -> SkolemFormula:
        left = self.unary()
        while self.at("&"):
            tok = self.expect("&")
            left = And(left, self.unary(), pos=(tok[2], tok[3]))
        return left

    def unary(self) -> SkolemFormula:
        tok = self.peek()
        if self.at("!"):
            self.i += 1
            return Not(self.unary(), pos=(tok[2], tok[3]))
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        if tok[0] == "kw":
            return self.binder()
        lhs = self.term()
        eq = self.expect("=")
        return Atom(lhs, self.term(), pos=(eq[2], eq[3]))

    def term(self) -> Product:
        tok = self.peek()
        if tok[0] != "ident":
            shown = tok[1] or "end of input"
            raise ParseError(f"expected a variable, found {shown!r}", tok[2], tok[3])
        names = [tok[1]]
        self.i += 1
        while self.at("*"):
            self.i += 1
            nxt = self.peek()
            if nxt[0] != "ident":
                raise ParseError(f"expected a variable after '*', found {nxt[1] or 'end of input'!r}",
                                 nxt[2], nxt[3])
            names.append(nxt[1])
            self.i += 1
        return Product(tuple(names), pos=(tok[2], tok[3]))


def parse(text: str) -> SkolemFormula:
    """Parse the ASCII formula syntax; raises :class:`ParseError` with line/column."""
    p = _Parser(text)
    f = p.formula()
    tok = p.peek()
    if tok[0] != "eof":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2], tok[3])
    return f


# ---------------------------------------------------------------------------
# Compilation


def _position(order: tuple[str, ...], name: str) -> int:
    # innermost binding wins
    for k in range(len(order) - 1, -1, -1):
        if order[k] == name:
            return k + 1
    raise KeyError(name)


def atom_set(f: Atom, order: tuple[str, ...]) -> SemilinearSet:
    coeffs: Counter = Counter()
    for name in f.lhs.factors:
        coeffs[_position(order, name)] += 1
    for name in f.rhs.factors:
        coeffs[_position(order, name)] -= 1
    return SemilinearSet(len(order), pb.eq(pb.LinearTerm(coeffs)))


def compile_formula(f: SkolemFormula, order: Sequence[str] | None = None) -> SemiskolemianSet:
    """Semiskolemian set defined by ``f`` with coordinates in ``order``.

    ``order`` defaults to the free variables in order of first occurrence.
    It must contain every free variable; extra names become unconstrained
    coordinates.
    """
    order = free_variables(f) if order is None else tuple(order)
    missing = set(free_variables(f)) - set(order)
    if missing:
        raise ValueError(f"variable order lacks free variables {sorted(missing)}")
    return _compile(f, order)


@functools.lru_cache(maxsize=4096)
def _compile(f: SkolemFormula, order: tuple[str, ...]) -> SemiskolemianSet:
    try:
        return _compile_node(f, order)
    except ResourceLimitError as e:
        raise e.with_context(to_text(f)) from None


def _compile_node(f: SkolemFormula, order: tuple[str, ...]) -> SemiskolemianSet:
    dim = len(order)
    if isinstance(f, Atom):
        return sk.semi(dim, [sk.make_def((), atom_set(f, order))])
    if isinstance(f, Not):
        return sk.complement_semi(_compile(f.arg, order))
    if isinstance(f, And):
        return sk.intersect_semi(_compile(f.left, order), _compile(f.right, order))
    if isinstance(f, Or):
        return sk.union_semi(_compile(f.left, order), _compile(f.right, order))
    if isinstance(f, Implies):
        return sk.union_semi(sk.complement_semi(_compile(f.left, order)), _compile(f.right, order))
    if isinstance(f, Iff):
        a, b = _compile(f.left, order), _compile(f.right, order)
        na, nb = sk.complement_semi(a), sk.complement_semi(b)
        return sk.intersect_semi(sk.union_semi(na, b), sk.union_semi(nb, a))
    if isinstance(f, Exists):
        return sk.project_semi(_compile(f.body, order + (f.var,)), dim + 1)
    if isinstance(f, Forall):
        inner = sk.complement_semi(_compile(f.body, order + (f.var,)))
        return sk.complement_semi(sk.project_semi(inner, dim + 1))
    raise TypeError(f"not a formula node: {f!r}")


def decide(f: SkolemFormula) -> bool:
    """Truth of a sentence over the positive integers with multiplication."""
    free = free_variables(f)
    if free:
        raise ValueError(f"not a sentence; free variables: {', '.join(free)}")
    result = _compile(f, ())
    return any(sk.decide_dim_zero(d) for d in result.disjuncts)


def eval_ground(f: SkolemFormula, assignment: Mapping[str, int]) -> bool:
    """Truth of ``f`` under an assignment of positive integers to its free variables."""
    order = free_variables(f)
    if set(assignment) != set(order):
        raise ValueError(f"assignment must bind exactly {sorted(order)}, got {sorted(assignment)}")
    point = tuple(assignment[v] for v in order)
    valuation_profile(point)
    return member_semi(_compile(f, order), point)


def clear_caches() -> None:
    _compile.cache_clear()
    pb.eliminate_exists.cache_clear()
    pb.is_satisfiable.cache_clear()
