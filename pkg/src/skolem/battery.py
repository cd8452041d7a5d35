"""Curated formulas with known meaning, used by ``skolem selftest`` and the tests.

Every predicate here is conclusive under bounded evaluation once the
quantifier bound is at least the largest argument: each quantified
variable is either a divisor of an argument or only needs the witness 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .frontend import SkolemFormula, parse

IS_ONE = "(forall u . {x}*u = u)"


def _prime(x: str) -> str:
    return (f"(!(forall y . {x}*y = y) & forall d . ((exists z . d*z = {x}) -> "
            f"((forall y . d*y = y) | d = {x})))")


PREDICATES: dict[str, tuple[tuple[str, ...], str]] = {
    "divides": (("x", "y"), "exists z . x * z = y"),
    "prime": (("x",), _prime("x")),
    "square": (("x",), "exists y . y*y = x"),
    "squarefree": (("x",), "forall d . (exists a . d*d*a = x) -> (forall e . d*e = e)"),
    "coprime": (("x", "y"), "forall d . ((exists a . d*a = x) & (exists b . d*b = y)) -> (forall e . d*e = e)"),
    "one": (("x",), "forall y . x*y = y"),
}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


def _squarefree(n: int) -> bool:
    return all(n % (k * k) for k in range(2, math.isqrt(n) + 1))


REFERENCE: dict[str, Callable[..., bool]] = {
    "divides": lambda x, y: y % x == 0,
    "prime": _is_prime,
    "square": lambda x: math.isqrt(x) ** 2 == x,
    "squarefree": _squarefree,
    "coprime": lambda x, y: math.gcd(x, y) == 1,
    "one": lambda x: x == 1,
}


@dataclass(frozen=True)
class Sentence:
    text: str
    expected: bool
    why: str

    @property
    def formula(self) -> SkolemFormula:
        return parse(self.text)


SENTENCES: tuple[Sentence, ...] = (
    Sentence("exists x . forall y . x*y = y", True, "x = 1 is a unit"),
    Sentence("forall x . forall y . x*y = y*x", True, "commutativity"),
    Sentence("forall x . exists y . exists z . x = y*z", True, "y = x, z = 1"),
    Sentence("forall x y z u v . (x*y = u & y*z = v) -> u*z = x*v", True,
             "associativity with auxiliary products u = xy, v = yz"),
    Sentence("forall x . exists y . y*y = x", False, "2 is not a square"),
    Sentence("exists x . (x*x = x & exists y . !(x*y = y))", False,
             "x*x = x forces x = 1, which fixes every y"),
    Sentence("forall x . exists y . !(y = x) & exists z . x*z = y", True,
             "y = 2x is a multiple of x different from x"),
    Sentence("exists x . exists y . !(x = y) & x*x = y*y", False,
             "squaring is injective on positive integers"),
    Sentence("forall x . exists p . " + _prime("p") + " & !(exists z . p*z = x)", True,
             "some prime does not divide x"),
)
