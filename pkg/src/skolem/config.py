"""Resource caps.

Caps live in a context variable so concurrent callers can run with
different limits::

    with limits(max_disjuncts=500):
        compile_formula(f)
"""
from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace
from typing import Iterator

from .errors import ResourceLimitError


@dataclass(frozen=True)
class Limits:
    max_formula_nodes: int = 100_000
    max_disjuncts: int = 100_000
    # subset / correct-set enumerations in intersection and complement
    max_enumeration: int = 1_000_000

    def __post_init__(self):
        for name in ("max_formula_nodes", "max_disjuncts", "max_enumeration"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("skolem_limits", default=Limits())


def current_limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def limits(**overrides: int) -> Iterator[Limits]:
    new = replace(_current.get(), **overrides)
    token = _current.set(new)
    try:
        yield new
    finally:
        _current.reset(token)


def check_formula_size(size: int) -> None:
    cap = _current.get().max_formula_nodes
    if size > cap:
        raise ResourceLimitError(f"formula has {size} nodes, cap is {cap}")


def check_disjuncts(count: int) -> None:
    cap = _current.get().max_disjuncts
    if count > cap:
        raise ResourceLimitError(f"{count} disjuncts exceed cap {cap}")


def check_enumeration(count: int, what: str) -> None:
    cap = _current.get().max_enumeration
    if count > cap:
        raise ResourceLimitError(f"{what}: {count} cases exceed enumeration cap {cap}")
