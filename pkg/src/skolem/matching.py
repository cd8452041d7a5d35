"""Bipartite graphs and covering matchings.

A *matching of S* is a set of pairwise non-adjacent edges touching every
node of ``S``.  Whether one exists is answered with a maximum matching on
the subgraph where the covered side is restricted to ``S``.  Node indices
are 0-based on both sides.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import DimensionError

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class BipartiteGraph:
    left_count: int
    right_count: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.left_count < 0 or self.right_count < 0:
            raise DimensionError("node counts must be >= 0")
        edges = frozenset(self.edges)
        for l, r in edges:
            if not (0 <= l < self.left_count and 0 <= r < self.right_count):
                raise DimensionError(f"edge {(l, r)} outside {self.left_count}x{self.right_count}")
        object.__setattr__(self, "edges", edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.left_count)]
        for l, r in sorted(self.edges):
            adj[l].append(r)
        return adj

    def transpose(self) -> BipartiteGraph:
        return BipartiteGraph(self.right_count, self.left_count,
                              frozenset((r, l) for l, r in self.edges))

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> BipartiteGraph:
        return BipartiteGraph(self.left_count, self.right_count, self.edges | frozenset(extra))


def _max_matching(adj: list[list[int]], lefts: Iterable[int], right_count: int) -> dict[int, int]:
    """Kuhn's augmenting-path algorithm; returns right -> left."""
    owner: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for r in adj[u]:
            if r in seen:
                continue
            seen.add(r)
            if r not in owner or augment(owner[r], seen):
                owner[r] = u
                return True
        return False

    for u in lefts:
        augment(u, set())
    return owner


def maximum_matching(g: BipartiteGraph) -> set[tuple[int, int]]:
    owner = _max_matching(g.adjacency(), range(g.left_count), g.right_count)
    return {(l, r) for r, l in owner.items()}


def max_matching_size(g: BipartiteGraph) -> int:
    return len(_max_matching(g.adjacency(), range(g.left_count), g.right_count))


def has_matching_covering(g: BipartiteGraph, side: str, nodes: Iterable[int]) -> bool:
    """Whether some matching of ``g`` covers every node in ``nodes`` on ``side``."""
    nodes = sorted(set(nodes))
    if side == RIGHT:
        g = g.transpose()
    elif side != LEFT:
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
    for u in nodes:
        if not 0 <= u < g.left_count:
            raise DimensionError(f"node {u} outside 0..{g.left_count - 1}")
    owner = _max_matching(g.adjacency(), nodes, g.right_count)
    return len(owner) == len(nodes)
