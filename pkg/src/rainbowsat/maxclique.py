"""Branch-and-bound maximum clique on bitset adjacency.

Vertices are ``0..N-1`` and ``adj[v]`` is a Python int whose bit ``w`` is set
when ``v`` and ``w`` are adjacent.  Bounds come from a greedy sequential
coloring of the candidate set, recomputed at every node (the MCQ/BBMC
scheme).  Candidates are colored in increasing index order, so with the
caller's vertex order fixed the search, and hence the returned clique, is
deterministic.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .errors import ResourceError


@dataclass
class CliqueResult:
    size: int
    clique: list[int]
    nodes: int


def _color_sort(P: int, adj: list[int]) -> tuple[list[int], list[int]]:
    """Greedy coloring of ``P``; returns vertices grouped by color class and
    the (non-decreasing) color number of each."""
    order: list[int] = []
    bounds: list[int] = []
    U = P
    color = 0
    while U:
        color += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v]
            Q ^= low
            U ^= low
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique(
    adj: list[int], node_limit: int | None = None, candidates: int | None = None, incumbent: int = 0
) -> CliqueResult:
    """Exact maximum clique.

    ``candidates`` restricts the search to a vertex subset (bitmask).  With
    ``incumbent > 0`` only cliques strictly larger than it are reported; the
    result is empty when none exists.  Raises :class:`ResourceError` when more than ``node_limit`` search nodes are
    expanded.
    """
    n = len(adj)
    best: list[int] = []
    best_size = incumbent
    nodes = 0
    current: list[int] = []

    def expand(P: int) -> None:
        nonlocal best, best_size, nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise ResourceError(f"maximum clique search exceeded {node_limit} nodes (best so far {best_size})")
        order, bounds = _color_sort(P, adj)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + bounds[idx] <= best_size:
                return
            v = order[idx]
            current.append(v)
            newP = P & adj[v]
            if newP:
                expand(newP)
            elif len(current) > best_size:
                best_size = len(current)
                best = list(current)
            current.pop()
            P &= ~(1 << v)

    P = (1 << n) - 1 if candidates is None else candidates
    if P:
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, n + 100))
        try:
            expand(P)
        finally:
            sys.setrecursionlimit(limit)
    return CliqueResult(len(best), sorted(best), nodes)
