"""Rainbow triangle-saturated graphs from capacity codes.

A code ``X`` of ``m`` strings of length ``k`` gives a complete bipartite graph
between ``A = {1..k}`` and ``B = {k+1..k+m}`` where edge ``(i, k+j)`` gets
letter ``i`` of the ``j``-th string.  If ``X`` has the pair property for
``s = t - 1`` then every missing ``B``-``B`` edge, in any color, closes a rainbow
triangle through ``A``.  A single greedy pass over the missing edges then
makes the graph saturated.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from math import comb

from .codes import StringFamily, exact_max_family, greedy_search, verify_family
from .errors import ParameterError, ResourceError
from .graph import ColoredGraph, _through, require_rainbow_free


def build_bipartite(X: StringFamily) -> ColoredGraph:
    """Complete bipartite ``K_{k,m}`` colored by the code letters."""
    if len(X) == 0:
        raise ParameterError("cannot build a graph from an empty family")
    if X.t >= 3 and not verify_family(X, X.t - 1):
        warnings.warn(
            f"family does not have the pair property for s={X.t - 1}; the result need not be saturated",
            stacklevel=2,
        )
    k = X.k
    edges = {}
    for j, word in enumerate(X.strings):
        v = k + 1 + j
        for i, letter in enumerate(word, 1):
            edges[(i, v)] = letter
    return ColoredGraph(k + len(X), X.t, edges)


def maximal_extension(G: ColoredGraph, s: int) -> ColoredGraph:
    """Add edges until no missing edge can be added without a rainbow ``K_s``.

    Missing pairs are scanned once in lexicographic order; each is added with
    the smallest color that creates no rainbow ``K_s``, or skipped if every
    color does.  Skipped pairs stay blocked as edges are added, so one pass
    suffices.
    """
    if s < 2:
        raise ParameterError(f"need s >= 2, got {s}")
    require_rainbow_free(G, s)
    n, t = G.n, G.t
    colors = [list(row) for row in G._colors]
    adj = list(G._adj)
    added: dict[tuple[int, int], int] = {}
    for u, v in list(G.non_edges()):
        for c in range(1, t + 1):
            if _through(colors, adj, u, v, c, s) is None:
                colors[u][v] = colors[v][u] = c
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                added[(u, v)] = c
                break
    if not added:
        return G
    edges = dict(G.edges)
    edges.update(added)
    return ColoredGraph(n, t, edges)


@dataclass(frozen=True)
class ConstructionReport:
    t: int
    n: int
    k: int
    m: int
    edges: int
    edge_bound: int
    coefficient: float
    asymptotic_value: float
    family_source: str
    graph: ColoredGraph

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "s": 3,
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "edges": self.edges,
            "edge_bound": self.edge_bound,
            "coefficient": self.coefficient,
            "asymptotic_value": self.asymptotic_value,
            "asymptotic_note": "o(1) dropped; asymptotic, non-binding at small n",
            "family_source": self.family_source,
            "log_base": "e",
        }


def triangle_coefficient(t: int) -> float:
    """``t / ((t-1) ln(t-1))``, the n ln n coefficient for s = 3."""
    return t / ((t - 1) * math.log(t - 1))


def _family_for(t: int, k: int, m: int, seed: int, restarts: int, limit: int) -> tuple[StringFamily, str] | None:
    s = t - 1
    fam = greedy_search(t, s, k, seed=seed, restarts=restarts) if t**k <= limit else None
    if fam is not None and len(fam) >= m:
        return fam.subset(m), "greedy"
    if t**k <= limit:
        try:
            res = exact_max_family(t, s, k, limit=limit, node_limit=200_000, symmetry=True)
        except ResourceError:
            return None
        if res.size >= m:
            return res.family.subset(m), "exact"
    return None


def construction_report(
    t: int,
    n: int,
    family: StringFamily | None = None,
    seed: int = 0,
    restarts: int = 20,
    limit: int = 2000,
) -> ConstructionReport:
    """Build and extend the triangle construction on ``n`` vertices.

    With ``family`` given, ``n`` must equal ``k + m``.  Otherwise every split
    ``n = k + m`` whose code is found by search is tried and the one with the
    fewest edges after extension is reported.
    """
    if t < 3:
        raise ParameterError(f"the triangle construction needs t >= 3, got t={t}")
    if n < 2:
        raise ParameterError(f"need n >= 2, got {n}")
    candidates: list[tuple[StringFamily, str]] = []
    if family is not None:
        if family.t != t:
            raise ParameterError(f"family alphabet {family.t} != t={t}")
        if family.k + len(family) != n:
            raise ParameterError(f"family gives n = k + m = {family.k + len(family)}, not {n}")
        candidates.append((family, "given"))
    else:
        for k in range(1, n):
            found = _family_for(t, k, n - k, seed, restarts, limit)
            if found is not None:
                candidates.append(found)
    if not candidates:
        raise ResourceError(
            f"no code over [{t}] with k + m = {n} was found within search limits "
            f"(t^k <= {limit}); a longer code or larger limit is needed"
        )
    best: ConstructionReport | None = None
    coef = triangle_coefficient(t)
    for fam, source in candidates:
        G = maximal_extension(build_bipartite(fam), 3)
        k, m = fam.k, len(fam)
        rep = ConstructionReport(
            t=t,
            n=n,
            k=k,
            m=m,
            edges=G.edge_count,
            edge_bound=k * m + comb(k, 2),
            coefficient=coef,
            asymptotic_value=coef * n * math.log(n),
            family_source=source,
            graph=G,
        )
        if best is None or rep.edges < best.edges:
            best = rep
    return best
