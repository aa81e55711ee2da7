"""Edge-colored graphs, rainbow clique detection and the saturation predicate.

Vertices are labelled ``1..n`` and colors ``1..t``.  Internally a graph keeps
an ``(n+1) x (n+1)`` color matrix (0 meaning "no edge") together with one
adjacency bitmask per vertex; every search below walks those bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import ContractViolation, FormatError, ParameterError

Pair = tuple[int, int]


def _norm(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ColoredGraph:
    """A t-edge-colored simple graph on vertices ``1..n``.

    ``edges`` maps each pair ``(u, v)`` with ``u < v`` to its color.  Instances
    are immutable; :meth:`with_edge` returns a new graph.
    """

    n: int
    t: int
    edges: Mapping[Pair, int] = field(default_factory=dict)
    _colors: tuple = field(init=False, repr=False, compare=False)
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ParameterError(f"vertex count must be >= 0, got {self.n}")
        if self.t < 1:
            raise ParameterError(f"color count must be >= 1, got {self.t}")
        clean: dict[Pair, int] = {}
        colors = [[0] * (self.n + 1) for _ in range(self.n + 1)]
        adj = [0] * (self.n + 1)
        for (u, v), c in self.edges.items():
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            u, v = _norm(u, v)
            if not (1 <= u and v <= self.n):
                raise ParameterError(f"edge ({u},{v}) outside vertex range 1..{self.n}")
            if not 1 <= c <= self.t:
                raise ParameterError(f"edge ({u},{v}) has color {c} outside 1..{self.t}")
            if (u, v) in clean:
                raise ParameterError(f"duplicate edge ({u},{v})")
            clean[(u, v)] = c
            colors[u][v] = colors[v][u] = c
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "edges", dict(sorted(clean.items())))
        object.__setattr__(self, "_colors", tuple(tuple(row) for row in colors))
        object.__setattr__(self, "_adj", tuple(adj))

    def __hash__(self) -> int:
        return hash((self.n, self.t, tuple(self.edges.items())))

    @classmethod
    def empty(cls, n: int, t: int) -> "ColoredGraph":
        return cls(n, t, {})

    @classmethod
    def from_edges(cls, n: int, t: int, triples: Iterable[tuple[int, int, int]]) -> "ColoredGraph":
        edges: dict[Pair, int] = {}
        for u, v, c in triples:
            key = _norm(u, v)
            if key in edges:
                raise ParameterError(f"duplicate edge {key}")
            edges[key] = c
        return cls(n, t, edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def color(self, u: int, v: int) -> int | None:
        c = self._colors[u][v]
        return c or None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._colors[u][v])

    def neighbors(self, v: int) -> list[int]:
        return _bits(self._adj[v])

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def non_edges(self) -> Iterator[Pair]:
        """Missing pairs in lexicographic order."""
        for u in range(1, self.n + 1):
            for v in range(u + 1, self.n + 1):
                if not self._colors[u][v]:
                    yield (u, v)

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def with_edge(self, u: int, v: int, c: int) -> "ColoredGraph":
        key = _norm(u, v)
        if key in self.edges:
            raise ParameterError(f"({u},{v}) is already an edge")
        edges = dict(self.edges)
        edges[key] = c
        return ColoredGraph(self.n, self.t, edges)

    def recolored(self, perm: Mapping[int, int]) -> "ColoredGraph":
        """Apply a color permutation ``old -> new`` to every edge."""
        return ColoredGraph(self.n, self.t, {e: perm[c] for e, c in self.edges.items()})

    def is_subgraph_of(self, other: "ColoredGraph") -> bool:
        return self.n == other.n and all(other.edges.get(e) == c for e, c in self.edges.items())


@dataclass(frozen=True)
class RainbowWitness:
    """``s`` pairwise adjacent vertices whose edges all carry distinct colors."""

    vertices: tuple[int, ...]
    colors: dict[Pair, int]

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[u, v, c] for (u, v), c in self.colors.items()],
        }


@dataclass(frozen=True)
class SaturationReport:
    s: int
    saturated: bool
    rainbow_found: RainbowWitness | None = None
    blocking_pair: tuple[Pair, int] | None = None
    # set when t < s(s-1)/2: no rainbow K_s can exist at all
    low_color_regime: bool = False

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "saturated": self.saturated,
            "rainbow_found": self.rainbow_found.to_json() if self.rainbow_found else None,
            "blocking_pair": (
                {"pair": list(self.blocking_pair[0]), "color": self.blocking_pair[1]}
                if self.blocking_pair
                else None
            ),
            "low_color_regime": self.low_color_regime,
        }


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _extend(colors, adj, clique: list[int], used: int, cand: int, need: int) -> list[int] | None:
    """Depth-first search for ``need`` more vertices, ascending label order.

    ``used`` is a bitmask of colors already on the clique's edges; ``cand``
    holds vertices adjacent to every clique member.
    """
    if need == 0:
        return list(clique)
    while cand:
        if cand.bit_count() < need:
            return None
        low = cand & -cand
        w = low.bit_length() - 1
        cand ^= low
        row = colors[w]
        add = 0
        ok = True
        for u in clique:
            bit = 1 << row[u]
            if (used | add) & bit:
                ok = False
                break
            add |= bit
        if not ok:
            continue
        clique.append(w)
        found = _extend(colors, adj, clique, used | add, cand & adj[w], need - 1)
        clique.pop()
        if found is not None:
            return found
    return None


def _witness(colors, verts: list[int]) -> RainbowWitness:
    verts = sorted(verts)
    return RainbowWitness(tuple(verts), {(u, v): colors[u][v] for u, v in combinations(verts, 2)})


def _find_rainbow(colors, adj, n: int, s: int) -> list[int] | None:
    for u in range(1, n + 1):
        above = adj[u] >> (u + 1) << (u + 1)
        found = _extend(colors, adj, [u], 0, above, s - 1)
        if found is not None:
            return found
    return None


def _through(colors, adj, u: int, v: int, c: int, s: int) -> list[int] | None:
    return _extend(colors, adj, [u, v], 1 << c, adj[u] & adj[v], s - 2)


def find_rainbow_clique(G: ColoredGraph, s: int) -> RainbowWitness | None:
    """Return the lexicographically first rainbow ``K_s`` in ``G``, or None."""
    if s < 2 or s > G.n:
        raise ParameterError(f"need 2 <= s <= n, got s={s}, n={G.n}")
    found = _find_rainbow(G._colors, G._adj, G.n, s)
    return _witness(G._colors, found) if found is not None else None


def creates_rainbow_through(G: ColoredGraph, u: int, v: int, c: int, s: int) -> bool:
    """Would adding ``uv`` in color ``c`` create a rainbow ``K_s`` using ``uv``?"""
    if s < 2:
        raise ParameterError(f"need s >= 2, got {s}")
    if u == v or not (1 <= u <= G.n and 1 <= v <= G.n):
        raise ParameterError(f"invalid vertex pair ({u},{v})")
    if G.has_edge(u, v):
        raise ParameterError(f"({u},{v}) is already an edge")
    if not 1 <= c <= G.t:
        raise ParameterError(f"color {c} outside 1..{G.t}")
    return _through(G._colors, G._adj, u, v, c, s) is not None


def _first_violation(colors, adj, n: int, t: int, s: int):
    """Core of the saturation predicate on raw arrays.

    Returns ``None`` when saturated, ``("rainbow", verts)`` or
    ``("blocking", (u, v), c)`` otherwise.
    """
    if s <= n:
        found = _find_rainbow(colors, adj, n, s)
        if found is not None:
            return ("rainbow", found)
    for u in range(1, n + 1):
        row = colors[u]
        for v in range(u + 1, n + 1):
            if row[v]:
                continue
            common = adj[u] & adj[v]
            if common.bit_count() < s - 2:
                return ("blocking", (u, v), 1)
            for c in range(1, t + 1):
                if _extend(colors, adj, [u, v], 1 << c, common, s - 2) is None:
                    return ("blocking", (u, v), c)
    return None


def is_rainbow_saturated(G: ColoredGraph, s: int) -> SaturationReport:
    """Check that ``G`` has no rainbow ``K_s`` and every missing edge in every
    color would create one.  The first violation found (rainbow clique, then
    non-edges lexicographically, colors ascending) is reported."""
    if s < 2:
        raise ParameterError(f"need s >= 2, got {s}")
    low = G.t < s * (s - 1) // 2
    res = _first_violation(G._colors, G._adj, G.n, G.t, s)
    if res is None:
        return SaturationReport(s, True, low_color_regime=low)
    if res[0] == "rainbow":
        return SaturationReport(s, False, rainbow_found=_witness(G._colors, res[1]), low_color_regime=low)
    return SaturationReport(s, False, blocking_pair=(res[1], res[2]), low_color_regime=low)


# -- text format -----------------------------------------------------------


def format_graph(G: ColoredGraph) -> str:
    lines = [f"{G.n} {G.t}"]
    lines += [f"{u} {v} {c}" for (u, v), c in G.edges.items()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> ColoredGraph:
    header: tuple[int, int] | None = None
    edges: dict[Pair, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise FormatError(f"line {lineno}: expected integers, got {raw!r}") from None
        if header is None:
            if len(nums) != 2:
                raise FormatError(f"line {lineno}: header must be 'n t'")
            header = (nums[0], nums[1])
            continue
        if len(nums) != 3:
            raise FormatError(f"line {lineno}: edge line must be 'u v c'")
        u, v, c = nums
        n, t = header
        if not (1 <= u < v <= n):
            raise FormatError(f"line {lineno}: need 1 <= u < v <= n, got {u} {v}")
        if not 1 <= c <= t:
            raise FormatError(f"line {lineno}: color {c} outside 1..{t}")
        if (u, v) in edges:
            raise FormatError(f"line {lineno}: duplicate pair ({u},{v})")
        edges[(u, v)] = c
    if header is None:
        raise FormatError("missing 'n t' header")
    try:
        return ColoredGraph(header[0], header[1], edges)
    except ParameterError as exc:
        raise FormatError(str(exc)) from None


def load_graph(path: str | Path) -> ColoredGraph:
    return parse_graph(Path(path).read_text())


def save_graph(G: ColoredGraph, path: str | Path) -> None:
    Path(path).write_text(format_graph(G))


def require_rainbow_free(G: ColoredGraph, s: int) -> None:
    if s <= G.n and _find_rainbow(G._colors, G._adj, G.n, s) is not None:
        raise ContractViolation(f"graph already contains a rainbow K_{s}")
