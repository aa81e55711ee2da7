"""Clique-family capacity codes.

A family of strings over ``[t]`` has the *pair property* for ``s`` when every
two members, for every ``s``-subset ``S`` of ``[t]``, differ at some position
where both letters lie in ``S``.  For ``s = t - 1`` this says that for every
excluded letter ``a`` some position carries two different letters, neither
equal to ``a``; such families are exactly what the triangle construction in
:mod:`rainbowsat.construct` needs.

All rates are in nats (natural logarithm).
"""

from __future__ import annotations

import math
import random
import sys
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import FormatError, ParameterError, ResourceError
from .maxclique import _color_sort, max_clique

Word = tuple[int, ...]

DEFAULT_LIMIT = 20000


@dataclass(frozen=True)
class StringFamily:
    """A set of distinct length-``k`` strings over ``1..t``, kept sorted."""

    t: int
    k: int
    strings: tuple[Word, ...]

    def __post_init__(self) -> None:
        if self.t < 1 or self.k < 0:
            raise ParameterError(f"invalid alphabet/length t={self.t}, k={self.k}")
        words = [tuple(int(a) for a in w) for w in self.strings]
        for w in words:
            if len(w) != self.k:
                raise ParameterError(f"string {w} has length {len(w)}, expected {self.k}")
            if any(not 1 <= a <= self.t for a in w):
                raise ParameterError(f"string {w} has a letter outside 1..{self.t}")
        if len(set(words)) != len(words):
            raise ParameterError("duplicate strings in family")
        object.__setattr__(self, "strings", tuple(sorted(words)))

    @classmethod
    def of(cls, t: int, strings: Iterable[Sequence[int]]) -> "StringFamily":
        words = [tuple(w) for w in strings]
        if not words:
            raise ParameterError("cannot infer length of an empty family; use StringFamily(t, k, ())")
        return cls(t, len(words[0]), tuple(words))

    def __len__(self) -> int:
        return len(self.strings)

    def __iter__(self):
        return iter(self.strings)

    def subset(self, size: int) -> "StringFamily":
        """The first ``size`` members in sorted order."""
        return StringFamily(self.t, self.k, self.strings[:size])


def cyclic_family(t: int) -> StringFamily:
    """All cyclic shifts of ``(1, 2, ..., t)``."""
    base = list(range(1, t + 1))
    return StringFamily(t, t, tuple(tuple(base[i:] + base[:i]) for i in range(t)))


# -- pair property ---------------------------------------------------------


def _independence_number(t: int, pairs: frozenset[tuple[int, int]]) -> int:
    """Largest subset of ``[t]`` containing none of ``pairs``."""
    touched = sorted({a for p in pairs for a in p})
    free = t - len(touched)
    nbr = {a: 0 for a in touched}
    index = {a: i for i, a in enumerate(touched)}
    for a, b in pairs:
        nbr[a] |= 1 << index[b]
        nbr[b] |= 1 << index[a]
    masks = [nbr[a] for a in touched]

    def alpha(P: int) -> int:
        if not P:
            return 0
        low = P & -P
        v = low.bit_length() - 1
        without = alpha(P ^ low)
        with_v = 1 + alpha(P & ~masks[v] & ~low)
        return max(without, with_v)

    return free + alpha((1 << len(touched)) - 1)


@lru_cache(maxsize=None)
def _pairs_good(t: int, s: int, pairs: frozenset[tuple[int, int]]) -> bool:
    # an s-subset realizing none of the pairs is an independent set of size s
    return _independence_number(t, pairs) < s


def _check_params(t: int, s: int) -> None:
    if not 2 <= s <= t:
        raise ParameterError(f"need 2 <= s <= t, got s={s}, t={t}")


def has_pair_property(x: Sequence[int], y: Sequence[int], s: int, t: int) -> bool:
    """True iff every ``s``-subset of ``[t]`` contains ``{x(i), y(i)}`` with
    ``x(i) != y(i)`` for some position ``i``."""
    _check_params(t, s)
    if len(x) != len(y):
        raise ParameterError(f"length mismatch: {len(x)} vs {len(y)}")
    pairs = frozenset((min(a, b), max(a, b)) for a, b in zip(x, y) if a != b)
    return _pairs_good(t, s, pairs)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    violation: tuple[Word, Word] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_family(X: StringFamily, s: int) -> VerifyResult:
    """Check the pair property on every unordered pair; report the first
    failing pair in sorted order."""
    _check_params(X.t, s)
    words = X.strings
    for i, x in enumerate(words):
        for y in words[i + 1:]:
            if not has_pair_property(x, y, s, X.t):
                return VerifyResult(False, (x, y))
    return VerifyResult(True)


# -- constructions ---------------------------------------------------------


def _balanced_prefixes(counts: list[int]) -> Iterable[list[int]]:
    """All arrangements of a multiset given as letter counts, lexicographic."""
    total = sum(counts)
    word: list[int] = []

    def rec():
        if len(word) == total:
            yield list(word)
            return
        for a, c in enumerate(counts):
            if c:
                counts[a] -= 1
                word.append(a + 1)
                yield from rec()
                word.pop()
                counts[a] += 1

    yield from rec()


def balanced_type_family(t: int, s: int, k: int) -> StringFamily:
    """Uniform-type family for the single clique on ``[s]``.

    The first ``s*k/t`` positions hold every arrangement of ``k/t`` copies of
    each letter in ``[s]``; the remaining positions are constant blocks, block
    ``b`` (for ``b = s+1..t``) covering positions ``(b-1)k/t + 1 .. bk/t``.
    """
    _check_params(t, s)
    if k < 1 or k % t:
        raise ParameterError(f"balanced_type_family requires t to divide k (t={t}, k={k})")
    q = k // t
    suffix = [b for b in range(s + 1, t + 1) for _ in range(q)]
    words = tuple(tuple(prefix + suffix) for prefix in _balanced_prefixes([q] * s))
    return StringFamily(t, k, words)


def balanced_type_size(t: int, s: int, k: int) -> int:
    q = k // t
    return math.factorial(s * q) // math.factorial(q) ** s


def concat_product(X: StringFamily, Y: StringFamily) -> StringFamily:
    """All concatenations ``x + y``; sizes multiply and the pair property is
    inherited from whichever factor differs."""
    if X.t != Y.t:
        raise ParameterError(f"alphabet mismatch: {X.t} vs {Y.t}")
    return StringFamily(X.t, X.k + Y.k, tuple(x + y for x in X for y in Y))


def power(X: StringFamily, r: int) -> StringFamily:
    if r < 1:
        raise ParameterError("power needs r >= 1")
    out = X
    for _ in range(r - 1):
        out = concat_product(out, X)
    return out


# -- searches --------------------------------------------------------------


def greedy_search(t: int, s: int, k: int, seed: int = 0, restarts: int = 10) -> StringFamily:
    """Randomized greedy code search.

    Each restart shuffles ``[t]^k`` with ``random.Random(seed)`` (Mersenne
    Twister, one generator shared across restarts in order) and accepts a
    string iff it is compatible with everything accepted so far.  The largest
    family wins; ties go to the earliest restart.
    """
    _check_params(t, s)
    if k < 1:
        raise ParameterError(f"need k >= 1, got {k}")
    rng = random.Random(seed)
    words = list(product(range(1, t + 1), repeat=k))
    best: list[Word] = []
    for _ in range(max(restarts, 1)):
        order = list(words)
        rng.shuffle(order)
        chosen: list[Word] = []
        for w in order:
            if all(has_pair_property(w, c, s, t) for c in chosen):
                chosen.append(w)
        if len(chosen) > len(best):
            best = chosen
    return StringFamily(t, k, tuple(best))


def _pair_bit_table(t: int) -> np.ndarray:
    table = np.zeros((t + 1) * (t + 1), dtype=np.uint64)
    for idx, (a, b) in enumerate(combinations(range(1, t + 1), 2)):
        table[a * (t + 1) + b] = table[b * (t + 1) + a] = np.uint64(1) << np.uint64(idx)
    return table


def _mask_pairs(t: int, mask: int) -> frozenset[tuple[int, int]]:
    return frozenset(p for idx, p in enumerate(combinations(range(1, t + 1), 2)) if mask >> idx & 1)


def compatibility_graph(t: int, s: int, k: int, block: int = 512) -> tuple[list[Word], list[int]]:
    """Strings of ``[t]^k`` in lexicographic order and their bitset adjacency
    under the pair property."""
    _check_params(t, s)
    words = list(product(range(1, t + 1), repeat=k))
    N = len(words)
    if t * (t - 1) // 2 > 64:
        adj = [0] * N
        for i in range(N):
            for j in range(i + 1, N):
                if has_pair_property(words[i], words[j], s, t):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return words, adj
    arr = np.array(words, dtype=np.int64).reshape(N, k)
    table = _pair_bit_table(t)
    adj = []
    for r0 in range(0, N, block):
        rows = arr[r0:r0 + block]
        pm = np.zeros((len(rows), N), dtype=np.uint64)
        for i in range(k):
            pm |= table[rows[:, i, None] * (t + 1) + arr[None, :, i]]
        uniq, inv = np.unique(pm, return_inverse=True)
        good = np.array([_pairs_good(t, s, _mask_pairs(t, int(m))) for m in uniq], dtype=bool)
        ok = good[inv.reshape(pm.shape)]
        packed = np.packbits(ok, axis=1, bitorder="little")
        adj.extend(int.from_bytes(row.tobytes(), "little") for row in packed)
    return words, adj


def orbit_key(word: Sequence[int], t: int) -> tuple[int, ...]:
    """Invariant of a string under position and letter permutations: its
    sorted letter multiplicities.  Two strings share an orbit iff keys match."""
    counts = [0] * t
    for a in word:
        counts[a - 1] += 1
    return tuple(sorted(counts, reverse=True))


def _stabilizer_key(word: Word, classes: list[list[int]], used: frozenset[int], t: int) -> tuple:
    """Complete orbit invariant under the stabilizer of a partial clique.

    That stabilizer permutes positions inside each class (positions whose
    columns agree on every clique member) and letters not used by the clique.
    """
    vec = {a: [0] * len(classes) for a in range(1, t + 1)}
    for ci, cls in enumerate(classes):
        for i in cls:
            vec[word[i]][ci] += 1
    fixed = tuple(tuple(vec[a]) for a in sorted(used))
    free = tuple(sorted(tuple(vec[a]) for a in range(1, t + 1) if a not in used))
    return fixed, free


def _symmetric_clique(
    words: list[Word], adj: list[int], t: int, k: int, node_limit: int | None
) -> tuple[list[int], int]:
    # At a node with partial clique C and candidates P (P invariant under
    # Stab(C)), every clique through some v in P maps into one through any
    # other member of v's orbit, so after branching on v its whole orbit can
    # leave P.  Orbits removed at a node are unions of orbits of every deeper
    # stabilizer, which keeps P invariant all the way down.
    best: list[int] = []
    nodes = 0
    current: list[int] = []

    def expand(P: int, classes: list[list[int]], used: frozenset[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise ResourceError(f"maximum clique search exceeded {node_limit} nodes (best so far {len(best)})")
        order, bounds = _color_sort(P, adj)
        trivial = all(len(c) == 1 for c in classes) and t - len(used) <= 1
        orbit_of: dict[int, tuple] = {}
        members: dict[tuple, int] = {}
        if not trivial:
            for v in order:
                key = _stabilizer_key(words[v], classes, used, t)
                orbit_of[v] = key
                members[key] = members.get(key, 0) | (1 << v)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + bounds[idx] <= len(best):
                return
            v = order[idx]
            if not P >> v & 1:
                continue
            current.append(v)
            newP = P & adj[v]
            if newP:
                w = words[v]
                split = []
                for cls in classes:
                    groups: dict[int, list[int]] = {}
                    for i in cls:
                        groups.setdefault(w[i], []).append(i)
                    split.extend(groups.values())
                expand(newP, split, used | frozenset(w))
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            P &= ~(members[orbit_of[v]] if not trivial else 1 << v)

    if words:
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, len(words) + 100))
        try:
            expand((1 << len(words)) - 1, [list(range(k))], frozenset())
        finally:
            sys.setrecursionlimit(limit)
    return sorted(best), nodes


@dataclass(frozen=True)
class ExactResult:
    size: int
    family: StringFamily
    nodes: int
    method: str


def exact_max_family(
    t: int,
    s: int,
    k: int,
    limit: int = DEFAULT_LIMIT,
    node_limit: int | None = None,
    symmetry: bool = False,
) -> ExactResult:
    """Largest family with the pair property, as a maximum clique of the
    compatibility graph on all of ``[t]^k``.

    With ``symmetry=True`` branches are pruned by orbits of the group that
    permutes positions and letters (restricted at each node to the stabilizer
    of the partial clique).  This is much faster but returns a different,
    equally large, witness than the plain lexicographic search.
    """
    _check_params(t, s)
    if k < 1:
        raise ParameterError(f"need k >= 1, got {k}")
    N = t**k
    if N > limit:
        raise ResourceError(f"t^k = {t}^{k} = {N} exceeds the limit {limit}")
    if s == t:
        # any two distinct strings differ at a position, and S = [t] holds both letters
        words = tuple(product(range(1, t + 1), repeat=k))
        return ExactResult(N, StringFamily(t, k, words), 0, "complete")
    if s <= t - k:
        # k positions realize at most k pairs; dropping one letter of each
        # leaves t - k >= s letters containing none of them
        return ExactResult(1, StringFamily(t, k, ((1,) * k,)), 0, "no-compatible-pair")
    words, adj = compatibility_graph(t, s, k)
    if symmetry:
        clique, nodes = _symmetric_clique(words, adj, t, k, node_limit)
        fam = StringFamily(t, k, tuple(words[i] for i in clique))
        return ExactResult(len(clique), fam, nodes, "branch-and-bound/orbits")
    res = max_clique(adj, node_limit=node_limit)
    fam = StringFamily(t, k, tuple(words[i] for i in res.clique))
    return ExactResult(res.size, fam, res.nodes, "branch-and-bound")


# -- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class RateReport:
    """Rates in nats per symbol."""

    t: int
    s: int
    k: int
    size: int
    rate: float
    clique_bound: float
    family_target: float
    jensen_ok: bool
    log_base: str = "e"

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "s": self.s,
            "k": self.k,
            "size": self.size,
            "rate": self.rate,
            "clique_bound": self.clique_bound,
            "family_target": self.family_target,
            "jensen_ok": self.jensen_ok,
            "log_base": self.log_base,
        }


def jensen_holds(m: int, t: int, s: int, k: int) -> bool:
    """``m <= s^(s k / t)`` compared exactly as ``m^t <= s^(s k)``."""
    return m**t <= s ** (s * k)


def rate_report(X: StringFamily, s: int) -> RateReport:
    _check_params(X.t, s)
    if len(X) == 0:
        raise ParameterError("rate of an empty family is undefined")
    if X.k < 1:
        raise ParameterError("rate needs k >= 1")
    t, k, m = X.t, X.k, len(X)
    target = (t - 1) / t * math.log(t - 1) if t >= 2 else 0.0
    return RateReport(
        t=t,
        s=s,
        k=k,
        size=m,
        rate=math.log(m) / k,
        clique_bound=s / t * math.log(s),
        family_target=target,
        jensen_ok=jensen_holds(m, t, s, k),
    )


# -- text format -----------------------------------------------------------


def format_family(X: StringFamily) -> str:
    lines = [f"{X.t} {X.k}"] + [" ".join(map(str, w)) for w in X]
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> StringFamily:
    header = None
    words: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise FormatError(f"line {lineno}: expected integers, got {raw!r}") from None
        if header is None:
            if len(nums) != 2:
                raise FormatError(f"line {lineno}: header must be 't k'")
            header = nums
        else:
            words.append(nums)
    if header is None:
        raise FormatError("missing 't k' header")
    try:
        return StringFamily(header[0], header[1], tuple(words))
    except ParameterError as exc:
        raise FormatError(str(exc)) from None


def load_family(path: str | Path) -> StringFamily:
    return parse_family(Path(path).read_text())


def save_family(X: StringFamily, path: str | Path) -> None:
    Path(path).write_text(format_family(X))
