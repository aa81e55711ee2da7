import math
import random
from itertools import combinations

import pytest

from rainbowsat.codes import StringFamily, cyclic_family, greedy_search, power, verify_family
from rainbowsat.construct import build_bipartite, construction_report, maximal_extension
from rainbowsat.errors import ContractViolation, ParameterError, ResourceError
from rainbowsat.graph import ColoredGraph, creates_rainbow_through, find_rainbow_clique, is_rainbow_saturated

from naive import saturated

CYCLIC3 = cyclic_family(3)


def test_build_bipartite_cyclic():
    G = build_bipartite(CYCLIC3)
    assert G.n == 6 and G.edge_count == 9
    assert G.color(1, 4) == 1
    assert G.color(3, 5) == 1
    assert find_rainbow_clique(G, 3) is None
    for u, v in combinations(range(1, 4), 2):
        assert not G.has_edge(u, v)
    for u, v in combinations(range(4, 7), 2):
        assert not G.has_edge(u, v)


def test_build_bipartite_singleton_is_star():
    G = build_bipartite(StringFamily.of(3, [(1, 2, 3)]))
    assert G.n == 4 and G.edge_count == 3 and G.degree(4) == 3


def test_build_bipartite_empty():
    with pytest.raises(ParameterError):
        build_bipartite(StringFamily(3, 3, ()))


def test_build_bipartite_warns_on_unverified_code():
    with pytest.warns(UserWarning):
        build_bipartite(StringFamily.of(3, [(1, 2, 1), (2, 1, 2)]))


def test_every_bb_pair_and_color_closes_triangle():
    G = build_bipartite(CYCLIC3)
    for v, w in combinations(range(4, 7), 2):
        for c in range(1, 4):
            assert creates_rainbow_through(G, v, w, c, 3)


def test_extension_of_cyclic_construction():
    G0 = build_bipartite(CYCLIC3)
    G = maximal_extension(G0, 3)
    assert G0.is_subgraph_of(G)
    assert is_rainbow_saturated(G, 3).saturated
    assert G.edge_count <= 3 * 3 + 3
    assert all(u <= 3 for (u, v) in G.edges if (u, v) not in G0.edges)


def test_extension_fixpoint():
    K3 = ColoredGraph(3, 3, {(1, 2): 1, (1, 3): 1, (2, 3): 1})
    assert maximal_extension(K3, 3) == K3


def test_extension_from_empty():
    G = maximal_extension(ColoredGraph.empty(3, 3), 3)
    assert is_rainbow_saturated(G, 3).saturated
    assert saturated(3, 3, dict(G.edges), 3)


def test_extension_rejects_rainbow_input():
    with pytest.raises(ContractViolation):
        maximal_extension(ColoredGraph(3, 3, {(1, 2): 1, (1, 3): 2, (2, 3): 3}), 3)


@pytest.mark.parametrize("seed", range(25))
def test_extension_of_random_rainbow_free_graphs(seed):
    rng = random.Random(seed)
    n, t = rng.randint(3, 7), rng.randint(3, 6)
    s = rng.choice([3, 3, 4])
    edges = {}
    for u, v in combinations(range(1, n + 1), 2):
        if rng.random() < 0.4:
            edges[(u, v)] = rng.randint(1, t)
    G = ColoredGraph(n, t, edges)
    if s <= n and find_rainbow_clique(G, s) is not None:
        with pytest.raises(ContractViolation):
            maximal_extension(G, s)
        return
    H = maximal_extension(G, s)
    assert G.is_subgraph_of(H)
    assert is_rainbow_saturated(H, s).saturated
    assert maximal_extension(H, s) == H


@pytest.mark.parametrize(
    "family",
    [CYCLIC3, power(CYCLIC3, 2), greedy_search(4, 3, 3, seed=0, restarts=10), greedy_search(3, 2, 5, seed=2, restarts=10)],
    ids=["cyclic", "cyclic^2", "greedy-4-3-3", "greedy-3-2-5"],
)
def test_construction_bounds_and_structure(family):
    assert verify_family(family, family.t - 1)
    k, m = family.k, len(family)
    G = maximal_extension(build_bipartite(family), 3)
    assert is_rainbow_saturated(G, 3).saturated
    assert G.edge_count <= k * m + k * (k - 1) // 2
    # no B-B edge is ever added
    assert all(u <= k for (u, v) in G.edges)


def test_construction_report_with_cyclic():
    rep = construction_report(3, 6, family=CYCLIC3)
    assert (rep.k, rep.m, rep.n) == (3, 3, 6)
    assert rep.edges <= 12 and rep.edge_bound == 12
    assert rep.coefficient == pytest.approx(3 / (2 * math.log(2)))
    assert rep.asymptotic_value == pytest.approx(3 / (2 * math.log(2)) * 6 * math.log(6))


def test_construction_report_singleton():
    fam = StringFamily.of(3, [(1, 2, 3)])
    rep = construction_report(3, 4, family=fam)
    assert rep.edge_bound == 3 * 1 + 3


def test_construction_report_search():
    rep = construction_report(3, 12)
    assert rep.k + rep.m == 12
    assert is_rainbow_saturated(rep.graph, 3).saturated
    assert rep.edges <= rep.edge_bound


def test_construction_report_rejects_two_colors():
    with pytest.raises(ParameterError, match="t >= 3"):
        construction_report(2, 6)


def test_construction_report_size_mismatch():
    with pytest.raises(ParameterError):
        construction_report(3, 7, family=CYCLIC3)


def test_construction_report_gap():
    with pytest.raises(ResourceError):
        construction_report(3, 40, limit=10)
