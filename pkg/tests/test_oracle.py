import itertools
import math

import pytest

from rainbowsat.codes import cyclic_family, power
from rainbowsat.construct import build_bipartite, maximal_extension
from rainbowsat.errors import ContractViolation, ParameterError, ResourceError
from rainbowsat.graph import ColoredGraph, is_rainbow_saturated
from rainbowsat.oracle import bound_formulas, exact_rsat, lower_bound_witness_check

from naive import rsat_bruteforce

# (minimum, number of labelled colored graphs attaining it), s = 3, t = 3,
# from naive.rsat_bruteforce over all 4^(n choose 2) colorings
RSAT_333 = {1: (0, 1), 2: (1, 3), 3: (3, 21), 4: (6, 279)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_exact_rsat_small(n):
    res = exact_rsat(n, 3, 3, all_witnesses=True)
    assert (res.minimum, res.count) == RSAT_333[n]
    assert res.witness.edge_count == res.minimum
    assert all(is_rainbow_saturated(W, 3).saturated for W in res.witnesses)


def test_exact_rsat_matches_bruteforce_other_parameters():
    for n, s, t in [(3, 3, 2), (3, 3, 4), (4, 3, 4), (4, 4, 6), (3, 2, 2)]:
        res = exact_rsat(n, s, t, all_witnesses=True)
        assert (res.minimum, res.count) == rsat_bruteforce(n, s, t)


def test_exact_rsat_examples():
    assert exact_rsat(2, 3, 3).minimum == 1
    res = exact_rsat(3, 3, 3)
    assert res.minimum == 3
    # first coloring in lexicographic order is monochromatic
    assert set(res.witness.edges.values()) == {1}


def test_exact_rsat_upper_bound():
    for n in range(1, 5):
        assert exact_rsat(n, 3, 3).minimum <= n * (n - 1) // 2


def test_exact_rsat_threads_do_not_change_result():
    a = exact_rsat(4, 3, 3, all_witnesses=True)
    b = exact_rsat(4, 3, 3, all_witnesses=True, threads=3)
    assert a.witness == b.witness and a.count == b.count and a.witnesses == b.witnesses


def test_exact_rsat_budget():
    with pytest.raises(ResourceError, match="edge level"):
        exact_rsat(4, 3, 3, budget=50)


def test_exact_rsat_budget_from_environment(monkeypatch):
    monkeypatch.setenv("RAINBOW_SAT_BUDGET", "20")
    with pytest.raises(ResourceError):
        exact_rsat(4, 3, 3)


def _witnesses(n):
    return exact_rsat(n, 3, 3, all_witnesses=True).witnesses


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lower_bound_check_on_all_minimum_witnesses(n):
    for H in _witnesses(n):
        for d in range(1, n + 1):
            rep = lower_bound_witness_check(H, 3, d)
            assert rep.passed, rep.to_json()


def test_lower_bound_rejects_unsaturated():
    H = ColoredGraph(5, 3, {(1, 2): 1, (1, 3): 2, (1, 4): 1, (2, 5): 3})
    with pytest.raises(ContractViolation):
        lower_bound_witness_check(H, 3, 2)


def test_lower_bound_check_on_n5_witnesses():
    res = exact_rsat(5, 3, 3, all_witnesses=True)
    assert res.minimum == 8
    for H in res.witnesses:
        for d in range(1, 6):
            assert lower_bound_witness_check(H, 3, d).passed


def test_lower_bound_on_construction_identifies_code():
    X = power(cyclic_family(3), 2)
    H = maximal_extension(build_bipartite(X), 3)
    m = len(X)
    rep = lower_bound_witness_check(H, 3, m)
    assert rep.A == tuple(range(1, X.k + 1))
    assert rep.B == tuple(range(X.k + 1, X.k + m + 1))
    inverse = {new: old for old, new in rep.relabeling.items()}
    for j, word in enumerate(X.strings):
        assert tuple(inverse[c] for c in rep.encodings[X.k + 1 + j]) == word
    assert len(rep.qualifying) == m * (m - 1) // 2
    assert rep.passed


def test_lower_bound_vacuous_when_b_empty():
    K4 = ColoredGraph(4, 3, {p: 1 for p in itertools.combinations(range(1, 5), 2)})
    rep = lower_bound_witness_check(K4, 3, 1)
    assert rep.B == () and rep.qualifying == {} and rep.passed


def test_lower_bound_invariants():
    for H in _witnesses(4)[:40]:
        for d in (2, 3):
            rep = lower_bound_witness_check(H, 3, d)
            assert set(rep.A) | set(rep.B) == set(range(1, 5)) and not set(rep.A) & set(rep.B)
            assert all(H.degree(v) >= d for v in rep.A) and all(H.degree(v) < d for v in rep.B)
            for v, word in rep.encodings.items():
                assert len(word) == len(rep.A)
                for a, x in zip(rep.A, word):
                    assert (x == 4) == (not H.has_edge(a, v))


def test_relabeling_invariance():
    perms = list(itertools.permutations(range(1, 4)))
    for H in _witnesses(4)[::7]:
        for d in (1, 2, 3):
            base = lower_bound_witness_check(H, 3, d)
            for p in perms:
                H2 = H.recolored(dict(zip(range(1, 4), p)))
                rep = lower_bound_witness_check(H2, 3, d)
                assert rep.qualifying == base.qualifying


def test_lower_bound_parameter_errors():
    K3 = ColoredGraph(3, 3, {(1, 2): 1, (1, 3): 1, (2, 3): 1})
    with pytest.raises(ParameterError):
        lower_bound_witness_check(K3, 2, 1)
    with pytest.raises(ParameterError):
        lower_bound_witness_check(K3, 3, 0)


def test_bound_formulas():
    rep = bound_formulas(1000, 3, 3)
    assert rep.coefficient == pytest.approx(3 / (2 * math.log(2)), rel=1e-12)
    assert rep.coefficient == pytest.approx(2.164042561, abs=1e-9)
    assert rep.value == pytest.approx(14948.676, abs=1e-3)
    assert round(rep.value) == 14949
    assert rep.trivial_upper == 1000 * 999 // 2
    assert bound_formulas(1, 3, 3).value == 0
    assert bound_formulas(10, 4, 6).coefficient == pytest.approx(6 / (4 * math.log(4)))


def test_bound_formulas_hypothesis():
    with pytest.raises(ParameterError, match="s\\(s-1\\)/2"):
        bound_formulas(10, 3, 2)
    with pytest.raises(ParameterError):
        bound_formulas(10, 4, 5)
