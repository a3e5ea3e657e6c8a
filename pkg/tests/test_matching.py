import itertools
import math
from collections import Counter

import numpy as np
import pytest
from scipy.stats import chisquare

from latinbox.arrays import FormatError
from latinbox.matching import (BipartiteGraph, Matching, NoPerfectMatching, NotRegularError, PermanentCapExceeded,
                               UniformMatchingSampler, default_delta, hall_condition, has_L_factor, l_factor, max_matching,
                               permanent, permanent_naive, pm_count_lower_bound, pseudorandom_audit, random_subgraph,
                               sample_fast_pm, sample_uniform_pm)
from latinbox.utils import ParameterError

from conftest import random_regular

def two_regular_graphs(n: int):
    """Every 2-regular bipartite graph on n + n vertices."""
    for bits in itertools.product((0, 1), repeat=n * n):
        adj = np.array(bits, dtype=bool).reshape(n, n)
        if np.all(adj.sum(axis=0) == 2) and np.all(adj.sum(axis=1) == 2):
            yield BipartiteGraph(adj)

def test_max_matching():
    assert max_matching(BipartiteGraph.identity(5)).pairs() == [(i, i) for i in range(1, 6)]
    assert max_matching(BipartiteGraph.empty(4)).size == 0

    adj = np.ones((3, 3), dtype=bool)
    adj[0, 0] = False
    G = BipartiteGraph(adj)
    found = max_matching(G)
    assert found.isPerfect()
    assert found.isSupportedBy(G)

def test_max_matching_size_is_maximum(rng):
    for _ in range(30):
        G = random_subgraph(BipartiteGraph.complete(5), 0.3, rng)
        best = max(sum(1 for i in range(5) if G.adj[i, perm[i]]) for perm in itertools.permutations(range(5)))
        assert max_matching(G).size == best
        assert max_matching(G).isSupportedBy(G)

def test_max_matching_ignores_relabelling(rng):
    for _ in range(20):
        G = random_subgraph(BipartiteGraph.complete(7), 0.25, rng)
        relabelled = G.permuted(rng.permutation(7), rng.permutation(7))
        assert max_matching(relabelled).size == max_matching(G).size

def test_permanent_small_cases():
    assert permanent(BipartiteGraph.identity(6)) == 1
    for n in range(1, 8):
        assert permanent(BipartiteGraph.complete(n)) == math.factorial(n)
    assert permanent(BipartiteGraph.empty(3)) == 0

def test_permanent_matches_naive(rng):
    for n in range(1, 8):
        for _ in range(5):
            G = random_subgraph(BipartiteGraph.complete(n), 0.6, rng)
            assert permanent(G) == permanent_naive(G)

def test_permanent_cap():
    with pytest.raises(PermanentCapExceeded):
        permanent(BipartiteGraph.complete(6), cap=5)

def test_uniform_pm_identity():
    G = BipartiteGraph.identity(4)
    for seed in range(10):
        assert sample_uniform_pm(G, seed) == Matching.fromPairs(4, [(i, i) for i in range(1, 5)])

@pytest.mark.parametrize("n", [2, 3])
def test_uniform_pm_is_uniform(n):
    draws = UniformMatchingSampler(BipartiteGraph.complete(n)).sampleMany(10_000, seed=7)
    counts = Counter(m.pairing for m in draws)
    assert len(counts) == math.factorial(n)

    p = 1 / math.factorial(n)
    sigma = math.sqrt(10_000 * p * (1 - p))
    for count in counts.values():
        assert abs(count - 10_000 * p) <= 3 * sigma

def test_uniform_pm_on_sparse_graph():
    adj = np.array([[1, 1, 0, 0], [1, 1, 1, 0], [0, 1, 1, 1], [0, 0, 1, 1]], dtype=bool)
    G = BipartiteGraph(adj)
    draws = UniformMatchingSampler(G).sampleMany(5000, seed=3)
    counts = Counter(m.pairing for m in draws)
    assert len(counts) == permanent(G)
    assert all(m.isPerfect() and m.isSupportedBy(G) for m in draws)
    assert chisquare(list(counts.values())).pvalue > 0.001

def test_uniform_pm_on_random_graphs(rng):
    draws = 100_000
    for _ in range(10):
        n = int(rng.integers(2, 6))
        G = random_subgraph(BipartiteGraph.complete(n), 0.6, rng)
        while permanent(G) < 2:
            G = random_subgraph(BipartiteGraph.complete(n), 0.6, rng)

        counts = Counter(m.pairing for m in UniformMatchingSampler(G).sampleMany(draws, rng))
        assert len(counts) == permanent(G)
        assert chisquare(list(counts.values())).pvalue > 0.001

def test_no_perfect_matching():
    adj = np.ones((3, 3), dtype=bool)
    adj[:, 0] = False
    with pytest.raises(NoPerfectMatching):
        sample_uniform_pm(BipartiteGraph(adj), seed=1)
    with pytest.raises(NoPerfectMatching):
        sample_fast_pm(BipartiteGraph(adj), seed=1)

def test_fast_pm_is_perfect(rng):
    G = random_subgraph(BipartiteGraph.complete(30), 0.5, rng)
    found = sample_fast_pm(G, rng)
    assert found.isPerfect()
    assert found.isSupportedBy(G)

def test_uniform_pm_falls_back_above_cap(rng):
    G = BipartiteGraph.complete(6)
    with pytest.raises(PermanentCapExceeded):
        sample_uniform_pm(G, rng, cap=4)
    assert sample_uniform_pm(G, rng, cap=4, allow_fast=True).isPerfect()

def test_random_subgraph(rng):
    G = BipartiteGraph.complete(4)
    assert random_subgraph(G, 1, rng) == G
    assert random_subgraph(G, 0, rng) == BipartiteGraph.empty(4)

    trials = 10_000
    edges = np.array([random_subgraph(G, 0.5, rng).edgeCount for _ in range(trials)])
    assert abs(edges.mean() - 8) <= 3 * math.sqrt(16 * 0.25) / math.sqrt(trials)

def test_l_factor_complete():
    for n in range(1, 6):
        for L in range(n + 1):
            factor = l_factor(BipartiteGraph.complete(n), L)
            assert factor is not None
            assert factor.isRegular(L)

def test_l_factor_degree_obstruction():
    adj = np.ones((4, 4), dtype=bool)
    adj[2, 1:] = False
    assert not has_L_factor(BipartiteGraph(adj), 2)

def test_l_factor_six_cycle():
    cycle = BipartiteGraph.fromEdges(3, [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 1)])
    assert has_L_factor(cycle, 2)
    assert has_L_factor(cycle, 1)
    assert not has_L_factor(cycle, 3)

def test_l_factor_agrees_with_hall(rng):
    for n in range(1, 5):
        for _ in range(8):
            G = random_subgraph(BipartiteGraph.complete(n), 0.6, rng)
            for L in range(n + 1):
                assert has_L_factor(G, L) == hall_condition(G, L)

def test_l_factor_witness_on_random_graphs(rng):
    for _ in range(20):
        G = random_subgraph(BipartiteGraph.complete(6), 0.7, rng)
        for L in range(7):
            factor = l_factor(G, L)
            if factor is None:
                continue
            assert factor.isRegular(L)
            assert not np.any(factor.adj & ~G.adj)

def test_l_factor_is_downward_monotone(rng):
    for _ in range(20):
        G = random_subgraph(BipartiteGraph.complete(6), 0.7, rng)
        found = [has_L_factor(G, L) for L in range(7)]
        assert found[0]
        for L in range(1, 7):
            assert found[L - 1] or not found[L]

def test_l_factor_bad_L():
    with pytest.raises(ParameterError):
        has_L_factor(BipartiteGraph.complete(3), 4)

def test_audit_complete_graph():
    report = pseudorandom_audit(BipartiteGraph.complete(6), c=0, eps=1, mode="exact")
    assert not report.is_violation_found
    assert report.worst_ratio == pytest.approx(1.0)

def test_audit_finds_disconnected_blocks():
    adj = np.zeros((6, 6), dtype=bool)
    adj[:3, :3] = True
    adj[3:, 3:] = True
    G = BipartiteGraph(adj)

    report = pseudorandom_audit(G, c=0.5, eps=1, mode="exact")
    assert report.is_violation_found
    assert report.worst_ratio == 0
    X, Y = report.worst_pair
    assert not any(adj[x - 1, y - 1] for x in X for y in Y)

    sampled = pseudorandom_audit(G, c=0.5, eps=1, mode="sampled", budget=2000, seed=4)
    assert sampled.is_violation_found
    assert sampled.pairs_checked <= 2000

def test_sampled_audit_never_beats_exact(rng):
    G = random_regular(10, 5, rng)
    assert G.isRegular(5)
    exact = pseudorandom_audit(G, c=0.5, eps=1, mode="exact")
    for seed in range(5):
        sampled = pseudorandom_audit(G, c=0.5, eps=1, mode="sampled", budget=5000, seed=seed)
        assert sampled.worst_ratio >= exact.worst_ratio - 1e-12
        assert sampled.min_size == exact.min_size == 1

def test_audit_needs_a_regular_graph():
    adj = np.ones((3, 3), dtype=bool)
    adj[0, 0] = False
    with pytest.raises(NotRegularError):
        pseudorandom_audit(BipartiteGraph(adj), c=0.1, eps=0.5)

def test_pm_count_lower_bound():
    for n in range(1, 8):
        assert pm_count_lower_bound(n, n) == pytest.approx(math.lgamma(n + 1))
    assert pm_count_lower_bound(3, 2) == pytest.approx(math.log(16 / 9))
    assert pm_count_lower_bound(3, 0) == -math.inf
    assert pm_count_lower_bound(0, 0) == 0.0
    assert pm_count_lower_bound(0, 3) == 0.0
    with pytest.raises(ParameterError):
        pm_count_lower_bound(-1, 2)

def test_pm_count_lower_bound_holds_for_two_regular_graphs():
    graphs = list(two_regular_graphs(3))
    assert len(graphs) == 6
    for G in graphs:
        assert math.log(permanent(G)) >= pm_count_lower_bound(3, 2)
        assert permanent(G) >= 2

def test_default_delta():
    assert default_delta(1.0, 10) == pytest.approx(max((10 / math.log(10)) ** (-1 / 3), 0.1))
    with pytest.raises(ParameterError):
        default_delta(0.0, 10)
    with pytest.raises(ParameterError):
        default_delta(0.5, 1)

def test_graph_formats():
    G = BipartiteGraph.fromEdges(3, [(1, 2), (3, 1)])
    assert BipartiteGraph.fromJson(G.toJson()) == G
    assert BipartiteGraph.fromBytes(G.toBytes()) == G
    with pytest.raises(FormatError):
        BipartiteGraph.fromBytes(b"nope")
