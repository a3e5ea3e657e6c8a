"""Random subgraphs and perfect matching samplers."""
from __future__ import annotations

import numpy as np

from latinbox.matching.BipartiteGraph import BipartiteGraph
from latinbox.matching.Matching import Matching
from latinbox.matching.matchings import max_matching
from latinbox.matching.permanent import DEFAULT_PERMANENT_CAP, check_cap
from latinbox.utils import LatinBoxError, Seed, make_rng, check_probability

# above this the minor table no longer fits in int64 (n! > 2^63)
INT64_LIMIT = 20

class NoPerfectMatching(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

def random_subgraph(G: BipartiteGraph, p: float, seed: Seed = None) -> BipartiteGraph:
    """Keeps every edge independently with probability p."""
    p = check_probability(p)
    rng = make_rng(seed)
    return BipartiteGraph(G.adj & (rng.random((G.n, G.n)) < p))

def _popcounts(size: int, n: int) -> np.ndarray:
    masks = np.arange(size, dtype=np.int64)
    counts = np.zeros(size, dtype=np.int8)
    for j in range(n):
        counts += ((masks >> j) & 1).astype(np.int8)
    return counts

def minor_permanents(adj: np.ndarray) -> np.ndarray:
    """table[S] = permanent of the minor on rows 0..|S|-1 and the column set S.

    Built layer by layer on |S| using the expansion along the last row:
    table[S] = sum over j in S adjacent to row |S|-1 of table[S - j]."""
    n = adj.shape[0]
    size = 1 << n
    table = np.zeros(size, dtype=np.int64 if n <= INT64_LIMIT else object)
    table[0] = 1

    layers = _popcounts(size, n)
    order = np.argsort(layers, kind="stable")
    bounds = np.searchsorted(layers[order], np.arange(n + 2))

    for k in range(1, n + 1):
        layer = order[bounds[k]:bounds[k + 1]]
        for j in np.flatnonzero(adj[k - 1]):
            bit = 1 << int(j)
            chosen = layer[(layer & bit) != 0]
            table[chosen] += table[chosen ^ bit]

    return table

def _uniform_below(rng: np.random.Generator, total: int) -> int:
    """Exactly uniform integer in [0, total) for arbitrarily large totals."""
    if total < 1 << 62:
        return int(rng.integers(total))

    bits = total.bit_length()
    while True:
        value = int.from_bytes(rng.bytes((bits + 7) // 8), "little") & ((1 << bits) - 1)
        if value < total:
            return value

class UniformMatchingSampler:
    """Draws exactly uniform perfect matchings of a fixed graph. The rows are
    assigned from the last to the first; row i takes column j with probability
    per(minor without row i, column j) / per(current minor)."""
    def __init__(self, G: BipartiteGraph, cap: int = DEFAULT_PERMANENT_CAP):
        check_cap(G.n, cap)
        self.graph = G
        self._table = minor_permanents(G.adj)
        self._neighbours = [np.flatnonzero(G.adj[i]).tolist() for i in range(G.n)]

        self.count: int = int(self._table[-1])
        if self.count == 0:
            raise NoPerfectMatching(f"{G!r} has no perfect matching")

    def sample(self, seed: Seed = None) -> Matching:
        rng = make_rng(seed)
        n = self.graph.n
        mask = (1 << n) - 1
        pairing = [-1] * n

        for i in range(n - 1, -1, -1):
            choices = []
            weights = []
            for j in self._neighbours[i]:
                if mask >> j & 1:
                    weight = int(self._table[mask ^ (1 << j)])
                    if weight:
                        choices.append(j)
                        weights.append(weight)

            target = _uniform_below(rng, sum(weights))
            for j, weight in zip(choices, weights):
                if target < weight:
                    break
                target -= weight

            pairing[i] = j
            mask ^= 1 << j

        return Matching(n, pairing)

    def sampleMany(self, count: int, seed: Seed = None) -> list[Matching]:
        rng = make_rng(seed)
        return [self.sample(rng) for _ in range(count)]

def sample_fast_pm(G: BipartiteGraph, seed: Seed = None) -> Matching:
    """Hopcroft-Karp on a uniformly relabelled copy of G. Fast, but not uniform
    over the perfect matchings."""
    rng = make_rng(seed)
    row_perm = rng.permutation(G.n)
    col_perm = rng.permutation(G.n)

    found = max_matching(G.permuted(row_perm, col_perm))
    if not found.isPerfect():
        raise NoPerfectMatching(f"{G!r} has no perfect matching")

    pairing = [-1] * G.n
    for i, j in enumerate(found.pairing):
        pairing[row_perm[i]] = int(col_perm[j])
    return Matching(G.n, pairing)

def sample_uniform_pm(G: BipartiteGraph, seed: Seed = None, cap: int = DEFAULT_PERMANENT_CAP, allow_fast: bool = False) -> Matching:
    """Uniform perfect matching of G. Above the cap, allow_fast falls back to
    sample_fast_pm instead of raising."""
    if G.n > cap and allow_fast:
        return sample_fast_pm(G, seed)
    return UniformMatchingSampler(G, cap).sample(seed)
