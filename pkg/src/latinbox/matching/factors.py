"""L-factors (L-regular spanning subgraphs) via max-flow."""
from __future__ import annotations
import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from latinbox.matching.BipartiteGraph import BipartiteGraph
from latinbox.utils import ParameterError

HALL_LIMIT = 6

def _check_L(G: BipartiteGraph, L: int) -> int:
    if int(L) != L or not 0 <= L <= G.n:
        raise ParameterError(f"L must be an integer in [0, {G.n}], got {L}")
    return int(L)

def _flow_network(G: BipartiteGraph, L: int) -> csr_matrix:
    """source 0 -> row i (cap L) -> column j (cap 1 per edge) -> sink 2n+1 (cap L)."""
    n = G.n
    rows, cols = np.nonzero(G.adj)
    source_edges = np.arange(1, n + 1)
    sink_edges = np.arange(n + 1, 2 * n + 1)

    tails = np.concatenate([np.zeros(n, dtype=np.int64), rows + 1, sink_edges])
    heads = np.concatenate([source_edges, cols + n + 1, np.full(n, 2 * n + 1)])
    capacity = np.concatenate([np.full(n, L), np.ones(len(rows), dtype=np.int64), np.full(n, L)]).astype(np.int32)

    size = 2 * n + 2
    return csr_matrix((capacity, (tails, heads)), shape=(size, size))

def l_factor(G: BipartiteGraph, L: int) -> BipartiteGraph | None:
    """An L-regular spanning subgraph of G, or None when none exists."""
    L = _check_L(G, L)
    n = G.n
    if L == 0:
        return BipartiteGraph.empty(n)
    if G.row_deg.min() < L or G.col_deg.min() < L:
        return None

    result = maximum_flow(_flow_network(G, L), 0, 2 * n + 1)
    if result.flow_value != n * L:
        return None

    flow = result.flow.toarray()
    return BipartiteGraph(flow[1:n + 1, n + 1:2 * n + 1] > 0)

def has_L_factor(G: BipartiteGraph, L: int) -> bool:
    return l_factor(G, L) is not None

def hall_condition(G: BipartiteGraph, L: int) -> bool:
    """Brute force over every X of U and Y of V of the condition
    E(U - X, V - Y) >= (n - |X| - |Y|) L, equivalent to having an L-factor."""
    L = _check_L(G, L)
    n = G.n
    if n > HALL_LIMIT:
        raise ParameterError(f"hall_condition enumerates 4^n pairs and is limited to n <= {HALL_LIMIT}")

    adj = G.adj.astype(np.int64)
    for x in range(1 << n):
        rest_rows = np.array([not x >> i & 1 for i in range(n)])
        into = adj[rest_rows].sum(axis=0)
        for y in range(1 << n):
            rest_cols = np.array([not y >> j & 1 for j in range(n)])
            edges = int(into[rest_cols].sum())
            if edges < (n - x.bit_count() - y.bit_count()) * L:
                return False
    return True

def default_delta(p: float, n: int) -> float:
    """max(f^(-1/3), 1/n) with f = p n / ln n."""
    if n < 2:
        raise ParameterError("default_delta needs n >= 2")
    f = p * n / math.log(n)
    if f <= 0:
        raise ParameterError(f"default_delta needs p > 0, got {p}")
    return max(f ** (-1 / 3), 1 / n)
