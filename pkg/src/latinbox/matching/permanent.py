"""Exact permanents of 0-1 matrices and the counting bounds used by the plane finder."""
from __future__ import annotations
import itertools
import math

import numpy as np

from latinbox.matching.BipartiteGraph import BipartiteGraph
from latinbox.utils import LatinBoxError, ParameterError

DEFAULT_PERMANENT_CAP = 24
NAIVE_LIMIT = 9

class PermanentCapExceeded(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

def check_cap(n: int, cap: int):
    if n > cap:
        raise PermanentCapExceeded(f"exact permanent requested for n={n}, above the cap {cap}")

def permanent(G: BipartiteGraph, cap: int = DEFAULT_PERMANENT_CAP) -> int:
    """Number of perfect matchings of G, by Ryser's formula

        per(A) = (-1)^n sum over column sets S of (-1)^|S| prod_i sum_{j in S} a_ij

    walking the column sets in Gray code order so each step adds or removes one
    column from the row sums. Exact integer arithmetic, O(2^n n)."""
    n = G.n
    check_cap(n, cap)
    if n == 0:
        return 1
    if not G.row_deg.all() or not G.col_deg.all():
        return 0

    columns = [G.adj[:, j].astype(np.int64).tolist() for j in range(n)]
    row_sums = [0] * n
    gray = 0
    size = 0
    total = 0

    for i in range(1, 1 << n):
        j = (i & -i).bit_length() - 1
        gray ^= 1 << j
        column = columns[j]

        if gray >> j & 1:
            size += 1
            row_sums = [s + a for s, a in zip(row_sums, column)]
        else:
            size -= 1
            row_sums = [s - a for s, a in zip(row_sums, column)]

        term = math.prod(row_sums)
        if term:
            total += -term if size & 1 else term

    return -total if n & 1 else total

def permanent_naive(G: BipartiteGraph) -> int:
    """Sum over all n! permutations."""
    if G.n > NAIVE_LIMIT:
        raise PermanentCapExceeded(f"naive permanent is limited to n <= {NAIVE_LIMIT}")
    adj = G.adj
    return sum(1 for perm in itertools.permutations(range(G.n)) if all(adj[i, perm[i]] for i in range(G.n)))

def pm_count_lower_bound(n: int, L: float) -> float:
    """ln of L^n n! / n^n, the minimum number of perfect matchings of an
    L-regular bipartite graph on n + n vertices."""
    if n < 0:
        raise ParameterError(f"n must be non-negative, got {n}")
    if L < 0:
        raise ParameterError(f"L must be non-negative, got {L}")
    if n == 0:
        # the empty graph has exactly one perfect matching
        return 0.0
    if L == 0:
        return -math.inf
    return n * math.log(L) + math.lgamma(n + 1) - n * math.log(n)
