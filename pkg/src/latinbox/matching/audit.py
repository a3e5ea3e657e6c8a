"""Pseudorandomness audit of regular bipartite graphs.

A k-regular G is c-pseudorandom when every X of rows and Y of columns with
|X|, |Y| >= (eps/10) n span at least (1 - c)|X||Y|k/n edges. The audit reports
the smallest ratio E(X,Y) n / (|X||Y|k) it finds."""
from __future__ import annotations
from dataclasses import dataclass
import math

import numpy as np

from latinbox.matching.BipartiteGraph import BipartiteGraph, NotRegularError
from latinbox.utils import ParameterError, Seed, make_rng

EXACT_LIMIT = 20
DEFAULT_BUDGET = 10_000
CHUNK = 1 << 14

@dataclass
class AuditReport:
    is_violation_found: bool
    worst_pair: tuple[tuple[int, ...], tuple[int, ...]] | None
    worst_ratio: float
    pairs_checked: int
    mode: str
    min_size: int

    def toJson(self) -> dict:
        return {
            "is_violation_found": self.is_violation_found,
            "worst_pair": [list(self.worst_pair[0]), list(self.worst_pair[1])] if self.worst_pair else None,
            "worst_ratio": self.worst_ratio,
            "pairs_checked": self.pairs_checked,
            "mode": self.mode,
            "min_size": self.min_size
        }

def _exact(adj: np.ndarray, k: int, s0: int) -> tuple[float, tuple, int]:
    """For a fixed X, the Y of size s minimising E(X,Y) is made of the s columns
    with the fewest edges into X, so only the row sets need enumerating."""
    n = adj.shape[0]
    weights = adj.astype(np.int64)
    bits = np.arange(n, dtype=np.int64)
    sizes = np.arange(1, n + 1)

    best = math.inf
    best_pair = None
    checked = 0
    column_sets = sum(math.comb(n, s) for s in range(s0, n + 1))

    for start in range(0, 1 << n, CHUNK):
        masks = np.arange(start, min(start + CHUNK, 1 << n), dtype=np.int64)
        rows = ((masks[:, None] >> bits) & 1).astype(np.int64)
        x_sizes = rows.sum(axis=1)
        keep = x_sizes >= s0
        if not keep.any():
            continue
        rows, x_sizes, masks = rows[keep], x_sizes[keep], masks[keep]
        checked += len(masks) * column_sets

        into = rows @ weights
        order = np.argsort(into, axis=1, kind="stable")
        prefix = np.cumsum(np.take_along_axis(into, order, axis=1), axis=1)
        ratios = prefix * n / (x_sizes[:, None] * sizes[None, :] * k)
        ratios[:, :s0 - 1] = np.inf

        flat = int(np.argmin(ratios))
        i, s = divmod(flat, n)
        if ratios[i, s] < best:
            best = float(ratios[i, s])
            x = tuple(int(j) + 1 for j in np.flatnonzero(rows[i]))
            y = tuple(sorted(int(j) + 1 for j in order[i, :s + 1]))
            best_pair = (x, y)

    return best, best_pair, checked

def _random_subsets(rng: np.random.Generator, count: int, n: int, sizes: np.ndarray) -> np.ndarray:
    keys = rng.random((count, n))
    cut = np.sort(keys, axis=1)[np.arange(count), sizes - 1]
    return keys <= cut[:, None]

def _sampled(adj: np.ndarray, k: int, s0: int, budget: int, rng: np.random.Generator) -> tuple[float, tuple, int]:
    n = adj.shape[0]
    weights = adj.astype(np.int64)

    best = math.inf
    best_pair = None
    for start in range(0, budget, CHUNK):
        count = min(CHUNK, budget - start)
        x_sizes = rng.integers(s0, n + 1, size=count)
        y_sizes = rng.integers(s0, n + 1, size=count)
        xs = _random_subsets(rng, count, n, x_sizes)
        ys = _random_subsets(rng, count, n, y_sizes)

        edges = np.einsum("bi,ij,bj->b", xs.astype(np.int64), weights, ys.astype(np.int64))
        ratios = edges * n / (x_sizes * y_sizes * k)

        i = int(np.argmin(ratios))
        if ratios[i] < best:
            best = float(ratios[i])
            best_pair = (tuple(int(j) + 1 for j in np.flatnonzero(xs[i])), tuple(int(j) + 1 for j in np.flatnonzero(ys[i])))

    return best, best_pair, budget

def pseudorandom_audit(G: BipartiteGraph, c: float, eps: float, mode: str = "sampled", budget: int = DEFAULT_BUDGET, seed: Seed = None) -> AuditReport:
    k = G.regularDegree()
    if k is None:
        raise NotRegularError(f"{G!r} is not regular")
    if k == 0:
        raise ParameterError("the audit needs a graph of positive degree")
    if eps <= 0:
        raise ParameterError(f"eps must be positive, got {eps}")

    n = G.n
    s0 = min(n, max(1, math.ceil(eps * n / 10)))

    if mode == "exact":
        if n > EXACT_LIMIT:
            raise ParameterError(f"exact audit is limited to n <= {EXACT_LIMIT}, got {n}")
        ratio, pair, checked = _exact(G.adj, k, s0)
    elif mode == "sampled":
        if budget < 1:
            raise ParameterError(f"budget must be positive, got {budget}")
        ratio, pair, checked = _sampled(G.adj, k, s0, budget, make_rng(seed))
    else:
        raise ParameterError(f"unknown audit mode {mode}")

    return AuditReport(ratio < 1 - c, pair, ratio, checked, mode, s0)
