import logging

import numpy as np
import pytest

from latinbox.arrays import Array3D
from latinbox.matching import BipartiteGraph

@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))

@pytest.fixture
def logger():
    return logging.getLogger("latinbox.tests")

@pytest.fixture
def clean_env(monkeypatch):
    """Removes every LATINBOX_ variable so config tests see only what they set."""
    import os
    for var in list(os.environ):
        if var.startswith("LATINBOX_"):
            monkeypatch.delenv(var)
    return monkeypatch

def all_ones(m, n, k) -> Array3D:
    return Array3D.full(m, n, k)

def random_regular(n: int, k: int, rng: np.random.Generator, switches: int = 400):
    """k-regular bipartite graph: a shuffled circulant mixed by degree preserving edge switches."""
    adj = np.zeros((n, n), dtype=bool)
    for s in range(k):
        adj[np.arange(n), (np.arange(n) + s) % n] = True
    adj = adj[rng.permutation(n)][:, rng.permutation(n)]

    for _ in range(switches):
        r1, r2 = rng.choice(n, size=2, replace=False)
        c1 = rng.choice(np.flatnonzero(adj[r1] & ~adj[r2])) if np.any(adj[r1] & ~adj[r2]) else None
        c2 = rng.choice(np.flatnonzero(adj[r2] & ~adj[r1])) if np.any(adj[r2] & ~adj[r1]) else None
        if c1 is None or c2 is None:
            continue
        adj[r1, c1] = adj[r2, c2] = False
        adj[r1, c2] = adj[r2, c1] = True

    return BipartiteGraph(adj)
