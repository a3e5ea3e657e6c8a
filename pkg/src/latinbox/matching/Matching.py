from __future__ import annotations

import numpy as np

import typing
if typing.TYPE_CHECKING:
    from latinbox.matching.BipartiteGraph import BipartiteGraph

UNMATCHED = -1

class Matching:
    """Partial injection from rows to columns of an n x n bipartite graph.
    pairing[i] is the 0-based column of row i, or -1."""
    def __init__(self, n: int, pairing=None):
        self.n = int(n)
        if pairing is None:
            pairing = [UNMATCHED] * self.n

        pairing = tuple(int(c) for c in pairing)
        if len(pairing) != self.n:
            raise ValueError(f"pairing has length {len(pairing)}, expected {self.n}")

        used = [c for c in pairing if c != UNMATCHED]
        if len(used) != len(set(used)) or any(not 0 <= c < self.n for c in used):
            raise ValueError(f"pairing {pairing} is not an injection into [0, {self.n})")

        self.pairing: tuple[int, ...] = pairing

    @classmethod
    def fromPairs(cls, n: int, pairs) -> Matching:
        """From 1-based (row, column) pairs."""
        pairing = [UNMATCHED] * n
        for r, c in pairs:
            pairing[r - 1] = c - 1
        return cls(n, pairing)

    @property
    def size(self) -> int:
        return sum(1 for c in self.pairing if c != UNMATCHED)

    def isPerfect(self) -> bool:
        return self.size == self.n

    def pairs(self) -> list[tuple[int, int]]:
        """1-based (row, column) pairs."""
        return [(r + 1, c + 1) for r, c in enumerate(self.pairing) if c != UNMATCHED]

    def isSupportedBy(self, G: BipartiteGraph) -> bool:
        return G.n == self.n and all(G.adj[r, c] for r, c in enumerate(self.pairing) if c != UNMATCHED)

    def toMatrix(self) -> np.ndarray:
        """Boolean matrix of the matched edges, a permutation matrix when perfect."""
        matrix = np.zeros((self.n, self.n), dtype=bool)
        for r, c in enumerate(self.pairing):
            if c != UNMATCHED:
                matrix[r, c] = True
        return matrix

    def __eq__(self, other):
        if not isinstance(other, Matching):
            return NotImplemented
        return self.pairing == other.pairing

    def __hash__(self):
        return hash(self.pairing)

    def __repr__(self):
        return f"Matching({list(self.pairs())})"
