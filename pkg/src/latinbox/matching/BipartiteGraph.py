from __future__ import annotations
import struct

import numpy as np
from scipy.sparse import csr_matrix

from latinbox.arrays import DimensionError, FormatError
from latinbox.utils import LatinBoxError

GRAPH_MAGIC = b"LBGR"
GRAPH_VERSION = 1
GRAPH_HEADER = struct.Struct("<4sHI")

class NotRegularError(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

class BipartiteGraph:
    """Bipartite graph on rows U = [n] and columns V = [n] given by its
    biadjacency matrix. Graphs are immutable; adj is a read only 0-based
    boolean array and the degree caches are computed once."""
    def __init__(self, adj):
        adj = np.array(adj, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise DimensionError(f"biadjacency matrix must be square, got shape {adj.shape}")
        adj.flags.writeable = False

        self.n: int = adj.shape[0]
        self.adj: np.ndarray = adj

        row_deg = adj.sum(axis=1)
        col_deg = adj.sum(axis=0)
        row_deg.flags.writeable = False
        col_deg.flags.writeable = False
        self.row_deg: np.ndarray = row_deg
        self.col_deg: np.ndarray = col_deg

    @classmethod
    def complete(cls, n: int) -> BipartiteGraph:
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def empty(cls, n: int) -> BipartiteGraph:
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def identity(cls, n: int) -> BipartiteGraph:
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def fromEdges(cls, n: int, edges) -> BipartiteGraph:
        """Builds a graph from 1-based (r,c) pairs."""
        adj = np.zeros((n, n), dtype=bool)
        for r, c in edges:
            if not (1 <= r <= n and 1 <= c <= n):
                raise IndexError(f"edge {(r, c)} outside [{n}] x [{n}]")
            adj[r - 1, c - 1] = True
        return cls(adj)

    @property
    def edgeCount(self) -> int:
        return int(self.row_deg.sum())

    def edges(self) -> list[tuple[int, int]]:
        """1-based (r,c) pairs in lexicographic order."""
        return [(int(r) + 1, int(c) + 1) for r, c in np.argwhere(self.adj)]

    def hasEdge(self, r: int, c: int) -> bool:
        return bool(self.adj[r - 1, c - 1])

    def regularDegree(self) -> int | None:
        """The common degree k when all 2n degrees are equal, else None."""
        if self.n == 0:
            return 0
        k = int(self.row_deg[0])
        if np.all(self.row_deg == k) and np.all(self.col_deg == k):
            return k
        return None

    def isRegular(self, k: int | None = None) -> bool:
        degree = self.regularDegree()
        return degree is not None and (k is None or degree == k)

    def intersect(self, other: BipartiteGraph) -> BipartiteGraph:
        self._checkSame(other)
        return BipartiteGraph(self.adj & other.adj)

    def without(self, other: BipartiteGraph) -> BipartiteGraph:
        """Edges of self that are not edges of other."""
        self._checkSame(other)
        return BipartiteGraph(self.adj & ~other.adj)

    def permuted(self, row_perm, col_perm) -> BipartiteGraph:
        """Graph with rows and columns relabelled, new row i is old row row_perm[i]."""
        return BipartiteGraph(self.adj[np.ix_(row_perm, col_perm)])

    def _checkSame(self, other: BipartiteGraph):
        if self.n != other.n:
            raise DimensionError(f"graph sizes differ: {self.n} vs {other.n}")

    def toCsr(self) -> csr_matrix:
        return csr_matrix(self.adj.astype(np.int32))

    def toJson(self) -> dict:
        return {"format": "latinbox.graph", "version": GRAPH_VERSION, "n": self.n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def fromJson(cls, data: dict) -> BipartiteGraph:
        try:
            return cls.fromEdges(int(data["n"]), data.get("edges", []))
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise FormatError(f"malformed graph json: {e}") from e

    def toBytes(self) -> bytes:
        body = np.packbits(self.adj.ravel(), bitorder="little")
        return GRAPH_HEADER.pack(GRAPH_MAGIC, GRAPH_VERSION, self.n) + body.tobytes()

    @classmethod
    def fromBytes(cls, data: bytes) -> BipartiteGraph:
        if len(data) < GRAPH_HEADER.size:
            raise FormatError("data shorter than the graph header")

        magic, version, n = GRAPH_HEADER.unpack_from(data)
        if magic != GRAPH_MAGIC or version != GRAPH_VERSION:
            raise FormatError(f"not a version {GRAPH_VERSION} graph")

        body = np.frombuffer(data, dtype=np.uint8, offset=GRAPH_HEADER.size)
        if len(body) != (n * n + 7) // 8:
            raise FormatError("graph payload has the wrong size")
        return cls(np.unpackbits(body, count=n * n, bitorder="little").reshape(n, n))

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.n, np.packbits(self.adj).tobytes()))

    def __repr__(self):
        return f"BipartiteGraph(n={self.n}, edges={self.edgeCount})"
