from __future__ import annotations

import numpy as np

from latinbox.arrays import Array3D, DimensionError

class TripartiteHypergraph:
    """3-uniform hypergraph on classes A, B, C = [n], one triangle (a,b,c) per
    1-cell of an n x n x n array."""
    def __init__(self, cube: Array3D):
        if not (cube.m == cube.n == cube.k):
            raise DimensionError(f"a tripartite hypergraph needs a cubic array, got {cube.dims}")
        self.n: int = cube.n
        self._cube: Array3D = cube.copy()

    @property
    def size(self) -> int:
        return self._cube.ones

    def triangles(self) -> np.ndarray:
        """0-based (a,b,c) rows in lexicographic order."""
        return np.argwhere(self._cube.cells())

    def hasTriangle(self, a: int, b: int, c: int) -> bool:
        return self._cube.get(a, b, c)

    def toArray(self) -> Array3D:
        return self._cube.copy()

    def __repr__(self):
        return f"TripartiteHypergraph(n={self.n}, triangles={self.size})"

def from_array(M: Array3D) -> TripartiteHypergraph:
    return TripartiteHypergraph(M)
