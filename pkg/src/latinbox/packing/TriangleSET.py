from __future__ import annotations

import numpy as np

from latinbox.arrays import PartialLatinBox

class TriangleSET:
    """A set of edge-disjoint triangles over [n]^3. Indices are 0-based.

    The three covered-edge maps make the conflict test for a candidate
    triangle O(1). deg[0], deg[1], deg[2] count d_S(v) for the vertices
    of classes A, B and C."""
    def __init__(self, n: int):
        self.n = n
        self.chosen: list[tuple[int, int, int]] = []
        self.covered_ab = np.zeros((n, n), dtype=bool)
        self.covered_ac = np.zeros((n, n), dtype=bool)
        self.covered_bc = np.zeros((n, n), dtype=bool)
        self.deg = np.zeros((3, n), dtype=np.int64)

    def __len__(self):
        return len(self.chosen)

    def isEdgeDisjoint(self, a: int, b: int, c: int) -> bool:
        return not (self.covered_ab[a, b] or self.covered_ac[a, c] or self.covered_bc[b, c])

    def add(self, a: int, b: int, c: int):
        if not self.isEdgeDisjoint(a, b, c):
            raise ValueError(f"triangle {(a, b, c)} shares an edge with the packing")

        self.chosen.append((a, b, c))
        self.covered_ab[a, b] = True
        self.covered_ac[a, c] = True
        self.covered_bc[b, c] = True
        self.deg[0, a] += 1
        self.deg[1, b] += 1
        self.deg[2, c] += 1

    def tryAdd(self, a: int, b: int, c: int) -> bool:
        if not self.isEdgeDisjoint(a, b, c):
            return False
        self.add(a, b, c)
        return True

    def checkInvariants(self) -> bool:
        """Recomputes the maps and degrees from chosen and compares."""
        n = self.n
        ab = np.zeros((n, n), dtype=np.int64)
        ac = np.zeros((n, n), dtype=np.int64)
        bc = np.zeros((n, n), dtype=np.int64)
        deg = np.zeros((3, n), dtype=np.int64)

        for a, b, c in self.chosen:
            ab[a, b] += 1
            ac[a, c] += 1
            bc[b, c] += 1
            deg[0, a] += 1
            deg[1, b] += 1
            deg[2, c] += 1

        if max(ab.max(initial=0), ac.max(initial=0), bc.max(initial=0)) > 1:
            return False
        return (np.array_equal(ab > 0, self.covered_ab) and np.array_equal(ac > 0, self.covered_ac)
                and np.array_equal(bc > 0, self.covered_bc) and np.array_equal(deg, self.deg)
                and int(deg.max(initial=0)) <= n)

    def toPartialLatinBox(self) -> PartialLatinBox:
        """Triangle (a,b,c) is the entry (a+1, b+1) -> c+1."""
        return PartialLatinBox(self.n, self.n, self.n, {(a + 1, b + 1): c + 1 for a, b, c in self.chosen})

    def __repr__(self):
        return f"TriangleSET(n={self.n}, size={len(self)})"
