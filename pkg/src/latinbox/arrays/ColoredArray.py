from __future__ import annotations

import numpy as np

from latinbox.arrays.Array3D import Array3D, DimensionError

class ColoredArray:
    """An n x n x m array whose ones are colored green or blue. Green is the binomial
    part, blue holds exactly one forced 1 in each shaft that green leaves empty."""
    def __init__(self, green: Array3D, blue: Array3D):
        if green.dims != blue.dims:
            raise DimensionError(f"green {green.dims} and blue {blue.dims} differ")
        if green.m != green.n:
            raise DimensionError(f"colored arrays are n x n x m, got {green.dims}")
        if green.k < green.n:
            raise DimensionError(f"colored arrays need m >= n, got {green.dims}")

        if np.any(green.packed & blue.packed):
            raise ValueError("green and blue supports overlap")

        expected = (~green.nonEmptyShafts()).astype(np.int64)
        if not np.array_equal(blue.shaftCounts(), expected):
            raise ValueError("blue must hold exactly one 1 in each green-empty shaft and nothing else")

        self.green: Array3D = green
        self.blue: Array3D = blue
        self._combined: Array3D = green | blue

    @classmethod
    def fromGreen(cls, M: Array3D) -> ColoredArray:
        """Treats a plain array without empty shafts as all green."""
        return cls(M.copy(), Array3D.zeros(*M.dims))

    @property
    def n(self) -> int:
        return self.green.n

    @property
    def m(self) -> int:
        return self.green.k

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.green.dims

    def combined(self) -> Array3D:
        """The array M = green + blue."""
        return self._combined.copy()

    def __repr__(self):
        return f"ColoredArray(dims={self.dims}, green={self.green.ones}, blue={self.blue.ones})"
