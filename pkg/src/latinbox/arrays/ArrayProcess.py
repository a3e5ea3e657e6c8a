from __future__ import annotations

import numpy as np

from latinbox.arrays.Array3D import Array3D, DimensionError, check_dims
from latinbox.utils import Seed, make_rng, check_probability

class ArrayProcess:
    """The n x n x m array process: M_0 is all zeros and M_t turns on the cell
    order[t-1]. order holds 0-based flat indices in row-major (r,c,v) order."""
    def __init__(self, n: int, m: int, order):
        _, self.n, self.m = check_dims(n, n, m)
        self.dims = (self.n, self.n, self.m)
        self.steps = self.n * self.n * self.m

        order = np.array(order, dtype=np.int64, copy=True)
        if order.shape != (self.steps,) or not np.array_equal(np.sort(order), np.arange(self.steps)):
            raise ValueError("order must be a permutation of all cell positions")
        order.flags.writeable = False

        self.order: np.ndarray = order
        self._rank = np.empty(self.steps, dtype=np.int64)
        self._rank[order] = np.arange(self.steps)

    @classmethod
    def binomialCoupling(cls, n: int, m: int, p: float, seed: Seed = None) -> tuple[ArrayProcess, Array3D]:
        """Draws a uniform weight per cell; the process turns cells on in increasing
        weight and the binomial array keeps the cells with weight below p. The
        binomial array is therefore the prefix of the process at t = its number of ones."""
        p = check_probability(p)
        n, _, m = check_dims(n, n, m)
        rng = make_rng(seed)

        weights = rng.random(n * n * m)
        process = cls(n, m, np.argsort(weights, kind="stable"))
        return process, Array3D.fromCells((weights < p).reshape(n, n, m))

    def position(self, t: int) -> tuple[int, int, int]:
        """1-based cell turned on at step t (1-based)."""
        if not 1 <= t <= self.steps:
            raise IndexError(f"step {t} outside 1..{self.steps}")
        return tuple(int(x) + 1 for x in np.unravel_index(self.order[t - 1], self.dims))

    def prefix(self, t: int) -> Array3D:
        """M_t, the array after t steps."""
        if not 0 <= t <= self.steps:
            raise DimensionError(f"prefix length {t} outside 0..{self.steps}")

        flat = np.zeros(self.steps, dtype=bool)
        flat[self.order[:t]] = True
        return Array3D.fromCells(flat.reshape(self.dims))

    def firstHits(self) -> np.ndarray:
        """(n, n) array of the 1-based step at which each shaft first gets a 1."""
        return self._rank.reshape(self.dims).min(axis=2) + 1

    def shaftHittingTime(self) -> int:
        """First t at which M_t has no empty shafts."""
        return int(self.firstHits().max())

    def __repr__(self):
        return f"ArrayProcess(dims={self.dims})"
