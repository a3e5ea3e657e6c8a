"""The three random models: binomial arrays, the array process and the green/blue model."""
from __future__ import annotations

import numpy as np

from latinbox.arrays.Array3D import Array3D, DimensionError, check_dims
from latinbox.arrays.ArrayProcess import ArrayProcess
from latinbox.arrays.ColoredArray import ColoredArray
from latinbox.utils import Seed, make_rng, check_probability

def sample_binomial(m: int, n: int, k: int, p: float, seed: Seed = None) -> Array3D:
    """Each cell is 1 independently with probability p."""
    m, n, k = check_dims(m, n, k)
    p = check_probability(p)
    rng = make_rng(seed)
    return Array3D.fromCells(rng.random((m, n, k)) < p)

def sample_process(n: int, m: int, seed: Seed = None) -> ArrayProcess:
    """Uniformly random order of the n*n*m cells."""
    n, _, m = check_dims(n, n, m)
    if m < n:
        raise DimensionError(f"the array process needs m >= n, got n={n} m={m}")
    rng = make_rng(seed)
    return ArrayProcess(n, m, rng.permutation(n * n * m))

def sample_green_blue(n: int, m: int, p: float, seed: Seed = None) -> ColoredArray:
    """Green is binomial; every shaft green leaves empty gets one blue 1 at a uniform symbol."""
    n, _, m = check_dims(n, n, m)
    if m < n:
        raise DimensionError(f"the green/blue model needs m >= n, got n={n} m={m}")
    rng = make_rng(seed)

    green = sample_binomial(n, n, m, p, rng)
    empty = np.argwhere(~green.nonEmptyShafts())
    symbols = rng.integers(0, m, size=len(empty))

    blue = np.zeros((n, n, m), dtype=bool)
    blue[empty[:, 0], empty[:, 1], symbols] = True
    return ColoredArray(green, Array3D.fromCells(blue))
