"""Shaft scans and Latin box validation."""
from __future__ import annotations

import numpy as np

from latinbox.arrays.Array3D import Array3D, DimensionError
from latinbox.arrays.ColoredArray import ColoredArray
from latinbox.arrays.PartialLatinBox import PartialLatinBox

def _as_array(M: Array3D | ColoredArray) -> Array3D:
    if isinstance(M, ColoredArray):
        return M.combined()
    return M

def empty_shafts(M: Array3D | ColoredArray) -> list[tuple[int, int]]:
    """1-based (r,c) of every shaft without a 1, sorted."""
    M = _as_array(M)
    return [(int(r) + 1, int(c) + 1) for r, c in np.argwhere(~M.nonEmptyShafts())]

def degree_maps(M: Array3D | ColoredArray) -> tuple[np.ndarray, np.ndarray]:
    """(d, d_m) for every shaft as two 0-based (n, n) arrays. d_m only counts
    the high symbols n+1..m."""
    M = _as_array(M)
    if M.n > M.k:
        raise DimensionError(f"shaft degrees need n <= m, got dims {M.dims}")
    return M.shaftCounts(), M.shaftCounts(M.n)

def shaft_degrees(M: Array3D | ColoredArray, r: int, c: int) -> tuple[int, int]:
    M = _as_array(M)
    if M.n > M.k:
        raise DimensionError(f"shaft degrees need n <= m, got dims {M.dims}")

    shaft = M.shaft(r, c)
    return int(shaft.sum()), int(shaft[M.n:].sum())

def validate_latin_box(B: PartialLatinBox, M: Array3D | ColoredArray, proper: bool = False) -> bool:
    """True iff B is a partial Latin box supported by M, and when proper is set,
    B covers its whole domain."""
    M = _as_array(M)
    if B.dims != M.dims:
        raise DimensionError(f"box dims {B.dims} do not match array dims {M.dims}")

    if not B.isPartialLatin() or not B.isSupportedBy(M):
        return False

    return not proper or B.isProper()

def is_latin_box(M: Array3D) -> bool:
    """Exactly m*n ones and at most one 1 on every line."""
    if M.ones != M.m * M.n:
        return False

    cells = M.cells()
    return all(int(cells.sum(axis=axis).max()) <= 1 for axis in range(3))
