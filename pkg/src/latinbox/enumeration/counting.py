"""Exhaustive counting of Latin boxes and Latin rectangles at tiny sizes."""
from __future__ import annotations
from functools import cache
import math
from typing import Iterator

from latinbox.arrays import DimensionError
from latinbox.utils import LatinBoxError

BOX_LIMIT = 5
RECTANGLE_LIMIT = 7

class SizeGuardError(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

def _check_shape(m: int, n: int, k: int, limit: int):
    if not 1 <= m <= n <= k:
        raise DimensionError(f"Latin boxes need 1 <= m <= n <= k, got {(m, n, k)}")
    if n > limit:
        raise SizeGuardError(f"exhaustive counting is limited to n <= {limit}, got n={n}")

def iter_latin_boxes(m: int, n: int, k: int, first_row: tuple[int, ...] | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every m x n Latin rectangle on symbols 1..k, as tuples of rows.
    first_row pins the first row when given."""
    _check_shape(m, n, k, BOX_LIMIT)
    grid = [[0] * n for _ in range(m)]
    row_used = [0] * m
    col_used = [0] * n
    full = (1 << k) - 1

    if first_row is not None:
        for c, v in enumerate(first_row):
            grid[0][c] = v
            row_used[0] |= 1 << (v - 1)
            col_used[c] |= 1 << (v - 1)
    start = n if first_row is not None else 0

    def fill(position):
        if position == m * n:
            yield tuple(tuple(row) for row in grid)
            return

        r, c = divmod(position, n)
        free = full & ~(row_used[r] | col_used[c])
        while free:
            bit = free & -free
            free ^= bit
            grid[r][c] = bit.bit_length()
            row_used[r] |= bit
            col_used[c] |= bit
            yield from fill(position + 1)
            row_used[r] ^= bit
            col_used[c] ^= bit
        grid[r][c] = 0

    yield from fill(start)

def count_latin_boxes(m: int, n: int, k: int) -> int:
    """Number of m x n x k Latin boxes. The first row is pinned to 1..n and the
    count scaled by the k!/(k-n)! ways to relabel it."""
    _check_shape(m, n, k, BOX_LIMIT)
    pinned = sum(1 for _ in iter_latin_boxes(m, n, k, first_row=tuple(range(1, n + 1))))
    return math.perm(k, n) * pinned

def all_latin_squares(n0: int) -> list[tuple[tuple[int, ...], ...]]:
    return list(iter_latin_boxes(n0, n0, n0))

def _perfect_matchings(rows: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Column bit chosen by each row, for every perfect matching of the
    availability rows (bitmasks)."""
    n = len(rows)
    chosen = [0] * n

    def extend(i, used):
        if i == n:
            yield tuple(chosen)
            return
        free = rows[i] & ~used
        while free:
            bit = free & -free
            free ^= bit
            chosen[i] = bit
            yield from extend(i + 1, used | bit)

    yield from extend(0, 0)

@cache
def _count_perfect(rows: tuple[int, ...], i: int = 0, used: int = 0) -> int:
    if i == len(rows):
        return 1
    total = 0
    free = rows[i] & ~used
    while free:
        bit = free & -free
        free ^= bit
        total += _count_perfect(rows, i + 1, used | bit)
    return total

def count_rectangles_exact(m: int, n: int) -> int:
    """Number of m x n Latin rectangles on n symbols, built matrix by matrix:
    row i is an n x n permutation matrix P_i (column -> symbol) avoiding the
    cells taken by P_1..P_{i-1}. Availability rows are symbol bitmasks, one
    per column."""
    if n > RECTANGLE_LIMIT:
        raise SizeGuardError(f"count_rectangles_exact is limited to n <= {RECTANGLE_LIMIT}, got n={n}")
    if not 0 <= m <= n:
        raise DimensionError(f"need 0 <= m <= n, got m={m} n={n}")
    if m == 0:
        return 1

    full = (1 << n) - 1
    memo: dict[tuple[tuple[int, ...], int], int] = {}

    def count(rows: tuple[int, ...], remaining: int) -> int:
        if remaining == 0:
            return 1
        if remaining == 1:
            return _count_perfect(rows)

        # reordering the columns does not change the count
        key = (tuple(sorted(rows)), remaining)
        if key in memo:
            return memo[key]

        total = 0
        for matching in _perfect_matchings(rows):
            total += count(tuple(r & ~b for r, b in zip(rows, matching)), remaining - 1)
        memo[key] = total
        return total

    # P_1 may be taken to be the identity, every other choice is a symbol relabelling
    rows = tuple(full & ~(1 << i) for i in range(n))
    return math.factorial(n) * count(rows, m - 1)
