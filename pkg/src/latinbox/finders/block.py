from __future__ import annotations

from latinbox.arrays import Array3D, DimensionError, PartialLatinBox
from latinbox.enumeration import all_latin_squares
from latinbox.finders.FinderOutcome import FinderOutcome, FinderStatus

BLOCK_ORDERS = (2, 3)

def block_order(n: int) -> tuple[int, int]:
    """(n0, j) with n = n0^j, n0 in {2, 3}. n = 1 is (2, 0)."""
    for n0 in BLOCK_ORDERS:
        size, j = 1, 0
        while size < n:
            size *= n0
            j += 1
        if size == n:
            return n0, j
    raise DimensionError(f"block recursion needs n = 2^j or 3^j, got n={n}")

def find_block_recursive(M: Array3D) -> FinderOutcome:
    """Views the cube as an n0 x n0 x n0 array of blocks. For some order-n0 Latin
    square L, every block (a, b, L(a,b)) must itself contain a Latin square;
    blocks are solved recursively and memoized by position and size."""
    m, n, k = M.dims
    if not m == n == k:
        raise DimensionError(f"block recursion needs a cube, got {M.dims}")
    n0, _ = block_order(n)

    patterns = all_latin_squares(n0)
    cells = M.cells()
    memo: dict[tuple[int, int, int, int], dict | None] = {}

    def solve(r0: int, c0: int, v0: int, size: int) -> dict | None:
        key = (r0, c0, v0, size)
        if key in memo:
            return memo[key]

        if size == 1:
            result = {(r0, c0): v0} if cells[r0, c0, v0] else None
        else:
            sub = size // n0
            result = None
            for pattern in patterns:
                parts = {}
                for a in range(n0):
                    for b in range(n0):
                        part = solve(r0 + a * sub, c0 + b * sub, v0 + (pattern[a][b] - 1) * sub, sub)
                        if part is None:
                            break
                        parts.update(part)
                    else:
                        continue
                    break
                else:
                    result = parts
                    break

        memo[key] = result
        return result

    square = solve(0, 0, 0, n)
    stats = {"n0": n0, "blocks_solved": len(memo)}
    if square is None:
        return FinderOutcome(FinderStatus.ABORTED, stage="block", reason="no-block-pattern", stats=stats)

    box = PartialLatinBox(n, n, n, {(r + 1, c + 1): v + 1 for (r, c), v in square.items()})
    return FinderOutcome.succeeded(box, **stats)
