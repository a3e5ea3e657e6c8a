"""Backtracking oracle: decides whether an array supports a Latin box."""
from __future__ import annotations

from latinbox.arrays import Array3D, DimensionError, PartialLatinBox
from latinbox.finders.FinderOutcome import FinderOutcome, FinderStatus
from latinbox.utils import ParameterError

MODES = ("first", "count_all")
UNCAPPED_COUNT_LIMIT = 4

class _NodeCapReached(Exception):
    pass

class _ExactSearch:
    """Depth first search over the cells of an m x n x k array. A cell's
    candidates are the 1s of its shaft minus the symbols already used in its
    row and column, all kept as int bitmasks (bit v-1 for symbol v)."""
    def __init__(self, M: Array3D, mrv: bool, node_cap: int | None):
        self.m, self.n, self.k = M.dims
        self.mrv = mrv
        self.node_cap = node_cap

        packed = M.packed
        self.shafts = [[int.from_bytes(packed[r, c].tobytes(), "little") for c in range(self.n)] for r in range(self.m)]
        self.row_used = [0] * self.m
        self.col_used = [0] * self.n
        self.assigned = [[0] * self.n for _ in range(self.m)]

        self.nodes = 0
        self.solutions = 0
        self.first: dict[tuple[int, int], int] | None = None

    def candidates(self, r: int, c: int) -> int:
        return self.shafts[r][c] & ~(self.row_used[r] | self.col_used[c])

    def pick(self, depth: int) -> tuple[int, int, int]:
        if not self.mrv:
            r, c = divmod(depth, self.n)
            return r, c, self.candidates(r, c)

        best = None
        for r in range(self.m):
            assigned = self.assigned[r]
            for c in range(self.n):
                if assigned[c]:
                    continue
                cands = self.candidates(r, c)
                size = cands.bit_count()
                if best is None or size < best[0]:
                    best = (size, r, c, cands)
                    if size == 0:
                        return r, c, cands
        return best[1], best[2], best[3]

    def advance(self, stack: list) -> bool:
        """Moves the deepest frame to its next candidate, popping exhausted
        frames. False once the whole space is searched."""
        while stack:
            frame = stack[-1]
            r, c, cands, bit = frame
            if bit:
                self.row_used[r] ^= bit
                self.col_used[c] ^= bit
                self.assigned[r][c] = 0
                frame[3] = 0

            if cands:
                bit = cands & -cands
                frame[2] = cands ^ bit
                frame[3] = bit

                self.nodes += 1
                if self.node_cap is not None and self.nodes > self.node_cap:
                    raise _NodeCapReached

                self.row_used[r] |= bit
                self.col_used[c] |= bit
                self.assigned[r][c] = bit
                return True

            stack.pop()
        return False

    def run(self, count_all: bool):
        total = self.m * self.n
        stack = []
        while True:
            if len(stack) == total:
                self.solutions += 1
                if self.first is None:
                    self.first = {(r + 1, c + 1): bit.bit_length() for r, c, _, bit in stack}
                if not count_all or not self.advance(stack):
                    return
                continue

            r, c, cands = self.pick(len(stack))
            stack.append([r, c, cands, 0])
            if not self.advance(stack):
                return

def find_exact(M: Array3D, mode: str = "first", node_cap: int | None = None, mrv: bool = True) -> FinderOutcome:
    """Complete search: exhausted is a proof that M supports no Latin box.
    count_all also counts every Latin box supported by M."""
    m, n, k = M.dims
    if not m <= n <= k:
        raise DimensionError(f"find_exact needs m <= n <= k, got {M.dims}")
    if mode not in MODES:
        raise ParameterError(f"unknown mode {mode}, expected one of {MODES}")
    if mode == "count_all" and node_cap is None and max(m, n, k) > UNCAPPED_COUNT_LIMIT:
        raise ParameterError(f"count_all without a node cap is limited to dims <= {UNCAPPED_COUNT_LIMIT}")

    count_all = mode == "count_all"
    if not M.nonEmptyShafts().all():
        return FinderOutcome(FinderStatus.EXHAUSTED, stats={"nodes": 0, "empty_shaft": True}, count=0 if count_all else None)

    search = _ExactSearch(M, mrv, node_cap)
    try:
        search.run(count_all)
    except _NodeCapReached:
        return FinderOutcome(FinderStatus.INDETERMINATE, stage="search", reason="node-cap",
                             stats={"nodes": search.nodes, "solutions_so_far": search.solutions})

    stats = {"nodes": search.nodes}
    count = search.solutions if count_all else None
    if search.first is None:
        return FinderOutcome(FinderStatus.EXHAUSTED, stats=stats, count=count)

    box = PartialLatinBox(m, n, k, search.first)
    return FinderOutcome(FinderStatus.SUCCESS, box, stats=stats, count=count)
