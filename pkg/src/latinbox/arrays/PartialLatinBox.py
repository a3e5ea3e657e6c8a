from __future__ import annotations

import numpy as np

from latinbox.arrays.Array3D import Array3D, DimensionError, FormatError, check_dims

class PartialLatinBox:
    """A partial map (r,c) -> v from [rows] x [cols] to [symbols], 1-based.

    assign() refuses a symbol already used in the row or column, so a box
    built only through assign() is always a partial Latin box. The
    constructor accepts arbitrary entries so that invalid boxes can be
    represented and rejected by validation."""
    def __init__(self, rows: int, cols: int, symbols: int, entries: dict[tuple[int, int], int] | None = None):
        self.rows, self.cols, self.symbols = check_dims(rows, cols, symbols)

        self._entries: dict[tuple[int, int], int] = {}
        self._row_used: list[set[int]] = [set() for _ in range(self.rows)]
        self._col_used: list[set[int]] = [set() for _ in range(self.cols)]

        for (r, c), v in (entries or {}).items():
            self._checkCell(r, c, v)
            self._entries[(r, c)] = v
            self._row_used[r - 1].add(v)
            self._col_used[c - 1].add(v)

    @classmethod
    def fromArray(cls, M: Array3D) -> PartialLatinBox:
        """Reads the functional view of an array with at most one 1 per shaft."""
        box = cls(*M.dims)
        for r, c, v in M.oneCells():
            if (r, c) in box._entries:
                raise ValueError(f"shaft {(r, c)} holds more than one 1")
            box._entries[(r, c)] = v
            box._row_used[r - 1].add(v)
            box._col_used[c - 1].add(v)
        return box

    @classmethod
    def fromGrid(cls, grid, symbols: int | None = None) -> PartialLatinBox:
        """Reads a rows x cols grid of symbols, 0 meaning empty."""
        grid = np.asarray(grid, dtype=np.int64)
        if grid.ndim != 2:
            raise DimensionError("grid must be 2 dimensional")
        rows, cols = grid.shape
        symbols = symbols or max(int(grid.max(initial=0)), 1)
        entries = {(int(r) + 1, int(c) + 1): int(grid[r, c]) for r, c in zip(*np.nonzero(grid))}
        return cls(rows, cols, symbols, entries)

    def _checkCell(self, r: int, c: int, v: int):
        if not (1 <= r <= self.rows and 1 <= c <= self.cols and 1 <= v <= self.symbols):
            raise IndexError(f"entry {(r, c)} -> {v} outside box of dims {self.dims}")

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.rows, self.cols, self.symbols)

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        return dict(self._entries)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, cell):
        return cell in self._entries

    def get(self, r: int, c: int) -> int | None:
        return self._entries.get((r, c))

    def canAssign(self, r: int, c: int, v: int) -> bool:
        return (r, c) not in self._entries and v not in self._row_used[r - 1] and v not in self._col_used[c - 1]

    def assign(self, r: int, c: int, v: int):
        self._checkCell(r, c, v)
        if not self.canAssign(r, c, v):
            raise ValueError(f"cannot assign {v} to {(r, c)}")

        self._entries[(r, c)] = v
        self._row_used[r - 1].add(v)
        self._col_used[c - 1].add(v)

    def erase(self, r: int, c: int) -> int | None:
        v = self._entries.pop((r, c), None)
        if v is None:
            return None

        # another entry of an invalid box may still use v
        if all(self._entries.get((r, j)) != v for j in range(1, self.cols + 1)):
            self._row_used[r - 1].discard(v)
        if all(self._entries.get((i, c)) != v for i in range(1, self.rows + 1)):
            self._col_used[c - 1].discard(v)
        return v

    def rowSymbols(self, r: int) -> set[int]:
        return set(self._row_used[r - 1])

    def colSymbols(self, c: int) -> set[int]:
        return set(self._col_used[c - 1])

    def isPartialLatin(self) -> bool:
        """No symbol repeats within a row or a column."""
        seen_rows = set()
        seen_cols = set()
        for (r, c), v in self._entries.items():
            if (r, v) in seen_rows or (c, v) in seen_cols:
                return False
            seen_rows.add((r, v))
            seen_cols.add((c, v))
        return True

    def isProper(self) -> bool:
        """Domain is all of [rows] x [cols] and the box is Latin."""
        return len(self._entries) == self.rows * self.cols and self.isPartialLatin()

    def isSupportedBy(self, M: Array3D) -> bool:
        if M.dims != self.dims:
            raise DimensionError(f"box dims {self.dims} do not match array dims {M.dims}")
        return all(M.get(r, c, v) for (r, c), v in self._entries.items())

    def toArray(self) -> Array3D:
        return Array3D.fromOnes(*self.dims, ((r, c, v) for (r, c), v in self._entries.items()))

    def grid(self) -> list[list[int]]:
        """rows x cols symbol grid with 0 for unassigned cells."""
        return [[self._entries.get((r, c), 0) for c in range(1, self.cols + 1)] for r in range(1, self.rows + 1)]

    def copy(self) -> PartialLatinBox:
        return PartialLatinBox(*self.dims, self._entries)

    def toJson(self) -> dict:
        return {"dims": list(self.dims), "grid": self.grid()}

    @classmethod
    def fromJson(cls, data: dict) -> PartialLatinBox:
        try:
            rows, cols, symbols = data["dims"]
            box = cls.fromGrid(data["grid"], symbols)
        except (KeyError, TypeError, ValueError, IndexError, DimensionError) as e:
            raise FormatError(f"malformed box json: {e}") from e

        if (box.rows, box.cols) != (rows, cols):
            raise FormatError(f"grid of {box.rows} x {box.cols} does not match dims {data['dims']}")
        return box

    def __eq__(self, other):
        if not isinstance(other, PartialLatinBox):
            return NotImplemented
        return self.dims == other.dims and self._entries == other._entries

    def __repr__(self):
        return f"PartialLatinBox(dims={self.dims}, assigned={len(self)})"
