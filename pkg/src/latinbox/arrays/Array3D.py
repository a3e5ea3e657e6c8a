from __future__ import annotations
import json
import struct

import numpy as np

from latinbox.utils import LatinBoxError

MAGIC = b"LBOX"
FORMAT_VERSION = 1
# magic, version, m, n, k
HEADER = struct.Struct("<4sHIII")

# popcount of every byte value
POPCOUNT = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1).astype(np.int64)

class DimensionError(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

class FormatError(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

def check_dims(m, n, k) -> tuple[int, int, int]:
    dims = tuple(int(d) for d in (m, n, k))
    if any(d < 1 for d in dims):
        raise DimensionError(f"array dimensions must be positive, got {dims}")
    return dims

class Array3D:
    """An m x n x k 0-1 array. Coordinates passed to methods are 1-based,
    numpy views returned by cells() are 0-based.

    Cells are packed eight to a byte along the symbol axis (little bit order),
    so a shaft (r,c,.) is a contiguous run of bytes and shaft scans are byte
    operations."""
    def __init__(self, m: int, n: int, k: int, bits: np.ndarray | None = None):
        self.m, self.n, self.k = check_dims(m, n, k)
        self._nbytes = (self.k + 7) // 8

        if bits is None:
            bits = np.zeros((self.m, self.n, self._nbytes), dtype=np.uint8)
        else:
            bits = np.array(bits, dtype=np.uint8, copy=True)
            if bits.shape != (self.m, self.n, self._nbytes):
                raise DimensionError(f"packed bits have shape {bits.shape}, expected {(self.m, self.n, self._nbytes)}")
            bits &= self._symbolMask(0)

        self._bits: np.ndarray = bits
        self._ones: int = int(POPCOUNT[self._bits].sum())

    @classmethod
    def fromCells(cls, cells) -> Array3D:
        cells = np.asarray(cells, dtype=bool)
        if cells.ndim != 3:
            raise DimensionError(f"expected a 3 dimensional array, got {cells.ndim} dimensions")
        m, n, k = cells.shape
        check_dims(m, n, k)
        return cls(m, n, k, np.packbits(cells, axis=2, bitorder="little"))

    @classmethod
    def zeros(cls, m: int, n: int, k: int) -> Array3D:
        return cls(m, n, k)

    @classmethod
    def full(cls, m: int, n: int, k: int) -> Array3D:
        return cls.fromCells(np.ones(check_dims(m, n, k), dtype=bool))

    @classmethod
    def fromOnes(cls, m: int, n: int, k: int, ones) -> Array3D:
        """Builds an array from 1-based (r,c,v) triples."""
        array = cls(m, n, k)
        for r, c, v in ones:
            array.set(r, c, v)
        return array

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.k)

    @property
    def ones(self) -> int:
        return self._ones

    @property
    def packed(self) -> np.ndarray:
        """Read only view of the packed shaft-major bits."""
        view = self._bits.view()
        view.flags.writeable = False
        return view

    def _symbolMask(self, start: int) -> np.ndarray:
        """Byte mask selecting 0-based symbols start..k-1 of a shaft."""
        keep = np.zeros(self._nbytes * 8, dtype=bool)
        keep[start:self.k] = True
        return np.packbits(keep, bitorder="little")

    def _index(self, r: int, c: int, v: int) -> tuple[int, int, int]:
        if not (1 <= r <= self.m and 1 <= c <= self.n and 1 <= v <= self.k):
            raise IndexError(f"cell {(r, c, v)} outside array of dims {self.dims}")
        return r - 1, c - 1, v - 1

    def get(self, r: int, c: int, v: int) -> bool:
        r, c, v = self._index(r, c, v)
        return bool(self._bits[r, c, v >> 3] >> (v & 7) & 1)

    def set(self, r: int, c: int, v: int, value: bool = True):
        r, c, v = self._index(r, c, v)
        bit = np.uint8(1 << (v & 7))
        old = bool(self._bits[r, c, v >> 3] & bit)

        if value and not old:
            self._bits[r, c, v >> 3] |= bit
            self._ones += 1
        elif not value and old:
            self._bits[r, c, v >> 3] &= ~bit
            self._ones -= 1

    def cells(self) -> np.ndarray:
        """Dense 0-based boolean copy of shape (m, n, k)."""
        return np.unpackbits(self._bits, axis=2, count=self.k, bitorder="little").astype(bool)

    def shaft(self, r: int, c: int) -> np.ndarray:
        r, c, _ = self._index(r, c, 1)
        return np.unpackbits(self._bits[r, c], count=self.k, bitorder="little").astype(bool)

    def nonEmptyShafts(self) -> np.ndarray:
        """Boolean (m, n) map of shafts holding at least one 1."""
        return self._bits.any(axis=2)

    def shaftCounts(self, start: int = 0) -> np.ndarray:
        """Number of ones in every shaft among 0-based symbols start..k-1."""
        if start <= 0:
            return POPCOUNT[self._bits].sum(axis=2)
        return POPCOUNT[self._bits & self._symbolMask(start)].sum(axis=2)

    def plane(self, i: int) -> np.ndarray:
        """Dense (n, k) slice M(i, ., .)."""
        i, _, _ = self._index(i, 1, 1)
        return np.unpackbits(self._bits[i], axis=1, count=self.k, bitorder="little").astype(bool)

    def oneCells(self) -> list[tuple[int, int, int]]:
        """1-based coordinates of every 1, in lexicographic order."""
        return [tuple(int(x) + 1 for x in idx) for idx in np.argwhere(self.cells())]

    def contains(self, other: Array3D) -> bool:
        """True when every 1 of other is a 1 of self."""
        self._checkSame(other)
        return not np.any(other._bits & ~self._bits)

    def _checkSame(self, other: Array3D):
        if self.dims != other.dims:
            raise DimensionError(f"dimension mismatch {self.dims} vs {other.dims}")

    def __or__(self, other: Array3D) -> Array3D:
        self._checkSame(other)
        return Array3D(self.m, self.n, self.k, self._bits | other._bits)

    def __and__(self, other: Array3D) -> Array3D:
        self._checkSame(other)
        return Array3D(self.m, self.n, self.k, self._bits & other._bits)

    def __eq__(self, other):
        if not isinstance(other, Array3D):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self._bits, other._bits)

    def __hash__(self):
        return hash((self.dims, self._bits.tobytes()))

    def __repr__(self):
        return f"Array3D(dims={self.dims}, ones={self.ones})"

    def copy(self) -> Array3D:
        return Array3D(self.m, self.n, self.k, self._bits)

    def toBytes(self) -> bytes:
        """Versioned header followed by the row-major cells packed eight to a byte."""
        body = np.packbits(self.cells().ravel(), bitorder="little")
        return HEADER.pack(MAGIC, FORMAT_VERSION, self.m, self.n, self.k) + body.tobytes()

    @classmethod
    def fromBytes(cls, data: bytes) -> Array3D:
        if len(data) < HEADER.size:
            raise FormatError("data shorter than the array header")

        magic, version, m, n, k = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise FormatError(f"bad magic {magic!r}")
        if version != FORMAT_VERSION:
            raise FormatError(f"unsupported format version {version}")

        m, n, k = check_dims(m, n, k)
        size = m * n * k
        body = np.frombuffer(data, dtype=np.uint8, offset=HEADER.size)
        if len(body) != (size + 7) // 8:
            raise FormatError(f"expected {(size + 7) // 8} payload bytes, got {len(body)}")

        cells = np.unpackbits(body, count=size, bitorder="little").reshape(m, n, k)
        return cls.fromCells(cells)

    def toJson(self) -> dict:
        return {
            "format": "latinbox.array",
            "version": FORMAT_VERSION,
            "dims": list(self.dims),
            "ones": [list(cell) for cell in self.oneCells()]
        }

    @classmethod
    def fromJson(cls, data: dict) -> Array3D:
        try:
            m, n, k = data["dims"]
            ones = data.get("ones", [])
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"malformed array json: {e}") from e

        try:
            return cls.fromOnes(m, n, k, ones)
        except (IndexError, ValueError) as e:
            raise FormatError(f"malformed array json: {e}") from e

    def dump(self, path: str):
        """Writes the json debug form for .json paths and the binary form otherwise."""
        if str(path).endswith(".json"):
            with open(path, "w", encoding="utf-8") as f:
                json.dump(self.toJson(), f)
        else:
            with open(path, "wb") as f:
                f.write(self.toBytes())

    @classmethod
    def load(cls, path: str) -> Array3D:
        if str(path).endswith(".json"):
            with open(path, "r", encoding="utf-8") as f:
                try:
                    return cls.fromJson(json.load(f))
                except json.JSONDecodeError as e:
                    raise FormatError(f"{path} is not valid json") from e

        with open(path, "rb") as f:
            return cls.fromBytes(f.read())
