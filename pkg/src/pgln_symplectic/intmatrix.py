"""Sparse integer matrices with exact (unbounded) entries.

Entries live in a dict keyed by ``(row, col)``; zero entries are never
stored.  Dense lists of Python ints are produced only on demand, for the
Smith normal form routines.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple


class IntMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Dict[Tuple[int, int], int] | None = None):
        self.rows = rows
        self.cols = cols
        self.entries: Dict[Tuple[int, int], int] = {}
        if entries:
            for k, v in entries.items():
                if v:
                    self.entries[k] = int(v)

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int | None = None):
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        ent = {}
        for i, row in enumerate(data):
            for j, v in enumerate(row):
                if v:
                    ent[(i, j)] = int(v)
        return cls(rows, cols, ent)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Dict[int, int]]):
        ent = {}
        cols = 0
        for j, col in enumerate(columns):
            cols = j + 1
            for i, v in col.items():
                if v:
                    ent[(i, j)] = int(v)
        return cls(rows, cols, ent)

    def add(self, i, j, v):
        """Accumulate ``v`` into entry (i, j)."""
        if not v:
            return
        nv = self.entries.get((i, j), 0) + v
        if nv:
            self.entries[(i, j)] = nv
        else:
            self.entries.pop((i, j), None)

    # access -------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row(self, i) -> Dict[int, int]:
        return {j: v for (r, j), v in self.entries.items() if r == i}

    def column(self, j) -> Dict[int, int]:
        return {i: v for (i, c), v in self.entries.items() if c == j}

    def columns(self) -> List[Dict[int, int]]:
        out = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def triplets(self):
        return sorted((i, j, v) for (i, j), v in self.entries.items())

    def nnz(self):
        return len(self.entries)

    # algebra ------------------------------------------------------------
    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    T = property(transpose)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        by_row: Dict[int, List[Tuple[int, int]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out = IntMatrix(self.rows, other.cols)
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out.add(i, j, a * b)
        return out

    def apply(self, vec: Dict[int, int]) -> Dict[int, int]:
        """Multiply by a sparse column vector given as ``{index: value}``."""
        out: Dict[int, int] = {}
        for (i, j), v in self.entries.items():
            x = vec.get(j)
            if x:
                out[i] = out.get(i, 0) + v * x
        return {i: v for i, v in out.items() if v}

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = IntMatrix(self.rows, self.cols, self.entries)
        for (i, j), v in other.entries.items():
            out.add(i, j, v)
        return out

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return IntMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def is_zero(self):
        return not self.entries

    def __repr__(self):
        return "IntMatrix(%d x %d, nnz=%d)" % (self.rows, self.cols, len(self.entries))

    def select_rows(self, idx: Sequence[int]) -> "IntMatrix":
        pos = {r: k for k, r in enumerate(idx)}
        return IntMatrix(len(idx), self.cols,
                         {(pos[i], j): v for (i, j), v in self.entries.items() if i in pos})


def hstack(*mats: IntMatrix) -> IntMatrix:
    rows = mats[0].rows
    out = IntMatrix(rows, sum(m.cols for m in mats))
    off = 0
    for m in mats:
        if m.rows != rows:
            raise ValueError("row mismatch in hstack")
        for (i, j), v in m.entries.items():
            out.entries[(i, j + off)] = v
        off += m.cols
    return out


def vstack(*mats: IntMatrix) -> IntMatrix:
    return hstack(*[m.transpose() for m in mats]).transpose()
