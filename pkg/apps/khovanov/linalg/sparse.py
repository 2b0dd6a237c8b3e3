"""
Sparse exact-rational matrices and their ranks.

Matrices are stored column-wise (one dict {row: value} per column) because
the cube differentials are assembled one source generator at a time.
Values are ints or Fractions; zero entries are never stored.

Rank is computed by fraction-free elimination over the integers:
each vector is first scaled to a primitive integer vector, then reduced
against the current pivots with the cross-multiplication step
v ← (p/g)·v − (c/g)·P followed by division by the content of v.
Pivot choice is sparsity-aware: among the surviving entries of a fully
reduced vector, pick the column with the fewest entries in the original
matrix, ties by smallest magnitude.
"""
import heapq
import math
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from apps.khovanov import telemetry

Number = Union[int, Fraction]


class SparseMat:
    """Immutable sparse matrix over the rationals."""

    __slots__ = ("nrows", "ncols", "_cols")

    def __init__(self, nrows: int, ncols: int, columns: Sequence[Dict[int, Number]] = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        if columns is None:
            columns = [{} for _ in range(ncols)]
        if len(columns) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(columns)}")
        cols = []
        for col in columns:
            clean = {}
            for r, v in col.items():
                if not 0 <= r < nrows:
                    raise IndexError(f"row index {r} out of range for {nrows} rows")
                if v:
                    clean[r] = v
            cols.append(clean)
        self._cols = tuple(cols)

    @classmethod
    def _trusted(cls, nrows: int, ncols: int, cols) -> "SparseMat":
        """Build without re-validating (columns already clean and in range)."""
        m = cls.__new__(cls)
        m.nrows = nrows
        m.ncols = ncols
        m._cols = tuple(cols)
        return m

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Dict[Tuple[int, int], Number]) -> "SparseMat":
        cols = [{} for _ in range(ncols)]
        for (r, c), v in entries.items():
            if not 0 <= c < ncols:
                raise IndexError(f"column index {c} out of range for {ncols} columns")
            cols[c][r] = v
        return cls(nrows, ncols, cols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Number]]) -> "SparseMat":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [{r: rows[r][c] for r in range(nrows) if rows[r][c]} for c in range(ncols)]
        return cls(nrows, ncols, cols)

    @classmethod
    def identity(cls, n: int) -> "SparseMat":
        return cls._trusted(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMat":
        return cls._trusted(nrows, ncols, [{} for _ in range(ncols)])

    def column(self, c: int) -> Dict[int, Number]:
        return dict(self._cols[c])

    def columns(self) -> Iterable[Dict[int, Number]]:
        return iter(self._cols)

    @property
    def entries(self) -> Dict[Tuple[int, int], Number]:
        return {(r, c): v for c, col in enumerate(self._cols) for r, v in col.items()}

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self._cols)

    def transpose(self) -> "SparseMat":
        rows = [{} for _ in range(self.nrows)]
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                rows[r][c] = v
        return SparseMat._trusted(self.ncols, self.nrows, rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMat":
        """Restrict to the given row and column indices (in the given order)."""
        row_pos = {r: k for k, r in enumerate(rows)}
        out = []
        for c in cols:
            col = self._cols[c]
            out.append({row_pos[r]: v for r, v in col.items() if r in row_pos})
        return SparseMat._trusted(len(rows), len(cols), out)

    def matmul(self, other: "SparseMat") -> "SparseMat":
        """self @ other."""
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        out = []
        for col in other._cols:
            acc: Dict[int, Number] = {}
            for k, v in col.items():
                for r, w in self._cols[k].items():
                    acc[r] = acc.get(r, 0) + w * v
            out.append({r: v for r, v in acc.items() if v})
        return SparseMat._trusted(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return all(not col for col in self._cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def to_dense(self) -> List[List[Number]]:
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                rows[r][c] = v
        return rows

    def __eq__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(sorted(c.items())) for c in self._cols)))

    def __repr__(self):
        return f"SparseMat({self.nrows}x{self.ncols}, nnz={self.nnz})"

    def __reduce__(self):
        return (SparseMat._trusted, (self.nrows, self.ncols, list(self._cols)))


def _primitive(vec: Dict[int, Number]) -> Dict[int, int]:
    """Scale a rational vector to a primitive integer vector (same span)."""
    if any(isinstance(v, Fraction) and v.denominator != 1 for v in vec.values()):
        lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (Fraction(v).denominator for v in vec.values()), 1)
        vec = {k: int(Fraction(v) * lcm) for k, v in vec.items()}
    else:
        vec = {k: int(v) for k, v in vec.items()}
    g = reduce(math.gcd, vec.values(), 0)
    if g > 1:
        vec = {k: v // g for k, v in vec.items()}
    return vec


def _echelon_rank(vectors: List[Dict[int, int]], counts: Dict[int, int]) -> int:
    pivots: Dict[int, Tuple[int, Dict[int, int]]] = {}

    for vec in sorted(vectors, key=len):
        if not vec:
            continue
        v = dict(vec)
        heap = [(pivots[c][0], c) for c in v if c in pivots]
        heapq.heapify(heap)
        while heap:
            _, c = heapq.heappop(heap)
            vc = v.get(c)
            if vc is None:
                continue
            _, p = pivots[c]
            pc = p[c]
            g = math.gcd(pc, vc)
            mv, mp = pc // g, vc // g
            if mv != 1:
                if mv == -1:
                    v = {k: -x for k, x in v.items()}
                else:
                    v = {k: mv * x for k, x in v.items()}
            for k, x in p.items():
                y = v.get(k, 0) - mp * x
                if y:
                    if k not in v and k in pivots and k != c:
                        heapq.heappush(heap, (pivots[k][0], k))
                    v[k] = y
                else:
                    v.pop(k, None)
            if not v:
                break
            if mv not in (1, -1):
                content = reduce(math.gcd, v.values(), 0)
                if content > 1:
                    v = {k: x // content for k, x in v.items()}
        if v:
            col = min(v, key=lambda k: (counts.get(k, 0), abs(v[k])))
            pivots[col] = (len(pivots), v)
    return len(pivots)


def rank(m: SparseMat) -> int:
    """Rank over the rational field."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    start = time.perf_counter()
    # eliminate along the shorter side
    source = m if m.ncols <= m.nrows else m.transpose()
    vectors = [_primitive(col) for col in source.columns() if col]
    counts: Dict[int, int] = {}
    for vec in vectors:
        for k in vec:
            counts[k] = counts.get(k, 0) + 1
    result = _echelon_rank(vectors, counts)
    telemetry.record_elimination((time.perf_counter() - start) * 1000, m.nrows + m.ncols)
    return result


def kernel_dim(m: SparseMat) -> int:
    return m.ncols - rank(m)


def dense_rank(m: SparseMat) -> int:
    """Naive dense Gaussian elimination over Fractions (small-instance oracle)."""
    rows = [[Fraction(x) for x in row] for row in m.to_dense()]
    r = 0
    for c in range(m.ncols):
        pivot = next((i for i in range(r, m.nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(m.nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def ranks(matrices: Sequence[SparseMat], workers: int = 1) -> List[int]:
    """Ranks of independent matrices, optionally across a process pool (order preserved)."""
    if workers <= 1 or len(matrices) < 2:
        return [rank(m) for m in matrices]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(rank, matrices, chunksize=max(1, len(matrices) // (4 * workers))))
