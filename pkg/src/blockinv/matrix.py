"""Dense matrices over an arbitrary (noncommutative) ring.

A :class:`Mat` carries its :class:`~blockinv.ring.Ring` so that algorithms can
ask for zeros, identities and inverses without knowing the element type.
Square matrices of a fixed size form a ring of their own
(:class:`MatrixRing`), so a ``Mat`` may hold ``Mat`` entries and every
algorithm here still applies.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotInvertible, TriangularityError
from .ring import QuaternionRing, Ring


class Mat:
    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows: Iterable[Iterable]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        self.ring = ring
        self.rows = rows

    @classmethod
    def from_rows(cls, ring: Ring, rows) -> "Mat":
        """Build a matrix, coercing every literal through ``ring.coerce``."""
        return cls(ring, [[ring.coerce(x) for x in row] for row in rows])

    @classmethod
    def zeros(cls, ring: Ring, nrows: int, ncols: int) -> "Mat":
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Mat":
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, ring: Ring, x) -> "Mat":
        return cls(ring, [[x]])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"Mat[{self.nrows}x{self.ncols}]([{body}])"

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def _check_same_shape(self, other: "Mat", op: str):
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot {op} {self.shape} and {other.shape} matrices")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other, "add")
        return Mat(self.ring, [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other, "subtract")
        return Mat(self.ring, [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat(self.ring, [[-x for x in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Mat):
            return mat_mul(self, other)
        return NotImplemented

    __matmul__ = __mul__

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self, scale: float = 1.0) -> bool:
        return all(self.ring.is_zero(x, scale) for row in self.rows for x in row)

    def norm(self) -> float:
        """Frobenius-style norm built from the ring's element magnitudes."""
        mag = self.ring.magnitude
        return math.sqrt(sum(mag(x) ** 2 for row in self.rows for x in row))

    def slice(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        """Rows ``r0:r1`` and columns ``c0:c1`` (0-based, half-open)."""
        return Mat(self.ring, [row[c0:c1] for row in self.rows[r0:r1]])

    def map(self, fn, ring: Ring) -> "Mat":
        return Mat(ring, [[fn(x) for x in row] for row in self.rows])

    def to_float(self, tolerance: float | None = None) -> "Mat":
        """Quaternion matrices only: convert exact entries to floats."""
        if not isinstance(self.ring, QuaternionRing):
            raise TypeError("float conversion is only defined for quaternion matrices")
        ring = QuaternionRing(exact=False) if tolerance is None else QuaternionRing(False, tolerance)
        return self.map(lambda q: q.to_float(), ring)

    @staticmethod
    def hstack(mats: Sequence["Mat"]) -> "Mat":
        if len({m.nrows for m in mats}) != 1:
            raise DimensionMismatch("hstack needs equal row counts")
        return Mat(mats[0].ring, [sum((m.rows[i] for m in mats), ()) for i in range(mats[0].nrows)])

    @staticmethod
    def vstack(mats: Sequence["Mat"]) -> "Mat":
        if len({m.ncols for m in mats}) != 1:
            raise DimensionMismatch("vstack needs equal column counts")
        return Mat(mats[0].ring, [row for m in mats for row in m.rows])


def mat_mul(a: Mat, b: Mat) -> Mat:
    """Product with every term formed as ``a[i][j] * b[j][k]`` in that order."""
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if a.ring != b.ring:
        raise DimensionMismatch(f"ring mismatch: {a.ring!r} vs {b.ring!r}")
    cols = list(zip(*b.rows))
    out = []
    for row in a.rows:
        new_row = []
        for col in cols:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            new_row.append(acc)
        out.append(new_row)
    return Mat(a.ring, out)


def mat_invert(a: Mat) -> Mat:
    """Two-sided inverse by Gauss-Jordan elimination using left row operations.

    Exact rings take the first invertible entry at or below the diagonal as
    pivot. Inexact rings take the largest entry whose magnitude exceeds the
    ring tolerance relative to the largest entry of ``a``. Over rings that are
    not skew fields a failed pivot search does not prove singularity, hence
    the wording of the error.
    """
    if not a.is_square():
        raise DimensionMismatch(f"cannot invert non-square {a.shape} matrix")
    ring = a.ring
    n = a.nrows
    one, zero = ring.one(), ring.zero()
    work = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(a.rows)]
    scale = 1.0
    if not ring.exact:
        scale = max(max(ring.magnitude(x) for row in a.rows for x in row), 1e-300)

    for col in range(n):
        pivot_row, pivot_inv = None, None
        if ring.exact:
            for r in range(col, n):
                inv = ring.try_invert(work[r][col])
                if inv is not None:
                    pivot_row, pivot_inv = r, inv
                    break
        else:
            best = ring.tolerance * scale
            for r in range(col, n):
                m = ring.magnitude(work[r][col])
                if m > best:
                    best, pivot_row = m, r
            if pivot_row is not None:
                pivot_inv = ring.try_invert(work[pivot_row][col])
                if pivot_inv is None:
                    pivot_row = None
        if pivot_row is None:
            raise NotInvertible(f"no invertible pivot found in column {col + 1}", column=col + 1)
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
        prow = [pivot_inv * x for x in work[col]]
        work[col] = prow
        for r in range(n):
            if r == col:
                continue
            f = work[r][col]
            if f == zero:
                continue
            work[r] = [x - f * y for x, y in zip(work[r], prow)]
    return Mat(ring, [row[n:] for row in work])


class MatrixRing(Ring):
    """Square ``size x size`` matrices over ``base``, viewed as ring elements."""

    def __init__(self, base: Ring, size: int):
        self.base = base
        self.size = size
        self.exact = base.exact
        self.tolerance = base.tolerance
        self._zero = Mat.zeros(base, size, size)
        self._one = Mat.identity(base, size)

    def __repr__(self):
        return f"MatrixRing({self.base!r}, {self.size})"

    def __eq__(self, other):
        return isinstance(other, MatrixRing) and self.base == other.base and self.size == other.size

    def __hash__(self):
        return hash((MatrixRing, self.base, self.size))

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def coerce(self, value):
        if isinstance(value, Mat):
            return value
        return Mat.from_rows(self.base, value)

    def magnitude(self, x: Mat) -> float:
        return x.norm()

    def is_zero(self, x: Mat, scale: float = 1.0) -> bool:
        return x.is_zero(scale)

    def try_invert(self, x: Mat):
        try:
            return mat_invert(x)
        except NotInvertible:
            return None


def solve_block_upper_triangular(t, b: Mat, diag_inverses=None) -> Mat:
    """Solve ``t @ x = b`` for block upper triangular ``t`` by back-substitution.

    ``t`` is a :class:`~blockinv.block.PartitionedMatrix`; ``diag_inverses``
    optionally maps a block index ``k`` to a precomputed inverse of ``t[k, k]``.
    The dense inverse of ``t`` is never formed.
    """
    part = t.row_partition
    if part != t.col_partition:
        raise DimensionMismatch("block triangular solve needs equal row and column partitions")
    if b.nrows != part.total:
        raise DimensionMismatch(f"right-hand side has {b.nrows} rows, expected {part.total}")
    n = len(part)
    for j in range(2, n + 1):
        for k in range(1, j):
            if not t.block(j, k).is_zero():
                raise TriangularityError(f"block ({j},{k}) below the diagonal is nonzero", block=[j, k])
    rhs = [b.slice(part.offset(k), part.offset(k + 1), 0, b.ncols) for k in range(1, n + 1)]
    x = [None] * n
    for i in range(n, 0, -1):
        acc = rhs[i - 1]
        for k in range(i + 1, n + 1):
            acc = acc - t.block(i, k) * x[k - 1]
        if diag_inverses is not None and i in diag_inverses:
            inv = diag_inverses[i]
        else:
            try:
                inv = mat_invert(t.block(i, i))
            except NotInvertible as exc:
                raise NotInvertible(f"diagonal block {i} is not invertible: {exc}", block=i) from exc
        x[i - 1] = inv * acc
    return Mat.vstack(x)


def blocks_close(a: Mat, b: Mat, rtol: float = 1e-8) -> bool:
    """Exact rings: equality. Inexact rings: ``|a - b| <= rtol * max(|a|, |b|)`` in the Frobenius-style norm."""
    if a.shape != b.shape:
        return False
    if a.ring.exact and b.ring.exact:
        return a == b
    return (a - b).norm() <= rtol * max(a.norm(), b.norm())
