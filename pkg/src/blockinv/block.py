"""Block partitions and partitioned matrices.

Block indices are 1-based throughout, so ``P.block(1, 1)`` is the top-left
block. Every accessor returns a copy; nothing aliases the parent.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence

from .errors import DegenerateResult, DimensionMismatch, IndexOutOfRange
from .matrix import Mat
from .ring import Ring


@dataclass(frozen=True)
class BlockPartition:
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes:
            raise DimensionMismatch("a partition needs at least one block")
        if any(s < 1 for s in sizes):
            raise DimensionMismatch(f"block sizes must be positive, got {list(sizes)}")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "_offsets", (0, *accumulate(sizes)))

    def __len__(self) -> int:
        return len(self.sizes)

    def __getitem__(self, k: int) -> int:
        """Size of block ``k`` (1-based)."""
        self._check(k)
        return self.sizes[k - 1]

    @property
    def total(self) -> int:
        return self._offsets[-1]

    def offset(self, k: int) -> int:
        """0-based start of block ``k``; ``offset(n + 1)`` is the total size."""
        return self._offsets[k - 1]

    def _check(self, k: int):
        if not 1 <= k <= len(self.sizes):
            raise IndexOutOfRange(f"block index {k} outside 1..{len(self.sizes)}", index=k)

    def sub(self, start: int, count: int) -> "BlockPartition":
        if count < 1 or start < 1 or start + count - 1 > len(self.sizes):
            raise IndexOutOfRange(
                f"block range {start}..{start + count - 1} outside 1..{len(self.sizes)}",
                start=start,
                count=count,
            )
        return BlockPartition(self.sizes[start - 1 : start - 1 + count])

    def without(self, k: int) -> "BlockPartition":
        self._check(k)
        return BlockPartition(self.sizes[: k - 1] + self.sizes[k:])


def _as_partition(p) -> BlockPartition:
    return p if isinstance(p, BlockPartition) else BlockPartition(tuple(p))


class PartitionedMatrix:
    """A dense matrix together with row and column block partitions."""

    __slots__ = ("data", "row_partition", "col_partition")

    def __init__(self, data: Mat, row_partition, col_partition=None):
        row_partition = _as_partition(row_partition)
        col_partition = row_partition if col_partition is None else _as_partition(col_partition)
        if row_partition.total != data.nrows or col_partition.total != data.ncols:
            raise DimensionMismatch(
                f"partitions {list(row_partition.sizes)} x {list(col_partition.sizes)} "
                f"do not fit a {data.nrows}x{data.ncols} matrix"
            )
        self.data = data
        self.row_partition = row_partition
        self.col_partition = col_partition

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[Mat | None]], row_sizes=None, col_sizes=None, ring: Ring | None = None):
        """Assemble from a grid of blocks; ``None`` entries become zero blocks.

        Sizes are inferred from the non-``None`` blocks unless given.
        """
        nr, nc = len(blocks), len(blocks[0])
        rs = list(row_sizes) if row_sizes is not None else [None] * nr
        cs = list(col_sizes) if col_sizes is not None else [None] * nc
        for j, row in enumerate(blocks):
            if len(row) != nc:
                raise DimensionMismatch("ragged block grid")
            for k, b in enumerate(row):
                if b is None:
                    continue
                ring = ring or b.ring
                for sizes, idx, got in ((rs, j, b.nrows), (cs, k, b.ncols)):
                    if sizes[idx] is None:
                        sizes[idx] = got
                    elif sizes[idx] != got:
                        raise DimensionMismatch(f"block ({j + 1},{k + 1}) has inconsistent shape {b.shape}")
        if None in rs or None in cs or ring is None:
            raise DimensionMismatch("cannot infer every block size; pass row_sizes/col_sizes")
        rows = []
        for j, row in enumerate(blocks):
            filled = [b if b is not None else Mat.zeros(ring, rs[j], cs[k]) for k, b in enumerate(row)]
            rows.extend(Mat.hstack(filled).rows)
        return cls(Mat(ring, rows), rs, cs)

    @property
    def ring(self) -> Ring:
        return self.data.ring

    @property
    def n_rows(self) -> int:
        return len(self.row_partition)

    @property
    def n_cols(self) -> int:
        return len(self.col_partition)

    def __eq__(self, other):
        if not isinstance(other, PartitionedMatrix):
            return NotImplemented
        return (
            self.data == other.data
            and self.row_partition == other.row_partition
            and self.col_partition == other.col_partition
        )

    def __hash__(self):
        return hash((self.data, self.row_partition, self.col_partition))

    def __repr__(self):
        return (
            f"PartitionedMatrix({self.n_rows}x{self.n_cols} blocks, rows={list(self.row_partition.sizes)}, "
            f"cols={list(self.col_partition.sizes)})"
        )

    def _check(self, j: int, k: int):
        if not (1 <= j <= self.n_rows and 1 <= k <= self.n_cols):
            raise IndexOutOfRange(
                f"block ({j},{k}) outside the {self.n_rows}x{self.n_cols} block grid", block=[j, k]
            )

    def block(self, j: int, k: int) -> Mat:
        self._check(j, k)
        r, c = self.row_partition, self.col_partition
        return self.data.slice(r.offset(j), r.offset(j + 1), c.offset(k), c.offset(k + 1))

    def __getitem__(self, jk) -> Mat:
        return self.block(*jk)

    def block_row(self, j: int) -> list[Mat]:
        self._check(j, 1)
        return [self.block(j, k) for k in range(1, self.n_cols + 1)]

    def block_col(self, k: int) -> list[Mat]:
        self._check(1, k)
        return [self.block(j, k) for j in range(1, self.n_rows + 1)]

    def blocks(self) -> list[list[Mat]]:
        return [self.block_row(j) for j in range(1, self.n_rows + 1)]

    def sub_grid(self, v: int, w: int, j: int, k: int | None = None) -> "PartitionedMatrix":
        """Block rows ``v..v+j-1`` and block columns ``w..w+k-1``; ``k`` defaults to ``j``."""
        k = j if k is None else k
        if j < 1 or k < 1 or v < 1 or w < 1 or v + j - 1 > self.n_rows or w + k - 1 > self.n_cols:
            raise IndexOutOfRange(
                f"sub-grid rows {v}..{v + j - 1}, cols {w}..{w + k - 1} outside the "
                f"{self.n_rows}x{self.n_cols} block grid",
                origin=[v, w],
                extent=[j, k],
            )
        r, c = self.row_partition, self.col_partition
        data = self.data.slice(r.offset(v), r.offset(v + j), c.offset(w), c.offset(w + k))
        return PartitionedMatrix(data, r.sub(v, j), c.sub(w, k))

    def leading(self, k: int) -> "PartitionedMatrix":
        """The leading ``k x k`` block grid."""
        return self.sub_grid(1, 1, k, k)

    def delete_row_col(self, j: int, k: int) -> "PartitionedMatrix":
        """Drop block row ``j`` and block column ``k``."""
        self._check(j, k)
        if self.n_rows < 2 or self.n_cols < 2:
            raise DegenerateResult("deleting a block row and column would leave an empty grid", block=[j, k])
        r, c = self.row_partition, self.col_partition
        rows = self.data.rows[: r.offset(j)] + self.data.rows[r.offset(j + 1) :]
        c0, c1 = c.offset(k), c.offset(k + 1)
        data = Mat(self.ring, [row[:c0] + row[c1:] for row in rows])
        return PartitionedMatrix(data, r.without(j), c.without(k))

    def with_block(self, j: int, k: int, value: Mat) -> "PartitionedMatrix":
        """Copy with block ``(j, k)`` replaced."""
        self._check(j, k)
        r, c = self.row_partition, self.col_partition
        if value.shape != (r[j], c[k]):
            raise DimensionMismatch(f"block ({j},{k}) must be {r[j]}x{c[k]}, got {value.shape}")
        rows = [list(row) for row in self.data.rows]
        for i, vrow in enumerate(value.rows):
            rows[r.offset(j) + i][c.offset(k) : c.offset(k + 1)] = vrow
        return PartitionedMatrix(Mat(self.ring, rows), r, c)

    def map(self, fn, ring: Ring) -> "PartitionedMatrix":
        return PartitionedMatrix(self.data.map(fn, ring), self.row_partition, self.col_partition)

    def to_float(self, tolerance: float | None = None) -> "PartitionedMatrix":
        return PartitionedMatrix(self.data.to_float(tolerance), self.row_partition, self.col_partition)

    def is_block_upper_triangular(self, scale: float = 1.0) -> bool:
        return all(
            self.block(j, k).is_zero(scale)
            for j in range(2, self.n_rows + 1)
            for k in range(1, min(j, self.n_cols + 1))
        )


def block(p: PartitionedMatrix, j: int, k: int) -> Mat:
    return p.block(j, k)


def sub_grid(p: PartitionedMatrix, v: int, w: int, j: int, k: int | None = None) -> PartitionedMatrix:
    return p.sub_grid(v, w, j, k)


def delete_row_col(p: PartitionedMatrix, j: int, k: int) -> PartitionedMatrix:
    return p.delete_row_col(j, k)


def block_row(p: PartitionedMatrix, j: int) -> list[Mat]:
    return p.block_row(j)


def block_col(p: PartitionedMatrix, k: int) -> list[Mat]:
    return p.block_col(k)
