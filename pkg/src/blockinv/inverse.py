"""Inverses of block upper triangular matrices over noncommutative rings.

Three independent routes to the same inverse:

* :func:`inverse_explicit` -- each block from one Hessenberg quasideterminant
  of the sub-grid strictly between its diagonal blocks;
* :func:`inverse_recursive` -- each block from a bilinear recurrence on
  already computed inverse blocks, for any split point ``l``;
* :func:`inverse_iterative` -- repeated 2x2 block splitting, used as the
  reference implementation in tests.

Plus the update of the inverse under an additive perturbation of the upper
right rectangle (:func:`perturbation_delta`, :func:`perturbed_inverse`).

All inverses are returned as :class:`~blockinv.block.PartitionedMatrix`
objects sharing the input's partition (aliased as :data:`BlockInverse`).
"""

from __future__ import annotations

from typing import Callable, Union

from .block import BlockPartition, PartitionedMatrix
from .errors import DimensionMismatch, IndexOutOfRange, InvalidSplit, NotInvertible, TriangularityError
from .matrix import Mat, mat_invert
from .quasidet import HessenbergGrid, hessenberg_qdet

BlockInverse = PartitionedMatrix

SplitChoice = Union[int, Callable[[int, int], int]]


class BlockTriangularMatrix:
    """A square block grid with zero blocks below the diagonal and invertible diagonal blocks."""

    __slots__ = ("grid", "_inv")

    def __init__(self, grid: PartitionedMatrix, scale: float = 1.0):
        if grid.row_partition != grid.col_partition:
            raise DimensionMismatch(
                f"row partition {list(grid.row_partition.sizes)} differs from "
                f"column partition {list(grid.col_partition.sizes)}"
            )
        n = grid.n_rows
        for j in range(2, n + 1):
            for k in range(1, j):
                if not grid.block(j, k).is_zero(scale):
                    raise TriangularityError(f"block ({j},{k}) below the diagonal is nonzero", block=[j, k])
        inv = {}
        for k in range(1, n + 1):
            try:
                inv[k] = mat_invert(grid.block(k, k))
            except NotInvertible as exc:
                raise NotInvertible(f"diagonal block M_{k}{k} is not invertible: {exc}", block=[k, k]) from exc
        self.grid = grid
        self._inv = inv

    @classmethod
    def from_blocks(cls, blocks, sizes=None, ring=None) -> "BlockTriangularMatrix":
        return cls(PartitionedMatrix.from_blocks(blocks, sizes, sizes, ring))

    @property
    def n(self) -> int:
        return self.grid.n_rows

    @property
    def ring(self):
        return self.grid.ring

    @property
    def partition(self) -> BlockPartition:
        return self.grid.row_partition

    def block(self, j: int, k: int) -> Mat:
        return self.grid.block(j, k)

    def inv(self, k: int) -> Mat:
        """Inverse of diagonal block ``k``."""
        return self._inv[k]

    def _zero(self, j: int, k: int) -> Mat:
        return Mat.zeros(self.ring, self.partition[j], self.partition[k])

    def _check_index(self, j: int, k: int):
        if not (1 <= j <= self.n and 1 <= k <= self.n):
            raise IndexOutOfRange(f"block ({j},{k}) outside 1..{self.n}", block=[j, k])


def _assemble(m: BlockTriangularMatrix, blocks: dict) -> BlockInverse:
    n = m.n
    grid = [[blocks.get((j, k)) for k in range(1, n + 1)] for j in range(1, n + 1)]
    sizes = m.partition.sizes
    return PartitionedMatrix.from_blocks(grid, sizes, sizes, m.ring)


def inverse_block_explicit(m: BlockTriangularMatrix, j: int, k: int) -> Mat:
    """Block ``(j, k)`` of ``M^-1``.

    For ``j < k`` this is ``-M_jj^-1 |M^(j,j+1)_[k-j]| M_kk^-1``, where the
    sub-grid has block rows ``j..k-1`` and block columns ``j+1..k``.
    """
    m._check_index(j, k)
    if j > k:
        return m._zero(j, k)
    if j == k:
        return m.inv(k)
    hess = HessenbergGrid(
        m.grid.sub_grid(j, j + 1, k - j),
        {c: m.inv(j + c) for c in range(1, k - j)},
        check=False,
    )
    return -(m.inv(j) * hessenberg_qdet(hess) * m.inv(k))


def inverse_explicit(m: BlockTriangularMatrix) -> BlockInverse:
    n = m.n
    blocks = {(j, k): inverse_block_explicit(m, j, k) for j in range(1, n + 1) for k in range(j, n + 1)}
    return _assemble(m, blocks)


def inverse_iterative(m: BlockTriangularMatrix) -> BlockInverse:
    """Peel off the first block row repeatedly using the 2x2 formula.

    ``[[A, B], [0, D]]^-1 = [[A^-1, -A^-1 B D^-1], [0, D^-1]]``, with ``D^-1``
    built bottom-up as a dense matrix.
    """
    n = m.n
    part = m.partition
    d_inv = m.inv(n)
    for a in range(n - 1, 0, -1):
        b = m.grid.sub_grid(a, a + 1, 1, n - a).data
        top = -(m.inv(a) * b * d_inv)
        zeros = Mat.zeros(m.ring, d_inv.nrows, part[a])
        d_inv = Mat.vstack([Mat.hstack([m.inv(a), top]), Mat.hstack([zeros, d_inv])])
    return PartitionedMatrix(d_inv, part, part)


def _split_for(l_choice: SplitChoice, j: int, k: int) -> int:
    if callable(l_choice):
        l = l_choice(j, k)
        if not 1 <= l <= k - j:
            raise InvalidSplit(f"split {l} for block ({j},{k}) outside 1..{k - j}", block=[j, k], split=l)
        return l
    if l_choice < 1:
        raise InvalidSplit(f"constant split must be positive, got {l_choice}", split=l_choice)
    # a constant larger than the span is clamped to the widest valid split
    return min(l_choice, k - j)


def inverse_recursive(m: BlockTriangularMatrix, l_choice: SplitChoice = 1) -> BlockInverse:
    """Fill ``M^-1`` by super-diagonals using the bilinear block recurrence.

    ``M^-_jk = - sum_{p<l} sum_{q>=l} M^-_j,j+p  M_j+p,j+q  M^-_j+q,k`` for any
    ``1 <= l <= k-j``. ``l_choice`` is either a constant (clamped to ``k-j``)
    or a callable ``(j, k) -> l``.
    """
    n = m.n
    inv = {(k, k): m.inv(k) for k in range(1, n + 1)}
    for d in range(1, n):
        for j in range(1, n - d + 1):
            k = j + d
            l = _split_for(l_choice, j, k)
            acc = None
            for p in range(l):
                left = inv[(j, j + p)]
                for q in range(l, d + 1):
                    term = left * m.block(j + p, j + q) * inv[(j + q, k)]
                    acc = term if acc is None else acc + term
            inv[(j, k)] = -acc
    return _assemble(m, inv)


class PerturbationBlock:
    """Additive change ``E`` to the rectangle of block rows ``1..l`` and block columns ``l+1..n``.

    ``E`` is indexed locally: its block ``(j, k)`` perturbs ``M_{j, l+k}``.
    """

    __slots__ = ("grid", "split")

    def __init__(self, grid: PartitionedMatrix, split: int):
        if split < 1:
            raise InvalidSplit(f"split must be at least 1, got {split}", split=split)
        if grid.n_rows != split:
            raise DimensionMismatch(f"perturbation has {grid.n_rows} block rows, split is {split}")
        self.grid = grid
        self.split = split

    def check_against(self, partition: BlockPartition):
        n, l = len(partition), self.split
        if not 1 <= l <= n - 1:
            raise InvalidSplit(f"split {l} outside 1..{n - 1}", split=l)
        want_rows, want_cols = partition.sub(1, l), partition.sub(l + 1, n - l)
        if self.grid.row_partition != want_rows or self.grid.col_partition != want_cols:
            raise DimensionMismatch(
                f"perturbation partitions {list(self.grid.row_partition.sizes)} x "
                f"{list(self.grid.col_partition.sizes)} do not match {list(want_rows.sizes)} x "
                f"{list(want_cols.sizes)}",
                split=l,
            )


def perturbation_delta(m_inv: BlockInverse, e: PerturbationBlock, j: int, k: int) -> Mat:
    """Change of inverse block ``(j, k)`` caused by ``e``; zero unless ``j <= l < k``."""
    part = m_inv.row_partition
    e.check_against(part)
    n, l = len(part), e.split
    if not (1 <= j <= n and 1 <= k <= n):
        raise IndexOutOfRange(f"block ({j},{k}) outside 1..{n}", block=[j, k])
    if not (j <= l < k):
        return Mat.zeros(m_inv.ring, part[j], part[k])
    left = Mat.hstack([m_inv.block(j, c) for c in range(j, l + 1)])
    mid = e.grid.sub_grid(j, 1, l - j + 1, k - l).data
    right = Mat.vstack([m_inv.block(r, k) for r in range(l + 1, k + 1)])
    return -(left * mid * right)


def perturbation_deltas(m_inv: BlockInverse, e: PerturbationBlock) -> PartitionedMatrix:
    """All deltas as one block grid with the inverse's partition."""
    n = m_inv.n_rows
    grid = [[perturbation_delta(m_inv, e, j, k) for k in range(1, n + 1)] for j in range(1, n + 1)]
    sizes = m_inv.row_partition.sizes
    return PartitionedMatrix.from_blocks(grid, sizes, sizes, m_inv.ring)


def apply_perturbation(m: BlockTriangularMatrix, e: PerturbationBlock) -> BlockTriangularMatrix:
    """The perturbed matrix, formed directly."""
    e.check_against(m.partition)
    l = e.split
    grid = m.grid
    for j in range(1, l + 1):
        for k in range(l + 1, m.n + 1):
            grid = grid.with_block(j, k, grid.block(j, k) + e.grid.block(j, k - l))
    return BlockTriangularMatrix(grid)


def perturbed_inverse(m: BlockTriangularMatrix, e: PerturbationBlock, m_inv: BlockInverse | None = None) -> BlockInverse:
    """Inverse of the perturbed matrix as ``M^-1`` plus the block deltas."""
    e.check_against(m.partition)
    if m_inv is None:
        m_inv = inverse_explicit(m)
    deltas = perturbation_deltas(m_inv, e)
    return PartitionedMatrix(m_inv.data + deltas.data, m_inv.row_partition, m_inv.col_partition)
