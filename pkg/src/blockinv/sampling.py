"""Random instances for experiments and property tests."""

from __future__ import annotations

import random

import gmpy2

from .block import PartitionedMatrix
from .errors import NotInvertible
from .inverse import BlockTriangularMatrix, PerturbationBlock
from .matrix import Mat, mat_invert
from .quasidet import HessenbergGrid
from .ring import Quaternion, QuaternionRing


def random_rational(rng: random.Random, num: int = 3, den: int = 2):
    return gmpy2.mpq(rng.randint(-num, num), rng.randint(1, den))


def random_quaternion(rng: random.Random, num: int = 3, den: int = 2) -> Quaternion:
    return Quaternion(*(random_rational(rng, num, den) for _ in range(4)))


def random_mat(rng: random.Random, ring: QuaternionRing, nrows: int, ncols: int, **kw) -> Mat:
    return Mat(ring, [[random_quaternion(rng, **kw) for _ in range(ncols)] for _ in range(nrows)])


def random_invertible(rng: random.Random, ring: QuaternionRing, size: int, max_tries: int = 100, **kw) -> Mat:
    """Resample until the matrix inverts."""
    for _ in range(max_tries):
        m = random_mat(rng, ring, size, size, **kw)
        try:
            mat_invert(m)
        except NotInvertible:
            continue
        return m
    raise RuntimeError(f"no invertible {size}x{size} sample in {max_tries} tries")


def random_sizes(rng: random.Random, n: int, max_size: int = 3) -> list[int]:
    return [rng.randint(1, max_size) for _ in range(n)]


def random_block_triangular(
    rng: random.Random, n: int, sizes=None, max_size: int = 3, ring: QuaternionRing | None = None, **kw
) -> BlockTriangularMatrix:
    ring = ring or QuaternionRing()
    sizes = list(sizes) if sizes is not None else random_sizes(rng, n, max_size)
    grid = [
        [
            random_invertible(rng, ring, sizes[j], **kw)
            if j == k
            else random_mat(rng, ring, sizes[j], sizes[k], **kw)
            if j < k
            else None
            for k in range(n)
        ]
        for j in range(n)
    ]
    return BlockTriangularMatrix(PartitionedMatrix.from_blocks(grid, sizes, sizes, ring))


def random_hessenberg(
    rng: random.Random, n: int, max_size: int = 3, ring: QuaternionRing | None = None, unit: bool = False, **kw
) -> HessenbergGrid:
    """Random grid with sizes ``s_0..s_n``; ``unit`` makes every subdiagonal block an identity."""
    ring = ring or QuaternionRing()
    s = random_sizes(rng, n + 1, max_size)
    rows, cols = s[:n], s[1:]
    grid = []
    for r in range(n):  # conventional row r
        row = []
        for c in range(1, n + 1):
            if r > c:
                row.append(None)
            elif r == c:
                row.append(Mat.identity(ring, s[c]) if unit else random_invertible(rng, ring, s[c], **kw))
            else:
                row.append(random_mat(rng, ring, s[r], s[c], **kw))
        grid.append(row)
    return HessenbergGrid(PartitionedMatrix.from_blocks(grid, rows, cols, ring))


def random_perturbation(rng: random.Random, m: BlockTriangularMatrix, split: int | None = None, **kw) -> PerturbationBlock:
    n = m.n
    l = split if split is not None else rng.randint(1, n - 1)
    sizes = m.partition.sizes
    grid = [[random_mat(rng, m.ring, sizes[j], sizes[k], **kw) for k in range(l, n)] for j in range(l)]
    return PerturbationBlock(PartitionedMatrix.from_blocks(grid, sizes[:l], sizes[l:], m.ring), l)


def corpus(seed: int, count: int, max_n: int = 8, max_size: int = 3, **kw) -> list[BlockTriangularMatrix]:
    """Reproducible list of random exact quaternion block triangular matrices."""
    rng = random.Random(seed)
    return [random_block_triangular(rng, rng.randint(1, max_n), max_size=max_size, **kw) for _ in range(count)]
