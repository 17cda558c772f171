"""An 8x8 quaternion matrix in 5x5 block upper triangular form, plus a perturbation.

Block sizes are ``(1, 2, 1, 3, 1)``. The perturbation touches block rows
1..3 and block columns 4..5 (split ``l = 3``).
"""

from __future__ import annotations

from .block import PartitionedMatrix
from .inverse import BlockTriangularMatrix, PerturbationBlock
from .matrix import Mat
from .ring import QuaternionRing

SIZES = (1, 2, 1, 3, 1)
SPLIT = 3

UPPER_BLOCKS = {
    (1, 1): [["i+k"]],
    (1, 2): [["1+i-2j+k", "2-i"]],
    (1, 3): [["2-3i+4k"]],
    (1, 4): [["3+2i-5j-k", "2-j", "4"]],
    (1, 5): [["2+k"]],
    (2, 2): [["i", "j"], ["1", "k"]],
    (2, 3): [["1+k"], ["3-i+j"]],
    (2, 4): [["i-j", "5+i-k", "4-i"], ["4+2j+k", "4", "2-3i+j+2k"]],
    (2, 5): [["3+j"], ["1+j-k"]],
    (3, 3): [["2+i-k"]],
    (3, 4): [["-j+2k", "3i-j+2k", "6-4k"]],
    (3, 5): [["1+i"]],
    (4, 4): [["1", "0", "i"], ["1-k", "j", "0"], ["k", "0", "0"]],
    (4, 5): [["2+j"], ["1-i"], ["5k"]],
    (5, 5): [["1+2i+j-k"]],
}

# keyed by the block of M they perturb; local index is (j, k - SPLIT)
PERTURBATION_BLOCKS = {
    (1, 4): [["i", "i", "i"]],
    (1, 5): [["i"]],
    (2, 4): [["j", "j", "j"], ["i+j+k", "i+j+k", "i+j+k"]],
    (2, 5): [["j"], ["i+j+k"]],
    (3, 4): [["k", "k", "k"]],
    (3, 5): [["k"]],
}


def example_grid(ring: QuaternionRing | None = None) -> PartitionedMatrix:
    ring = ring or QuaternionRing()
    n = len(SIZES)
    grid = [
        [Mat.from_rows(ring, UPPER_BLOCKS[(j, k)]) if (j, k) in UPPER_BLOCKS else None for k in range(1, n + 1)]
        for j in range(1, n + 1)
    ]
    return PartitionedMatrix.from_blocks(grid, SIZES, SIZES, ring)


def example_matrix(ring: QuaternionRing | None = None) -> BlockTriangularMatrix:
    return BlockTriangularMatrix(example_grid(ring))


def example_perturbation(ring: QuaternionRing | None = None) -> PerturbationBlock:
    ring = ring or QuaternionRing()
    n = len(SIZES)
    grid = [
        [Mat.from_rows(ring, PERTURBATION_BLOCKS[(j, k)]) for k in range(SPLIT + 1, n + 1)]
        for j in range(1, SPLIT + 1)
    ]
    return PerturbationBlock(
        PartitionedMatrix.from_blocks(grid, SIZES[:SPLIT], SIZES[SPLIT:], ring), SPLIT
    )
