"""Quasideterminants and inverses of block triangular matrices over noncommutative rings."""

from .block import BlockPartition, PartitionedMatrix, block, block_col, block_row, delete_row_col, sub_grid
from .errors import (
    BlockInvError,
    CapExceeded,
    DegenerateResult,
    DimensionMismatch,
    HessenbergError,
    IndexOutOfRange,
    InvalidSplit,
    NotInvertible,
    ParseError,
    ShapeError,
    StructureError,
    TriangularityError,
)
from .inverse import (
    BlockInverse,
    BlockTriangularMatrix,
    PerturbationBlock,
    apply_perturbation,
    inverse_block_explicit,
    inverse_explicit,
    inverse_iterative,
    inverse_recursive,
    perturbation_delta,
    perturbation_deltas,
    perturbed_inverse,
)
from .matrix import Mat, MatrixRing, blocks_close, mat_invert, mat_mul, solve_block_upper_triangular
from .quasidet import (
    HessenbergGrid,
    hessenberg_qdet,
    hessenberg_qdet_expansion,
    normalize_diamond,
    qdet_2x2,
    qdet_factor_split,
    qdet_row_split,
)
from .ring import Quaternion, QuaternionRing, Rational, RationalField, Ring, quat_abs, quat_invert, quat_mul, rational

__version__ = "0.1.0"
