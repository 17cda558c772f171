"""Quasideterminants of 2x2 block matrices and of block upper Hessenberg grids.

Index convention
----------------
A Hessenberg grid has ``n`` block rows and ``n`` block columns. Its rows are
conventionally numbered ``0..n-1`` and its columns ``1..n``, so that the
subdiagonal block in column ``c`` is "``M_cc``" and the result has size
``s_0 x s_n``. :meth:`HessenbergGrid.m` uses that numbering; the underlying
:class:`~blockinv.block.PartitionedMatrix` keeps plain 1-based block rows, i.e.
conventional row ``r`` lives in grid row ``r + 1``.
"""

from __future__ import annotations

from .block import PartitionedMatrix
from .errors import CapExceeded, DimensionMismatch, HessenbergError, IndexOutOfRange, NotInvertible
from .matrix import Mat, mat_invert, solve_block_upper_triangular

DEFAULT_MAX_EXPANSION = 14


class HessenbergGrid:
    """A validated block upper Hessenberg grid with invertible subdiagonal blocks.

    ``subdiag_inverses`` may supply already-known inverses keyed by the
    conventional index ``c`` (block ``M_cc``); the rest are computed here.
    """

    __slots__ = ("grid", "_inv")

    def __init__(self, grid: PartitionedMatrix, subdiag_inverses: dict | None = None, check: bool = True):
        n = grid.n_rows
        if grid.n_cols != n:
            raise HessenbergError(f"Hessenberg grid must be square in blocks, got {grid.n_rows}x{grid.n_cols}")
        rows, cols = grid.row_partition.sizes, grid.col_partition.sizes
        if rows[1:] != cols[:-1]:
            raise HessenbergError(
                f"row sizes {list(rows)} and column sizes {list(cols)} do not make square subdiagonal blocks"
            )
        if check:
            for r in range(3, n + 1):
                for c in range(1, r - 1):
                    if not grid.block(r, c).is_zero():
                        raise HessenbergError(
                            f"grid block ({r},{c}) lies below the subdiagonal but is nonzero", block=[r, c]
                        )
        self.grid = grid
        inv = dict(subdiag_inverses or {})
        for c in range(1, n):
            if c not in inv:
                try:
                    inv[c] = mat_invert(grid.block(c + 1, c))
                except NotInvertible as exc:
                    raise NotInvertible(
                        f"subdiagonal block M_{c}{c} (grid block ({c + 1},{c})) is not invertible", block=[c + 1, c]
                    ) from exc
        self._inv = inv

    @property
    def n(self) -> int:
        return self.grid.n_rows

    @property
    def ring(self):
        return self.grid.ring

    def m(self, r: int, c: int) -> Mat:
        """Block ``M_rc`` with ``r`` in ``0..n-1`` and ``c`` in ``1..n``."""
        return self.grid.block(r + 1, c)

    def inv(self, c: int) -> Mat:
        """Inverse of the subdiagonal block ``M_cc``, ``1 <= c <= n-1``."""
        return self._inv[c]

    def size(self, k: int) -> int:
        """``s_k`` for ``k`` in ``0..n``."""
        if k == 0:
            return self.grid.row_partition.sizes[0]
        return self.grid.col_partition.sizes[k - 1]

    def leading(self, l: int) -> "HessenbergGrid":
        """Grid rows ``1..l`` and columns ``1..l``."""
        return HessenbergGrid(self.grid.leading(l), {c: self._inv[c] for c in range(1, l)}, check=False)

    def trailing(self, v: int) -> "HessenbergGrid":
        """Grid rows and columns ``v..n``; its top row is conventional row ``v-1``."""
        size = self.n - v + 1
        shift = v - 1
        return HessenbergGrid(
            self.grid.sub_grid(v, v, size),
            {c: self._inv[c + shift] for c in range(1, size)},
            check=False,
        )


def qdet_2x2(m11: Mat, m12: Mat, m21: Mat, m22: Mat) -> Mat:
    """``m12 - m11 m21^-1 m22`` for a 2x2 block matrix with invertible ``m21``."""
    if not m21.is_square():
        raise DimensionMismatch(f"M21 must be square, got {m21.shape}")
    return m12 - m11 * mat_invert(m21) * m22


def hessenberg_qdet(h: HessenbergGrid) -> Mat:
    """Evaluate ``|H|`` by one block triangular solve.

    ``M_0n - [M_01 .. M_0,n-1] T^-1 [M_1n; ..; M_n-1,n]`` where ``T`` is the
    block upper triangular core of the grid.
    """
    n = h.n
    if n == 1:
        return h.m(0, 1)
    top = Mat.hstack([h.m(0, c) for c in range(1, n)])
    core = h.grid.sub_grid(2, 1, n - 1, n - 1)
    rhs = h.grid.sub_grid(2, n, n - 1, 1).data
    x = solve_block_upper_triangular(core, rhs, {c: h.inv(c) for c in range(1, n)})
    return h.m(0, n) - top * x


def normalize_diamond(h: HessenbergGrid) -> HessenbergGrid:
    """Left-scale conventional rows ``1..n-1`` by ``M_cc^-1`` so the subdiagonal is all identities."""
    n = h.n
    blocks = [h.grid.block_row(1)]
    for r in range(1, n):
        inv = h.inv(r)
        blocks.append([inv * b for b in h.grid.block_row(r + 1)])
    grid = PartitionedMatrix.from_blocks(blocks, h.grid.row_partition.sizes, h.grid.col_partition.sizes)
    ring = h.ring
    return HessenbergGrid(grid, {c: Mat.identity(ring, h.size(c)) for c in range(1, n)}, check=False)


def hessenberg_qdet_expansion(h: HessenbergGrid, max_blocks: int = DEFAULT_MAX_EXPANSION) -> Mat:
    """Brute-force ``|H|`` as a signed sum over all increasing index chains.

    ``M_0n + sum (-1)^k M_0,j1 M_j1j1^-1 M_j1,j2 ... M_jkjk^-1 M_jk,n`` over
    ``1 <= j1 < ... < jk < n``. The sum has ``2^(n-1)`` terms, so grids with
    more than ``max_blocks`` block columns are refused.
    """
    n = h.n
    if n > max_blocks:
        raise CapExceeded(f"expansion over {n} blocks exceeds the cap of {max_blocks}", n=n, cap=max_blocks)
    total = h.m(0, n)

    # depth-first over chains; `prefix` is M_0,j1 M_j1j1^-1 ... M_jkjk^-1 for the chain ending at `last`
    stack = [(h.m(0, j) * h.inv(j), j, -1) for j in range(1, n)]
    while stack:
        prefix, last, sign = stack.pop()
        term = prefix * h.m(last, n)
        total = total + term if sign > 0 else total - term
        for nxt in range(last + 1, n):
            stack.append((prefix * h.m(last, nxt) * h.inv(nxt), nxt, -sign))
    return total


def qdet_row_split(h: HessenbergGrid) -> Mat:
    """``|H_(2;1)| - M_01 |H_(1;1)|`` evaluated on the diamond-normalized grid.

    The identity is stated for unit subdiagonals, so the grid is normalized
    first; this does not change ``|H|``.
    """
    if h.n < 2:
        raise IndexOutOfRange("row split needs at least two block rows", n=h.n)
    d = normalize_diamond(h)
    ring = d.ring
    without_row1 = d.grid.delete_row_col(2, 1)
    without_row0 = d.grid.delete_row_col(1, 1)

    def unit_grid(g):
        # every subdiagonal block of these deletions is an identity
        return HessenbergGrid(g, {c: Mat.identity(ring, g.col_partition.sizes[c - 1]) for c in range(1, g.n_rows)}, check=False)

    return hessenberg_qdet(unit_grid(without_row1)) - d.m(0, 1) * hessenberg_qdet(unit_grid(without_row0))


def qdet_factor_split(h: HessenbergGrid, j: int) -> Mat:
    """``|H| = sum_{l<j} sum_{k>=j} lH_l M_lk H_k`` for a split index ``1 <= j <= n``.

    ``lH_0 = -I``, ``lH_l = |H_[l]| M_ll^-1``; ``H_n = -I``,
    ``H_k = M_kk^-1 |H^(k+1)_[n-k]|``, with ``H_[l]`` the leading and
    ``H^(k+1)_[n-k]`` the trailing square sub-grid.
    """
    n = h.n
    if not 1 <= j <= n:
        raise IndexOutOfRange(f"split index {j} outside 1..{n}", index=j)
    ring = h.ring

    def left(l):
        if l == 0:
            return -Mat.identity(ring, h.size(0))
        return hessenberg_qdet(h.leading(l)) * h.inv(l)

    def right(k):
        if k == n:
            return -Mat.identity(ring, h.size(n))
        return h.inv(k) * hessenberg_qdet(h.trailing(k + 1))

    rights = {k: right(k) for k in range(j, n + 1)}
    total = None
    for l in range(0, j):
        lh = left(l)
        for k in range(j, n + 1):
            term = lh * h.m(l, k) * rights[k]
            total = term if total is None else total + term
    return total
