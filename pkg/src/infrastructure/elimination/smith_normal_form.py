"""
Dense Smith Normal Form

Smith normal form of a small integer matrix with both unimodular transforms
and the inverse of the right transform. Used directly by smith_normal_form
and on the residual block left over after sparse Tietze elimination.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Dense = List[List[int]]


@dataclass
class SmithDecomposition:
    """
    U * A * V = S with S diagonal and d1 | d2 | ...

    Attributes:
        diagonal: Nonzero diagonal entries, positive, in divisibility order
        smith: S as a dense matrix
        left: U (rows x rows)
        right: V (cols x cols)
        right_inverse: V^-1
    """
    diagonal: List[int]
    smith: Dense
    left: Dense
    right: Dense
    right_inverse: Dense


def _identity(n: int) -> Dense:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


class _Reducer:
    def __init__(self, matrix: Sequence[Sequence[int]], cols: int, track_left: bool):
        self.a = [[int(v) for v in row] for row in matrix]
        self.m = len(self.a)
        self.n = cols
        self.track_left = track_left
        self.u = _identity(self.m) if track_left else None
        self.v = _identity(self.n)
        self.vi = _identity(self.n)

    # row_i += c * row_k
    def row_add(self, i: int, k: int, c: int) -> None:
        if not c:
            return
        ai, ak = self.a[i], self.a[k]
        for j in range(self.n):
            if ak[j]:
                ai[j] += c * ak[j]
        if self.u is not None:
            ui, uk = self.u[i], self.u[k]
            for j in range(self.m):
                if uk[j]:
                    ui[j] += c * uk[j]

    # col_j += c * col_k; V^-1 gets row_k -= c * row_j
    def col_add(self, j: int, k: int, c: int) -> None:
        if not c:
            return
        for row in self.a:
            if row[k]:
                row[j] += c * row[k]
        for row in self.v:
            if row[k]:
                row[j] += c * row[k]
        vk, vj = self.vi[k], self.vi[j]
        for t in range(self.n):
            if vj[t]:
                vk[t] -= c * vj[t]

    def swap_rows(self, i: int, k: int) -> None:
        if i == k:
            return
        self.a[i], self.a[k] = self.a[k], self.a[i]
        if self.u is not None:
            self.u[i], self.u[k] = self.u[k], self.u[i]

    def swap_cols(self, j: int, k: int) -> None:
        if j == k:
            return
        for row in self.a:
            row[j], row[k] = row[k], row[j]
        for row in self.v:
            row[j], row[k] = row[k], row[j]
        self.vi[j], self.vi[k] = self.vi[k], self.vi[j]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        if self.u is not None:
            self.u[i] = [-x for x in self.u[i]]

    def smallest_entry(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        best_abs = 0
        for i in range(t, self.m):
            row = self.a[i]
            for j in range(t, self.n):
                value = row[j]
                if value and (best is None or abs(value) < best_abs):
                    best, best_abs = (i, j), abs(value)
                    if best_abs == 1:
                        return best
        return best

    def run(self) -> List[int]:
        diagonal: List[int] = []
        for t in range(min(self.m, self.n)):
            position = self.smallest_entry(t)
            if position is None:
                break
            self.swap_rows(t, position[0])
            self.swap_cols(t, position[1])
            while True:
                settled = True
                for i in range(t + 1, self.m):
                    if self.a[i][t]:
                        self.row_add(i, t, -(self.a[i][t] // self.a[t][t]))
                        if self.a[i][t]:
                            self.swap_rows(t, i)
                            settled = False
                for j in range(t + 1, self.n):
                    if self.a[t][j]:
                        self.col_add(j, t, -(self.a[t][j] // self.a[t][t]))
                        if self.a[t][j]:
                            self.swap_cols(t, j)
                            settled = False
                if not settled:
                    continue
                pivot = self.a[t][t]
                offender = next(
                    (i for i in range(t + 1, self.m)
                     if any(self.a[i][j] % pivot for j in range(t + 1, self.n))),
                    None,
                )
                if offender is None:
                    break
                self.row_add(t, offender, 1)
            if self.a[t][t] < 0:
                self.negate_row(t)
            diagonal.append(self.a[t][t])
        return diagonal


def smith_decomposition(matrix: Sequence[Sequence[int]], cols: Optional[int] = None,
                        track_left: bool = True) -> SmithDecomposition:
    """
    Smith normal form of a dense integer matrix.

    Args:
        matrix: Rows of the matrix
        cols: Column count (needed when there are no rows)
        track_left: Skip building U when False

    Returns:
        SmithDecomposition with U*A*V = S (U is empty when not tracked)
    """
    n_cols = cols if cols is not None else (len(matrix[0]) if matrix else 0)
    reducer = _Reducer(matrix, n_cols, track_left)
    diagonal = reducer.run()
    logger.debug(f"Dense SNF {reducer.m}x{reducer.n}: rank {len(diagonal)}")
    return SmithDecomposition(
        diagonal=diagonal,
        smith=reducer.a,
        left=reducer.u if reducer.u is not None else [],
        right=reducer.v,
        right_inverse=reducer.vi,
    )
