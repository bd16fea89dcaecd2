"""
IntMatrix Model

Sparse row-major matrix over a Coefficients ring. Entries are arbitrary
precision ints over the integers and sympy field elements otherwise.
Matrices act on column vectors: column j holds the image of source basis
vector j, so M[target][source].
"""

from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..exceptions import ValidationError
from .coefficients import INTEGERS, Coefficients

Vector = Dict[int, Any]


def add_scaled(target: Vector, source: Mapping[int, Any], factor: Any) -> None:
    """target += factor * source, dropping entries that cancel."""
    for key, value in source.items():
        updated = target.get(key, 0) + factor * value
        if updated:
            target[key] = updated
        elif key in target:
            del target[key]


def combine(terms: Iterable[Tuple[Any, Mapping[int, Any]]]) -> Vector:
    """Linear combination sum(c * v) of sparse vectors."""
    out: Vector = {}
    for factor, vector in terms:
        if factor:
            add_scaled(out, vector, factor)
    return out


class IntMatrix:
    """
    Immutable sparse matrix.

    Attributes:
        rows: Number of rows
        cols: Number of columns
        coefficients: Scalar ring of the entries

    Examples:
        >>> m = IntMatrix.from_dense([[2, 0], [0, 0]])
        >>> m.nnz
        1
    """

    __slots__ = ("rows", "cols", "coefficients", "_data", "_columns")

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Optional[Mapping[int, Mapping[int, Any]]] = None,
        coefficients: Coefficients = INTEGERS,
    ):
        if rows < 0 or cols < 0:
            raise ValidationError(f"Invalid shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.coefficients = coefficients
        data: Dict[int, Vector] = {}
        for i, row in (entries or {}).items():
            if not 0 <= i < rows:
                raise ValidationError(f"Row index {i} out of range for {rows} rows")
            kept = {}
            for j, value in row.items():
                if not 0 <= j < cols:
                    raise ValidationError(f"Column index {j} out of range for {cols} columns")
                if value:
                    kept[j] = value
            if kept:
                data[i] = kept
        self._data = data
        self._columns: Optional[Dict[int, Vector]] = None

    # ==================== Constructors ====================

    @classmethod
    def zero(cls, rows: int, cols: int, coefficients: Coefficients = INTEGERS) -> "IntMatrix":
        return cls(rows, cols, {}, coefficients)

    @classmethod
    def identity(cls, n: int, coefficients: Coefficients = INTEGERS) -> "IntMatrix":
        one = coefficients.one
        return cls(n, n, {i: {i: one} for i in range(n)}, coefficients)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Any]], coefficients: Coefficients = INTEGERS,
                   cols: Optional[int] = None) -> "IntMatrix":
        n_cols = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != n_cols:
                raise ValidationError("Ragged dense matrix")
            entries[i] = {j: coefficients.convert(v) for j, v in enumerate(row) if v}
        return cls(len(rows), n_cols, entries, coefficients)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, Any]], cols: int,
                  coefficients: Coefficients = INTEGERS) -> "IntMatrix":
        """Build from a list of sparse row vectors."""
        return cls(len(rows), cols, {i: row for i, row in enumerate(rows)}, coefficients)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Any]], rows: int,
                     coefficients: Coefficients = INTEGERS) -> "IntMatrix":
        """Build from the images of the source basis vectors."""
        entries: Dict[int, Vector] = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                entries.setdefault(i, {})[j] = value
        return cls(rows, len(columns), entries, coefficients)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[Optional["IntMatrix"]]],
                    row_sizes: Sequence[int], col_sizes: Sequence[int],
                    coefficients: Coefficients = INTEGERS) -> "IntMatrix":
        """Assemble a block matrix; None blocks are zero."""
        row_offsets = _offsets(row_sizes)
        col_offsets = _offsets(col_sizes)
        entries: Dict[int, Vector] = {}
        for bi, block_row in enumerate(blocks):
            for bj, block in enumerate(block_row):
                if block is None:
                    continue
                if block.rows != row_sizes[bi] or block.cols != col_sizes[bj]:
                    raise ValidationError(
                        f"Block ({bi},{bj}) has shape {block.shape}, "
                        f"expected ({row_sizes[bi]}, {col_sizes[bj]})"
                    )
                for i, row in block._data.items():
                    target = entries.setdefault(row_offsets[bi] + i, {})
                    for j, value in row.items():
                        key = col_offsets[bj] + j
                        updated = target.get(key, 0) + value
                        if updated:
                            target[key] = updated
                        else:
                            target.pop(key, None)
        return cls(sum(row_sizes), sum(col_sizes), entries, coefficients)

    # ==================== Access ====================

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def entry(self, i: int, j: int) -> Any:
        return self._data.get(i, {}).get(j, self.coefficients.zero)

    def row(self, i: int) -> Vector:
        return dict(self._data.get(i, {}))

    def column(self, j: int) -> Vector:
        return dict(self._column_index().get(j, {}))

    def columns(self) -> List[Vector]:
        index = self._column_index()
        return [dict(index.get(j, {})) for j in range(self.cols)]

    def row_vectors(self) -> List[Vector]:
        return [dict(self._data.get(i, {})) for i in range(self.rows)]

    def iter_entries(self) -> Iterator[Tuple[int, int, Any]]:
        for i in sorted(self._data):
            row = self._data[i]
            for j in sorted(row):
                yield i, j, row[j]

    def _column_index(self) -> Dict[int, Vector]:
        if self._columns is None:
            index: Dict[int, Vector] = {}
            for i, row in self._data.items():
                for j, value in row.items():
                    index.setdefault(j, {})[i] = value
            self._columns = index
        return self._columns

    # ==================== Algebra ====================

    def apply(self, vector: Mapping[int, Any]) -> Vector:
        """Matrix times sparse column vector."""
        index = self._column_index()
        out: Vector = {}
        for j, value in vector.items():
            column = index.get(j)
            if column and value:
                add_scaled(out, column, value)
        return out

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValidationError(f"Shape mismatch {self.shape} @ {other.shape}")
        entries: Dict[int, Vector] = {}
        for i, row in self._data.items():
            acc: Vector = {}
            for k, value in row.items():
                other_row = other._data.get(k)
                if other_row:
                    add_scaled(acc, other_row, value)
            if acc:
                entries[i] = acc
        return IntMatrix(self.rows, other.cols, entries, self.coefficients)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        entries = {i: dict(row) for i, row in self._data.items()}
        for i, row in other._data.items():
            target = entries.setdefault(i, {})
            add_scaled(target, row, 1)
        return IntMatrix(self.rows, self.cols, entries, self.coefficients)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, factor: Any) -> "IntMatrix":
        if not factor:
            return IntMatrix.zero(self.rows, self.cols, self.coefficients)
        entries = {i: {j: factor * v for j, v in row.items()} for i, row in self._data.items()}
        return IntMatrix(self.rows, self.cols, entries, self.coefficients)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, self._column_index(), self.coefficients)

    def restrict(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "IntMatrix":
        """Submatrix on the given rows and columns, reindexed in the given order."""
        col_pos = {c: k for k, c in enumerate(col_indices)}
        entries: Dict[int, Vector] = {}
        for new_i, i in enumerate(row_indices):
            row = self._data.get(i)
            if not row:
                continue
            kept = {col_pos[j]: v for j, v in row.items() if j in col_pos}
            if kept:
                entries[new_i] = kept
        return IntMatrix(len(row_indices), len(col_indices), entries, self.coefficients)

    def is_zero(self) -> bool:
        return not self._data

    def to_dense(self) -> List[List[Any]]:
        zero = self.coefficients.zero
        dense = [[zero] * self.cols for _ in range(self.rows)]
        for i, row in self._data.items():
            for j, value in row.items():
                dense[i][j] = value
        return dense

    def is_diagonal(self) -> bool:
        return all(set(row) <= {i} for i, row in self._data.items())

    def diagonal(self) -> List[Any]:
        return [self.entry(i, i) for i in range(min(self.rows, self.cols))]

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ValidationError(f"Shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.nnz))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz}, over {self.coefficients})"

    def to_dict(self) -> dict:
        convert = self.coefficients.to_python
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[i, j, convert(v)] for i, j, v in self.iter_entries()],
        }


def _offsets(sizes: Sequence[int]) -> List[int]:
    out, total = [], 0
    for size in sizes:
        out.append(total)
        total += size
    return out
