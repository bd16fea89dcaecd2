"""
Echelon Bases

Incremental row-echelon bases of sparse vectors. IntegerEchelon keeps a
basis of a sublattice of Z^n (rows combined with extended gcds so no
fractions appear); FieldEchelon keeps a basis of a subspace of K^n.

Both reduce the smallest live column first, so a vector whose support lies
in columns >= c only meets rows with pivots >= c. Augmenting vectors with
tag columns to the right therefore records how each basis row was built.
"""

import heapq
from typing import Any, Dict, List, Mapping, Optional, Tuple

from ...domain.models.int_matrix import Vector, add_scaled


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended gcd: returns (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0.

    Examples:
        >>> xgcd(4, 6)
        (-1, 1, 2)
    """
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -x0, -y0, -a
    return x0, y0, a


class _Echelon:
    """Shared bookkeeping for both echelon flavours."""

    def __init__(self, dimension: int):
        self.dimension = dimension
        self._rows: Dict[int, Vector] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def basis(self) -> List[Vector]:
        """Basis rows ordered by pivot column."""
        return [dict(self._rows[c]) for c in sorted(self._rows)]

    def row_for_pivot(self, column: int) -> Optional[Vector]:
        row = self._rows.get(column)
        return dict(row) if row is not None else None

    def copy(self):
        clone = self.__class__.__new__(self.__class__)
        clone.__dict__.update(self.__dict__)
        clone._rows = {c: dict(r) for c, r in self._rows.items()}
        return clone

    def __contains__(self, vector: Mapping[int, Any]) -> bool:
        return not self.reduce(vector)

    def extend(self, vectors) -> int:
        """Add many vectors, returning how many changed the span."""
        return sum(1 for v in vectors if self.add(v))

    # subclasses implement reduce / add


class IntegerEchelon(_Echelon):
    """
    Basis of a sublattice of Z^n in echelon form with positive pivots.

    reduce() brings every pivot column into [0, pivot), which makes the
    remainder a canonical representative modulo the lattice.
    """

    def reduce(self, vector: Mapping[int, int], stop: Optional[int] = None) -> Vector:
        """Reduce modulo the lattice using pivots in columns < stop."""
        vec = {k: int(v) for k, v in vector.items() if v}
        heap = list(vec)
        heapq.heapify(heap)
        seen = set()
        while heap:
            col = heapq.heappop(heap)
            if col in seen or col not in vec:
                continue
            if stop is not None and col >= stop:
                break
            seen.add(col)
            row = self._rows.get(col)
            if row is None:
                continue
            q = vec[col] // row[col]
            if q:
                for k, v in row.items():
                    if k not in vec:
                        heapq.heappush(heap, k)
                    updated = vec.get(k, 0) - q * v
                    if updated:
                        vec[k] = updated
                    else:
                        vec.pop(k, None)
        return vec

    def is_member(self, vector: Mapping[int, int]) -> bool:
        return not self.reduce(vector)

    def add(self, vector: Mapping[int, int]) -> bool:
        """Insert a vector; True when the lattice grew."""
        vec = {k: int(v) for k, v in vector.items() if v}
        changed = False
        while vec:
            col = min(vec)
            b = vec[col]
            row = self._rows.get(col)
            if row is None:
                if b < 0:
                    vec = {k: -v for k, v in vec.items()}
                self._rows[col] = vec
                return True
            a = row[col]
            if b % a == 0:
                add_scaled(vec, row, -(b // a))
                continue
            x, y, g = xgcd(a, b)
            new_row: Vector = {}
            add_scaled(new_row, row, x)
            add_scaled(new_row, vec, y)
            rest: Vector = {}
            add_scaled(rest, row, -(b // g))
            add_scaled(rest, vec, a // g)
            self._rows[col] = new_row
            vec = rest
            changed = True
        return changed


class FieldEchelon(_Echelon):
    """
    Basis of a subspace of K^n with unit pivots.

    reduce() clears every pivot column, so the remainder is supported on
    non-pivot columns and is the canonical representative modulo the span.
    """

    def __init__(self, dimension: int, domain):
        super().__init__(dimension)
        self.domain = domain

    def reduce(self, vector: Mapping[int, Any], stop: Optional[int] = None) -> Vector:
        vec = {k: v for k, v in vector.items() if v}
        heap = list(vec)
        heapq.heapify(heap)
        seen = set()
        while heap:
            col = heapq.heappop(heap)
            if col in seen or col not in vec:
                continue
            if stop is not None and col >= stop:
                break
            seen.add(col)
            row = self._rows.get(col)
            if row is None:
                continue
            factor = vec[col]
            for k, v in row.items():
                if k not in vec:
                    heapq.heappush(heap, k)
                updated = vec.get(k, 0) - factor * v
                if updated:
                    vec[k] = updated
                else:
                    vec.pop(k, None)
        return vec

    def is_member(self, vector: Mapping[int, Any]) -> bool:
        return not self.reduce(vector)

    def add(self, vector: Mapping[int, Any]) -> bool:
        vec = self.reduce(vector)
        if not vec:
            return False
        col = min(vec)
        inverse = self.domain.revert(vec[col])
        self._rows[col] = {k: v * inverse for k, v in vec.items()}
        return True
