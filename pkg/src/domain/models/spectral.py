"""
Bicomplex Model

Finite-support bicomplexes of finitely presented abelian groups, graded
cohomologically: d_h has bidegree (1, 0), d_v has bidegree (0, 1) and the
squares anticommute, so the total differential is d_h + d_v.
"""

import random
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from ..exceptions import ValidationError
from .coefficients import INTEGERS, Coefficients
from .int_matrix import IntMatrix, Vector

Position = Tuple[int, int]


def _kron_left(left: IntMatrix, size: int, coefficients: Coefficients) -> IntMatrix:
    """left ⊗ identity(size), first factor most significant."""
    entries: Dict[int, Vector] = {}
    for i, j, value in left.iter_entries():
        for b in range(size):
            entries.setdefault(i * size + b, {})[j * size + b] = value
    return IntMatrix(left.rows * size, left.cols * size, entries, coefficients)


def _kron_right(size: int, right: IntMatrix, sign: int, coefficients: Coefficients) -> IntMatrix:
    """sign * identity(size) ⊗ right."""
    entries: Dict[int, Vector] = {}
    for a in range(size):
        for i, j, value in right.iter_entries():
            entries.setdefault(a * right.rows + i, {})[a * right.cols + j] = sign * value
    return IntMatrix(size * right.rows, size * right.cols, entries, coefficients)


def _random_change_of_basis(rng: random.Random, n: int,
                            coefficients: Coefficients) -> Tuple[IntMatrix, IntMatrix]:
    """A random product of elementary matrices and its inverse."""
    forward = IntMatrix.identity(n, coefficients)
    backward = IntMatrix.identity(n, coefficients)
    if n < 2:
        return forward, backward
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2)
        c = coefficients.convert(rng.choice([-2, -1, 1, 2]))
        step = IntMatrix.identity(n, coefficients) + IntMatrix(n, n, {i: {j: c}}, coefficients)
        undo = IntMatrix.identity(n, coefficients) - IntMatrix(n, n, {i: {j: c}}, coefficients)
        forward = step @ forward
        backward = backward @ undo
    return forward, backward


@dataclass(frozen=True)
class _Line:
    """Cochain complex of length `length` with generator orders per degree."""
    orders: List[List[int]]
    maps: List[IntMatrix]


def _random_line(rng: random.Random, length: int, coefficients: Coefficients,
                 torsion: bool, mix: bool) -> _Line:
    pieces: List[Tuple[str, int, int]] = []
    for k in range(length):
        if rng.random() < 0.6:
            pieces.append(("point", k, 0))
        if k + 1 < length and rng.random() < 0.6:
            pieces.append(("arrow", k, 0))
        if torsion and rng.random() < 0.3:
            pieces.append(("point", k, rng.choice([2, 3, 4])))
        if torsion and k + 1 < length and rng.random() < 0.2:
            pieces.append(("onto", k, rng.choice([2, 3])))
    orders: List[List[int]] = [[] for _ in range(length)]
    arrows: List[Tuple[int, int, int, object]] = []
    for kind, k, d in pieces:
        if kind == "point":
            orders[k].append(d)
        elif kind == "arrow":
            orders[k].append(0)
            orders[k + 1].append(0)
            if coefficients.is_field:
                factor = coefficients.convert(rng.randint(1, coefficients.characteristic - 1)
                                              if coefficients.is_finite else rng.randint(1, 3))
            else:
                factor = rng.choice([1, 2, 3])
            arrows.append((k, len(orders[k]) - 1, len(orders[k + 1]) - 1, factor))
        else:
            orders[k].append(0)
            orders[k + 1].append(d)
            arrows.append((k, len(orders[k]) - 1, len(orders[k + 1]) - 1, 1))
    entries: List[Dict[int, Vector]] = [{} for _ in range(max(0, length - 1))]
    for k, source, target, factor in arrows:
        entries[k].setdefault(target, {})[source] = factor
    maps = [IntMatrix(len(orders[k + 1]), len(orders[k]), entries[k], coefficients)
            for k in range(length - 1)]
    if mix:
        changes = [_random_change_of_basis(rng, len(orders[k]), coefficients) for k in range(length)]
        maps = [changes[k + 1][0] @ maps[k] @ changes[k][1] for k in range(length - 1)]
    return _Line(orders, maps)


@dataclass(frozen=True, eq=False)
class Bicomplex:
    """
    Bicomplex with finitely many nonzero entries.

    Each entry C^(p,q) is generated by `len(orders[(p, q)])` generators;
    a generator of order d > 0 spans Z/d, order 0 spans a free summand.

    Attributes:
        coefficients: Integers or a field (over a field every order is 0)
        orders: Position -> generator orders
        horizontal: Position (p, q) -> matrix of C^(p,q) -> C^(p+1,q)
        vertical: Position (p, q) -> matrix of C^(p,q) -> C^(p,q+1)
        name: Display name
    """
    coefficients: Coefficients
    orders: Dict[Position, Tuple[int, ...]]
    horizontal: Dict[Position, IntMatrix] = field(default_factory=dict, repr=False)
    vertical: Dict[Position, IntMatrix] = field(default_factory=dict, repr=False)
    name: str = ""

    def __post_init__(self):
        cleaned = {}
        for position, orders in self.orders.items():
            orders = tuple(int(d) for d in orders)
            for d in orders:
                if d < 0 or d == 1:
                    raise ValidationError(f"generator order {d} at {position} must be 0 or at least 2")
                if d and self.coefficients.is_field:
                    raise ValidationError("bicomplexes over a field have free entries only")
            if orders:
                cleaned[position] = orders
        object.__setattr__(self, "orders", cleaned)
        for (p, q), matrix in self.horizontal.items():
            self._check_shape("horizontal", (p, q), (p + 1, q), matrix)
        for (p, q), matrix in self.vertical.items():
            self._check_shape("vertical", (p, q), (p, q + 1), matrix)

    def _check_shape(self, kind: str, source: Position, target: Position, matrix: IntMatrix) -> None:
        expected = (self.rank(*target), self.rank(*source))
        if matrix.shape != expected:
            raise ValidationError(f"{kind} map at {source} has shape {matrix.shape}, expected {expected}")

    # ==================== Constructors ====================

    @classmethod
    def single(cls, coefficients: Coefficients, p: int, q: int, orders: Sequence[int],
               name: str = "") -> "Bicomplex":
        """Bicomplex concentrated at one position."""
        return cls(coefficients, {(p, q): tuple(orders)}, {}, {}, name)

    @classmethod
    def random(cls, rng: random.Random, max_size: int = 4,
               coefficients: Coefficients = INTEGERS, torsion: bool = True) -> "Bicomplex":
        """
        Random first-quadrant bicomplex: the tensor product of a cochain
        complex in a scrambled basis with one carrying torsion summands.

        Args:
            rng: Source of randomness
            max_size: Largest number of columns and of rows
            coefficients: Integers or a field
            torsion: Allow Z/d entries (integers only)
        """
        columns = rng.randint(1, max_size)
        rows = rng.randint(1, max_size)
        torsion = torsion and not coefficients.is_field
        first = _random_line(rng, columns, coefficients, torsion=False, mix=True)
        second = _random_line(rng, rows, coefficients, torsion=torsion, mix=False)
        orders: Dict[Position, Tuple[int, ...]] = {}
        horizontal: Dict[Position, IntMatrix] = {}
        vertical: Dict[Position, IntMatrix] = {}
        for p in range(columns):
            for q in range(rows):
                size_a = len(first.orders[p])
                orders[(p, q)] = tuple(second.orders[q]) * size_a
        bicomplex_orders = {k: v for k, v in orders.items() if v}
        for p in range(columns):
            for q in range(rows):
                size_a = len(first.orders[p])
                size_b = len(second.orders[q])
                if not size_a or not size_b:
                    continue
                if p + 1 < columns and len(first.orders[p + 1]):
                    horizontal[(p, q)] = _kron_left(first.maps[p], size_b, coefficients)
                if q + 1 < rows and len(second.orders[q + 1]):
                    sign = -1 if p % 2 else 1
                    vertical[(p, q)] = _kron_right(size_a, second.maps[q], sign, coefficients)
        return cls(coefficients, bicomplex_orders, horizontal, vertical,
                   name=f"random {columns}x{rows}")

    # ==================== Access ====================

    def rank(self, p: int, q: int) -> int:
        return len(self.orders.get((p, q), ()))

    @property
    def support(self) -> List[Position]:
        return sorted(self.orders)

    @property
    def is_empty(self) -> bool:
        return not self.orders

    @property
    def column_range(self) -> Tuple[int, int]:
        columns = [p for p, _ in self.orders] or [0]
        return min(columns), max(columns)

    @property
    def row_range(self) -> Tuple[int, int]:
        rows = [q for _, q in self.orders] or [0]
        return min(rows), max(rows)

    @property
    def degree_range(self) -> Tuple[int, int]:
        degrees = [p + q for p, q in self.orders] or [0]
        return min(degrees), max(degrees)

    @property
    def width(self) -> int:
        low, high = self.column_range
        return high - low + 1

    @property
    def has_torsion(self) -> bool:
        return any(d for orders in self.orders.values() for d in orders)

    def positions_in_degree(self, n: int) -> List[Position]:
        return [(p, q) for p, q in self.support if p + q == n]

    def d_h(self, p: int, q: int) -> IntMatrix:
        matrix = self.horizontal.get((p, q))
        if matrix is None:
            return IntMatrix.zero(self.rank(p + 1, q), self.rank(p, q), self.coefficients)
        return matrix

    def d_v(self, p: int, q: int) -> IntMatrix:
        matrix = self.vertical.get((p, q))
        if matrix is None:
            return IntMatrix.zero(self.rank(p, q + 1), self.rank(p, q), self.coefficients)
        return matrix

    def order_of(self, position: Position, k: int) -> int:
        return self.orders[position][k]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "coefficients": str(self.coefficients),
            "entries": [
                {"p": p, "q": q, "orders": list(self.orders[(p, q)])} for p, q in self.support
            ],
        }

    def __str__(self) -> str:
        label = self.name or "bicomplex"
        return f"{label} over {self.coefficients} on {len(self.orders)} positions"

