"""
Finite Algebra Model

Finite-rank commutative unital algebras over Q or F_p given by structure
constants, and their elements.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..exceptions import ValidationError
from ..limits import check_units
from .coefficients import Coefficients, Scalar
from .int_matrix import IntMatrix, Vector, add_scaled

Table = Tuple[Tuple[Dict[int, Scalar], ...], ...]


@dataclass(frozen=True, eq=False)
class FinAlgebra:
    """
    Commutative unital algebra with basis b_0..b_{dim-1}.

    Attributes:
        coefficients: Q or F_p (integer coefficients are rejected)
        basis_names: Labels of the basis vectors
        unit: Coordinates of 1
        table: table[i][j] = {k: c_ijk} with b_i * b_j = sum_k c_ijk b_k
        name: Optional display name
    """
    coefficients: Coefficients
    basis_names: Tuple[str, ...]
    unit: Tuple[Scalar, ...]
    table: Table = field(repr=False)
    name: str = ""

    def __post_init__(self):
        from ..validators.algebra_validator import AlgebraValidator

        if not self.coefficients.is_field:
            raise ValidationError("algebras must be defined over Q or F_p, not Z")
        dim = len(self.basis_names)
        if dim == 0:
            raise ValidationError("an algebra needs at least one basis vector")
        if len(set(self.basis_names)) != dim:
            raise ValidationError("basis names must be distinct")
        if len(self.unit) != dim:
            raise ValidationError(f"unit has {len(self.unit)} coordinates, expected {dim}")
        if len(self.table) != dim or any(len(row) != dim for row in self.table):
            raise ValidationError(f"structure table must have shape {dim}x{dim}")
        for row in self.table:
            for entry in row:
                for k in entry:
                    if not 0 <= k < dim:
                        raise ValidationError(f"product index {k} out of range")
        AlgebraValidator.validate_structure(self)

    # ==================== Shape ====================

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @property
    def unit_vector(self) -> Vector:
        return {k: v for k, v in enumerate(self.unit) if v}

    @property
    def unit_index(self) -> Optional[int]:
        """Index of the unit when it is itself a basis vector."""
        support = self.unit_vector
        if len(support) == 1:
            (k, v), = support.items()
            if v == self.coefficients.one:
                return k
        return None

    def index_of(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise ValidationError(f"unknown basis element {name!r}") from None

    # ==================== Arithmetic on sparse vectors ====================

    def multiply_basis(self, i: int, j: int) -> Vector:
        return self.table[i][j]

    def multiply(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                product_ij = row[j]
                if product_ij:
                    add_scaled(out, product_ij, a * b)
        return out

    def multiplication_matrix(self, x: Mapping[int, Scalar]) -> IntMatrix:
        """Matrix of y -> x*y (column j = x*b_j)."""
        columns = [self.multiply(x, {j: self.coefficients.one}) for j in range(self.dim)]
        return IntMatrix.from_columns(columns, self.dim, self.coefficients)

    # ==================== Elements ====================

    def element(self, coords: Sequence[Any]) -> "RingElement":
        if len(coords) != self.dim:
            raise ValidationError(f"element needs {self.dim} coordinates, got {len(coords)}")
        convert = self.coefficients.convert
        return RingElement(self, tuple(convert(c) for c in coords))

    def from_vector(self, vector: Mapping[int, Scalar]) -> "RingElement":
        zero = self.coefficients.zero
        coords = [zero] * self.dim
        for k, v in vector.items():
            coords[k] = v
        return RingElement(self, tuple(coords))

    def basis_element(self, i: int) -> "RingElement":
        return self.from_vector({i: self.coefficients.one})

    def one(self) -> "RingElement":
        return RingElement(self, tuple(self.unit))

    def zero(self) -> "RingElement":
        return RingElement(self, (self.coefficients.zero,) * self.dim)

    def scalar(self, value: Any) -> "RingElement":
        return self.one().scale(self.coefficients.convert(value))

    @property
    def order(self) -> Optional[int]:
        if not self.coefficients.is_finite:
            return None
        return self.coefficients.p ** self.dim

    def elements(self) -> Iterator["RingElement"]:
        """All elements in lexicographic coordinate order (finite algebras only)."""
        if not self.coefficients.is_finite:
            raise ValidationError("only finite algebras can be enumerated")
        check_units("algebra elements", self.order)
        convert = self.coefficients.convert
        scalars = [convert(a) for a in range(self.coefficients.p)]
        for coords in product(scalars, repeat=self.dim):
            yield RingElement(self, tuple(coords))

    # ==================== Output ====================

    def products(self) -> List[Tuple[int, int, Dict[int, Scalar]]]:
        """Nonzero products b_i*b_j for i <= j."""
        return [(i, j, dict(self.table[i][j]))
                for i in range(self.dim) for j in range(i, self.dim) if self.table[i][j]]

    def to_dict(self) -> dict:
        convert = self.coefficients.to_python
        return {
            "name": self.name,
            "coefficients": self.coefficients.to_dict(),
            "basis": list(self.basis_names),
            "unit": [convert(v) for v in self.unit],
            "products": [
                [i, j, {str(k): convert(c) for k, c in sorted(entry.items())}]
                for i, j, entry in self.products()
            ],
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinAlgebra):
            return NotImplemented
        return (self.coefficients == other.coefficients
                and self.basis_names == other.basis_names
                and self.unit == other.unit
                and self.table == other.table)

    def __hash__(self) -> int:
        return hash((self.coefficients, self.basis_names))

    def __str__(self) -> str:
        if self.name:
            return self.name
        return f"{self.coefficients}-algebra on {', '.join(self.basis_names)}"


@dataclass(frozen=True)
class RingElement:
    """
    Element of a FinAlgebra in basis coordinates.

    Supports +, -, *, integer powers and scaling; inverses live in
    AlgebraService because they need a linear solve.
    """
    algebra: FinAlgebra = field(repr=False)
    coords: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValidationError(
                f"element has {len(self.coords)} coordinates, expected {self.algebra.dim}"
            )

    @property
    def vector(self) -> Vector:
        return {k: v for k, v in enumerate(self.coords) if v}

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_one(self) -> bool:
        return self.coords == tuple(self.algebra.unit)

    def _check(self, other: "RingElement") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ValidationError("elements belong to different algebras")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "RingElement":
        return RingElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return self.algebra.from_vector(self.algebra.multiply(self.vector, other.vector))

    def scale(self, factor: Scalar) -> "RingElement":
        return RingElement(self.algebra, tuple(factor * a for a in self.coords))

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            raise ValidationError("negative powers need an inverse")
        result = self.algebra.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def nilpotency_order(self) -> Optional[int]:
        """Smallest N with x^N = 0, or None when x is not nilpotent."""
        power = self
        for n in range(1, self.algebra.dim + 2):
            if power.is_zero():
                return n
            power = power * self
        return None

    def is_nilpotent(self) -> bool:
        return self.nilpotency_order() is not None

    def key(self) -> Tuple[int, ...]:
        """Hashable canonical key (integer coordinates over F_p)."""
        coefficients = self.algebra.coefficients
        if coefficients.is_finite:
            return tuple(coefficients.to_int(a) for a in self.coords)
        return tuple(self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.key())

    def to_python(self) -> List[Any]:
        convert = self.algebra.coefficients.to_python
        return [convert(a) for a in self.coords]

    def __str__(self) -> str:
        coefficients = self.algebra.coefficients
        terms = []
        for k, value in enumerate(self.coords):
            if not value:
                continue
            shown = coefficients.to_python(value)
            name = self.algebra.basis_names[k]
            if k == self.algebra.unit_index:
                terms.append(str(shown))
            elif shown == 1:
                terms.append(name)
            else:
                terms.append(f"{shown}*{name}")
        return " + ".join(terms) if terms else "0"
