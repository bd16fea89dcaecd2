"""
Complex Models

Tensor-power spaces, operator matrices on them, finite windows of chain
complexes and mixed complexes.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from ..exceptions import ValidationError
from ..limits import check_tensor_dimension
from .algebra import FinAlgebra
from .coefficients import Coefficients
from .int_matrix import IntMatrix


@dataclass(frozen=True, eq=False)
class TensorSpace:
    """
    R^(n+1) with basis the (n+1)-tuples of algebra basis indices.

    Tuples are indexed in mixed radix, first slot most significant.
    """
    algebra: FinAlgebra = field(repr=False)
    degree: int

    def __post_init__(self):
        if self.degree < 0:
            raise ValidationError("tensor degree must be nonnegative")
        check_tensor_dimension(f"tensor space of degree {self.degree}", self.dimension)

    @property
    def length(self) -> int:
        """Number of tensor factors (degree + 1)."""
        return self.degree + 1

    @property
    def dimension(self) -> int:
        return self.algebra.dim ** (self.degree + 1)

    def index(self, word: Tuple[int, ...]) -> int:
        dim = self.algebra.dim
        value = 0
        for letter in word:
            value = value * dim + letter
        return value

    def word(self, index: int) -> Tuple[int, ...]:
        dim = self.algebra.dim
        letters = []
        for _ in range(self.degree + 1):
            index, letter = divmod(index, dim)
            letters.append(letter)
        return tuple(reversed(letters))

    def words(self) -> Iterator[Tuple[int, ...]]:
        return product(range(self.algebra.dim), repeat=self.degree + 1)

    def label(self, index: int) -> str:
        names = self.algebra.basis_names
        return "(" + ", ".join(names[k] for k in self.word(index)) + ")"


class OperatorKind(Enum):
    FACE = "face"
    DEGENERACY = "degeneracy"
    CYCLIC = "cyclic"
    NORM = "norm"
    B = "b"
    B_PRIME = "b_prime"
    CONNES_B = "connes_B"
    EXTRA_DEGENERACY = "extra_degeneracy"


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """
    Matrix of a simplicial or cyclic operator between tensor spaces.

    Attributes:
        kind: Which operator
        index: i for faces and degeneracies, else None
        source: Domain tensor space
        target: Codomain tensor space
        matrix: target.dimension x source.dimension
    """
    kind: OperatorKind
    index: Optional[int]
    source: TensorSpace = field(repr=False)
    target: TensorSpace = field(repr=False)
    matrix: IntMatrix = field(repr=False)

    def __post_init__(self):
        expected = (self.target.dimension, self.source.dimension)
        if self.matrix.shape != expected:
            raise ValidationError(f"{self.label} has shape {self.matrix.shape}, expected {expected}")

    @property
    def label(self) -> str:
        suffix = f"^{self.index}" if self.index is not None else ""
        return f"{self.kind.value}{suffix}_{self.source.degree}"

    def __matmul__(self, other: "OperatorMatrix") -> IntMatrix:
        return self.matrix @ other.matrix


@dataclass(frozen=True, eq=False)
class GradedComplexSlice:
    """
    Finite window of a chain complex of free modules (homological grading).

    Attributes:
        coefficients: Scalar ring
        ranks: degree -> rank of C_n (missing degrees are zero)
        boundaries: degree n -> matrix of C_n -> C_(n-1)
        name: Display name
    """
    coefficients: Coefficients
    ranks: Dict[int, int]
    boundaries: Dict[int, IntMatrix] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        for n, matrix in self.boundaries.items():
            expected = (self.rank_at(n - 1), self.rank_at(n))
            if matrix.shape != expected:
                raise ValidationError(
                    f"boundary in degree {n} has shape {matrix.shape}, expected {expected}"
                )

    def rank_at(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def boundary(self, n: int) -> IntMatrix:
        matrix = self.boundaries.get(n)
        if matrix is None:
            return IntMatrix.zero(self.rank_at(n - 1), self.rank_at(n), self.coefficients)
        return matrix

    @property
    def degrees(self) -> List[int]:
        return sorted(n for n, r in self.ranks.items() if r)

    @classmethod
    def single(cls, coefficients: Coefficients, degree: int, rank: int, name: str = "") -> "GradedComplexSlice":
        """Complex concentrated in one degree."""
        return cls(coefficients, {degree: rank}, {}, name)


@dataclass(frozen=True, eq=False)
class MixedComplex:
    """
    (C, b, B) with b of degree -1 and B of degree +1.

    Attributes:
        ranks: degree -> rank of C_n
        b: degree n -> C_n -> C_(n-1)
        connes: degree n -> B: C_n -> C_(n+1)
    """
    coefficients: Coefficients
    ranks: Dict[int, int]
    b: Dict[int, IntMatrix] = field(repr=False)
    connes: Dict[int, IntMatrix] = field(repr=False)
    name: str = ""

    def identity_residuals(self, n: int) -> Iterator[Tuple[str, IntMatrix]]:
        """Matrices that must vanish: b b, B B and b B + B b starting in degree n."""
        if n + 1 in self.b and n in self.b:
            yield f"b_{n} b_{n + 1}", self.b[n] @ self.b[n + 1]
        if n in self.connes and n + 1 in self.connes:
            yield f"B_{n + 1} B_{n}", self.connes[n + 1] @ self.connes[n]
        if n in self.connes and n + 1 in self.b:
            anti = self.b[n + 1] @ self.connes[n]
            if n - 1 in self.connes and n in self.b:
                anti = anti + self.connes[n - 1] @ self.b[n]
            yield f"b_{n + 1} B_{n} + B_{n - 1} b_{n}", anti

    def as_chain_complex(self) -> GradedComplexSlice:
        return GradedComplexSlice(self.coefficients, dict(self.ranks), dict(self.b), self.name)
