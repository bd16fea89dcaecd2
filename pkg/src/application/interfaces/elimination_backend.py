"""
Elimination Backend Interface

Contract for the exact linear algebra the services are built on.
The infrastructure layer provides the concrete implementation.
"""

from typing import Any, Iterable, List, Mapping, Optional, Protocol, Sequence, Tuple

from ...domain.models.abelian_group import FPAbelianGroup, NormalForm
from ...domain.models.coefficients import Coefficients
from ...domain.models.int_matrix import IntMatrix, Vector


class ISubQuotient(Protocol):
    """L/M inside an ambient free module."""

    ambient: int
    coefficients: Coefficients
    generators: List[Vector]
    label: str

    def contains(self, vector: Mapping[int, Any]) -> bool:
        ...

    def is_zero(self, vector: Mapping[int, Any]) -> bool:
        ...

    def denominator_basis(self) -> List[Vector]:
        ...

    def solve(self, vector: Mapping[int, Any]) -> List[Any]:
        ...

    def group(self) -> FPAbelianGroup:
        ...

    def coordinates(self, vector: Mapping[int, Any]) -> Tuple[Any, ...]:
        ...

    def lift(self, index: int) -> Vector:
        ...

    def same_as(self, other: "ISubQuotient") -> bool:
        ...


class ISubQuotientMap(Protocol):
    """Homomorphism between subquotients given on generators."""

    source: ISubQuotient
    target: ISubQuotient
    images: List[Vector]

    def apply(self, vector: Mapping[int, Any]) -> Vector:
        ...

    def kernel(self, label: Optional[str] = None) -> ISubQuotient:
        ...

    def image(self, label: Optional[str] = None) -> ISubQuotient:
        ...

    def cokernel(self, label: Optional[str] = None) -> ISubQuotient:
        ...

    def is_zero_map(self) -> bool:
        ...

    def is_surjective(self) -> bool:
        ...


class IEliminationBackend(Protocol):
    """
    Interface for exact elimination over Z, Q and F_p.

    Services depend on this abstraction, which keeps the algorithms that
    build presentations apart from the ones that collapse them.
    """

    def normal_form(self, n_generators: int, relations: Iterable[Mapping[int, Any]],
                    coefficients: Coefficients, label: str = "presentation") -> NormalForm:
        """
        Reduce a presentation.

        Args:
            n_generators: Number of generators
            relations: Sparse relation rows
            coefficients: Integers or a field
            label: Name used in progress messages

        Returns:
            Normal form with free_rank, torsion, coordinates() and lift()

        Raises:
            CapacityExceeded: If the presentation is too large
        """
        ...

    def smith(self, matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
        """(S, U, V) with U * matrix * V = S."""
        ...

    def rank(self, matrix: IntMatrix) -> int:
        """Rank over the field of fractions."""
        ...

    def solve(self, matrix: IntMatrix, rhs: Mapping[int, Any]) -> Optional[Vector]:
        """One solution of matrix * x = rhs over a field, or None."""
        ...

    def span_basis(self, dimension: int, vectors: Iterable[Mapping[int, Any]],
                   coefficients: Coefficients) -> List[Vector]:
        """Echelon basis of the span (or lattice) of the vectors."""
        ...

    def subquotient(self, ambient: int, numerator: Iterable[Mapping[int, Any]],
                    denominator: Iterable[Mapping[int, Any]], coefficients: Coefficients,
                    label: str = "subquotient") -> ISubQuotient:
        ...

    def map_from_images(self, source: ISubQuotient, target: ISubQuotient,
                        images: Sequence[Mapping[int, Any]], check: bool = True) -> ISubQuotientMap:
        ...

    def map_from_ambient(self, source: ISubQuotient, target: ISubQuotient, matrix: IntMatrix,
                         check: bool = True) -> ISubQuotientMap:
        ...

    def map_from_spanning(self, source: ISubQuotient, target: ISubQuotient,
                          spanning: Sequence[Tuple[Mapping[int, Any], Mapping[int, Any]]],
                          check: bool = True) -> ISubQuotientMap:
        ...
