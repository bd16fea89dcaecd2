"""
Exact Elimination Backend

Concrete IEliminationBackend built from the echelon, Smith and Tietze
pieces of this package.
"""

import logging
from typing import Any, Iterable, List, Mapping, Optional, Sequence, Tuple

from ...domain.exceptions import ValidationError
from ...domain.limits import check_entries
from ...domain.models.coefficients import INTEGERS, Coefficients
from ...domain.models.int_matrix import IntMatrix, Vector
from .field_rank import rank as field_rank
from .field_rank import solve as field_solve
from .presentation_reducer import PresentationReducer
from .smith_normal_form import smith_decomposition
from .subquotient import SubQuotient, SubQuotientMap, new_echelon

logger = logging.getLogger(__name__)


class ExactEliminationBackend:
    """Exact backend: Tietze + Smith over Z, echelon forms over fields."""

    def __init__(self):
        self._reducer = PresentationReducer()

    def normal_form(self, n_generators: int, relations: Iterable[Mapping[int, Any]],
                    coefficients: Coefficients, label: str = "presentation"):
        return self._reducer.reduce(n_generators, relations, coefficients, label)

    def smith(self, matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
        if matrix.coefficients.is_field:
            raise ValidationError("Smith normal form needs integer coefficients")
        check_entries("Smith normal form", matrix.rows * matrix.cols)
        decomposition = smith_decomposition(matrix.to_dense(), cols=matrix.cols)
        return (
            IntMatrix.from_dense(decomposition.smith, INTEGERS, cols=matrix.cols),
            IntMatrix.from_dense(decomposition.left, INTEGERS, cols=matrix.rows),
            IntMatrix.from_dense(decomposition.right, INTEGERS, cols=matrix.cols),
        )

    def rank(self, matrix: IntMatrix) -> int:
        return field_rank(matrix)

    def solve(self, matrix: IntMatrix, rhs: Mapping[int, Any]) -> Optional[Vector]:
        return field_solve(matrix, rhs)

    def span_basis(self, dimension: int, vectors: Iterable[Mapping[int, Any]],
                   coefficients: Coefficients) -> List[Vector]:
        echelon = new_echelon(dimension, coefficients)
        for vector in vectors:
            echelon.add(dict(vector))
        return echelon.basis()

    def subquotient(self, ambient: int, numerator: Iterable[Mapping[int, Any]],
                    denominator: Iterable[Mapping[int, Any]], coefficients: Coefficients,
                    label: str = "subquotient") -> SubQuotient:
        return SubQuotient(ambient, numerator, denominator, coefficients, label)

    def map_from_images(self, source: SubQuotient, target: SubQuotient,
                        images: Sequence[Mapping[int, Any]], check: bool = True) -> SubQuotientMap:
        return SubQuotientMap(source, target, images, check)

    def map_from_ambient(self, source: SubQuotient, target: SubQuotient, matrix: IntMatrix,
                         check: bool = True) -> SubQuotientMap:
        return SubQuotientMap.from_ambient(source, target, matrix, check)

    def map_from_spanning(self, source: SubQuotient, target: SubQuotient,
                          spanning: Sequence[Tuple[Mapping[int, Any], Mapping[int, Any]]],
                          check: bool = True) -> SubQuotientMap:
        return SubQuotientMap.from_spanning_images(source, target, spanning, check)
