"""
Ranks via sympy DomainMatrix

Sparse ranks for the homology and exactness computations over fields (and
ranks over Q of integer matrices).
"""

import logging
from typing import Any, Iterable, List, Mapping, Optional

from sympy.polys.matrices import DomainMatrix

from ...domain.exceptions import ValidationError
from ...domain.limits import check_entries
from ...domain.models.coefficients import Coefficients
from ...domain.models.int_matrix import IntMatrix, Vector

logger = logging.getLogger(__name__)


def to_domain_matrix(matrix: IntMatrix, coefficients: Coefficients = None) -> DomainMatrix:
    """Sparse DomainMatrix over the field of fractions of the matrix coefficients."""
    coefficients = coefficients or matrix.coefficients
    domain = coefficients.domain
    if not coefficients.is_field:
        domain = domain.get_field()
    convert = domain.convert
    rows = {}
    for i, j, value in matrix.iter_entries():
        rows.setdefault(i, {})[j] = convert(value)
    return DomainMatrix(rows, matrix.shape, domain)


def rank(matrix: IntMatrix) -> int:
    """Rank over the field of fractions of the coefficients."""
    if matrix.rows == 0 or matrix.cols == 0 or matrix.is_zero():
        return 0
    check_entries("rank computation", matrix.nnz)
    result = to_domain_matrix(matrix).rank()
    logger.debug(f"rank of {matrix.rows}x{matrix.cols} (nnz {matrix.nnz}) = {result}")
    return result


def stacked_rank(blocks: Iterable[IntMatrix]) -> int:
    """Rank of the matrices placed side by side (same row count)."""
    blocks = list(blocks)
    if not blocks:
        return 0
    rows = blocks[0].rows
    joined = IntMatrix.from_blocks([blocks], [rows], [b.cols for b in blocks], blocks[0].coefficients)
    return rank(joined)


def column_space_basis(matrix: IntMatrix) -> List[int]:
    """Indices of pivot columns (a column basis of the image)."""
    if matrix.rows == 0 or matrix.cols == 0 or matrix.is_zero():
        return []
    _, pivots = to_domain_matrix(matrix).rref()
    return list(pivots)


def solve(matrix: IntMatrix, rhs: Mapping[int, Any]) -> Optional[Vector]:
    """
    One solution x of matrix * x = rhs over the field, or None.

    Free variables are set to zero.
    """
    coefficients = matrix.coefficients
    if not coefficients.is_field:
        raise ValidationError("solve needs field coefficients")
    if not rhs:
        return {}
    augmented = IntMatrix.from_blocks(
        [[matrix, IntMatrix.from_columns([rhs], matrix.rows, coefficients)]],
        [matrix.rows], [matrix.cols, 1], coefficients,
    )
    reduced, pivots = to_domain_matrix(augmented).rref()
    if matrix.cols in pivots:
        return None
    rows = reduced.to_sparse().rep
    solution: Vector = {}
    for r, pivot in enumerate(pivots):
        value = rows.get(r, {}).get(matrix.cols)
        if value:
            solution[pivot] = value
    return solution
