"""
Algebra Validator

Domain-level validation of structure constants and parsing of element
strings such as "1+2*e" or "3/2*x - y".
"""

import re
from fractions import Fraction
from typing import TYPE_CHECKING, List, Sequence

from sympy import isprime

from ..exceptions import NoUnit, NotAssociative, NotCommutative, ValidationError
from ..models.int_matrix import add_scaled

if TYPE_CHECKING:
    from ..models.algebra import FinAlgebra, RingElement

# sign, optional rational coefficient, optional '*', optional basis name
_TERM = re.compile(
    r'\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*)?\s*([A-Za-z_][A-Za-z0-9_^.]*)?\s*'
)


class AlgebraValidator:
    """
    Validates algebra data before and after construction.

    Static methods only: validators are stateless.
    """

    @staticmethod
    def validate_prime(p: object) -> int:
        """
        Raises:
            ValidationError: "p must be prime"
        """
        if not isinstance(p, int) or isinstance(p, bool) or not isprime(p):
            raise ValidationError("p must be prime")
        return p

    @staticmethod
    def check_commutative(algebra: "FinAlgebra") -> None:
        table = algebra.table
        for i in range(algebra.dim):
            for j in range(i + 1, algebra.dim):
                if table[i][j] != table[j][i]:
                    raise NotCommutative(i, j)

    @staticmethod
    def check_unit(algebra: "FinAlgebra") -> None:
        one = algebra.coefficients.one
        unit = algebra.unit_vector
        if not unit:
            raise NoUnit("unit vector is zero")
        for j in range(algebra.dim):
            if algebra.multiply(unit, {j: one}) != {j: one}:
                raise NoUnit(f"unit does not fix basis element {algebra.basis_names[j]}")

    @staticmethod
    def check_associative(algebra: "FinAlgebra") -> None:
        """
        Check (b_i b_j) b_l = b_i (b_j b_l) for every triple.

        Raises:
            NotAssociative: Naming the first failing triple
        """
        table = algebra.table
        dim = algebra.dim
        for i in range(dim):
            for j in range(dim):
                left_ij = table[i][j]
                for l in range(dim):
                    left = {}
                    for k, c in left_ij.items():
                        add_scaled(left, table[k][l], c)
                    right = {}
                    for k, c in table[j][l].items():
                        add_scaled(right, table[i][k], c)
                    if left != right:
                        raise NotAssociative(i, j, l)

    @staticmethod
    def validate_structure(algebra: "FinAlgebra") -> None:
        AlgebraValidator.check_commutative(algebra)
        AlgebraValidator.check_unit(algebra)
        AlgebraValidator.check_associative(algebra)

    @staticmethod
    def parse_element(algebra: "FinAlgebra", text: str) -> "RingElement":
        """
        Parse a linear combination of basis names.

        A bare coefficient stands for that multiple of 1.

        Args:
            algebra: Algebra whose basis names may appear
            text: E.g. "1+2*e", "3/2*x - y", "-e"

        Returns:
            The parsed element

        Raises:
            ValidationError: On syntax errors or unknown names

        Examples:
            >>> str(AlgebraValidator.parse_element(dual, "1+2*e"))
            '1 + 2*e'
        """
        source = text.strip()
        if not source:
            raise ValidationError("empty element string")
        coefficients = algebra.coefficients
        result = algebra.zero()
        position = 0
        first = True
        while position < len(source):
            match = _TERM.match(source, position)
            sign, coefficient, star, name = match.groups()
            if match.end() == position or (coefficient is None and name is None):
                raise ValidationError(f"cannot parse element {text!r} at position {position}")
            if sign is None and not first:
                raise ValidationError(f"missing operator in {text!r} at position {position}")
            if star and (coefficient is None or name is None):
                raise ValidationError(f"dangling '*' in {text!r}")
            value = Fraction(coefficient) if coefficient else Fraction(1)
            if sign == "-":
                value = -value
            scalar = coefficients.convert(value)
            if name is None:
                term = algebra.one().scale(scalar)
            else:
                term = algebra.basis_element(algebra.index_of(name)).scale(scalar)
            result = result + term
            position = match.end()
            first = False
        return result

    @staticmethod
    def parse_symbol(algebra: "FinAlgebra", text: str) -> List["RingElement"]:
        """Parse a comma-separated list of elements, e.g. "1+e, 3"."""
        parts = [part for part in text.split(",")]
        if not parts or any(not part.strip() for part in parts):
            raise ValidationError(f"malformed symbol {text!r}")
        return [AlgebraValidator.parse_element(algebra, part) for part in parts]

    @staticmethod
    def validate_basis_names(algebra: "FinAlgebra", names: Sequence[str]) -> List[int]:
        """Map basis names to indices, rejecting unknown or repeated names."""
        if len(set(names)) != len(names):
            raise ValidationError("ideal generators must be distinct")
        return [algebra.index_of(name) for name in names]
