"""
Split Nilpotent Pair Model

A split nilpotent extension R -> S with kernel I spanned by basis vectors of
R and section onto the complementary basis vectors.
"""

from dataclasses import dataclass, field
from typing import List, Mapping, Tuple

from .algebra import FinAlgebra, RingElement
from .coefficients import Scalar
from .int_matrix import IntMatrix, Vector


@dataclass(frozen=True, eq=False)
class SplitNilpotentPair:
    """
    (R, I, S, section) with I^N = 0 and I^(N-1) != 0.

    Attributes:
        ring: R
        ideal_indices: Basis indices of R spanning I
        quotient: S = R/I, with basis the complementary basis vectors
        complement_indices: Basis indices of R spanned by the section
        projection: dim S x dim R matrix of R -> S
        section: dim R x dim S matrix of S -> R
        nilpotency_index: N
    """
    ring: FinAlgebra
    ideal_indices: Tuple[int, ...]
    quotient: FinAlgebra
    complement_indices: Tuple[int, ...]
    projection: IntMatrix = field(repr=False)
    section: IntMatrix = field(repr=False)
    nilpotency_index: int

    @property
    def ideal_basis(self) -> List[RingElement]:
        return [self.ring.basis_element(i) for i in self.ideal_indices]

    @property
    def ideal_names(self) -> List[str]:
        return [self.ring.basis_names[i] for i in self.ideal_indices]

    def in_ideal(self, element: RingElement) -> bool:
        return all(not element.coords[i] for i in self.complement_indices)

    def in_one_plus_ideal(self, element: RingElement) -> bool:
        return self.in_ideal(element - self.ring.one())

    def project(self, element: RingElement) -> RingElement:
        return self.quotient.from_vector(self.projection.apply(element.vector))

    def project_vector(self, vector: Mapping[int, Scalar]) -> Vector:
        return self.projection.apply(vector)

    def lift(self, element: RingElement) -> RingElement:
        return self.ring.from_vector(self.section.apply(element.vector))

    def to_dict(self) -> dict:
        return {
            "ring": str(self.ring),
            "ideal": self.ideal_names,
            "quotient": str(self.quotient),
            "nilpotency_index": self.nilpotency_index,
        }

    def __str__(self) -> str:
        return f"({self.ring}, ({', '.join(self.ideal_names)}))"
