"""
Differential Module Model

Presented modules of Kähler differentials r0 dr1 ∧ ... ∧ drn.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, List, Optional, Tuple

from ..exceptions import ValidationError
from .abelian_group import FPAbelianGroup, VectorLike
from .algebra import FinAlgebra, RingElement
from .complexes import TensorSpace
from .int_matrix import Vector, add_scaled


@dataclass(frozen=True, eq=False)
class DifferentialModule:
    """
    Ω^n of a finite algebra, or a subgroup or quotient of it.

    Generators are the (n+1)-tuples of basis indices (i0, ..., in) standing
    for b_i0 db_i1 ∧ ... ∧ db_in. Every element is handled as a vector in
    these generators; `group` accepts such vectors in coordinates().

    Attributes:
        algebra: R
        degree: n
        space: Tuple indexing of the generators
        group: The module, addressed through generator vectors
        relations: Relation rows of the absolute presentation
        kind: "absolute", "relative", "mod-exact" or a custom tag
        ideal: Ideal basis indices for relative modules
    """
    algebra: FinAlgebra = field(repr=False)
    degree: int
    space: TensorSpace = field(repr=False)
    group: FPAbelianGroup
    relations: Tuple[Vector, ...] = field(default=(), repr=False)
    kind: str = "absolute"
    ideal: Optional[Tuple[int, ...]] = None

    @property
    def n_generators(self) -> int:
        return self.space.dimension

    def generator_label(self, index: int) -> str:
        names = self.algebra.basis_names
        word = self.space.word(index)
        head = "" if word[0] == self.algebra.unit_index else names[word[0]]
        tail = "∧".join(f"d{names[k]}" for k in word[1:])
        if not tail:
            return names[word[0]]
        return f"{head} {tail}" if head else tail

    @property
    def generator_labels(self) -> List[str]:
        return [self.generator_label(i) for i in range(self.n_generators)]

    def element(self, coefficient: RingElement, *differentials: RingElement) -> Vector:
        """
        Generator vector of coefficient * d(x1) ∧ ... ∧ d(xn), expanded multilinearly.

        Raises:
            ValidationError: If the number of differentials is not the degree
        """
        if len(differentials) != self.degree:
            raise ValidationError(f"expected {self.degree} differentials, got {len(differentials)}")
        factors = [coefficient.vector] + [x.vector for x in differentials]
        out: Vector = {}
        for word in product(*(sorted(f) for f in factors)):
            value = factors[0][word[0]]
            for f, k in zip(factors[1:], word[1:]):
                value = value * f[k]
            add_scaled(out, {self.space.index(word): value}, 1)
        return out

    def reduce(self, vector: VectorLike) -> Tuple[Any, ...]:
        """Normal coordinates of a generator vector."""
        return self.group.coordinates(vector)

    def is_zero(self, vector: VectorLike) -> bool:
        return self.group.is_zero_element(vector)

    def element_equal(self, a: VectorLike, b: VectorLike) -> bool:
        return self.group.element_equal(a, b)

    @property
    def label(self) -> str:
        if self.kind == "absolute":
            return f"Ω^{self.degree}({self.algebra})"
        return f"Ω^{self.degree}({self.algebra}) [{self.kind}]"

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "kind": self.kind,
            "generators": self.n_generators,
            "group": self.group.to_dict(),
        }

    def __str__(self) -> str:
        return f"{self.label} = {self.group}"
