"""
Unit Table Model

The unit group of a finite algebra with cached inverses and products.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from ..exceptions import NonUnitEntry
from .algebra import FinAlgebra, RingElement


@dataclass(frozen=True, eq=False)
class UnitTable:
    """
    Units of a finite algebra in lexicographic coordinate order.

    Attributes:
        algebra: The algebra
        units: The invertible elements
        inverses: inverses[i] is the index of units[i]^-1
    """
    algebra: FinAlgebra = field(repr=False)
    units: Tuple[RingElement, ...] = field(repr=False)
    inverses: Tuple[int, ...] = field(repr=False)
    _index: Dict[Tuple, int] = field(default_factory=dict, repr=False)
    _products: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index.update({u.key(): i for i, u in enumerate(self.units)})

    def __len__(self) -> int:
        return len(self.units)

    @property
    def one_index(self) -> int:
        return self._index[self.algebra.one().key()]

    def index_of(self, element: RingElement) -> Optional[int]:
        return self._index.get(element.key())

    def require_index(self, element: RingElement) -> int:
        index = self.index_of(element)
        if index is None:
            raise NonUnitEntry(f"{element} is not a unit")
        return index

    def is_unit(self, element: RingElement) -> bool:
        return element.key() in self._index

    def inverse(self, element: RingElement) -> RingElement:
        return self.units[self.inverses[self.require_index(element)]]

    def product(self, i: int, j: int) -> int:
        """Index of units[i] * units[j]."""
        key = (i, j) if i <= j else (j, i)
        cached = self._products.get(key)
        if cached is None:
            cached = self._index[(self.units[i] * self.units[j]).key()]
            self._products[key] = cached
        return cached

    def indices(self, elements: Sequence[RingElement]) -> Tuple[int, ...]:
        return tuple(self.require_index(e) for e in elements)
