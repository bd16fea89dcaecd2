"""
Symbol Presentation Models

The unit group of a finite algebra in invariant-factor coordinates, and the
symbol presentations of Milnor K-groups and of the Dennis-Stein group D_2.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..exceptions import ValidationError
from .abelian_group import FPAbelianGroup
from .algebra import FinAlgebra, RingElement
from .int_matrix import Vector, add_scaled
from .units import UnitTable


def mixed_radix_index(letters: Sequence[int], base: int) -> int:
    value = 0
    for letter in letters:
        value = value * base + letter
    return value


def mixed_radix_word(index: int, base: int, length: int) -> Tuple[int, ...]:
    letters = []
    for _ in range(length):
        index, letter = divmod(index, base)
        letters.append(letter)
    return tuple(reversed(letters))


@dataclass(frozen=True, eq=False)
class UnitGroup:
    """
    R* as an abstract finite abelian group.

    Attributes:
        table: The units with inverses
        group: R* with generators the units (by table index)
        logs: logs[u] are the normal coordinates of unit u
        basis: basis[i] is a unit representing the i-th normal generator
    """
    table: UnitTable = field(repr=False)
    group: FPAbelianGroup
    logs: Tuple[Tuple[int, ...], ...] = field(repr=False)
    basis: Tuple[RingElement, ...] = field(repr=False)

    @property
    def orders(self) -> Tuple[int, ...]:
        return self.group.torsion

    @property
    def rank(self) -> int:
        return len(self.basis)

    def log(self, unit: RingElement) -> Tuple[int, ...]:
        return self.logs[self.table.require_index(unit)]


@dataclass(frozen=True, eq=False)
class SymbolPresentation:
    """
    Presentation of K_n^M(R) by symbols {u_1, ..., u_n}.

    The full presentation has one generator per n-tuple of units. The
    optimized one has one generator per n-tuple of invariant-factor basis
    elements of R*, and reads symbols through discrete logarithms.

    Attributes:
        algebra: R
        n: Symbol length
        units: R* with its normal basis
        optimized: Which generator system is used
        extra_relations: Whether additive-inverse and anticommutativity rows were added
        group: The presented group
        relation_counts: Rows per relation family
    """
    algebra: FinAlgebra = field(repr=False)
    n: int
    units: UnitGroup = field(repr=False)
    optimized: bool
    extra_relations: bool
    group: FPAbelianGroup
    relation_counts: Dict[str, int] = field(default_factory=dict)

    @property
    def base(self) -> int:
        return self.units.rank if self.optimized else len(self.units.table)

    @property
    def n_generators(self) -> int:
        return self.base ** self.n

    def generator(self, index: int) -> Tuple[int, ...]:
        """Index tuple of a generator (unit indices, or basis indices when optimized)."""
        return mixed_radix_word(index, self.base, self.n)

    def generator_entries(self, index: int) -> List[RingElement]:
        letters = self.generator(index)
        if self.optimized:
            return [self.units.basis[k] for k in letters]
        return [self.units.table.units[k] for k in letters]

    def generators(self) -> Iterator[Tuple[int, ...]]:
        for index in range(self.n_generators):
            yield self.generator(index)

    def symbol_vector(self, entries: Sequence[RingElement]) -> Vector:
        """
        Generator vector of the symbol {entries}.

        Raises:
            ValidationError: If the symbol length is wrong
            NonUnitEntry: If an entry is not a unit
        """
        if len(entries) != self.n:
            raise ValidationError(f"expected a symbol of length {self.n}, got {len(entries)}")
        table = self.units.table
        indices = table.indices(entries)
        if not self.optimized:
            return {mixed_radix_index(indices, self.base): 1}
        out: Vector = {}
        partial: Dict[Tuple[int, ...], int] = {(): 1}
        for u in indices:
            following: Dict[Tuple[int, ...], int] = {}
            for prefix, value in partial.items():
                for k, c in enumerate(self.units.logs[u]):
                    if c:
                        key = prefix + (k,)
                        following[key] = following.get(key, 0) + value * c
            partial = following
        for word, value in partial.items():
            add_scaled(out, {mixed_radix_index(word, self.base): value}, 1)
        return out

    def symbol_class(self, entries: Sequence[RingElement]) -> Tuple[int, ...]:
        """Normal coordinates of a symbol."""
        return self.group.coordinates(self.symbol_vector(entries))

    def is_trivial_symbol(self, entries: Sequence[RingElement]) -> bool:
        return not any(self.symbol_class(entries))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "generators": self.n_generators,
            "optimized": self.optimized,
            "extra_relations": self.extra_relations,
            "relations": dict(self.relation_counts),
            "group": self.group.to_dict(),
        }

    def __str__(self) -> str:
        return f"K_{self.n}^M({self.algebra}) = {self.group}"


@dataclass(frozen=True, eq=False)
class DennisSteinPresentation:
    """
    Presentation of D_2(R) (or of D_2(R, I)) by symbols <a, b> with 1 + ab a unit.

    Attributes:
        algebra: R
        pairs: Element-index pairs (a, b) of the generators
        group: The presented group
        ideal: Ideal basis indices for the relative group
        relation_counts: Rows per relation family
    """
    algebra: FinAlgebra = field(repr=False)
    pairs: Tuple[Tuple[int, int], ...] = field(repr=False)
    group: FPAbelianGroup
    ideal: Optional[Tuple[int, ...]] = None
    relation_counts: Dict[str, int] = field(default_factory=dict)
    _index: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index.update({pair: k for k, pair in enumerate(self.pairs)})

    def generator_index(self, a: int, b: int) -> Optional[int]:
        return self._index.get((a, b))

    def to_dict(self) -> dict:
        return {
            "generators": len(self.pairs),
            "relative": self.ideal is not None,
            "relations": dict(self.relation_counts),
            "group": self.group.to_dict(),
        }

    def __str__(self) -> str:
        suffix = ", I" if self.ideal is not None else ""
        return f"D_2({self.algebra}{suffix}) = {self.group}"
