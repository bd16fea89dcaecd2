"""
Milnor Service

Milnor K-groups of finite algebras by symbol presentations, relative groups
of split nilpotent pairs, the Dennis-Stein group D_2 and dlog.
"""

import logging
from itertools import product
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ...domain.exceptions import InfiniteCoefficients, ValidationError
from ...domain.limits import check_entries, check_units
from ...domain.models.abelian_group import FPAbelianGroup, GroupHomomorphism
from ...domain.models.algebra import FinAlgebra, RingElement
from ...domain.models.coefficients import INTEGERS
from ...domain.models.int_matrix import Vector, add_scaled
from ...domain.models.nilpotent_pair import SplitNilpotentPair
from ...domain.models.symbols import (
    DennisSteinPresentation,
    SymbolPresentation,
    UnitGroup,
    mixed_radix_index,
)
from .algebra_service import AlgebraService
from .group_service import GroupService
from .kahler_service import KahlerService

logger = logging.getLogger(__name__)


def _row(terms: Sequence[Tuple[int, int]]) -> Vector:
    out: Vector = {}
    for index, value in terms:
        add_scaled(out, {index: value}, 1)
    return out


class MilnorService:
    """
    Service for symbolic K-groups of finite algebras over F_p.

    K_0^M is Z, K_1^M is R*, and K_n^M for n >= 2 is the degree-n part of the
    tensor algebra on R* modulo the Steinberg ideal.
    """

    def __init__(self, algebras: AlgebraService, groups: GroupService, kahler: KahlerService):
        self.algebras = algebras
        self.groups = groups
        self.kahler = kahler
        self._unit_groups: Dict[FinAlgebra, UnitGroup] = {}
        self._presentations: Dict[Tuple[FinAlgebra, int, bool, bool], SymbolPresentation] = {}

    # ==================== Unit group ====================

    def _require_finite(self, R: FinAlgebra) -> None:
        if not R.coefficients.is_finite:
            raise InfiniteCoefficients(f"{R} has infinitely many units; symbol presentations need F_p")

    def unit_group(self, R: FinAlgebra) -> UnitGroup:
        """
        R* in invariant-factor form with a discrete logarithm for every unit.

        Raises:
            InfiniteCoefficients: Over Q
        """
        self._require_finite(R)
        cached = self._unit_groups.get(R)
        if cached is not None:
            return cached
        table = self.algebras.unit_table(R)
        generators = self._generating_units(table)
        rows = (
            _row([(table.product(w, g), 1), (w, -1), (g, -1)])
            for w in range(len(table)) for g in generators
        )
        group = self.groups.fp_group(len(table), rows, INTEGERS, label=f"{R}*")
        logs = tuple(tuple(int(c) for c in group.coordinates({u: 1})) for u in range(len(table)))
        basis = tuple(self._unit_from_vector(table, group.lift(i)) for i in range(group.rank))
        unit_group = UnitGroup(table, group, logs, basis)
        self._unit_groups[R] = unit_group
        logger.info(f"{R}* = {group} ({len(table)} units, {len(generators)} generators)")
        return unit_group

    @staticmethod
    def _generating_units(table) -> List[int]:
        reached = {table.one_index}
        generators: List[int] = []
        for u in range(len(table)):
            if u in reached:
                continue
            generators.append(u)
            coset = list(reached)
            while True:
                coset = [table.product(h, u) for h in coset]
                if coset[0] in reached:
                    break
                reached.update(coset)
        return generators

    @staticmethod
    def _unit_from_vector(table, vector: Vector) -> RingElement:
        result = table.units[table.one_index]
        for u, exponent in vector.items():
            base = table.units[u] if exponent > 0 else table.inverse(table.units[u])
            result = result * (base ** abs(int(exponent)))
        return result

    # ==================== Milnor K ====================

    def milnor_k(self, R: FinAlgebra, n: int, extra_relations: bool = False,
                 optimized: Optional[bool] = None) -> SymbolPresentation:
        """
        K_n^M(R) from symbols, multiplicativity and Steinberg relations.

        Args:
            R: Finite algebra
            n: Symbol length (0 gives Z)
            extra_relations: Also impose {u, -u} = 0 and anticommutativity
            optimized: Use the invariant-factor basis of R*; defaults to n >= 2

        Returns:
            SymbolPresentation

        Raises:
            InfiniteCoefficients: Over Q
            CapacityExceeded: If the presentation is too large

        Examples:
            >>> str(service.milnor_k(z2_dual, 2).group)
            'Z/2'
        """
        if n < 0:
            raise ValidationError("n must be nonnegative")
        if optimized is None:
            optimized = n >= 2
        key = (R, n, extra_relations, optimized)
        cached = self._presentations.get(key)
        if cached is not None:
            return cached
        units = self.unit_group(R)
        base = units.rank if optimized else len(units.table)
        check_units(f"K_{n}^M generators", base ** n)
        counts: Dict[str, int] = {}

        def counted(name: str, rows: Iterator[Vector]) -> Iterator[Vector]:
            counts[name] = 0
            for row in rows:
                counts[name] += 1
                yield row

        if optimized:
            families = [
                counted("orders", self._order_rows(units, n)),
                counted("steinberg", self._optimized_rows(units, n, self._steinberg_pairs(units))),
            ]
            if extra_relations:
                families.append(counted("additive_inverse",
                                        self._optimized_rows(units, n, self._inverse_pairs(units))))
                families.append(counted("anticommutativity", self._optimized_anticommutativity(units, n)))
        else:
            check_entries(f"K_{n}^M relations", n * len(units.table) ** (n + 1))
            families = [
                counted("multiplicativity", self._multiplicativity_rows(units, n)),
                counted("steinberg", self._full_rows(units, n, self._steinberg_pairs(units))),
            ]
            if extra_relations:
                families.append(counted("additive_inverse",
                                        self._full_rows(units, n, self._inverse_pairs(units))))
                families.append(counted("anticommutativity", self._full_anticommutativity(units, n)))
        rows = (row for family in families for row in family)
        group = self.groups.fp_group(base ** n, rows, INTEGERS, label=f"K_{n}^M({R})")
        presentation = SymbolPresentation(R, n, units, optimized, extra_relations, group, counts)
        self._presentations[key] = presentation
        logger.info(f"{presentation} (relations {counts})")
        return presentation

    def symbol_class(self, presentation: SymbolPresentation, entries: Sequence[RingElement]) -> Tuple[int, ...]:
        return presentation.symbol_class(entries)

    @staticmethod
    def _steinberg_pairs(units: UnitGroup) -> List[Tuple[int, int]]:
        table = units.table
        one = table.algebra.one()
        pairs = []
        for u, element in enumerate(table.units):
            complement = table.index_of(one - element)
            if complement is not None:
                pairs.append((u, complement))
        return pairs

    @staticmethod
    def _inverse_pairs(units: UnitGroup) -> List[Tuple[int, int]]:
        table = units.table
        return [(u, table.require_index(-element)) for u, element in enumerate(table.units)]

    def _multiplicativity_rows(self, units: UnitGroup, n: int) -> Iterator[Vector]:
        table = units.table
        size = len(table)
        for slot in range(n):
            for rest in product(range(size), repeat=n - 1):
                for u in range(size):
                    for v in range(u, size):
                        uv = table.product(u, v)
                        words = [rest[:slot] + (x,) + rest[slot:] for x in (uv, u, v)]
                        row = _row([(mixed_radix_index(words[0], size), 1),
                                    (mixed_radix_index(words[1], size), -1),
                                    (mixed_radix_index(words[2], size), -1)])
                        if row:
                            yield row

    def _full_rows(self, units: UnitGroup, n: int, pairs: List[Tuple[int, int]]) -> Iterator[Vector]:
        """{..., u, w, ...} = 0 in adjacent slots for every (u, w) in pairs."""
        size = len(units.table)
        for slot in range(n - 1):
            for rest in product(range(size), repeat=n - 2):
                for u, w in pairs:
                    word = rest[:slot] + (u, w) + rest[slot:]
                    yield {mixed_radix_index(word, size): 1}

    def _full_anticommutativity(self, units: UnitGroup, n: int) -> Iterator[Vector]:
        size = len(units.table)
        for slot in range(n - 1):
            for rest in product(range(size), repeat=n - 2):
                for u in range(size):
                    for v in range(u, size):
                        first = mixed_radix_index(rest[:slot] + (u, v) + rest[slot:], size)
                        second = mixed_radix_index(rest[:slot] + (v, u) + rest[slot:], size)
                        yield _row([(first, 1), (second, 1)])

    def _order_rows(self, units: UnitGroup, n: int) -> Iterator[Vector]:
        orders = units.orders
        for word in product(range(units.rank), repeat=n):
            if not word:
                continue
            order = 0
            for k in word:
                order = gcd(order, orders[k])
            yield {mixed_radix_index(word, units.rank): order}

    def _expanded(self, units: UnitGroup, logs: Sequence[Tuple[int, ...]]) -> Vector:
        """Generator vector of a symbol given by the discrete logs of its entries."""
        out: Vector = {}
        supports = [[(k, c) for k, c in enumerate(log) if c] for log in logs]
        for choice in product(*supports):
            value = 1
            for _, c in choice:
                value *= c
            add_scaled(out, {mixed_radix_index([k for k, _ in choice], units.rank): value}, 1)
        return out

    def _optimized_rows(self, units: UnitGroup, n: int, pairs: List[Tuple[int, int]]) -> Iterator[Vector]:
        basis_logs = [tuple(1 if j == i else 0 for j in range(units.rank)) for i in range(units.rank)]
        for slot in range(n - 1):
            for rest in product(range(units.rank), repeat=n - 2):
                for u, w in pairs:
                    logs = [basis_logs[k] for k in rest[:slot]] + [units.logs[u], units.logs[w]] \
                        + [basis_logs[k] for k in rest[slot:]]
                    row = self._expanded(units, logs)
                    if row:
                        yield row

    def _optimized_anticommutativity(self, units: UnitGroup, n: int) -> Iterator[Vector]:
        rank = units.rank
        for slot in range(n - 1):
            for rest in product(range(rank), repeat=n - 2):
                for i in range(rank):
                    for j in range(i, rank):
                        first = mixed_radix_index(rest[:slot] + (i, j) + rest[slot:], rank)
                        second = mixed_radix_index(rest[:slot] + (j, i) + rest[slot:], rank)
                        yield _row([(first, 1), (second, 1)])

    # ==================== Relative groups ====================

    def induced_map(self, pair: SplitNilpotentPair, source: SymbolPresentation,
                    target: SymbolPresentation) -> GroupHomomorphism:
        """K_n^M(R) -> K_n^M(S) on the generators of the source presentation."""
        images = tuple(
            target.symbol_vector([pair.project(x) for x in source.generator_entries(g)])
            for g in range(source.n_generators)
        )
        return GroupHomomorphism(source.group, target.group, images)

    def milnor_k_relative(self, pair: SplitNilpotentPair, n: int,
                          optimized: Optional[bool] = None) -> FPAbelianGroup:
        """
        K_n^M(R, I) = ker(K_n^M(R) -> K_n^M(S)).

        Returns:
            FPAbelianGroup whose coordinates() accepts generator vectors of
            milnor_k(pair.ring, n, optimized=optimized)
        """
        source = self.milnor_k(pair.ring, n, optimized=optimized)
        target = self.milnor_k(pair.quotient, n, optimized=optimized)
        kernel = self.groups.map_kernel(self.induced_map(pair, source, target),
                                        label=f"K_{n}^M(R,I)")
        logger.info(f"K_{n}^M of {pair} relative = {kernel}")
        return kernel

    def split_decomposition_holds(self, pair: SplitNilpotentPair, n: int) -> bool:
        """K_n^M(R) is K_n^M(S) + K_n^M(R, I) at the level of invariants."""
        whole = self.milnor_k(pair.ring, n).group
        quotient = self.milnor_k(pair.quotient, n).group
        relative = self.milnor_k_relative(pair, n)
        return whole.is_isomorphic(quotient.direct_sum(relative))

    # ==================== Dennis-Stein ====================

    def dennis_stein_d2(self, R: FinAlgebra, relative_to: Optional[SplitNilpotentPair] = None) -> DennisSteinPresentation:
        """
        D_2(R): symbols <a, b> with 1 + ab a unit, subject to
        <a,b><-b,-a> = 1, <a,b><a,c> = <a, b+c+abc> and <a,bc> = <ab,c><ac,b>.

        With relative_to, only symbols with a or b in I are generators and
        only relations among them are kept.

        Raises:
            InfiniteCoefficients: Over Q
            CapacityExceeded: If |R|^3 exceeds the entry limit
        """
        self._require_finite(R)
        table = self.algebras.unit_table(R)
        elements = list(R.elements())
        position = {x.key(): k for k, x in enumerate(elements)}
        check_entries("Dennis-Stein relations", 2 * len(elements) ** 3)
        one = R.one()

        def admissible(a: int, b: int) -> bool:
            if relative_to is not None and not (relative_to.in_ideal(elements[a])
                                                or relative_to.in_ideal(elements[b])):
                return False
            return table.is_unit(one + elements[a] * elements[b])

        pairs = [(a, b) for a in range(len(elements)) for b in range(len(elements)) if admissible(a, b)]
        index = {pair: k for k, pair in enumerate(pairs)}

        def idx(a: RingElement, b: RingElement) -> Optional[int]:
            return index.get((position[a.key()], position[b.key()]))

        counts = {"inverse": 0, "additivity": 0, "multiplicativity": 0}

        def rows() -> Iterator[Vector]:
            for a, b in pairs:
                other = idx(-elements[b], -elements[a])
                if other is not None:
                    counts["inverse"] += 1
                    row = _row([(index[(a, b)], 1), (other, 1)])
                    if row:
                        yield row
            for a, x in enumerate(elements):
                for b, y in enumerate(elements):
                    first = index.get((a, b))
                    if first is None:
                        continue
                    for c, z in enumerate(elements):
                        second = index.get((a, c))
                        combined = idx(x, y + z + x * y * z)
                        if second is not None and combined is not None:
                            counts["additivity"] += 1
                            row = _row([(first, 1), (second, 1), (combined, -1)])
                            if row:
                                yield row
            # <a,b> need not be a generator for <a,bc> = <ab,c><ac,b>
            for x in elements:
                for y in elements:
                    for z in elements:
                        left = idx(x, y * z)
                        right_one = idx(x * y, z)
                        right_two = idx(x * z, y)
                        if left is not None and right_one is not None and right_two is not None:
                            counts["multiplicativity"] += 1
                            row = _row([(left, 1), (right_one, -1), (right_two, -1)])
                            if row:
                                yield row

        group = self.groups.fp_group(len(pairs), rows(), INTEGERS,
                                     label=f"D_2({R}{', I' if relative_to else ''})")
        ideal = relative_to.ideal_indices if relative_to is not None else None
        presentation = DennisSteinPresentation(R, tuple(pairs), group, ideal, counts)
        logger.info(f"{presentation} (relations {counts})")
        return presentation

    # ==================== dlog ====================

    def dlog_vector(self, R: FinAlgebra, symbol: Sequence[RingElement]) -> Vector:
        """
        dlog{r_1, ..., r_n} = dr_1/r_1 ∧ ... ∧ dr_n/r_n as an Ω^n generator vector.

        Raises:
            NonUnitEntry: If an entry is not a unit
        """
        coefficient = R.one()
        for entry in symbol:
            coefficient = coefficient * self.algebras.inverse(entry)
        module = self.kahler.omega(R, len(symbol))
        return module.element(coefficient, *symbol)

    def dlog(self, R: FinAlgebra, symbol: Sequence[RingElement]) -> Tuple:
        """Normal coordinates of dlog of a symbol in Ω^n, n the symbol length."""
        module = self.kahler.omega(R, len(symbol))
        return module.reduce(self.dlog_vector(R, symbol))
