"""
Algebra Service

Constructors for finite algebras, split nilpotent pairs, unit groups,
stability predicates and the nilpotent exp/log series.
"""

import logging
from itertools import product
from math import factorial, prod
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ...domain.exceptions import (
    ConfigValidationError,
    InfiniteCoefficients,
    NonInvertibleDenominator,
    NonUnitEntry,
    NotAnIdeal,
    NotNilpotent,
    NotSplitAlongBasis,
    ValidationError,
)
from ...domain.limits import check_stability_pairs, check_tensor_dimension, check_units
from ...domain.models.algebra import FinAlgebra, RingElement
from ...domain.models.algebra_config import TRUNCATED_POLYNOMIAL, AlgebraConfig, LoadedAlgebra
from ...domain.models.coefficients import Coefficients
from ...domain.models.int_matrix import IntMatrix, Vector
from ...domain.models.nilpotent_pair import SplitNilpotentPair
from ...domain.models.units import UnitTable
from ..interfaces.elimination_backend import IEliminationBackend

logger = logging.getLogger(__name__)

IdealSpec = Sequence[Union[str, int, RingElement]]


def monomial_name(names: Sequence[str], exponents: Sequence[int]) -> str:
    """'1', 'x', 'x^2y' style names for monomials."""
    parts = []
    for name, exponent in zip(names, exponents):
        if exponent == 1:
            parts.append(name)
        elif exponent > 1:
            parts.append(f"{name}^{exponent}")
    return "".join(parts) or "1"


class AlgebraService:
    """
    Service for finite-rank commutative algebras.

    Holds one cache: the unit tables of algebras already enumerated.
    """

    def __init__(self, backend: IEliminationBackend):
        self.backend = backend
        self._unit_tables: Dict[FinAlgebra, UnitTable] = {}

    # ==================== Constructors ====================

    def truncated_polynomial(self, base: Coefficients, variables: Sequence[Tuple[str, int]],
                             name: str = "") -> FinAlgebra:
        """
        k[x1,...,xr]/(x1^a1, ..., xr^ar) with the monomial basis.

        Args:
            base: Q or F_p
            variables: (name, power) pairs, powers at least 2

        Returns:
            FinAlgebra with basis ordered by total degree

        Raises:
            ValidationError: If a power is below 2 or names repeat
            CapacityExceeded: If the dimension is too large

        Examples:
            >>> R = service.truncated_polynomial(Coefficients.rationals(), [("e", 2)])
            >>> R.basis_names
            ('1', 'e')
        """
        names = [v for v, _ in variables]
        powers = [int(k) for _, k in variables]
        if not variables:
            raise ValidationError("at least one variable is required")
        if len(set(names)) != len(names):
            raise ValidationError("variable names must be distinct")
        for var, power in variables:
            if int(power) < 2:
                raise ValidationError(f"power of {var} must be at least 2")
        check_tensor_dimension("truncated polynomial algebra", prod(powers))
        monomials = sorted(product(*(range(k) for k in powers)),
                           key=lambda e: (sum(e), tuple(-a for a in e)))
        label = name or self._truncated_name(base, variables)
        return self._monomial_algebra(base, names, monomials, label)

    def truncated_total_degree(self, base: Coefficients, names: Sequence[str], degree: int,
                               name: str = "") -> FinAlgebra:
        """
        k[x1,...,xr]/(x1,...,xr)^degree, e.g. Q[x,y]/(x,y)^2 for degree 2.
        """
        if degree < 1:
            raise ValidationError("degree must be positive")
        monomials = [e for e in product(range(degree), repeat=len(names)) if sum(e) < degree]
        check_tensor_dimension("truncated algebra", len(monomials))
        monomials.sort(key=lambda e: (sum(e), tuple(-a for a in e)))
        label = name or f"{base}[{','.join(names)}]/({','.join(names)})^{degree}"
        return self._monomial_algebra(base, list(names), monomials, label)

    def _monomial_algebra(self, base: Coefficients, names: Sequence[str],
                          monomials: List[Tuple[int, ...]], label: str) -> FinAlgebra:
        index = {m: k for k, m in enumerate(monomials)}
        one = base.one
        table = []
        for a in monomials:
            row = []
            for b in monomials:
                total = tuple(x + y for x, y in zip(a, b))
                k = index.get(total)
                row.append({k: one} if k is not None else {})
            table.append(tuple(row))
        unit = [base.zero] * len(monomials)
        unit[index[(0,) * len(names)]] = one
        basis = tuple(monomial_name(names, m) for m in monomials)
        return FinAlgebra(base, basis, tuple(unit), tuple(table), label)

    @staticmethod
    def _truncated_name(base: Coefficients, variables: Sequence[Tuple[str, int]]) -> str:
        names = ",".join(v for v, _ in variables)
        relations = ",".join(f"{v}^{k}" for v, k in variables)
        return f"{base}[{names}]/({relations})"

    def make_structure_algebra(self, coeffs: Coefficients, dim: int, unit: Sequence[Any],
                               table: Any, basis_names: Optional[Sequence[str]] = None,
                               name: str = "") -> FinAlgebra:
        """
        Validated algebra from structure constants.

        Args:
            coeffs: Q or F_p
            dim: Rank
            unit: Coordinates of 1
            table: Either dense table[i][j][k] = c_ijk or table[i][j] = {k: c}
            basis_names: Defaults to b0, b1, ...

        Raises:
            ValidationError: On shape errors
            NotCommutative, NoUnit, NotAssociative: On structural failures
        """
        if len(table) != dim or any(len(row) != dim for row in table):
            raise ValidationError(f"table must have shape {dim}x{dim}x{dim}")
        convert = coeffs.convert
        rows = []
        for i in range(dim):
            row = []
            for j in range(dim):
                entry = table[i][j]
                if isinstance(entry, Mapping):
                    items = ((int(k), c) for k, c in entry.items())
                else:
                    if len(entry) != dim:
                        raise ValidationError(f"table entry ({i},{j}) must have {dim} coordinates")
                    items = enumerate(entry)
                converted = {}
                for k, c in items:
                    value = convert(c)
                    if value:
                        converted[k] = value
                row.append(converted)
            rows.append(tuple(row))
        names = tuple(basis_names) if basis_names is not None else tuple(f"b{i}" for i in range(dim))
        return FinAlgebra(coeffs, names, tuple(convert(u) for u in unit), tuple(rows), name)

    def from_config(self, config: AlgebraConfig) -> LoadedAlgebra:
        """
        Build the algebra, and the pair when an ideal is named, from a config.

        Raises:
            ConfigValidationError: Naming the violated invariant, e.g.
                "NotAssociative at (i,j,l)"
        """
        try:
            if config.kind == TRUNCATED_POLYNOMIAL:
                R = self.truncated_polynomial(config.coefficients, config.variables, name=config.name)
            else:
                dim = len(config.basis)
                table: List[List[Dict[int, Any]]] = [[{} for _ in range(dim)] for _ in range(dim)]
                for i, j, image in config.products:
                    table[i][j] = dict(image)
                    table[j][i] = dict(image)
                R = self.make_structure_algebra(config.coefficients, dim, config.unit, table,
                                                basis_names=config.basis, name=config.name)
            pair = self.split_nilpotent_pair(R, config.ideal) if config.ideal is not None else None
        except ConfigValidationError:
            raise
        except ValidationError as e:
            raise ConfigValidationError(str(e)) from e
        logger.info(f"loaded {R} from {config.source or 'config'}" + (f" with pair {pair}" if pair else ""))
        return LoadedAlgebra(config, R, pair)

    # ==================== Split nilpotent pairs ====================

    def _ideal_indices(self, R: FinAlgebra, ideal_basis: IdealSpec) -> List[int]:
        one = R.coefficients.one
        indices = []
        for item in ideal_basis:
            if isinstance(item, str):
                indices.append(R.index_of(item))
            elif isinstance(item, int):
                if not 0 <= item < R.dim:
                    raise ValidationError(f"basis index {item} out of range")
                indices.append(item)
            else:
                support = item.vector
                if len(support) != 1 or next(iter(support.values())) != one:
                    raise NotSplitAlongBasis(f"ideal generator {item} is not a basis vector")
                indices.append(next(iter(support)))
        if len(set(indices)) != len(indices):
            raise ValidationError("ideal generators must be distinct")
        return sorted(indices)

    def _span(self, R: FinAlgebra, vectors: Sequence[Vector]) -> List[Vector]:
        return self.backend.span_basis(R.dim, vectors, R.coefficients)

    def ideal_power_dimensions(self, R: FinAlgebra, ideal: Sequence[int]) -> List[int]:
        """Dimensions of I, I^2, ... up to the first zero power (or stabilization)."""
        one = R.coefficients.one
        generators = [{i: one} for i in ideal]
        current = self._span(R, generators)
        dims = [len(current)]
        while current:
            products = [R.multiply(x, y) for x in current for y in generators]
            following = self._span(R, products)
            if len(following) == len(current):
                break
            current = following
            dims.append(len(current))
        return dims

    def split_nilpotent_pair(self, R: FinAlgebra, ideal_basis: IdealSpec) -> SplitNilpotentPair:
        """
        Split nilpotent extension R -> S = R/I along basis vectors.

        Args:
            R: The algebra
            ideal_basis: Basis names, indices or basis-vector elements spanning I

        Returns:
            SplitNilpotentPair with S on the complementary basis vectors

        Raises:
            NotSplitAlongBasis: If I is not spanned by basis vectors, or the
                complement is not a subalgebra containing 1
            NotNilpotent: If no power of I vanishes
            NotAnIdeal: If R*I is not inside I
        """
        ideal = self._ideal_indices(R, ideal_basis)
        if not ideal:
            raise ValidationError("the ideal needs at least one generator")
        dims = self.ideal_power_dimensions(R, ideal)
        if dims[-1] != 0:
            raise NotNilpotent(f"powers of ({', '.join(R.basis_names[i] for i in ideal)}) never vanish")
        nilpotency_index = len(dims)

        ideal_set = set(ideal)
        for i in ideal:
            for j in range(R.dim):
                outside = [k for k in R.multiply_basis(i, j) if k not in ideal_set]
                if outside:
                    raise NotAnIdeal(
                        f"{R.basis_names[j]}*{R.basis_names[i]} leaves the span of the ideal"
                    )

        complement = [k for k in range(R.dim) if k not in ideal_set]
        if any(R.unit[i] for i in ideal):
            raise NotSplitAlongBasis("1 has a component in the ideal")
        position = {k: a for a, k in enumerate(complement)}
        table = []
        for a in complement:
            row = []
            for b in complement:
                entry = R.multiply_basis(a, b)
                if any(k in ideal_set for k in entry):
                    raise NotSplitAlongBasis(
                        f"{R.basis_names[a]}*{R.basis_names[b]} is not in the complement"
                    )
                row.append({position[k]: c for k, c in entry.items()})
            table.append(tuple(row))
        S = FinAlgebra(
            R.coefficients,
            tuple(R.basis_names[k] for k in complement),
            tuple(R.unit[k] for k in complement),
            tuple(table),
            name=f"{R}/({', '.join(R.basis_names[i] for i in ideal)})",
        )
        one = R.coefficients.one
        projection = IntMatrix(len(complement), R.dim,
                               {a: {k: one} for a, k in enumerate(complement)}, R.coefficients)
        section = IntMatrix(R.dim, len(complement),
                            {k: {a: one} for a, k in enumerate(complement)}, R.coefficients)
        pair = SplitNilpotentPair(R, tuple(ideal), S, tuple(complement), projection, section,
                                  nilpotency_index)
        logger.debug(f"split nilpotent pair {pair}: N = {nilpotency_index}")
        return pair

    # ==================== Units ====================

    def inverse(self, x: RingElement) -> RingElement:
        """
        Raises:
            NonUnitEntry: If x is not invertible
        """
        R = x.algebra
        table = self._unit_tables.get(R)
        if table is not None:
            return table.inverse(x)
        solution = self.backend.solve(R.multiplication_matrix(x.vector), R.unit_vector)
        if solution is None:
            raise NonUnitEntry(f"{x} is not a unit")
        return R.from_vector(solution)

    def is_unit(self, x: RingElement) -> bool:
        table = self._unit_tables.get(x.algebra)
        if table is not None:
            return table.is_unit(x)
        return self.backend.rank(x.algebra.multiplication_matrix(x.vector)) == x.algebra.dim

    def unit_table(self, R: FinAlgebra) -> UnitTable:
        """
        Units of a finite algebra with inverses (cached per algebra).

        Raises:
            InfiniteCoefficients: Over Q
            CapacityExceeded: Above the unit limit
        """
        if not R.coefficients.is_finite:
            raise InfiniteCoefficients(f"{R} has infinitely many units")
        table = self._unit_tables.get(R)
        if table is not None:
            return table
        check_units("unit enumeration", R.order)
        inverse_keys: Dict[Tuple, RingElement] = {}
        units: List[RingElement] = []
        for x in R.elements():
            key = x.key()
            if key in inverse_keys:
                units.append(x)
                continue
            solution = self.backend.solve(R.multiplication_matrix(x.vector), R.unit_vector)
            if solution is None:
                continue
            y = R.from_vector(solution)
            inverse_keys[key] = y
            inverse_keys[y.key()] = x
            units.append(x)
        index = {u.key(): i for i, u in enumerate(units)}
        inverses = tuple(index[inverse_keys[u.key()].key()] for u in units)
        table = UnitTable(R, tuple(units), inverses)
        self._unit_tables[R] = table
        logger.debug(f"{R}: {len(units)} units")
        return table

    def enumerate_units(self, R: FinAlgebra) -> List[RingElement]:
        """
        All invertible elements (inverses cached in the unit table).

        Raises:
            InfiniteCoefficients: If the coefficients are the rationals
        """
        return list(self.unit_table(R).units)

    # ==================== Nilradical and residue fields ====================

    def nilradical_basis(self, R: FinAlgebra) -> List[Vector]:
        """Basis of the nilradical (the nilpotent elements of a commutative ring)."""
        if not R.coefficients.is_finite:
            raise InfiniteCoefficients("nilradical enumeration needs a finite algebra")
        nilpotent = [x.vector for x in R.elements() if x.is_nilpotent()]
        return self._span(R, nilpotent)

    def primitive_idempotents(self, R: FinAlgebra) -> List[RingElement]:
        idempotents = [x for x in R.elements() if not x.is_zero() and x * x == x]
        primitive = []
        for e in idempotents:
            if not any(f != e and f * e == f for f in idempotents):
                primitive.append(e)
        return primitive

    def residue_field_orders(self, R: FinAlgebra) -> List[int]:
        """
        Orders of the residue fields of a finite algebra, one per local factor.

        For each primitive idempotent e the local factor eR has residue field
        of order p^(dim eR - dim e*nil(R)).
        """
        p = R.coefficients.p
        nil = self.nilradical_basis(R)
        orders = []
        for e in self.primitive_idempotents(R):
            factor = self._span(R, [R.multiply(e.vector, {j: R.coefficients.one}) for j in range(R.dim)])
            radical = self._span(R, [R.multiply(e.vector, n) for n in nil])
            orders.append(p ** (len(factor) - len(radical)))
        return sorted(orders)

    def is_local(self, R: FinAlgebra) -> bool:
        return len(self.primitive_idempotents(R)) == 1

    def residue_field_order(self, R: FinAlgebra) -> int:
        """|R| / |nil(R)| for a local finite algebra."""
        if not self.is_local(R):
            raise ValidationError(f"{R} is not local")
        return self.residue_field_orders(R)[0]

    def stability_by_residue_field(self, R: FinAlgebra, m: int) -> bool:
        """Every residue field has at least m+1 elements."""
        return all(q >= m + 1 for q in self.residue_field_orders(R))

    # ==================== Stability ====================

    def _unit_mask(self, R: FinAlgebra) -> Tuple[List[RingElement], Dict[Tuple, int], int]:
        elements = list(R.elements())
        position = {x.key(): k for k, x in enumerate(elements)}
        table = self.unit_table(R)
        mask = 0
        for u in table.units:
            mask |= 1 << position[u.key()]
        return elements, position, mask

    def _generates_unit_ideal(self, R: FinAlgebra, a: RingElement, b: RingElement) -> bool:
        one = R.coefficients.one
        vectors = []
        for j in range(R.dim):
            vectors.append(R.multiply(a.vector, {j: one}))
            vectors.append(R.multiply(b.vector, {j: one}))
        return len(self._span(R, vectors)) == R.dim

    def unimodular_sets(self, R: FinAlgebra) -> List[int]:
        """
        Distinct sets {s : a + b*s is a unit} over unimodular pairs (a, b), as bitmasks.
        """
        if not R.coefficients.is_finite:
            raise InfiniteCoefficients("stability is decided by brute force over finite algebras")
        elements, position, unit_mask = self._unit_mask(R)
        check_stability_pairs("unimodular pairs", len(elements) ** 2)
        sets = set()
        for a in elements:
            for b in elements:
                if not self._generates_unit_ideal(R, a, b):
                    continue
                mask = 0
                for k, s in enumerate(elements):
                    if (unit_mask >> position[(a + b * s).key()]) & 1:
                        mask |= 1 << k
                sets.add(mask)
        return sorted(sets, key=lambda m: (bin(m).count("1"), m))

    def is_m_fold_stable(self, R: FinAlgebra, m: int) -> bool:
        """
        For every m unimodular pairs (a_j, b_j) some s makes every a_j + b_j*s a unit.

        Decided by searching for at most m of the distinct sets
        {s : a + b*s unit} with empty intersection.

        Raises:
            InfiniteCoefficients: Over Q
        """
        if m < 1:
            raise ValidationError("m must be at least 1")
        sets = self.unimodular_sets(R)
        if any(mask == 0 for mask in sets):
            return False

        def empty_intersection(start: int, current: int, depth: int) -> bool:
            if depth == m:
                return False
            for k in range(start, len(sets)):
                narrowed = current & sets[k]
                if narrowed == 0:
                    return True
                if narrowed != current and empty_intersection(k + 1, narrowed, depth + 1):
                    return True
            return False

        everything = (1 << R.order) - 1
        stable = not empty_intersection(0, everything, 0)
        logger.debug(f"{R}: {m}-fold stable = {stable} ({len(sets)} distinct unit sets)")
        return stable

    def every_element_sum_of_two_units(self, R: FinAlgebra) -> bool:
        table = self.unit_table(R)
        sums = {(u + v).key() for u in table.units for v in table.units}
        return all(x.key() in sums for x in R.elements())

    # ==================== Nilpotent series ====================

    def _series_order(self, x: RingElement) -> int:
        order = x.nilpotency_order()
        if order is None:
            raise NotNilpotent(f"{x} is not nilpotent")
        return order

    def log_one_plus(self, x: RingElement) -> RingElement:
        """
        log(1+x) = x - x^2/2 + x^3/3 - ... (finite for nilpotent x).

        Raises:
            NotNilpotent: If x is not nilpotent
            NonInvertibleDenominator: If some k below the nilpotency order is not invertible
        """
        R = x.algebra
        coefficients = R.coefficients
        order = self._series_order(x)
        result = R.zero()
        power = x
        for k in range(1, order):
            if not coefficients.is_invertible_integer(k):
                raise NonInvertibleDenominator(k)
            term = power.scale(coefficients.inverse(coefficients.convert(k)))
            result = result + term if k % 2 else result - term
            power = power * x
        return result

    def exp_nilpotent(self, x: RingElement) -> RingElement:
        """
        exp(x) = 1 + x + x^2/2! + ... (finite for nilpotent x).

        Raises:
            NotNilpotent: If x is not nilpotent
            NonInvertibleDenominator: If some k! below the nilpotency order is not invertible
        """
        R = x.algebra
        coefficients = R.coefficients
        order = self._series_order(x)
        result = R.one()
        power = R.one()
        for k in range(1, order):
            power = power * x
            if not coefficients.is_invertible_integer(factorial(k)):
                raise NonInvertibleDenominator(k, f"{k}! is not invertible in {coefficients}")
            result = result + power.scale(coefficients.inverse(coefficients.convert(factorial(k))))
        return result
