"""
Kähler Service

Presentations of Ω^n for finite algebras, the de Rham differential, relative
differentials of split nilpotent pairs and the quotients Ω^n/dΩ^(n-1).
"""

import logging
from typing import Dict, Iterator, List, Tuple

from ...domain.exceptions import ValidationError
from ...domain.limits import check_entries
from ...domain.models.abelian_group import FPAbelianGroup, GroupHomomorphism
from ...domain.models.algebra import FinAlgebra
from ...domain.models.coefficients import INTEGERS
from ...domain.models.complexes import TensorSpace
from ...domain.models.differentials import DifferentialModule
from ...domain.models.int_matrix import Vector, add_scaled
from ...domain.models.nilpotent_pair import SplitNilpotentPair
from .group_service import GroupService

logger = logging.getLogger(__name__)


def _replace(word: Tuple[int, ...], slot: int, letter: int) -> Tuple[int, ...]:
    return word[:slot] + (letter,) + word[slot + 1:]


class KahlerService:
    """
    Service for Kähler differentials over the coefficient field of R.

    Over Q this is Ω_{R/Q} and over F_p it is Ω_{R/F_p}; both agree with the
    differentials over Z because d vanishes on the prime ring.
    """

    def __init__(self, groups: GroupService):
        self.groups = groups
        self._omega_cache: Dict[Tuple[FinAlgebra, int], DifferentialModule] = {}

    # ==================== Presentations ====================

    def omega_relations(self, R: FinAlgebra, n: int) -> Iterator[Vector]:
        """
        Leibniz, d(1) = 0 and alternating relations on the generators of Ω^n.

        Yields:
            Sparse rows in the tuple indexing of TensorSpace(R, n)
        """
        space = TensorSpace(R, n)
        dim = R.dim
        index = space.index
        unit = R.unit_vector
        for word in space.words():
            for slot in range(1, n + 1):
                if word[slot] != 0:
                    continue
                # d(1) = 0
                row: Vector = {}
                for k, c in unit.items():
                    add_scaled(row, {index(_replace(word, slot, k)): c}, 1)
                if row:
                    yield row
                # a0 d(ab) = a0 a db + a0 b da
                for a in range(dim):
                    for b in range(a, dim):
                        row = {}
                        for k, c in R.multiply_basis(a, b).items():
                            add_scaled(row, {index(_replace(word, slot, k)): c}, 1)
                        for left, right in ((a, b), (b, a)):
                            for k, c in R.multiply_basis(word[0], left).items():
                                target = _replace(_replace(word, 0, k), slot, right)
                                add_scaled(row, {index(target): c}, -1)
                        if row:
                            yield row
            for first in range(1, n + 1):
                for second in range(first + 1, n + 1):
                    a, b = word[first], word[second]
                    if a > b:
                        continue
                    row = {index(word): R.coefficients.one}
                    if a < b:
                        swapped = _replace(_replace(word, first, b), second, a)
                        row[index(swapped)] = R.coefficients.one
                    yield row

    def omega(self, R: FinAlgebra, n: int) -> DifferentialModule:
        """
        Ω^n_R as a presented module; Ω^0 is R itself.

        Args:
            R: Finite algebra over Q or F_p
            n: Degree, at least 0

        Returns:
            DifferentialModule over the coefficient field

        Raises:
            CapacityExceeded: If the presentation is too large

        Examples:
            >>> service.omega(dual_numbers_q, 1).group.free_rank
            1
        """
        if n < 0:
            raise ValidationError("degree must be nonnegative")
        cached = self._omega_cache.get((R, n))
        if cached is not None:
            return cached
        space = TensorSpace(R, n)
        check_entries(f"Ω^{n} presentation", space.dimension * max(1, n) * R.dim * R.dim)
        relations = tuple(self.omega_relations(R, n))
        module = DifferentialModule(R, n, space, FPAbelianGroup.trivial(), relations)
        group = self.groups.fp_group(
            space.dimension, relations, R.coefficients,
            basis_labels=module.generator_labels, label=f"Ω^{n}({R})",
        )
        module = DifferentialModule(R, n, space, group, relations)
        self._omega_cache[(R, n)] = module
        logger.info(f"{module}")
        return module

    def omega_over_integers(self, R: FinAlgebra, n: int) -> FPAbelianGroup:
        """
        Ω^n_{R/Z} for R over F_p: the same relations lifted to Z, plus p*g = 0.

        Raises:
            ValidationError: If R is not over a prime field
        """
        coefficients = R.coefficients
        if not coefficients.is_finite:
            raise ValidationError("the integral presentation is only built for F_p-algebras")
        module = self.omega(R, n)
        p = coefficients.p
        rows: List[Vector] = []
        for relation in module.relations:
            row = {k: coefficients.to_int(v) for k, v in relation.items()}
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
        rows.extend({g: p} for g in range(module.n_generators))
        return self.groups.fp_group(module.n_generators, rows, INTEGERS, label=f"Ω^{n}({R}/Z)")

    # ==================== de Rham differential ====================

    def d_vector(self, R: FinAlgebra, n: int, vector: Vector) -> Vector:
        """d(r0 dr1 ∧ ... ∧ drn) = dr0 ∧ dr1 ∧ ... ∧ drn on generator vectors of Ω^n."""
        source = TensorSpace(R, n)
        target = TensorSpace(R, n + 1)
        out: Vector = {}
        for g, value in vector.items():
            word = source.word(g)
            for k, c in R.unit_vector.items():
                add_scaled(out, {target.index((k,) + word): c}, value)
        return out

    def de_rham_d(self, R: FinAlgebra, n: int) -> GroupHomomorphism:
        """
        d: Ω^n -> Ω^(n+1) on generators.

        Raises:
            IllDefinedMap: If the map does not respect the relations
        """
        source = self.omega(R, n)
        target = self.omega(R, n + 1)
        one = R.coefficients.one
        images = tuple(self.d_vector(R, n, {g: one}) for g in range(source.n_generators))
        homomorphism = GroupHomomorphism(source.group, target.group, images)
        self.groups.normal_map(homomorphism)
        return homomorphism

    def d_squared_vanishes(self, R: FinAlgebra, n: int) -> bool:
        """d∘d = 0 from Ω^n to Ω^(n+2) on every generator."""
        target = self.omega(R, n + 2)
        one = R.coefficients.one
        space = TensorSpace(R, n)
        return all(
            target.is_zero(self.d_vector(R, n + 1, self.d_vector(R, n, {g: one})))
            for g in range(space.dimension)
        )

    # ==================== Relative differentials ====================

    def projection(self, pair: SplitNilpotentPair, n: int) -> GroupHomomorphism:
        """Ω^n_R -> Ω^n_S induced by R -> S."""
        source = self.omega(pair.ring, n)
        target = self.omega(pair.quotient, n)
        position = {k: a for a, k in enumerate(pair.complement_indices)}
        one = pair.ring.coefficients.one
        images = []
        for g in range(source.n_generators):
            word = source.space.word(g)
            if all(k in position for k in word):
                images.append({target.space.index(tuple(position[k] for k in word)): one})
            else:
                images.append({})
        return GroupHomomorphism(source.group, target.group, tuple(images))

    def relative_omega(self, pair: SplitNilpotentPair, n: int) -> DifferentialModule:
        """
        Ω^n_{R,I} = ker(Ω^n_R -> Ω^n_S).

        Returns:
            DifferentialModule whose group accepts Ω^n_R generator vectors in
            the kernel; `group.inclusion` holds generator lifts as columns
        """
        absolute = self.omega(pair.ring, n)
        kernel = self.groups.map_kernel(self.projection(pair, n), label=f"Ω^{n}_(R,I)")
        module = DifferentialModule(pair.ring, n, absolute.space, kernel, absolute.relations,
                                    kind="relative", ideal=pair.ideal_indices)
        logger.info(f"{module}")
        return module

    def omega_mod_exact(self, pair: SplitNilpotentPair, n: int) -> FPAbelianGroup:
        """
        Ω^n_{R,I} / dΩ^(n-1)_{R,I}; for n = 1 this is Ω^1_{R,I}/dI.

        Returns:
            FPAbelianGroup whose coordinates() accepts Ω^n_R generator vectors
            lying in Ω^n_{R,I}

        Raises:
            ValidationError: If n < 1
        """
        if n < 1:
            raise ValidationError("omega_mod_exact needs n >= 1")
        relative = self.relative_omega(pair, n)
        below = self.relative_omega(pair, n - 1)
        outer = self.omega(pair.ring, n).group
        numerator = relative.group.inclusion.columns()
        exact = [self.d_vector(pair.ring, n - 1, column) for column in below.group.inclusion.columns()]
        group = self.groups.subquotient_group(outer, numerator, exact, label=f"Ω^{n}_(R,I)/dΩ^{n - 1}_(R,I)")
        logger.info(f"Ω^{n}_(R,I)/dΩ^{n - 1}_(R,I) for {pair} = {group}")
        return group

    def omega_absolute_mod_exact(self, R: FinAlgebra, n: int) -> FPAbelianGroup:
        """Ω^n_R / dΩ^(n-1)_R (Ω^1/dR is HC_1 for commutative R in characteristic 0)."""
        if n < 1:
            raise ValidationError("omega_absolute_mod_exact needs n >= 1")
        module = self.omega(R, n)
        one = R.coefficients.one
        everything = [{g: one} for g in range(module.n_generators)]
        below = TensorSpace(R, n - 1)
        exact = [self.d_vector(R, n - 1, {g: one}) for g in range(below.dimension)]
        return self.groups.subquotient_group(module.group, everything, exact, label=f"Ω^{n}/dΩ^{n - 1}")
