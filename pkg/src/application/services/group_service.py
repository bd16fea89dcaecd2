"""
Group Service

Finitely presented abelian groups: Smith normal form, cokernels of relation
matrices, kernels of induced maps, element equality and homology of finite
complexes.
"""

import logging
from typing import Any, Callable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ...domain.exceptions import IllDefinedMap, NotAComplex, ValidationError
from ...domain.models.abelian_group import FPAbelianGroup, GroupHomomorphism, VectorLike
from ...domain.models.coefficients import INTEGERS, Coefficients
from ...domain.models.complexes import GradedComplexSlice
from ...domain.models.int_matrix import IntMatrix, Vector, add_scaled
from ..interfaces.elimination_backend import IEliminationBackend, ISubQuotient, ISubQuotientMap

logger = logging.getLogger(__name__)


class SubgroupNormalForm:
    """Normal form of a subquotient, addressed through an outer generator system."""

    def __init__(self, n_generators: int, subquotient: ISubQuotient,
                 to_ambient: Callable[[Mapping[int, Any]], Vector],
                 from_ambient: Callable[[Mapping[int, Any]], Vector]):
        self.n_generators = n_generators
        self._subquotient = subquotient
        self._to_ambient = to_ambient
        self._from_ambient = from_ambient

    def coordinates(self, vector: Mapping[int, Any]) -> Tuple[Any, ...]:
        return self._subquotient.coordinates(self._to_ambient(vector))

    def lift(self, index: int) -> Vector:
        return self._from_ambient(self._subquotient.lift(index))


class GroupService:
    """
    Service for presentations of abelian groups.

    Stateless apart from the injected elimination backend.
    """

    def __init__(self, backend: IEliminationBackend):
        self.backend = backend

    # ==================== Presentations ====================

    def smith_normal_form(self, m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
        """
        Smith normal form with transforms.

        Args:
            m: Integer matrix

        Returns:
            (S, U, V) with U*m*V = S, S diagonal with d1 | d2 | ...

        Raises:
            ValidationError: If m is not over the integers
            CapacityExceeded: If rows*cols exceeds the entry limit
        """
        if m.coefficients.is_field:
            raise ValidationError("smith_normal_form needs integer coefficients")
        return self.backend.smith(m)

    def fp_group(self, n_gens: int, relations: Union[IntMatrix, Iterable[Mapping[int, Any]]],
                 coefficients: Optional[Coefficients] = None,
                 basis_labels: Optional[Sequence[str]] = None,
                 label: str = "presentation") -> FPAbelianGroup:
        """
        Cokernel of a relation matrix (one relation per row).

        Args:
            n_gens: Number of generators
            relations: IntMatrix with n_gens columns, or an iterable of sparse rows
            coefficients: Defaults to the matrix coefficients (or the integers)
            basis_labels: Optional generator names
            label: Name used in progress messages

        Returns:
            FPAbelianGroup in invariant-factor form; over a field the torsion
            is empty and free_rank is the dimension

        Raises:
            CapacityExceeded: If the presentation is too large
        """
        presentation = None
        if isinstance(relations, IntMatrix):
            if relations.cols != n_gens:
                raise ValidationError(f"relations have {relations.cols} columns, expected {n_gens}")
            presentation = relations
            coefficients = coefficients or relations.coefficients
            rows: Iterable[Mapping[int, Any]] = relations.row_vectors()
        else:
            coefficients = coefficients or INTEGERS
            rows = relations
        normal_form = self.backend.normal_form(n_gens, rows, coefficients, label)
        group = FPAbelianGroup(
            free_rank=normal_form.free_rank,
            torsion=normal_form.torsion,
            coefficients=coefficients,
            n_generators=n_gens,
            presentation=presentation,
            basis_labels=tuple(basis_labels) if basis_labels is not None else None,
            normal_form=normal_form,
        )
        logger.debug(f"{label}: {n_gens} generators -> {group}")
        return group

    def element_equal(self, g: FPAbelianGroup, a: VectorLike, b: VectorLike) -> bool:
        """True iff a - b lies in the relation lattice of g."""
        return g.element_equal(a, b)

    # ==================== Maps ====================

    def normal_subquotient(self, group: FPAbelianGroup, label: str = "group") -> ISubQuotient:
        """The group as L/M on its normal coordinates (L everything, M = d_i e_i)."""
        rank = group.rank
        one = group.coefficients.one if group.coefficients.is_field else 1
        numerator = [{i: one} for i in range(rank)]
        denominator = [{i: d} for i, d in enumerate(group.torsion)]
        return self.backend.subquotient(rank, numerator, denominator, group.coefficients, label)

    def _normal_vector(self, group: FPAbelianGroup, vector: Mapping[int, Any]) -> Vector:
        return {k: v for k, v in enumerate(group.coordinates(vector)) if v}

    def _from_normal(self, group: FPAbelianGroup, normal: Mapping[int, Any]) -> Vector:
        out: Vector = {}
        for i, value in normal.items():
            add_scaled(out, group.lift(i), value)
        return out

    def normal_map(self, f: GroupHomomorphism, check: bool = True) -> ISubQuotientMap:
        """
        The map on normal coordinates.

        Raises:
            IllDefinedMap: If a relation of the source does not map to zero
        """
        source = self.normal_subquotient(f.source, "source")
        target = self.normal_subquotient(f.target, "target")
        if check and f.source.presentation is not None:
            self._check_presentation_relations(f)
        images = [self._normal_vector(f.target, f.apply(f.source.lift(i))) for i in range(f.source.rank)]
        return self.backend.map_from_images(source, target, images, check=check)

    def _check_presentation_relations(self, f: GroupHomomorphism) -> None:
        for k, relation in enumerate(f.source.presentation.row_vectors()):
            if relation and not f.target.is_zero_element(f.apply(relation)):
                raise IllDefinedMap(f"relation {k} of the source does not map to zero")

    def map_kernel(self, f: GroupHomomorphism, label: str = "kernel") -> FPAbelianGroup:
        """
        Kernel of a homomorphism given on generators.

        Returns:
            FPAbelianGroup addressed through the source generators:
            coordinates() accepts source generator vectors lying in the kernel,
            lift() returns source generator vectors, and `inclusion` holds the
            lifts as columns.

        Raises:
            IllDefinedMap: If f is not well defined
        """
        mapping = self.normal_map(f)
        kernel = mapping.kernel(label=label)
        return self._subgroup(f.source, kernel, label)

    def map_image(self, f: GroupHomomorphism, label: str = "image") -> FPAbelianGroup:
        mapping = self.normal_map(f)
        image = mapping.image(label=label)
        return self._subgroup(f.target, image, label)

    def map_cokernel(self, f: GroupHomomorphism, label: str = "cokernel") -> FPAbelianGroup:
        mapping = self.normal_map(f)
        cokernel = mapping.cokernel(label=label)
        group = cokernel.group()
        normal_form = SubgroupNormalForm(
            f.target.n_generators, cokernel,
            lambda v: self._normal_vector(f.target, v),
            lambda v: self._from_normal(f.target, v),
        )
        return FPAbelianGroup(group.free_rank, group.torsion, group.coefficients,
                              n_generators=f.target.n_generators, normal_form=normal_form)

    def subquotient_group(self, outer: FPAbelianGroup, numerator: Iterable[Mapping[int, Any]],
                          denominator: Iterable[Mapping[int, Any]],
                          label: str = "subquotient") -> FPAbelianGroup:
        """
        (L + M) / M for L, M given by generator vectors of an outer group.

        Returns:
            FPAbelianGroup whose coordinates() accepts outer generator vectors in L
        """
        base = self.normal_subquotient(outer)
        relations = base.denominator_basis()
        numerator_normal = [self._normal_vector(outer, v) for v in numerator]
        denominator_normal = [self._normal_vector(outer, v) for v in denominator]
        subquotient = self.backend.subquotient(
            outer.rank, numerator_normal + denominator_normal, relations + denominator_normal,
            outer.coefficients, label,
        )
        return self._subgroup(outer, subquotient, label)

    def is_surjective(self, f: GroupHomomorphism) -> bool:
        return self.normal_map(f).is_surjective()

    def _subgroup(self, outer: FPAbelianGroup, subquotient: ISubQuotient, label: str) -> FPAbelianGroup:
        group = subquotient.group()
        normal_form = SubgroupNormalForm(
            outer.n_generators, subquotient,
            lambda v: self._normal_vector(outer, v),
            lambda v: self._from_normal(outer, v),
        )
        columns = [normal_form.lift(i) for i in range(group.rank)]
        inclusion = IntMatrix.from_columns(columns, outer.n_generators, outer.coefficients)
        logger.debug(f"{label}: {group}")
        return FPAbelianGroup(
            free_rank=group.free_rank,
            torsion=group.torsion,
            coefficients=group.coefficients,
            n_generators=outer.n_generators,
            basis_labels=outer.basis_labels,
            inclusion=inclusion,
            normal_form=normal_form,
        )

    # ==================== Homology ====================

    def check_complex(self, slice_: GradedComplexSlice, degree: int) -> None:
        """
        Raises:
            NotAComplex: If the boundaries around degree do not compose to zero
        """
        for n in (degree, degree + 1):
            composite = slice_.boundary(n) @ slice_.boundary(n + 1)
            if not composite.is_zero():
                raise NotAComplex(f"{slice_.name or 'complex'}: d_{n} d_{n + 1} != 0")

    def complex_homology(self, slice_: GradedComplexSlice, degree: int) -> FPAbelianGroup:
        """
        Homology ker d_n / im d_(n+1).

        Over a field only ranks are needed. Over the integers the free rank
        comes from ranks and the torsion from the invariant factors of
        d_(n+1).

        Raises:
            NotAComplex: If d d != 0 at the degree
        """
        self.check_complex(slice_, degree)
        coefficients = slice_.coefficients
        dim = slice_.rank_at(degree)
        outgoing = slice_.boundary(degree)
        incoming = slice_.boundary(degree + 1)
        rank_out = self.backend.rank(outgoing)
        rank_in = self.backend.rank(incoming)
        free_rank = dim - rank_out - rank_in
        torsion: Tuple[int, ...] = ()
        if not coefficients.is_field and rank_in:
            cokernel = self.backend.normal_form(
                dim, incoming.transpose().row_vectors(), coefficients,
                label=f"{slice_.name or 'complex'} boundaries in degree {degree}",
            )
            torsion = cokernel.torsion
        group = FPAbelianGroup(free_rank, torsion, coefficients)
        logger.debug(f"H_{degree}({slice_.name or 'complex'}) = {group}")
        return group

    def homology_subquotient(self, slice_: GradedComplexSlice, degree: int,
                             label: Optional[str] = None) -> ISubQuotient:
        """H_n as a subquotient of C_n (cycles over boundaries), with element data."""
        self.check_complex(slice_, degree)
        coefficients = slice_.coefficients
        label = label or f"H_{degree}({slice_.name or 'complex'})"
        dim = slice_.rank_at(degree)
        cycles = self.cycles(slice_, degree)
        boundaries = [column for column in slice_.boundary(degree + 1).columns() if column]
        return self.backend.subquotient(dim, cycles, boundaries, coefficients, label)

    def cycles(self, slice_: GradedComplexSlice, degree: int) -> List[Vector]:
        """A basis of ker d_n."""
        coefficients = slice_.coefficients
        dim = slice_.rank_at(degree)
        one = coefficients.one if coefficients.is_field else 1
        everything = [{i: one} for i in range(dim)]
        source = self.backend.subquotient(dim, everything, [], coefficients, "chains")
        rank_below = slice_.rank_at(degree - 1)
        target = self.backend.subquotient(
            rank_below, [{i: one} for i in range(rank_below)], [], coefficients, "chains below"
        )
        mapping = self.backend.map_from_ambient(source, target, slice_.boundary(degree), check=False)
        return mapping.kernel().generators

    def homology_with_elements(self, slice_: GradedComplexSlice, degree: int) -> FPAbelianGroup:
        """H_n whose coordinates() accepts cycles of C_n."""
        subquotient = self.homology_subquotient(slice_, degree)
        group = subquotient.group()
        dim = slice_.rank_at(degree)
        normal_form = SubgroupNormalForm(dim, subquotient, dict, dict)
        return FPAbelianGroup(group.free_rank, group.torsion, group.coefficients,
                              n_generators=dim, normal_form=normal_form)
