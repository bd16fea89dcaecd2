"""
Subquotients and Maps Between Them

A SubQuotient is L/M inside an ambient free module (Z^a or K^a), given by
spanning vectors for L and M. Maps are recorded as the images of the
numerator basis, so the same machinery serves kernels of induced maps,
relative groups and the bookkeeping of exact couples.
"""

import logging
from typing import Any, Iterable, List, Mapping, Optional, Sequence, Tuple

from ...domain.exceptions import IllDefinedMap, ValidationError
from ...domain.models.abelian_group import FPAbelianGroup
from ...domain.models.coefficients import Coefficients
from ...domain.models.int_matrix import IntMatrix, Vector, add_scaled
from .echelon import FieldEchelon, IntegerEchelon
from .presentation_reducer import PresentationReducer

logger = logging.getLogger(__name__)


def new_echelon(dimension: int, coefficients: Coefficients):
    if coefficients.is_field:
        return FieldEchelon(dimension, coefficients.domain)
    return IntegerEchelon(dimension)


def _normalize(vector: Mapping[int, Any], coefficients: Coefficients) -> Vector:
    if coefficients.is_field:
        convert = coefficients.domain.convert
        return {k: convert(v) for k, v in vector.items() if v}
    return {k: int(v) for k, v in vector.items() if v}


def _shift(vector: Mapping[int, Any], offset: int) -> Vector:
    return {k + offset: v for k, v in vector.items()}


def _solve_echelon(rows: Sequence[Vector], pivots: Sequence[int], vector: Mapping[int, Any],
                   coefficients: Coefficients) -> Optional[List[Any]]:
    """Coordinates of vector in an echelon basis, or None when it is not in the span."""
    remainder = dict(vector)
    coords: List[Any] = []
    for row, pivot in zip(rows, pivots):
        value = remainder.get(pivot)
        if not value:
            coords.append(0)
            continue
        lead = row[pivot]
        if coefficients.is_field:
            factor = value * coefficients.domain.revert(lead)
        else:
            factor, rest = divmod(int(value), int(lead))
            if rest:
                return None
        add_scaled(remainder, row, -factor)
        coords.append(factor)
    if remainder:
        return None
    return coords


class SubQuotient:
    """
    L/M inside an ambient free module of rank `ambient`.

    The numerator is stored as L + M, so M is always contained in L.

    Attributes:
        ambient: Rank of the ambient module
        coefficients: Integers or a field
        generators: Echelon basis of L (ambient vectors)
    """

    def __init__(self, ambient: int, numerator: Iterable[Mapping[int, Any]],
                 denominator: Iterable[Mapping[int, Any]], coefficients: Coefficients,
                 label: str = "subquotient"):
        self.ambient = ambient
        self.coefficients = coefficients
        self.label = label
        self._denominator = new_echelon(ambient, coefficients)
        for vector in denominator:
            self._denominator.add(_normalize(vector, coefficients))
        self._numerator = new_echelon(ambient, coefficients)
        for row in self._denominator.basis():
            self._numerator.add(row)
        for vector in numerator:
            self._numerator.add(_normalize(vector, coefficients))
        self.generators: List[Vector] = self._numerator.basis()
        self._pivots = self._numerator.pivots()
        self._group: Optional[FPAbelianGroup] = None

    # ==================== Membership ====================

    def contains(self, vector: Mapping[int, Any]) -> bool:
        """True when vector lies in the numerator L."""
        return self._numerator.is_member(_normalize(vector, self.coefficients))

    def is_zero(self, vector: Mapping[int, Any]) -> bool:
        """True when vector lies in the denominator M."""
        return self._denominator.is_member(_normalize(vector, self.coefficients))

    def denominator_basis(self) -> List[Vector]:
        return self._denominator.basis()

    def solve(self, vector: Mapping[int, Any]) -> List[Any]:
        """Coordinates of an element of L in the generator basis."""
        coords = _solve_echelon(self.generators, self._pivots,
                                _normalize(vector, self.coefficients), self.coefficients)
        if coords is None:
            raise ValidationError(f"vector is not in the numerator of {self.label}")
        return coords

    # ==================== Group ====================

    def group(self) -> FPAbelianGroup:
        """The quotient as an FPAbelianGroup whose generators are `generators`."""
        if self._group is None:
            relations = [dict(enumerate(self.solve(m))) for m in self._denominator.basis()]
            normal_form = PresentationReducer().reduce(
                len(self.generators), relations, self.coefficients, label=self.label
            )
            self._group = FPAbelianGroup(
                free_rank=normal_form.free_rank,
                torsion=normal_form.torsion,
                coefficients=self.coefficients,
                n_generators=len(self.generators),
                normal_form=normal_form,
            )
            logger.debug(f"{self.label}: {self._group}")
        return self._group

    def coordinates(self, vector: Mapping[int, Any]) -> Tuple[Any, ...]:
        """Normal coordinates of an ambient vector lying in L."""
        coords = self.solve(vector)
        return self.group().coordinates({k: v for k, v in enumerate(coords) if v})

    def lift(self, index: int) -> Vector:
        """Ambient vector representing the index-th normal generator."""
        combination = self.group().lift(index)
        out: Vector = {}
        for k, value in combination.items():
            add_scaled(out, self.generators[k], value)
        return out

    def same_as(self, other: "SubQuotient") -> bool:
        """Equal numerators and denominators inside the same ambient module."""
        if self.ambient != other.ambient:
            return False
        return (all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators)
                and all(other.is_zero(m) for m in self.denominator_basis())
                and all(self.is_zero(m) for m in other.denominator_basis()))


class SubQuotientMap:
    """
    Homomorphism between subquotients given by images of the source generators.

    Raises:
        IllDefinedMap: If an image leaves the target numerator or a source
            relation does not land in the target denominator
    """

    def __init__(self, source: SubQuotient, target: SubQuotient, images: Sequence[Mapping[int, Any]],
                 check: bool = True):
        if len(images) != len(source.generators):
            raise ValidationError(
                f"expected {len(source.generators)} generator images, got {len(images)}"
            )
        self.source = source
        self.target = target
        self.images = [_normalize(v, target.coefficients) for v in images]
        if check:
            self._check_well_defined()

    @classmethod
    def from_ambient(cls, source: SubQuotient, target: SubQuotient, matrix: IntMatrix,
                     check: bool = True) -> "SubQuotientMap":
        """Map induced by an ambient matrix (target ambient x source ambient)."""
        return cls(source, target, [matrix.apply(g) for g in source.generators], check)

    @classmethod
    def from_spanning_images(cls, source: SubQuotient, target: SubQuotient,
                             spanning: Sequence[Tuple[Mapping[int, Any], Mapping[int, Any]]],
                             check: bool = True) -> "SubQuotientMap":
        """
        Map defined on a spanning set of the source numerator.

        Args:
            spanning: Pairs (x, f(x)) whose first entries span L of the source
        """
        coefficients = source.coefficients
        a = source.ambient
        echelon = new_echelon(a + len(spanning), coefficients)
        for k, (x, _) in enumerate(spanning):
            vector = _normalize(x, coefficients)
            vector[a + k] = coefficients.one if coefficients.is_field else 1
            echelon.add(vector)
        images = []
        for generator in source.generators:
            remainder = echelon.reduce(generator, stop=a)
            if any(key < a for key in remainder):
                raise IllDefinedMap(f"{source.label}: spanning set does not span the numerator")
            image: Vector = {}
            for key, value in remainder.items():
                add_scaled(image, _normalize(spanning[key - a][1], target.coefficients), -value)
            images.append(image)
        return cls(source, target, images, check)

    def _check_well_defined(self) -> None:
        for k, image in enumerate(self.images):
            if not self.target.contains(image):
                raise IllDefinedMap(
                    f"image of generator {k} of {self.source.label} leaves {self.target.label}"
                )
        for relation in self.source.denominator_basis():
            if not self.target.is_zero(self.apply(relation)):
                raise IllDefinedMap(
                    f"a relation of {self.source.label} does not map to zero in {self.target.label}"
                )

    def apply(self, vector: Mapping[int, Any]) -> Vector:
        """Image (target ambient vector) of an ambient vector of the source numerator."""
        out: Vector = {}
        for k, value in enumerate(self.source.solve(vector)):
            if value:
                add_scaled(out, self.images[k], value)
        return out

    def kernel(self, label: Optional[str] = None) -> SubQuotient:
        """{x in L : f(x) in M'} / M as a subquotient of the source ambient."""
        coefficients = self.source.coefficients
        b = self.target.ambient
        n = len(self.source.generators)
        one = coefficients.one if coefficients.is_field else 1
        echelon = new_echelon(b + n, coefficients)
        for relation in self.target.denominator_basis():
            echelon.add(relation)
        for k, image in enumerate(self.images):
            vector = dict(image)
            vector[b + k] = one
            echelon.add(vector)
        numerator: List[Vector] = []
        for pivot in echelon.pivots():
            if pivot < b:
                continue
            row = echelon.row_for_pivot(pivot)
            element: Vector = {}
            for key, value in row.items():
                add_scaled(element, self.source.generators[key - b], value)
            numerator.append(element)
        return SubQuotient(
            self.source.ambient,
            numerator,
            self.source.denominator_basis(),
            coefficients,
            label=label or f"ker({self.source.label} -> {self.target.label})",
        )

    def image(self, label: Optional[str] = None) -> SubQuotient:
        """(f(L) + M') / M' inside the target ambient."""
        return SubQuotient(
            self.target.ambient,
            self.images,
            self.target.denominator_basis(),
            self.target.coefficients,
            label=label or f"im({self.source.label} -> {self.target.label})",
        )

    def cokernel(self, label: Optional[str] = None) -> SubQuotient:
        """L' / (f(L) + M')."""
        return SubQuotient(
            self.target.ambient,
            self.target.generators,
            list(self.images) + self.target.denominator_basis(),
            self.target.coefficients,
            label=label or f"coker({self.source.label} -> {self.target.label})",
        )

    def is_zero_map(self) -> bool:
        return all(self.target.is_zero(image) for image in self.images)

    def is_surjective(self) -> bool:
        return self.cokernel().group().is_trivial

    def is_injective(self) -> bool:
        return self.kernel().group().is_trivial
