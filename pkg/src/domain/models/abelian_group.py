"""
Finitely Presented Abelian Group Model

Groups in invariant-factor normal form, optionally carrying the normal-form
map of the presentation they were computed from.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import Any, Dict, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

from sympy import factorint

from ..exceptions import ValidationError
from .coefficients import INTEGERS, Coefficients
from .int_matrix import IntMatrix, Vector

VectorLike = Union[Mapping[int, Any], Sequence[Any]]


class NormalForm(Protocol):
    """Reduces generator vectors of a presentation to normal coordinates."""

    n_generators: int

    def coordinates(self, vector: Mapping[int, Any]) -> Tuple[Any, ...]:
        ...

    def lift(self, index: int) -> Vector:
        ...


def as_vector(values: VectorLike) -> Vector:
    """Accept a dense sequence or a sparse mapping; return a sparse dict."""
    if isinstance(values, Mapping):
        return {int(k): v for k, v in values.items() if v}
    return {k: v for k, v in enumerate(values) if v}


def invariant_factors_from(divisors: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """
    Regroup cyclic orders into (free_rank, invariant factors).

    Zeros count as free summands, ones are dropped.

    Examples:
        >>> invariant_factors_from([0, 2, 4, 8, 3, 9, 5])
        (1, (2, 12, 360))
    """
    free = 0
    powers: Dict[int, List[int]] = {}
    for d in divisors:
        d = abs(int(d))
        if d == 0:
            free += 1
            continue
        for prime, exponent in factorint(d).items():
            powers.setdefault(prime, []).append(prime ** exponent)
    length = max((len(v) for v in powers.values()), default=0)
    factors = [1] * length
    for prime_powers in powers.values():
        prime_powers.sort(reverse=True)
        for k, q in enumerate(prime_powers):
            factors[length - 1 - k] *= q
    return free, tuple(f for f in factors if f > 1)


@dataclass(frozen=True)
class FPAbelianGroup:
    """
    Finitely presented abelian group (a vector space over a field).

    Attributes:
        free_rank: Rank of the free part (the dimension over a field)
        torsion: Invariant factors d1 | d2 | ..., each at least 2
        coefficients: The ring the group is a module over
        n_generators: Generators of the originating presentation
        presentation: Relation matrix the group came from, if kept
        basis_labels: Names of the presentation generators
        inclusion: For subgroups, images of the normal generators in the
            generators of the ambient presentation (one column each)
        normal_form: Map from generator vectors to normal coordinates

    Two groups compare equal exactly when they are isomorphic over the same
    coefficients.
    """
    free_rank: int
    torsion: Tuple[int, ...] = ()
    coefficients: Coefficients = INTEGERS
    n_generators: int = field(default=0, compare=False)
    presentation: Optional[IntMatrix] = field(default=None, compare=False, repr=False)
    basis_labels: Optional[Tuple[str, ...]] = field(default=None, compare=False, repr=False)
    inclusion: Optional[IntMatrix] = field(default=None, compare=False, repr=False)
    normal_form: Optional[NormalForm] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValidationError("free_rank must be nonnegative")
        torsion = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if self.coefficients.is_field and torsion:
            raise ValidationError("vector spaces carry no torsion")
        for d in torsion:
            if d < 2:
                raise ValidationError(f"invariant factor {d} must be at least 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValidationError(f"invariant factor {a} does not divide {b}")

    # ==================== Constructors ====================

    @classmethod
    def trivial(cls, coefficients: Coefficients = INTEGERS) -> "FPAbelianGroup":
        return cls(0, (), coefficients)

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FPAbelianGroup":
        """Group Z/d1 + Z/d2 + ... with d = 0 meaning Z."""
        free, torsion = invariant_factors_from(orders)
        return cls(free, torsion)

    # ==================== Invariants ====================

    @property
    def rank(self) -> int:
        """Number of normal generators."""
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    @property
    def is_finite(self) -> bool:
        if self.free_rank == 0:
            return True
        return self.coefficients.is_finite

    def order(self) -> Optional[int]:
        """Number of elements, or None when infinite."""
        if not self.is_finite:
            return None
        if self.coefficients.is_finite:
            return self.coefficients.p ** self.free_rank
        total = 1
        for d in self.torsion:
            total *= d
        return total

    def abelian_invariants(self) -> Tuple[int, Tuple[int, ...]]:
        """
        (free_rank, torsion) of the underlying abelian group.

        An F_p space of dimension d is the group (Z/p)^d.
        """
        if self.coefficients.is_finite:
            return 0, (self.coefficients.p,) * self.free_rank
        return self.free_rank, self.torsion

    def elementary_divisors(self) -> Tuple[int, ...]:
        free, torsion = self.abelian_invariants()
        out: List[int] = [0] * free
        for d in torsion:
            out.extend(prime ** e for prime, e in sorted(factorint(d).items()))
        return tuple(sorted(out))

    def is_isomorphic(self, other: "FPAbelianGroup") -> bool:
        """Isomorphism of underlying abelian groups (F_p spaces compare as (Z/p)^d)."""
        return self.abelian_invariants() == other.abelian_invariants()

    def direct_sum(self, other: "FPAbelianGroup") -> "FPAbelianGroup":
        if self.coefficients.is_field and self.coefficients == other.coefficients:
            return FPAbelianGroup(self.free_rank + other.free_rank, (), self.coefficients)
        free_a, tors_a = self.abelian_invariants()
        free_b, tors_b = other.abelian_invariants()
        free, torsion = invariant_factors_from(list(tors_a) + list(tors_b))
        return FPAbelianGroup(free_a + free_b + free, torsion)

    # ==================== Elements ====================

    def _require_normal_form(self) -> NormalForm:
        if self.normal_form is None:
            raise ValidationError("group carries no presentation data")
        return self.normal_form

    def coordinates(self, vector: VectorLike) -> Tuple[Any, ...]:
        """Normal coordinates of a generator vector: torsion slots first, then free slots."""
        return self._require_normal_form().coordinates(as_vector(vector))

    def is_zero_element(self, vector: VectorLike) -> bool:
        return not any(self.coordinates(vector))

    def element_equal(self, a: VectorLike, b: VectorLike) -> bool:
        diff = dict(as_vector(a))
        for k, v in as_vector(b).items():
            updated = diff.get(k, 0) - v
            if updated:
                diff[k] = updated
            else:
                diff.pop(k, None)
        return self.is_zero_element(diff)

    def lift(self, index: int) -> Vector:
        """Generator vector representing the index-th normal generator."""
        if not 0 <= index < self.rank:
            raise ValidationError(f"normal generator {index} out of range")
        return self._require_normal_form().lift(index)

    def element_order(self, vector: VectorLike) -> Optional[int]:
        """Additive order of an element, None when infinite."""
        coords = self.coordinates(vector)
        if self.coefficients.is_field:
            if not any(coords):
                return 1
            return self.coefficients.p if self.coefficients.is_finite else None
        n_torsion = len(self.torsion)
        if any(coords[n_torsion:]):
            return None
        order = 1
        for value, d in zip(coords, self.torsion):
            if value:
                k = d // gcd(int(value), d)
                order = order * k // gcd(order, k)
        return order

    # ==================== Output ====================

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        if self.coefficients.is_field:
            label = self.coefficients.label
            return label if self.free_rank == 1 else f"{label}^{self.free_rank}"
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts)

    def to_dict(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
        }


@dataclass(frozen=True, eq=False)
class GroupHomomorphism:
    """
    Homomorphism between presented groups, given on generators.

    Attributes:
        source: Domain group (must carry a normal form)
        target: Codomain group (must carry a normal form)
        images: images[g] is the target generator vector of source generator g
    """
    source: FPAbelianGroup
    target: FPAbelianGroup
    images: Tuple[Vector, ...]

    def __post_init__(self):
        if len(self.images) != self.source.n_generators:
            raise ValidationError(
                f"expected {self.source.n_generators} generator images, got {len(self.images)}"
            )
        object.__setattr__(self, "images", tuple(as_vector(v) for v in self.images))

    def apply(self, vector: VectorLike) -> Vector:
        out: Vector = {}
        for g, value in as_vector(vector).items():
            for h, w in self.images[g].items():
                updated = out.get(h, 0) + value * w
                if updated:
                    out[h] = updated
                else:
                    out.pop(h, None)
        return out
