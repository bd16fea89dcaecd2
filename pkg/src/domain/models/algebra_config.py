"""
Algebra Config Model

The validated content of an algebra configuration file, before it is turned
into a FinAlgebra.
"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, Optional, Tuple

from ..exceptions import ValidationError
from .coefficients import Coefficients

if TYPE_CHECKING:
    from .algebra import FinAlgebra
    from .nilpotent_pair import SplitNilpotentPair

TRUNCATED_POLYNOMIAL = "truncated_polynomial"
STRUCTURE_CONSTANTS = "structure_constants"
ALGEBRA_KINDS = (TRUNCATED_POLYNOMIAL, STRUCTURE_CONSTANTS)

Product = Tuple[int, int, Dict[int, Any]]


@dataclass(frozen=True)
class AlgebraConfig:
    """
    Algebra description loaded from JSON.

    Attributes:
        coefficients: Q or F_p
        kind: "truncated_polynomial" or "structure_constants"
        variables: (name, power) pairs for a truncated polynomial algebra
        basis: Basis names for structure constants
        unit: Coordinates of 1 for structure constants
        products: (i, j, {k: c}) with i <= j, each unordered pair at most once
        ideal: Basis names spanning the nilpotent ideal, if any
        name: Display name
        source: Path the config was read from
    """
    coefficients: Coefficients
    kind: str
    variables: Tuple[Tuple[str, int], ...] = ()
    basis: Tuple[str, ...] = ()
    unit: Tuple[Any, ...] = ()
    products: Tuple[Product, ...] = field(default=(), repr=False)
    ideal: Optional[Tuple[str, ...]] = None
    name: str = ""
    source: str = ""

    def __post_init__(self):
        if self.kind not in ALGEBRA_KINDS:
            raise ValidationError(f"algebra kind must be one of {', '.join(ALGEBRA_KINDS)}")
        if self.kind == TRUNCATED_POLYNOMIAL and not self.variables:
            raise ValidationError("a truncated polynomial algebra needs at least one variable")
        if self.kind == STRUCTURE_CONSTANTS and len(self.unit) != len(self.basis):
            raise ValidationError(f"unit has {len(self.unit)} coordinates, expected {len(self.basis)}")

    @property
    def has_ideal(self) -> bool:
        return self.ideal is not None

    @property
    def label(self) -> str:
        return self.name or self.source or self.kind

    def to_dict(self) -> dict:
        data: Dict[str, Any] = {"name": self.label, "coefficients": str(self.coefficients), "kind": self.kind}
        if self.kind == TRUNCATED_POLYNOMIAL:
            data["vars"] = [[v, k] for v, k in self.variables]
        else:
            data["basis"] = list(self.basis)
        if self.ideal is not None:
            data["ideal"] = list(self.ideal)
        return data


@dataclass(frozen=True, eq=False)
class LoadedAlgebra:
    """A config together with the algebra and, when an ideal is given, the pair it defines."""
    config: AlgebraConfig
    algebra: "FinAlgebra"
    pair: Optional["SplitNilpotentPair"] = None

    @property
    def name(self) -> str:
        return self.config.label

    @property
    def target(self):
        """The pair if the config names an ideal, else the algebra."""
        return self.pair if self.pair is not None else self.algebra

    def require_pair(self) -> "SplitNilpotentPair":
        if self.pair is None:
            raise ValidationError(f"{self.name} does not declare an ideal")
        return self.pair
