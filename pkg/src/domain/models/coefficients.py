"""
Coefficients Model

The scalar ring of a computation: the integers, the rationals, or a prime
field F_p. Scalars are sympy domain elements (plain ints over the integers).
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ, ZZ

from ..exceptions import NonInvertibleDenominator, ValidationError

Scalar = Any


class CoefficientKind(Enum):
    INTEGERS = "integers"
    RATIONALS = "rationals"
    PRIME_FIELD = "prime_field"


@lru_cache(maxsize=None)
def _prime_field(p: int):
    return GF(p)


@dataclass(frozen=True)
class Coefficients:
    """
    Coefficient ring descriptor.

    Attributes:
        kind: Integers, rationals or a prime field
        p: The characteristic when kind is PRIME_FIELD, otherwise None

    Examples:
        >>> Coefficients.prime_field(7).label
        'F_7'
        >>> Coefficients.prime_field(4)
        Traceback (most recent call last):
        ...
        src.domain.exceptions.ValidationError: p must be prime
    """
    kind: CoefficientKind
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind is CoefficientKind.PRIME_FIELD:
            if not isinstance(self.p, int) or isinstance(self.p, bool) or not isprime(self.p):
                raise ValidationError("p must be prime")
        elif self.p is not None:
            raise ValidationError(f"{self.kind.value} coefficients take no p")

    # ==================== Constructors ====================

    @classmethod
    def integers(cls) -> "Coefficients":
        return cls(CoefficientKind.INTEGERS)

    @classmethod
    def rationals(cls) -> "Coefficients":
        return cls(CoefficientKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "Coefficients":
        return cls(CoefficientKind.PRIME_FIELD, p)

    # ==================== Properties ====================

    @property
    def domain(self):
        """The sympy domain backing the scalars."""
        if self.kind is CoefficientKind.INTEGERS:
            return ZZ
        if self.kind is CoefficientKind.RATIONALS:
            return QQ
        return _prime_field(self.p)

    @property
    def is_field(self) -> bool:
        return self.kind is not CoefficientKind.INTEGERS

    @property
    def is_finite(self) -> bool:
        return self.kind is CoefficientKind.PRIME_FIELD

    @property
    def characteristic(self) -> int:
        return self.p if self.kind is CoefficientKind.PRIME_FIELD else 0

    @property
    def label(self) -> str:
        if self.kind is CoefficientKind.INTEGERS:
            return "Z"
        if self.kind is CoefficientKind.RATIONALS:
            return "Q"
        return f"F_{self.p}"

    @property
    def zero(self) -> Scalar:
        return self.convert(0)

    @property
    def one(self) -> Scalar:
        return self.convert(1)

    # ==================== Scalar handling ====================

    def convert(self, value: Union[int, Fraction, str, Any]) -> Scalar:
        """
        Convert an int, Fraction, "a/b" string or domain element to a scalar.

        Raises:
            NonInvertibleDenominator: If a denominator vanishes in F_p
            ValidationError: If a non-integer is given for integer coefficients
        """
        if self.kind is CoefficientKind.INTEGERS:
            if isinstance(value, str):
                value = Fraction(value)
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ValidationError(f"{value} is not an integer")
                return int(value.numerator)
            return int(value)

        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
        elif isinstance(value, int):
            num, den = value, 1
        elif self.kind is CoefficientKind.RATIONALS and hasattr(value, "denominator"):
            num, den = int(value.numerator), int(value.denominator)
        else:
            num, den = self.to_int(value), 1

        if self.kind is CoefficientKind.RATIONALS:
            return QQ(num, den)
        if den % self.p == 0:
            raise NonInvertibleDenominator(den)
        dom = self.domain
        return dom(num) * dom.revert(dom(den))

    def inverse(self, value: Scalar) -> Scalar:
        if not value:
            raise ZeroDivisionError("zero has no inverse")
        if self.kind is CoefficientKind.INTEGERS:
            if value not in (1, -1):
                raise NonInvertibleDenominator(int(value))
            return value
        return self.domain.revert(value)

    def to_int(self, value: Scalar) -> int:
        """Canonical integer representative (0..p-1 over F_p)."""
        if self.kind is CoefficientKind.PRIME_FIELD:
            return int(value) % self.p
        if self.kind is CoefficientKind.RATIONALS:
            if value.denominator != 1:
                raise ValidationError(f"{value} is not an integer")
            return int(value.numerator)
        return int(value)

    def to_python(self, value: Scalar) -> Union[int, str]:
        """JSON-friendly form: ints stay ints, proper fractions become 'a/b'."""
        if self.kind is CoefficientKind.RATIONALS:
            num, den = int(value.numerator), int(value.denominator)
            return num if den == 1 else f"{num}/{den}"
        return self.to_int(value)

    def is_invertible_integer(self, k: int) -> bool:
        """True when the integer k is a unit of this ring."""
        if self.kind is CoefficientKind.INTEGERS:
            return k in (1, -1)
        if self.kind is CoefficientKind.RATIONALS:
            return k != 0
        return k % self.p != 0

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value}
        if self.p is not None:
            data["p"] = self.p
        return data

    def __str__(self) -> str:
        return self.label


INTEGERS = Coefficients.integers()
RATIONALS = Coefficients.rationals()
