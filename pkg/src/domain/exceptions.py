"""
Domain Exceptions

Custom exceptions for domain-level errors.
Every failure the library can signal derives from DomainException, so callers
(and the CLI) can catch one base class and map it to an exit code.
"""

from typing import Optional


class DomainException(Exception):
    """Base exception for all domain-level errors"""
    pass


# ==================== Validation ====================

class ValidationError(DomainException):
    """Raised when domain validation fails"""
    pass


class NotAssociative(ValidationError):
    """Raised when structure constants violate associativity"""

    def __init__(self, i: int, j: int, l: int):
        self.triple = (i, j, l)
        super().__init__(f"NotAssociative at ({i},{j},{l})")


class NotCommutative(ValidationError):
    """Raised when structure constants violate commutativity"""

    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"NotCommutative at ({i},{j})")


class NoUnit(ValidationError):
    """Raised when the declared unit vector does not act as identity"""
    pass


class NotAnIdeal(ValidationError):
    """Raised when a span is not closed under multiplication by the algebra"""
    pass


class NotNilpotent(ValidationError):
    """Raised when an ideal or element is not nilpotent"""
    pass


class NotSplitAlongBasis(ValidationError):
    """Raised when no canonical section exists for the given ideal basis"""
    pass


class MalformedGenerator(ValidationError):
    """Raised when a differential generator does not have the required shape"""
    pass


class NonUnitEntry(ValidationError):
    """Raised when a symbol entry is not invertible"""
    pass


class NoRelativeEntry(ValidationError):
    """Raised when a symbol has no entry in (1+I)*"""
    pass


class IndexOutOfRange(ValidationError):
    """Raised when an operator index is outside the allowed range"""
    pass


# ==================== Computation ====================

class ComputationError(DomainException):
    """Raised when a computation cannot be carried out"""
    pass


class CapacityExceeded(ComputationError):
    """Raised when a computation would exceed the configured capacity"""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: {size:,} exceeds capacity limit {limit:,}")


class IllDefinedMap(ComputationError):
    """Raised when a map on generators does not respect the relations"""
    pass


class NotAComplex(ComputationError):
    """Raised when consecutive boundary maps do not compose to zero"""
    pass


class InfiniteCoefficients(ComputationError):
    """Raised when a brute-force operation needs a finite coefficient field"""
    pass


class NonInvertibleDenominator(ComputationError):
    """Raised when a series needs an integer that is not invertible"""

    def __init__(self, denominator: int, message: Optional[str] = None):
        self.denominator = denominator
        super().__init__(message or f"{denominator} is not invertible in the coefficients")


class NotExact(ComputationError):
    """Raised when an exact couple fails an exactness check"""
    pass


class NotStabilized(ComputationError):
    """Raised when spectral sequence pages keep changing up to the maximum page"""
    pass


# ==================== Configuration & usage ====================

class ConfigError(DomainException):
    """Base exception for configuration problems"""
    pass


class ParseError(ConfigError):
    """Raised when a configuration file cannot be parsed"""

    def __init__(self, message: str, offset: int = 0, line: int = 0, column: int = 0):
        self.offset = offset
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column}, byte offset {offset})")


class ConfigValidationError(ConfigError, ValidationError):
    """Raised when a parsed configuration violates an invariant"""
    pass


class UsageError(DomainException):
    """Raised on invalid command-line usage"""
    pass
