"""
Algebra Config Loader Interface

Contract for reading algebra configurations from some storage format.
"""

from typing import Protocol

from ...domain.models.algebra_config import AlgebraConfig


class IAlgebraConfigLoader(Protocol):
    """
    Interface for algebra configuration readers.

    Implementations report syntax problems as ParseError (with offset, line
    and column) and schema violations as ConfigValidationError.
    """

    def load(self, path: str) -> AlgebraConfig:
        """
        Read and validate the config stored at path.

        Raises:
            ParseError: If the file is not well-formed
            ConfigValidationError: If it violates the schema
            OSError: If the file cannot be read
        """
        ...

    def loads(self, text: str, source: str = "<string>") -> AlgebraConfig:
        """Same as load, from an in-memory document."""
        ...
