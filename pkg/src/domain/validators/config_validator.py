"""
Config Validator

Checks a parsed JSON document against the rules of algebra_config.schema.json
and builds an AlgebraConfig from it.
"""

from fractions import Fraction
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from ..exceptions import ConfigValidationError, ValidationError
from ..models.algebra_config import (
    ALGEBRA_KINDS,
    STRUCTURE_CONSTANTS,
    TRUNCATED_POLYNOMIAL,
    AlgebraConfig,
    Product,
)
from ..models.coefficients import Coefficients
from .algebra_validator import AlgebraValidator

_TOP_LEVEL = {"coefficients", "algebra", "ideal", "name"}


def _fail(message: str) -> ConfigValidationError:
    return ConfigValidationError(message)


class ConfigValidator:
    """
    Stateless validation of algebra configuration documents.

    Every failure is a ConfigValidationError whose message names the
    violated rule.
    """

    @staticmethod
    def validate(document: Any, source: str = "") -> AlgebraConfig:
        """
        Build an AlgebraConfig from a parsed JSON document.

        Raises:
            ConfigValidationError: On any schema violation

        Examples:
            >>> ConfigValidator.validate({"coefficients": {"kind": "prime_field", "p": 4},
            ...                           "algebra": {"kind": "truncated_polynomial", "vars": [["e", 2]]}})
            Traceback (most recent call last):
            ConfigValidationError: p must be prime
        """
        if not isinstance(document, Mapping):
            raise _fail("config must be a JSON object")
        unknown = sorted(set(document) - _TOP_LEVEL)
        if unknown:
            raise _fail(f"unknown top-level keys: {', '.join(unknown)}")
        for key in ("coefficients", "algebra"):
            if key not in document:
                raise _fail(f"missing required key {key!r}")

        coefficients = ConfigValidator.validate_coefficients(document["coefficients"])
        algebra = document["algebra"]
        if not isinstance(algebra, Mapping):
            raise _fail("algebra must be an object")
        kind = algebra.get("kind")
        if kind not in ALGEBRA_KINDS:
            raise _fail(f"algebra.kind must be one of {', '.join(ALGEBRA_KINDS)}")

        name = document.get("name", "")
        if not isinstance(name, str):
            raise _fail("name must be a string")
        ideal = document.get("ideal")
        if ideal is not None:
            if not isinstance(ideal, list) or not all(isinstance(g, str) for g in ideal):
                raise _fail("ideal must be a list of basis names")
            if len(set(ideal)) != len(ideal):
                raise _fail("ideal generators must be distinct")
            ideal = tuple(ideal)

        try:
            if kind == TRUNCATED_POLYNOMIAL:
                variables = ConfigValidator.validate_variables(algebra.get("vars"))
                return AlgebraConfig(coefficients, kind, variables=variables, ideal=ideal,
                                     name=name, source=source)
            basis = ConfigValidator.validate_basis(algebra.get("basis"))
            unit = ConfigValidator.validate_unit(algebra.get("unit"), len(basis))
            products = ConfigValidator.validate_products(algebra.get("products", []), basis)
            return AlgebraConfig(coefficients, STRUCTURE_CONSTANTS, basis=basis, unit=unit,
                                 products=products, ideal=ideal, name=name, source=source)
        except ConfigValidationError:
            raise
        except ValidationError as e:
            raise _fail(str(e)) from e

    @staticmethod
    def validate_coefficients(value: Any) -> Coefficients:
        if not isinstance(value, Mapping):
            raise _fail("coefficients must be an object")
        kind = value.get("kind")
        if kind == "rationals":
            return Coefficients.rationals()
        if kind == "prime_field":
            try:
                p = AlgebraValidator.validate_prime(value.get("p"))
            except ValidationError as e:
                raise _fail(str(e)) from e
            return Coefficients.prime_field(p)
        raise _fail("coefficients.kind must be 'rationals' or 'prime_field'")

    @staticmethod
    def validate_variables(value: Any) -> Tuple[Tuple[str, int], ...]:
        if not isinstance(value, list) or not value:
            raise _fail("vars must be a nonempty list of [name, power] pairs")
        variables = []
        for item in value:
            if (not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], str)
                    or not isinstance(item[1], int) or isinstance(item[1], bool)):
                raise _fail(f"malformed variable {item!r}; expected [name, power]")
            if item[1] < 2:
                raise _fail(f"power of {item[0]} must be at least 2")
            variables.append((item[0], item[1]))
        names = [v for v, _ in variables]
        if len(set(names)) != len(names):
            raise _fail("variable names must be distinct")
        return tuple(variables)

    @staticmethod
    def validate_basis(value: Any) -> Tuple[str, ...]:
        if not isinstance(value, list) or not value or not all(isinstance(b, str) for b in value):
            raise _fail("basis must be a nonempty list of names")
        if len(set(value)) != len(value):
            raise _fail("basis names must be distinct")
        return tuple(value)

    @staticmethod
    def _scalar(value: Any, where: str) -> Any:
        if isinstance(value, bool):
            raise _fail(f"{where}: coefficient must be a number or 'a/b' string")
        if isinstance(value, int):
            return value
        if isinstance(value, str):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise _fail(f"{where}: cannot read coefficient {value!r}") from None
        raise _fail(f"{where}: coefficient must be an integer or 'a/b' string")

    @staticmethod
    def validate_unit(value: Any, dim: int) -> Tuple[Any, ...]:
        if not isinstance(value, list) or len(value) != dim:
            raise _fail(f"unit must list {dim} coordinates")
        return tuple(ConfigValidator._scalar(c, "unit") for c in value)

    @staticmethod
    def _basis_index(value: Any, basis: Sequence[str], where: str) -> int:
        if isinstance(value, str) and value in basis:
            return basis.index(value)
        if isinstance(value, str) and value.isdigit():
            value = int(value)
        if isinstance(value, int) and not isinstance(value, bool) and 0 <= value < len(basis):
            return value
        raise _fail(f"{where}: unknown basis element {value!r}")

    @staticmethod
    def validate_products(value: Any, basis: Sequence[str]) -> Tuple[Product, ...]:
        if not isinstance(value, list):
            raise _fail("products must be a list of [i, j, {k: c}] entries")
        seen: Dict[Tuple[int, int], int] = {}
        products: List[Product] = []
        for position, item in enumerate(value):
            where = f"products[{position}]"
            if not isinstance(item, list) or len(item) != 3 or not isinstance(item[2], Mapping):
                raise _fail(f"{where}: expected [i, j, {{k: c}}]")
            i = ConfigValidator._basis_index(item[0], basis, where)
            j = ConfigValidator._basis_index(item[1], basis, where)
            i, j = min(i, j), max(i, j)
            if (i, j) in seen:
                raise _fail(f"{where}: product ({basis[i]}, {basis[j]}) already listed")
            seen[(i, j)] = position
            image = {ConfigValidator._basis_index(k, basis, where): ConfigValidator._scalar(c, where)
                     for k, c in item[2].items()}
            products.append((i, j, image))
        return tuple(products)
