"""
Unit Tests for Config Loading

Tests JSON parsing with error positions, schema validation, algebra
construction from configs and environment settings.
"""

import json
from pathlib import Path

import pytest

from src.domain.exceptions import ConfigValidationError, ParseError, UsageError
from src.domain.limits import CapacityLimits
from src.domain.models.algebra import FinAlgebra
from src.domain.models.algebra_config import STRUCTURE_CONSTANTS, TRUNCATED_POLYNOMIAL
from src.domain.models.nilpotent_pair import SplitNilpotentPair
from src.infrastructure.config.json_config_loader import JsonAlgebraConfigLoader
from src.infrastructure.config.settings import Settings
from src.infrastructure.container import build_services, load_algebra_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

NON_ASSOCIATIVE = {
    "coefficients": {"kind": "rationals"},
    "algebra": {
        "kind": "structure_constants",
        "basis": ["1", "x", "y"],
        "unit": [1, 0, 0],
        "products": [
            ["1", "1", {"1": 1}],
            ["1", "x", {"x": 1}],
            ["1", "y", {"y": 1}],
            ["x", "x", {"y": 1}],
            ["x", "y", {"x": 1}],
        ],
    },
}


class TestJsonParsing:
    """Test suite for JsonAlgebraConfigLoader.loads."""

    def setup_method(self):
        """Set up test fixtures."""
        self.loader = JsonAlgebraConfigLoader()

    # ==================== Syntax Error Tests ====================

    def test_truncated_document(self):
        """Test the position of a syntax error at the end of input."""
        with pytest.raises(ParseError) as info:
            self.loader.loads('{"coefficients": ')
        assert info.value.offset == 17
        assert info.value.line == 1
        assert info.value.column == 18

    def test_error_on_second_line(self):
        """Test that line and column follow newlines."""
        with pytest.raises(ParseError) as info:
            self.loader.loads('{\n  "a": ,\n}')
        assert info.value.line == 2
        assert info.value.column == 8
        assert info.value.offset == 9

    def test_byte_offset_counts_utf8(self):
        """Test that the offset counts bytes, not characters."""
        with pytest.raises(ParseError) as info:
            self.loader.loads('{"name": "é", x}')
        assert info.value.column == 15
        assert info.value.offset == 15

    # ==================== Validation Tests ====================

    def test_truncated_polynomial(self):
        """Test a valid truncated polynomial config."""
        config = self.loader.loads(json.dumps({
            "name": "F7[e]/e^2",
            "coefficients": {"kind": "prime_field", "p": 7},
            "algebra": {"kind": "truncated_polynomial", "vars": [["e", 2]]},
            "ideal": ["e"],
        }))
        assert config.kind == TRUNCATED_POLYNOMIAL
        assert config.variables == (("e", 2),)
        assert config.ideal == ("e",)
        assert config.label == "F7[e]/e^2"

    def test_structure_constants(self):
        """Test products are normalized to i <= j."""
        config = self.loader.loads((CONFIGS / "qxy.json").read_text())
        assert config.kind == STRUCTURE_CONSTANTS
        assert config.basis == ("1", "x", "y")
        assert all(i <= j for i, j, _ in config.products)

    def test_p_must_be_prime(self):
        """Test that p = 4 is rejected."""
        document = {
            "coefficients": {"kind": "prime_field", "p": 4},
            "algebra": {"kind": "truncated_polynomial", "vars": [["e", 2]]},
        }
        with pytest.raises(ConfigValidationError, match="p must be prime"):
            self.loader.loads(json.dumps(document))

    def test_unknown_top_level_key(self):
        """Test that unknown keys are rejected."""
        document = {
            "coefficients": {"kind": "rationals"},
            "algebra": {"kind": "truncated_polynomial", "vars": [["e", 2]]},
            "extra": 1,
        }
        with pytest.raises(ConfigValidationError, match="extra"):
            self.loader.loads(json.dumps(document))

    def test_missing_algebra(self):
        """Test that the algebra key is required."""
        with pytest.raises(ConfigValidationError):
            self.loader.loads('{"coefficients": {"kind": "rationals"}}')

    def test_power_below_two(self):
        """Test that x^1 is rejected."""
        document = {
            "coefficients": {"kind": "rationals"},
            "algebra": {"kind": "truncated_polynomial", "vars": [["x", 1]]},
        }
        with pytest.raises(ConfigValidationError):
            self.loader.loads(json.dumps(document))

    def test_duplicate_product(self):
        """Test that (x, 1) and (1, x) may not both be listed."""
        document = json.loads(json.dumps(NON_ASSOCIATIVE))
        document["algebra"]["products"].append(["x", "1", {"x": 1}])
        with pytest.raises(ConfigValidationError, match="already listed"):
            self.loader.loads(json.dumps(document))

    def test_unknown_basis_name(self):
        """Test that products must reference basis elements."""
        document = json.loads(json.dumps(NON_ASSOCIATIVE))
        document["algebra"]["products"].append(["z", "z", {"1": 1}])
        with pytest.raises(ConfigValidationError, match="unknown basis element"):
            self.loader.loads(json.dumps(document))

    def test_rational_coefficient_strings(self):
        """Test that 'a/b' strings are read as fractions."""
        document = {
            "coefficients": {"kind": "rationals"},
            "algebra": {
                "kind": "structure_constants",
                "basis": ["1"],
                "unit": ["1/1"],
                "products": [["1", "1", {"1": "2/2"}]],
            },
        }
        config = self.loader.loads(json.dumps(document))
        assert config.unit[0] == 1


class TestAlgebraFromConfig:
    """Test suite for building algebras from configs."""

    def setup_method(self):
        """Set up test fixtures."""
        self.services = build_services()

    def test_not_associative(self):
        """Test that a non-associative table names the failing triple."""
        config = self.services.loader.loads(json.dumps(NON_ASSOCIATIVE))
        with pytest.raises(ConfigValidationError, match=r"NotAssociative at \("):
            self.services.algebras.from_config(config)

    def test_pair_when_ideal_given(self):
        """Test that a config with an ideal loads as a pair."""
        target = load_algebra_config(str(CONFIGS / "f7eps.json"), self.services)
        assert isinstance(target, SplitNilpotentPair)
        assert target.nilpotency_index == 2

    def test_algebra_without_ideal(self):
        """Test that a config without an ideal loads as an algebra."""
        target = load_algebra_config(str(CONFIGS / "f7.json"), self.services)
        assert isinstance(target, FinAlgebra)
        assert target.dim == 1

    def test_structure_constant_config(self):
        """Test Q[x,y]/(x,y)^2 from its structure constants."""
        loaded = self.services.load(str(CONFIGS / "qxy.json"))
        x = loaded.algebra.basis_element(1)
        assert (x * x).is_zero()
        assert loaded.require_pair().quotient.dim == 1

    def test_bundled_configs_load(self):
        """Test that every bundled config builds."""
        for path in sorted(CONFIGS.glob("*.json")):
            loaded = self.services.load(str(path))
            assert loaded.algebra.dim >= 1, path.name

    def test_missing_file(self):
        """Test that a missing file raises OSError."""
        with pytest.raises(OSError):
            self.services.load(str(CONFIGS / "missing.json"))

    def test_load_from_tmp_path(self, tmp_path):
        """Test that a config written to disk records its source."""
        path = tmp_path / "dual.json"
        path.write_text(json.dumps({
            "coefficients": {"kind": "rationals"},
            "algebra": {"kind": "truncated_polynomial", "vars": [["e", 2]]},
        }))
        loaded = self.services.load(str(path))
        assert loaded.config.source == str(path)
        assert loaded.pair is None


class TestSettings:
    """Test suite for environment settings."""

    def test_defaults(self):
        """Test that an empty environment keeps default limits."""
        assert Settings.from_env({}).limits == CapacityLimits()

    def test_capacity_from_environment(self):
        """Test that CM_CAPACITY scales the entry budget."""
        settings = Settings.from_env({"CM_CAPACITY": "1000"})
        assert settings.capacity == 1000
        assert settings.limits.max_entries == 1000

    def test_invalid_capacity(self):
        """Test that a non-numeric CM_CAPACITY is a usage error."""
        with pytest.raises(UsageError):
            Settings.from_env({"CM_CAPACITY": "lots"})

    def test_command_line_override(self):
        """Test that --capacity overrides the environment and None keeps it."""
        settings = Settings.from_env({"CM_CAPACITY": "1000"})
        assert settings.with_capacity(50).capacity == 50
        assert settings.with_capacity(None).capacity == 1000
