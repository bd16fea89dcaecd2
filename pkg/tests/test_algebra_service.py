"""
Unit Tests for Algebra Service

Tests constructors, split nilpotent pairs, units, stability and the
nilpotent exp/log series.
"""

import pytest

from src.application.services.algebra_service import AlgebraService
from src.domain.exceptions import (
    InfiniteCoefficients,
    NonInvertibleDenominator,
    NotAnIdeal,
    NotAssociative,
    NotCommutative,
    NotNilpotent,
    NotSplitAlongBasis,
    ValidationError,
)
from src.domain.models.coefficients import Coefficients
from src.domain.validators.algebra_validator import AlgebraValidator
from src.infrastructure.elimination.backend import ExactEliminationBackend

F2 = Coefficients.prime_field(2)
F5 = Coefficients.prime_field(5)
F7 = Coefficients.prime_field(7)
Q = Coefficients.rationals()


def _field(service, coefficients):
    return service.make_structure_algebra(coefficients, 1, [1], [[{0: 1}]], basis_names=["1"])


class TestConstructors:
    """Test suite for algebra constructors."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = AlgebraService(ExactEliminationBackend())

    # ==================== Truncated Polynomial Tests ====================

    def test_dual_numbers_basis(self):
        """Test that Q[e]/e^2 has basis 1, e."""
        R = self.service.truncated_polynomial(Q, [("e", 2)])
        assert R.basis_names == ("1", "e")
        assert R.dim == 2

    def test_two_variables_basis_by_degree(self):
        """Test that the basis is ordered by total degree."""
        R = self.service.truncated_polynomial(Q, [("x", 2), ("y", 2)])
        assert R.basis_names == ("1", "x", "y", "xy")

    def test_products_truncate(self):
        """Test that e * e vanishes in Q[e]/e^2."""
        R = self.service.truncated_polynomial(Q, [("e", 2)])
        e = R.basis_element(1)
        assert (e * e).is_zero()

    def test_power_below_two_rejected(self):
        """Test that x^1 = 0 is not a valid truncation."""
        with pytest.raises(ValidationError):
            self.service.truncated_polynomial(Q, [("x", 1)])

    def test_repeated_names_rejected(self):
        """Test that variable names must be distinct."""
        with pytest.raises(ValidationError):
            self.service.truncated_polynomial(Q, [("x", 2), ("x", 3)])

    def test_total_degree_truncation(self):
        """Test Q[x,y]/(x,y)^2 has dimension 3."""
        R = self.service.truncated_total_degree(Q, ["x", "y"], 2)
        assert R.dim == 3
        x, y = R.basis_element(1), R.basis_element(2)
        assert (x * y).is_zero()

    # ==================== Structure Constant Tests ====================

    def test_prime_field(self):
        """Test that a one-dimensional table gives F_5 itself."""
        R = _field(self.service, F5)
        assert R.dim == 1
        assert R.order == 5

    def test_not_commutative(self):
        """Test that an asymmetric table is rejected."""
        table = [[{0: 1}, {1: 1}], [{0: 1}, {}]]
        with pytest.raises(NotCommutative):
            self.service.make_structure_algebra(Q, 2, [1, 0], table)

    def test_not_associative(self):
        """Test that x*x = y, x*y = x, y*y = 0 fails associativity."""
        table = [
            [{0: 1}, {1: 1}, {2: 1}],
            [{1: 1}, {2: 1}, {1: 1}],
            [{2: 1}, {1: 1}, {}],
        ]
        with pytest.raises(NotAssociative) as info:
            self.service.make_structure_algebra(Q, 3, [1, 0, 0], table, basis_names=["1", "x", "y"])
        assert "NotAssociative at (" in str(info.value)

    def test_wrong_shape(self):
        """Test that a table of the wrong size is rejected."""
        with pytest.raises(ValidationError):
            self.service.make_structure_algebra(Q, 2, [1, 0], [[{0: 1}]])


class TestSplitNilpotentPairs:
    """Test suite for split_nilpotent_pair."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = AlgebraService(ExactEliminationBackend())

    def test_dual_numbers(self):
        """Test (F_7[e]/e^2, (e)) has quotient F_7 and index 2."""
        R = self.service.truncated_polynomial(F7, [("e", 2)])
        pair = self.service.split_nilpotent_pair(R, ["e"])
        assert pair.quotient.dim == 1
        assert pair.nilpotency_index == 2
        assert pair.ideal_names == ["e"]

    def test_cube_truncation(self):
        """Test that (e, e^2) in Q[e]/e^3 has nilpotency index 3."""
        R = self.service.truncated_polynomial(Q, [("e", 3)])
        pair = self.service.split_nilpotent_pair(R, ["e", "e^2"])
        assert pair.nilpotency_index == 3

    def test_indices_and_names_agree(self):
        """Test that basis indices work like basis names."""
        R = self.service.truncated_polynomial(Q, [("e", 2)])
        by_name = self.service.split_nilpotent_pair(R, ["e"])
        by_index = self.service.split_nilpotent_pair(R, [1])
        assert by_name.ideal_indices == by_index.ideal_indices

    def test_project_and_lift(self):
        """Test that projecting a lift returns the quotient element."""
        R = self.service.truncated_polynomial(F7, [("e", 2)])
        pair = self.service.split_nilpotent_pair(R, ["e"])
        s = pair.quotient.element([3])
        assert pair.project(pair.lift(s)) == s

    def test_not_an_ideal(self):
        """Test that (x) in Q[x,y]/(x^2,y^2) misses xy."""
        R = self.service.truncated_polynomial(Q, [("x", 2), ("y", 2)])
        with pytest.raises(NotAnIdeal):
            self.service.split_nilpotent_pair(R, ["x"])

    def test_not_nilpotent(self):
        """Test that the unit ideal is rejected."""
        R = self.service.truncated_polynomial(Q, [("e", 2)])
        with pytest.raises(NotNilpotent):
            self.service.split_nilpotent_pair(R, ["1"])

    def test_not_a_basis_vector(self):
        """Test that a generator like 1+e is rejected."""
        R = self.service.truncated_polynomial(Q, [("e", 2)])
        generator = AlgebraValidator.parse_element(R, "1+e")
        with pytest.raises(NotSplitAlongBasis):
            self.service.split_nilpotent_pair(R, [generator])


class TestUnitsAndStability:
    """Test suite for unit enumeration and stability."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = AlgebraService(ExactEliminationBackend())

    # ==================== Unit Tests ====================

    def test_units_of_dual_numbers_mod_seven(self):
        """Test that F_7[e]/e^2 has 42 units."""
        R = self.service.truncated_polynomial(F7, [("e", 2)])
        assert len(self.service.enumerate_units(R)) == 42

    def test_units_of_f2_dual_numbers(self):
        """Test that F_2[x]/x^2 has units 1 and 1+x."""
        R = self.service.truncated_polynomial(F2, [("x", 2)])
        units = {str(u) for u in self.service.enumerate_units(R)}
        assert len(units) == 2

    def test_inverse(self):
        """Test (1+e)^-1 = 1-e."""
        R = self.service.truncated_polynomial(F7, [("e", 2)])
        x = AlgebraValidator.parse_element(R, "1+e")
        assert self.service.inverse(x) == AlgebraValidator.parse_element(R, "1-e")
        assert not self.service.is_unit(R.basis_element(1))

    def test_units_over_rationals_rejected(self):
        """Test that enumeration needs finite coefficients."""
        R = self.service.truncated_polynomial(Q, [("e", 2)])
        with pytest.raises(InfiniteCoefficients):
            self.service.enumerate_units(R)

    def test_residue_field(self):
        """Test that F_7[e]/e^2 is local with residue field F_7."""
        R = self.service.truncated_polynomial(F7, [("e", 2)])
        assert self.service.is_local(R)
        assert self.service.residue_field_order(R) == 7

    # ==================== Stability Tests ====================

    def test_prime_field_stability_threshold(self):
        """Test that F_5 is 4-fold stable but not 5-fold stable."""
        R = _field(self.service, F5)
        assert self.service.is_m_fold_stable(R, 4)
        assert not self.service.is_m_fold_stable(R, 5)

    def test_f2_dual_numbers_stability(self):
        """Test that F_2[x]/x^2 is 1-fold but not 2-fold stable."""
        R = self.service.truncated_polynomial(F2, [("x", 2)])
        assert self.service.is_m_fold_stable(R, 1)
        assert not self.service.is_m_fold_stable(R, 2)

    def test_f7_dual_numbers_five_fold(self):
        """Test that F_7[e]/e^2 is 5-fold stable."""
        R = self.service.truncated_polynomial(F7, [("e", 2)])
        assert self.service.is_m_fold_stable(R, 5)

    def test_brute_force_matches_residue_field_rule(self):
        """Test brute force against the residue field criterion for local rings."""
        R = self.service.truncated_polynomial(F2, [("x", 2)])
        for m in (1, 2, 3):
            assert self.service.is_m_fold_stable(R, m) == self.service.stability_by_residue_field(R, m)

    def test_m_must_be_positive(self):
        """Test that m = 0 is rejected."""
        R = _field(self.service, F5)
        with pytest.raises(ValidationError):
            self.service.is_m_fold_stable(R, 0)


class TestNilpotentSeries:
    """Test suite for log(1+x) and exp(x)."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = AlgebraService(ExactEliminationBackend())

    def test_log_of_one_plus_e(self):
        """Test log(1+e) = e - e^2/2 in Q[e]/e^3."""
        R = self.service.truncated_polynomial(Q, [("e", 3)])
        e = R.basis_element(1)
        assert self.service.log_one_plus(e) == AlgebraValidator.parse_element(R, "e - 1/2*e^2")

    def test_exp_inverts_log(self):
        """Test exp(log(1+x)) = 1+x for nilpotent x."""
        R = self.service.truncated_polynomial(Q, [("e", 3)])
        x = AlgebraValidator.parse_element(R, "2*e + 3*e^2")
        assert self.service.exp_nilpotent(self.service.log_one_plus(x)) == R.one() + x

    def test_exp_over_prime_field(self):
        """Test exp(3e) = 1 + 3e in F_7[e]/e^2."""
        R = self.service.truncated_polynomial(F7, [("e", 2)])
        x = AlgebraValidator.parse_element(R, "3*e")
        assert self.service.exp_nilpotent(x) == R.one() + x

    def test_non_nilpotent_rejected(self):
        """Test that log(1+1) is rejected."""
        R = self.service.truncated_polynomial(Q, [("e", 2)])
        with pytest.raises(NotNilpotent):
            self.service.log_one_plus(R.one())

    def test_denominator_not_invertible(self):
        """Test that log(1+x) in F_2[x]/x^3 needs 1/2."""
        R = self.service.truncated_polynomial(F2, [("x", 3)])
        with pytest.raises(NonInvertibleDenominator):
            self.service.log_one_plus(R.basis_element(1))
