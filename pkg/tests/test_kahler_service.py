"""
Unit Tests for Kahler Service

Tests absolute and relative Kähler differentials, the de Rham differential
and quotients by exact forms.
"""

import pytest

from src.domain.exceptions import ValidationError
from src.domain.models.coefficients import Coefficients
from src.domain.validators.algebra_validator import AlgebraValidator
from src.infrastructure.container import build_services

F2 = Coefficients.prime_field(2)
F7 = Coefficients.prime_field(7)
Q = Coefficients.rationals()


class TestOmega:
    """Test suite for absolute differentials."""

    def setup_method(self):
        """Set up test fixtures."""
        services = build_services()
        self.algebras = services.algebras
        self.service = services.kahler
        self.dual = self.algebras.truncated_polynomial(Q, [("e", 2)])
        self.qxy = self.algebras.truncated_total_degree(Q, ["x", "y"], 2)

    # ==================== Rank Tests ====================

    def test_omega_zero_is_the_algebra(self):
        """Test that Ω^0 has the dimension of R."""
        assert self.service.omega(self.dual, 0).group.free_rank == 2

    def test_dual_numbers_omega_one(self):
        """Test Ω^1 of Q[e]/e^2 is spanned by de."""
        assert self.service.omega(self.dual, 1).group.free_rank == 1

    def test_two_variable_omega_one(self):
        """Test Ω^1 of Q[x,y]/(x,y)^2 has rank 3."""
        assert self.service.omega(self.qxy, 1).group.free_rank == 3

    def test_two_variable_omega_three_vanishes(self):
        """Test Ω^3 of Q[x,y]/(x,y)^2 is zero."""
        assert self.service.omega(self.qxy, 3).group.is_trivial

    def test_characteristic_two_keeps_x_dx(self):
        """Test Ω^1 of F_2[x]/x^2 is free of rank one over R: 2x dx = 0 is automatic."""
        R = self.algebras.truncated_polynomial(F2, [("x", 2)])
        assert self.service.omega(R, 1).group.order == 4

    def test_negative_degree_rejected(self):
        """Test that n < 0 is rejected."""
        with pytest.raises(ValidationError):
            self.service.omega(self.dual, -1)

    # ==================== Element Tests ====================

    def test_leibniz_rule(self):
        """Test d(e*e) = 2e de, which is zero since e^2 = 0."""
        module = self.service.omega(self.dual, 1)
        e = self.dual.basis_element(1)
        two_e = AlgebraValidator.parse_element(self.dual, "2*e")
        assert module.is_zero(module.element(two_e, e))

    def test_d_of_one_vanishes(self):
        """Test that d1 = 0."""
        module = self.service.omega(self.dual, 1)
        assert module.is_zero(module.element(self.dual.one(), self.dual.one()))

    def test_de_is_nonzero(self):
        """Test that de is a nonzero class."""
        module = self.service.omega(self.dual, 1)
        e = self.dual.basis_element(1)
        assert not module.is_zero(module.element(self.dual.one(), e))

    # ==================== de Rham Tests ====================

    def test_de_rham_is_well_defined(self):
        """Test that d: Ω^0 -> Ω^1 respects the relations."""
        d = self.service.de_rham_d(self.qxy, 0)
        assert d.source.rank == 3

    def test_d_squared_vanishes(self):
        """Test d∘d = 0 on Ω^0 and Ω^1."""
        assert self.service.d_squared_vanishes(self.qxy, 0)
        assert self.service.d_squared_vanishes(self.qxy, 1)

    def test_omega_one_mod_exact(self):
        """Test Ω^1/dR of Q[x,y]/(x,y)^2 is one-dimensional (spanned by x dy)."""
        group = self.service.omega_absolute_mod_exact(self.qxy, 1)
        assert group.free_rank == 1


class TestRelativeOmega:
    """Test suite for relative differentials."""

    def setup_method(self):
        """Set up test fixtures."""
        services = build_services()
        self.algebras = services.algebras
        self.service = services.kahler

    def _pair(self, coefficients, power=2):
        R = self.algebras.truncated_polynomial(coefficients, [("e", power)])
        return self.algebras.split_nilpotent_pair(R, [name for name in R.basis_names if name != "1"])

    def test_relative_omega_f2(self):
        """Test Ω^1_(R,I) of F_2[x]/x^2 has order 4."""
        assert self.service.relative_omega(self._pair(F2), 1).group.order == 4

    def test_relative_omega_zero_is_the_ideal(self):
        """Test Ω^0_(R,I) is I."""
        relative = self.service.relative_omega(self._pair(F7), 0)
        assert relative.group.order == 7

    def test_mod_exact_f2(self):
        """Test Ω^1_(R,I)/dI of F_2[x]/x^2 has order 2."""
        assert self.service.omega_mod_exact(self._pair(F2), 1).order == 2

    def test_mod_exact_f7(self):
        """Test Ω^1_(R,I)/dI of F_7[e]/e^2 vanishes."""
        assert self.service.omega_mod_exact(self._pair(F7), 1).is_trivial

    def test_mod_exact_rationals(self):
        """Test Ω^1_(R,I)/dI of Q[e]/e^2 vanishes."""
        assert self.service.omega_mod_exact(self._pair(Q), 1).is_trivial

    def test_mod_exact_needs_positive_degree(self):
        """Test that n = 0 is rejected."""
        with pytest.raises(ValidationError):
            self.service.omega_mod_exact(self._pair(Q), 0)

    def test_projection_to_quotient(self):
        """Test Ω^1_R -> Ω^1_S is onto (S = F_7 has Ω^1 = 0)."""
        pair = self._pair(F7)
        projection = self.service.projection(pair, 1)
        assert projection.target.is_trivial
