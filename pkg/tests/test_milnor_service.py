"""
Unit Tests for Milnor Service

Tests unit groups, symbol presentations of Milnor K-groups, relative
K-groups, the Dennis-Stein group and dlog.
"""

import pytest

from src.domain.exceptions import InfiniteCoefficients, NonUnitEntry, ValidationError
from src.domain.models.coefficients import Coefficients
from src.domain.validators.algebra_validator import AlgebraValidator
from src.infrastructure.container import build_services

F2 = Coefficients.prime_field(2)
F7 = Coefficients.prime_field(7)
Q = Coefficients.rationals()


class TestMilnorK:
    """Test suite for absolute and relative Milnor K-groups."""

    def setup_method(self):
        """Set up test fixtures."""
        services = build_services()
        self.algebras = services.algebras
        self.service = services.milnor
        self.z2x = self.algebras.truncated_polynomial(F2, [("x", 2)])
        self.f7eps = self.algebras.truncated_polynomial(F7, [("e", 2)])
        self.f7 = self.algebras.make_structure_algebra(F7, 1, [1], [[{0: 1}]], basis_names=["1"])

    # ==================== Unit Group Tests ====================

    def test_unit_group_is_cyclic_of_order_42(self):
        """Test (F_7[e]/e^2)* = Z/42."""
        units = self.service.unit_group(self.f7eps)
        assert units.group.torsion == (42,)
        assert len(units.table) == 42

    def test_discrete_log_of_one(self):
        """Test that 1 has log zero."""
        units = self.service.unit_group(self.f7eps)
        assert not any(units.log(self.f7eps.one()))

    # ==================== Absolute Tests ====================

    def test_k0_is_free(self):
        """Test K_0^M = Z."""
        group = self.service.milnor_k(self.f7, 0).group
        assert group.free_rank == 1
        assert group.torsion == ()

    def test_k1_is_the_unit_group(self):
        """Test K_1^M(R) = R*."""
        assert self.service.milnor_k(self.f7eps, 1).group.torsion == (42,)

    def test_k2_of_f2_dual_numbers(self):
        """Test K_2^M(F_2[x]/x^2) = Z/2 with no Steinberg rows."""
        presentation = self.service.milnor_k(self.z2x, 2)
        assert str(presentation.group) == "Z/2"
        assert presentation.relation_counts["steinberg"] == 0

    def test_full_and_optimized_agree(self):
        """Test that both generator systems present the same group."""
        full = self.service.milnor_k(self.z2x, 2, optimized=False).group
        optimized = self.service.milnor_k(self.z2x, 2, optimized=True).group
        assert full.is_isomorphic(optimized)

    def test_extra_relations_are_redundant(self):
        """Test that {u,-u} and anticommutativity do not change K_2^M."""
        plain = self.service.milnor_k(self.z2x, 2).group
        extra = self.service.milnor_k(self.z2x, 2, extra_relations=True).group
        assert plain.is_isomorphic(extra)

    def test_k2_of_finite_field_vanishes(self):
        """Test K_2^M(F_7) = 0."""
        assert self.service.milnor_k(self.f7, 2).group.is_trivial

    def test_k2_of_f7_dual_numbers_vanishes(self):
        """Test K_2^M(F_7[e]/e^2) = 0."""
        assert self.service.milnor_k(self.f7eps, 2).group.is_trivial

    def test_symbol_class(self):
        """Test that the symbol {1+x, 1+x} generates K_2^M(F_2[x]/x^2)."""
        presentation = self.service.milnor_k(self.z2x, 2)
        u = AlgebraValidator.parse_element(self.z2x, "1+x")
        assert not presentation.is_trivial_symbol([u, u])
        assert presentation.is_trivial_symbol([self.z2x.one(), u])

    def test_symbol_of_wrong_length(self):
        """Test that a length-one symbol is rejected in K_2^M."""
        presentation = self.service.milnor_k(self.z2x, 2)
        with pytest.raises(ValidationError):
            presentation.symbol_vector([self.z2x.one()])

    def test_symbol_with_non_unit(self):
        """Test that {x, 1} is rejected."""
        presentation = self.service.milnor_k(self.z2x, 2)
        with pytest.raises(NonUnitEntry):
            presentation.symbol_vector([self.z2x.basis_element(1), self.z2x.one()])

    def test_rationals_rejected(self):
        """Test that symbol presentations need finite coefficients."""
        R = self.algebras.truncated_polynomial(Q, [("e", 2)])
        with pytest.raises(InfiniteCoefficients):
            self.service.milnor_k(R, 1)

    def test_negative_degree_rejected(self):
        """Test that n < 0 is rejected."""
        with pytest.raises(ValidationError):
            self.service.milnor_k(self.f7, -1)

    # ==================== Relative Tests ====================

    def test_relative_k1(self):
        """Test K_1^M(F_7[e]/e^2, (e)) = 1 + (e) = Z/7."""
        pair = self.algebras.split_nilpotent_pair(self.f7eps, ["e"])
        assert self.service.milnor_k_relative(pair, 1).torsion == (7,)

    def test_split_decomposition(self):
        """Test K_1^M(R) = K_1^M(S) + K_1^M(R, I) for a split pair."""
        pair = self.algebras.split_nilpotent_pair(self.f7eps, ["e"])
        assert self.service.split_decomposition_holds(pair, 1)

    def test_relative_k2_of_f2_dual_numbers(self):
        """Test K_2^M(F_2[x]/x^2, (x)) = Z/2 since K_2^M(F_2) = 0."""
        pair = self.algebras.split_nilpotent_pair(self.z2x, ["x"])
        assert self.service.milnor_k_relative(pair, 2).torsion == (2,)


class TestDennisSteinAndDlog:
    """Test suite for D_2 and dlog."""

    def setup_method(self):
        """Set up test fixtures."""
        services = build_services()
        self.algebras = services.algebras
        self.service = services.milnor
        self.kahler = services.kahler
        self.z2x = self.algebras.truncated_polynomial(F2, [("x", 2)])
        self.f7eps = self.algebras.truncated_polynomial(F7, [("e", 2)])

    # ==================== Dennis-Stein Tests ====================

    def test_d2_of_f2_vanishes(self):
        """Test D_2(F_2) = 0 and its generators are <0,0>, <0,1>, <1,0>."""
        f2 = self.algebras.make_structure_algebra(F2, 1, [1], [[{0: 1}]], basis_names=["1"])
        presentation = self.service.dennis_stein_d2(f2)
        assert len(presentation.pairs) == 3
        assert presentation.group.is_trivial
        assert presentation.relation_counts["multiplicativity"] > 0

    def test_relative_d2_of_f3_dual_numbers_vanishes(self):
        """Test D_2(F_3[e]/e^2, (e)) = 0."""
        f3eps = self.algebras.truncated_polynomial(Coefficients.prime_field(3), [("e", 2)])
        pair = self.algebras.split_nilpotent_pair(f3eps, ["e"])
        elements = list(f3eps.elements())
        relative = self.service.dennis_stein_d2(f3eps, relative_to=pair)
        assert all(pair.in_ideal(elements[a]) or pair.in_ideal(elements[b]) for a, b in relative.pairs)
        assert relative.group.is_trivial

    def test_relative_d2_of_two_variables_over_f2(self):
        """Test D_2(F_2[x,y]/(x^2,y^2), (x,y)) = (Z/2)^3."""
        R = self.algebras.truncated_polynomial(F2, [("x", 2), ("y", 2)])
        pair = self.algebras.split_nilpotent_pair(R, ["x", "y", "xy"])
        relative = self.service.dennis_stein_d2(R, relative_to=pair)
        assert relative.group.free_rank == 0
        assert relative.group.torsion == (2, 2, 2)

    def test_relative_d2_is_everything_when_quotient_vanishes(self):
        """Test D_2(R) = D_2(R, I) for F_2[x]/x^2 since D_2(F_2) = 0."""
        pair = self.algebras.split_nilpotent_pair(self.z2x, ["x"])
        absolute = self.service.dennis_stein_d2(self.z2x)
        relative = self.service.dennis_stein_d2(self.z2x, relative_to=pair)
        assert self.service.dennis_stein_d2(pair.quotient).group.is_trivial
        assert len(relative.pairs) < len(absolute.pairs)
        assert absolute.group.is_isomorphic(relative.group)

    def test_multiplicativity_needs_no_generator_on_a_b(self):
        """Test that <a,bc> = <ab,c><ac,b> is imposed for every admissible triple."""
        f2 = self.algebras.make_structure_algebra(F2, 1, [1], [[{0: 1}]], basis_names=["1"])
        elements = list(f2.elements())

        def admissible(a, b):
            return self.algebras.is_unit(f2.one() + a * b)

        expected = sum(
            1 for x in elements for y in elements for z in elements
            if admissible(x, y * z) and admissible(x * y, z) and admissible(x * z, y)
        )
        # (1, 1, 0) is admissible although <1, 1> is not a generator
        assert not admissible(f2.one(), f2.one())
        assert self.service.dennis_stein_d2(f2).relation_counts["multiplicativity"] == expected

    @pytest.mark.slow
    def test_d2_of_f7_dual_numbers_vanishes(self):
        """Test D_2(F_7[e]/e^2) = 0."""
        assert self.service.dennis_stein_d2(self.f7eps).group.is_trivial

    # ==================== dlog Tests ====================

    def test_dlog_of_constant_vanishes(self):
        """Test dlog{3} = 0."""
        three = self.f7eps.scalar(3)
        assert not any(self.service.dlog(self.f7eps, [three]))

    def test_dlog_of_one_plus_e(self):
        """Test dlog{1+e} = (1-e) de is nonzero."""
        u = AlgebraValidator.parse_element(self.f7eps, "1+e")
        module = self.kahler.omega(self.f7eps, 1)
        vector = self.service.dlog_vector(self.f7eps, [u])
        expected = module.element(AlgebraValidator.parse_element(self.f7eps, "1-e"), u)
        assert any(self.service.dlog(self.f7eps, [u]))
        assert module.element_equal(vector, expected)

    def test_dlog_needs_units(self):
        """Test that dlog{e} is rejected."""
        with pytest.raises(NonUnitEntry):
            self.service.dlog(self.f7eps, [self.f7eps.basis_element(1)])
