"""
Unit Tests for Cyclic Service

Tests the cyclic operators, Hochschild, cyclic and negative cyclic
homology, Keller's mixed complex and the SBI sequence.
"""

import pytest

from src.domain.exceptions import IndexOutOfRange, ValidationError
from src.domain.models.coefficients import Coefficients
from src.infrastructure.container import build_services

F2 = Coefficients.prime_field(2)
Q = Coefficients.rationals()


class TestOperators:
    """Test suite for the simplicial and cyclic operators."""

    def setup_method(self):
        """Set up test fixtures."""
        services = build_services()
        self.service = services.cyclic
        self.dual = services.algebras.truncated_polynomial(Q, [("e", 2)])
        self.qxy = services.algebras.truncated_total_degree(Q, ["x", "y"], 2)

    def test_face_shape(self):
        """Test that d^0: R^3 -> R^2 has shape 4 x 8 on Q[e]/e^2."""
        face = self.service.operator(self.dual, 2, "face", 0)
        assert face.matrix.shape == (4, 8)

    def test_connes_B_shape(self):
        """Test that B raises the degree by one."""
        connes = self.service.connes_B(self.dual, 1)
        assert connes.matrix.shape == (8, 4)

    def test_face_index_out_of_range(self):
        """Test that d^3 in degree 2 is rejected."""
        with pytest.raises(IndexOutOfRange):
            self.service.operator(self.dual, 2, "face", 3)

    def test_face_needs_index(self):
        """Test that a face without an index is rejected."""
        with pytest.raises(ValidationError):
            self.service.operator(self.dual, 2, "face")

    def test_simplicial_and_cyclic_identities(self):
        """Test that every identity residual vanishes up to degree 3."""
        assert self.service.failed_identities(self.qxy, 3) == []

    def test_identities_over_f2(self):
        """Test the identities in characteristic two."""
        R = build_services().algebras.truncated_polynomial(F2, [("x", 2)])
        assert self.service.failed_identities(R, 3) == []

    def test_keller_mixed_complex(self):
        """Test b b = 0, B B = 0 and b B + B b = 0 on Keller's mixed complex."""
        mixed = self.service.keller_mixed_complex(self.dual, 3)
        for n in range(3):
            for name, residual in mixed.identity_residuals(n):
                assert residual.is_zero(), name


class TestHomology:
    """Test suite for HH, HC and HN."""

    def setup_method(self):
        """Set up test fixtures."""
        services = build_services()
        self.algebras = services.algebras
        self.groups = services.groups
        self.service = services.cyclic
        self.dual = self.algebras.truncated_polynomial(Q, [("e", 2)])
        self.qxy = self.algebras.truncated_total_degree(Q, ["x", "y"], 2)
        self.pair = self.algebras.split_nilpotent_pair(self.dual, ["e"])

    # ==================== Hochschild Tests ====================

    def test_hh0_is_the_algebra(self):
        """Test HH_0 = R for commutative R."""
        assert self.service.hh(self.qxy, 0).free_rank == 3

    def test_hh_of_dual_numbers(self):
        """Test HH_n(Q[e]/e^2) is one-dimensional for n = 1, 2."""
        assert self.service.hh(self.dual, 1).free_rank == 1
        assert self.service.hh(self.dual, 2).free_rank == 1

    def test_hh_negative_degree(self):
        """Test that n < 0 is rejected."""
        with pytest.raises(ValidationError):
            self.service.hh(self.dual, -1)

    # ==================== Cyclic Tests ====================

    def test_hc0_is_the_algebra(self):
        """Test HC_0 = R for commutative R."""
        assert self.service.hc(self.dual, 0).free_rank == 2
        assert self.service.hc(self.qxy, 0).free_rank == 3

    def test_hc1(self):
        """Test HC_1 of Q[x,y]/(x,y)^2 is 1 and of Q[e]/e^2 is 0."""
        assert self.service.hc(self.qxy, 1).free_rank == 1
        assert self.service.hc(self.dual, 1).is_trivial

    def test_routes_agree(self):
        """Test that the cyclic bicomplex and the B-bicomplex agree."""
        for n in range(3):
            assert self.service.hc(self.qxy, n, route="cc") == self.service.hc(self.qxy, n, route="tot_b")

    def test_unknown_route(self):
        """Test that an unknown route is rejected."""
        with pytest.raises(ValidationError):
            self.service.hc(self.dual, 1, route="lambda")

    def test_relative_hc_alternates(self):
        """Test HC_n(Q[e]/e^2, (e)) is 1 in even degrees and 0 in odd degrees."""
        for n in range(4):
            expected = 1 if n % 2 == 0 else 0
            assert self.service.hc(self.pair, n).free_rank == expected

    def test_hc0_over_f2(self):
        """Test HC_0(F_2[x]/x^2) = F_2^2."""
        R = self.algebras.truncated_polynomial(F2, [("x", 2)])
        assert str(self.service.hc(R, 0)) == "F_2^2"

    # ==================== Negative Cyclic Tests ====================

    def test_relative_hn1(self):
        """Test HN_1(Q[e]/e^2, (e)) is one-dimensional."""
        group, _ = self.service.hn_truncated(self.pair, 1, 3)
        assert group.free_rank == 1

    def test_hn_depth_must_be_positive(self):
        """Test that depth 0 is rejected."""
        with pytest.raises(ValidationError):
            self.service.hn_truncated(self.pair, 1, 0)

    def test_sbi_shift(self):
        """Test relative HN_1 agrees with relative HC_0 in characteristic zero."""
        agree, hn, hc, _ = self.service.sbi_shift_check(self.pair, 1, 3)
        assert agree
        assert hn == hc

    @pytest.mark.slow
    def test_sbi_shift_at_depth_five(self):
        """Test relative HN_1 = HC_0 = Q with five columns, stabilized."""
        agree, hn, _, stabilized = self.service.sbi_shift_check(self.pair, 1, 5)
        assert agree
        assert stabilized
        assert hn.free_rank == 1

    @pytest.mark.slow
    def test_sbi_shift_in_degree_two(self):
        """Test relative HN_2 = HC_1 = 0 at depths 3 and 5."""
        for depth in (3, 5):
            agree, hn, hc, _ = self.service.sbi_shift_check(self.pair, 2, depth)
            assert agree
            assert hc.is_trivial
            assert hn.is_trivial

    def test_hn_is_an_image_not_the_truncated_homology(self):
        """Test that relative HN_2 drops the class living only on the last column."""
        truncated = self.service.negative_truncated_complex(self.pair, 1, 3, 2)
        raw = self.groups.complex_homology(truncated, 2)
        group, _ = self.service.hn_truncated(self.pair, 2, 2)
        assert raw.free_rank == 1
        assert group.is_trivial

    # ==================== SBI Tests ====================

    def test_periodicity_sequence_is_exact(self):
        """Test exactness of the SBI sequence for Q[e]/e^2."""
        result = self.service.connes_periodicity_check(self.dual, 2)
        assert result.exact
        assert result.cyclic[0].free_rank == 2

    def test_periodicity_over_f2(self):
        """Test exactness in characteristic two."""
        R = self.algebras.truncated_polynomial(F2, [("x", 2)])
        assert self.service.connes_periodicity_check(R, 2).exact
