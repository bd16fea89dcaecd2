"""
Unit Tests for Spectral Service

Tests exact couples of the column filtration, derived couples, pages and
convergence to the homology of the total complex.
"""

import random

import pytest

from src.domain.exceptions import NotAComplex, NotStabilized, ValidationError
from src.domain.models.coefficients import INTEGERS, Coefficients
from src.domain.models.int_matrix import IntMatrix
from src.domain.models.spectral import Bicomplex
from src.infrastructure.container import build_services


def _doubling(direction="horizontal"):
    """Z --2--> Z in one direction."""
    if direction == "horizontal":
        return Bicomplex(INTEGERS, {(0, 0): (0,), (1, 0): (0,)},
                         horizontal={(0, 0): IntMatrix.from_dense([[2]])})
    return Bicomplex(INTEGERS, {(0, 0): (0,), (0, 1): (0,)},
                     vertical={(0, 0): IntMatrix.from_dense([[2]])})


class TestBicomplex:
    """Test suite for the Bicomplex model."""

    def test_single_entry(self):
        """Test a bicomplex concentrated at one position."""
        bc = Bicomplex.single(INTEGERS, 0, 0, [0, 3])
        assert bc.rank(0, 0) == 2
        assert bc.support == [(0, 0)]

    def test_order_one_rejected(self):
        """Test that a generator of order 1 is rejected."""
        with pytest.raises(ValidationError):
            Bicomplex.single(INTEGERS, 0, 0, [1])

    def test_torsion_over_field_rejected(self):
        """Test that torsion entries need integer coefficients."""
        with pytest.raises(ValidationError):
            Bicomplex.single(Coefficients.rationals(), 0, 0, [2])

    def test_wrong_shape_rejected(self):
        """Test that a map of the wrong shape is rejected."""
        with pytest.raises(ValidationError):
            Bicomplex(INTEGERS, {(0, 0): (0,), (1, 0): (0,)},
                      horizontal={(0, 0): IntMatrix.from_dense([[1, 1]])})

    def test_random_is_reproducible(self):
        """Test that the same seed gives the same bicomplex."""
        first = Bicomplex.random(random.Random(5))
        second = Bicomplex.random(random.Random(5))
        assert first.to_dict() == second.to_dict()


class TestSpectralSequence:
    """Test suite for couples, pages and convergence."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = build_services().spectral

    # ==================== Couple Tests ====================

    def test_single_entry_couple(self):
        """Test E_1 of a single free entry."""
        couple = self.service.couple_from_bicomplex(Bicomplex.single(INTEGERS, 0, 0, [0]))
        assert str(couple.e_group(0, 0)) == "Z"

    def test_doubling_first_page(self):
        """Test E_1 = Z at both columns of Z --2--> Z."""
        couple = self.service.couple_from_bicomplex(_doubling())
        assert couple.e_group(0, 0).free_rank == 1
        assert couple.e_group(1, 0).free_rank == 1

    def test_doubling_second_page(self):
        """Test E_2 = Z/2 at (1, 0) and 0 at (0, 0)."""
        couple = self.service.couple_from_bicomplex(_doubling())
        derived = self.service.derive(couple, verify=True)
        assert derived.e_group(1, 0).torsion == (2,)
        assert derived.e_group(0, 0).is_trivial
        assert self.service.page(couple, 2, 1, 0).torsion == (2,)

    def test_vertical_doubling_on_first_page(self):
        """Test that a vertical map is absorbed into E_1."""
        couple = self.service.couple_from_bicomplex(_doubling("vertical"))
        assert couple.e_group(0, 1).torsion == (2,)
        assert couple.e_group(0, 0).is_trivial

    def test_derived_couple_matches_page_homology(self):
        """Test that E_2 from the derived couple is H(E_1, d_1)."""
        couple = self.service.couple_from_bicomplex(_doubling())
        assert self.service.derived_matches_page_homology(couple) == []

    def test_not_a_bicomplex(self):
        """Test that d_h d_h != 0 raises NotAComplex."""
        one = IntMatrix.from_dense([[1]])
        bc = Bicomplex(INTEGERS, {(0, 0): (0,), (1, 0): (0,), (2, 0): (0,)},
                       horizontal={(0, 0): one, (1, 0): one})
        with pytest.raises(NotAComplex):
            self.service.couple_from_bicomplex(bc)

    # ==================== Page Tests ====================

    def test_page_degeneracy(self):
        """Test that d_1 is nonzero and d_2 vanishes for Z --2--> Z."""
        couple = self.service.couple_from_bicomplex(_doubling())
        assert not self.service.page_of(couple, 1).is_degenerate()
        assert self.service.page_of(couple, 2).is_degenerate()

    def test_page_to_dict(self):
        """Test that page terms serialize with their positions."""
        couple = self.service.couple_from_bicomplex(_doubling())
        data = self.service.page_of(couple, 2).to_dict()
        assert data["r"] == 2
        assert [(t["p"], t["q"], t["group"]) for t in data["terms"]] == [(1, 0, "Z/2")]

    # ==================== Convergence Tests ====================

    def test_doubling_converges(self):
        """Test E_∞ against H(Tot) for Z --2--> Z."""
        couple = self.service.couple_from_bicomplex(_doubling())
        result = self.service.converges_check(couple)
        assert result.converges
        assert result.stable_page == 2
        assert result.total_homology[1].torsion == (2,)
        assert result.total_homology[0].is_trivial

    def test_not_stabilized(self):
        """Test that max_page below the stable page raises NotStabilized."""
        couple = self.service.couple_from_bicomplex(_doubling())
        with pytest.raises(NotStabilized):
            self.service.converges_check(couple, max_page=1)

    @pytest.mark.parametrize("seed", range(5))
    def test_random_bicomplexes_converge(self, seed):
        """Test convergence on seeded random bicomplexes."""
        bc = Bicomplex.random(random.Random(seed), max_size=3)
        couple = self.service.couple_from_bicomplex(bc)
        assert self.service.converges_check(couple).converges

    def test_random_over_a_field(self):
        """Test convergence on a random bicomplex over Q."""
        bc = Bicomplex.random(random.Random(11), max_size=3, coefficients=Coefficients.rationals())
        couple = self.service.couple_from_bicomplex(bc)
        assert self.service.converges_check(couple).converges

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(25))
    def test_random_bicomplexes_converge_at_full_size(self, seed):
        """Test convergence on 25 seeded random bicomplexes of size up to 4."""
        bc = Bicomplex.random(random.Random(seed), max_size=4)
        couple = self.service.couple_from_bicomplex(bc)
        result = self.service.converges_check(couple)
        assert result.converges
        assert self.service.derived_matches_page_homology(couple) == []


class TestCyclicWindow:
    """Test suite for windows of the cyclic bicomplex."""

    def setup_method(self):
        """Set up test fixtures."""
        services = build_services()
        self.service = services.spectral
        self.cyclic = services.cyclic
        self.algebras = services.algebras
        self.dual = self.algebras.truncated_polynomial(Coefficients.rationals(), [("e", 2)])

    def test_two_by_two_window_over_f7(self):
        """Test that the pages of a 2 x 2 window of CC(F_7[e]/e^2) converge."""
        R = self.algebras.truncated_polynomial(Coefficients.prime_field(7), [("e", 2)])
        bc = self.service.cyclic_window(R, 2, 2)
        assert sorted(bc.support) == [(-1, -1), (-1, 0), (0, -1), (0, 0)]
        couple = self.service.couple_from_bicomplex(bc)
        assert self.service.converges_check(couple).converges

    def test_window_recovers_cyclic_homology(self):
        """Test H(Tot) of a 3 x 3 window against HC_0 and HC_1 of Q[e]/e^2."""
        bc = self.service.cyclic_window(self.dual, 3, 3)
        result = self.service.converges_check(self.service.couple_from_bicomplex(bc))
        assert result.converges
        for n in (0, 1):
            assert result.total_homology[-n].is_isomorphic(self.cyclic.hc(self.dual, n))

    def test_relative_window_recovers_relative_cyclic_homology(self):
        """Test the relative window against HC_0 = Q and HC_1 = 0 of (Q[e]/e^2, (e))."""
        pair = self.algebras.split_nilpotent_pair(self.dual, ["e"])
        bc = self.service.cyclic_window(pair, 3, 3)
        result = self.service.converges_check(self.service.couple_from_bicomplex(bc))
        assert result.total_homology[0].free_rank == 1
        assert result.total_homology[-1].is_trivial
        assert result.total_homology[-1].is_isomorphic(self.cyclic.hc(pair, 1))
