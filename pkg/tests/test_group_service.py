"""
Unit Tests for Group Service

Tests Smith normal form, presentations, element equality, kernels and
homology of small complexes against sympy and hand computations.
"""

import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from src.application.services.group_service import GroupService
from src.domain.exceptions import CapacityExceeded, IllDefinedMap, NotAComplex, ValidationError
from src.domain.limits import CapacityLimits, capacity_scope
from src.domain.models.abelian_group import FPAbelianGroup, GroupHomomorphism
from src.domain.models.coefficients import INTEGERS, Coefficients
from src.domain.models.complexes import GradedComplexSlice
from src.domain.models.int_matrix import IntMatrix
from src.infrastructure.elimination.backend import ExactEliminationBackend


def _sympy_factors(rows):
    """Nonzero invariant factors (absolute values) computed by sympy."""
    factors = invariant_factors(Matrix(rows), domain=ZZ)
    return sorted(abs(int(d)) for d in factors if d != 0)


class TestSmithNormalForm:
    """Test suite for GroupService.smith_normal_form."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = GroupService(ExactEliminationBackend())

    # ==================== Decomposition Tests ====================

    def test_transforms_reproduce_diagonal(self):
        """Test that U * M * V equals the returned diagonal matrix."""
        m = IntMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        s, u, v = self.service.smith_normal_form(m)
        assert u @ m @ v == s
        assert s.is_diagonal()

    def test_divisibility_chain(self):
        """Test that diagonal entries divide each other."""
        m = IntMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        s, _, _ = self.service.smith_normal_form(m)
        diagonal = [abs(d) for d in s.diagonal() if d]
        for a, b in zip(diagonal, diagonal[1:]):
            assert b % a == 0

    def test_matches_sympy_on_random_matrices(self):
        """Test invariant factors against sympy on random integer matrices."""
        rng = random.Random(7)
        for _ in range(20):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            dense = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
            s, _, _ = self.service.smith_normal_form(IntMatrix.from_dense(dense, cols=cols))
            ours = sorted(abs(d) for d in s.diagonal() if d)
            assert ours == _sympy_factors(dense)

    def test_zero_matrix(self):
        """Test that the zero matrix is its own normal form."""
        s, _, _ = self.service.smith_normal_form(IntMatrix.zero(2, 3))
        assert s.is_zero()

    def test_rejects_field_coefficients(self):
        """Test that a matrix over F_5 is rejected."""
        m = IntMatrix.from_dense([[1, 2]], Coefficients.prime_field(5))
        with pytest.raises(ValidationError):
            self.service.smith_normal_form(m)

    def test_capacity_limit(self):
        """Test that a tiny entry budget raises CapacityExceeded."""
        m = IntMatrix.from_dense([[1, 2, 3], [4, 5, 6]])
        with capacity_scope(CapacityLimits(max_entries=2)):
            with pytest.raises(CapacityExceeded):
                self.service.smith_normal_form(m)


class TestPresentations:
    """Test suite for fp_group, element equality and maps."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = GroupService(ExactEliminationBackend())

    # ==================== fp_group Tests ====================

    def test_cyclic_group_of_order_six(self):
        """Test Z^2 / <2e0, 3e1> = Z/6."""
        group = self.service.fp_group(2, [{0: 2}, {1: 3}])
        assert group.free_rank == 0
        assert group.torsion == (6,)
        assert str(group) == "Z/6"

    def test_free_part_survives(self):
        """Test Z^3 / <2e0 + 4e1> = Z/2 + Z^2."""
        group = self.service.fp_group(3, [{0: 2, 1: 4}])
        assert group.free_rank == 2
        assert group.torsion == (2,)

    def test_no_relations(self):
        """Test that no relations give a free group."""
        group = self.service.fp_group(4, [])
        assert group == FPAbelianGroup(4)

    def test_matrix_input(self):
        """Test that a relation matrix works like a list of rows."""
        matrix = IntMatrix.from_dense([[4, 0], [0, 6]])
        group = self.service.fp_group(2, matrix)
        assert group.torsion == (2, 12)

    def test_field_presentation(self):
        """Test that over F_5 the group is a vector space of the right dimension."""
        f5 = Coefficients.prime_field(5)
        group = self.service.fp_group(3, [{0: 1, 1: 1}, {0: 2, 1: 2}], f5)
        assert group.free_rank == 2
        assert group.torsion == ()
        assert str(group) == "F_5^2"

    def test_field_and_integer_groups_compare(self):
        """Test that F_2 and Z/2 are isomorphic as abelian groups but not equal."""
        f2 = self.service.fp_group(1, [], Coefficients.prime_field(2))
        z2 = self.service.fp_group(1, [{0: 2}])
        assert f2.is_isomorphic(z2)
        assert f2 != z2

    # ==================== Element Tests ====================

    def test_element_equality(self):
        """Test element equality modulo the relations."""
        group = self.service.fp_group(2, [{0: 2}, {1: 3}])
        assert self.service.element_equal(group, {0: 2}, {})
        assert self.service.element_equal(group, {0: 1, 1: 4}, {0: 3, 1: 1})
        assert not self.service.element_equal(group, {0: 1}, {})

    def test_element_order(self):
        """Test additive orders in Z/6."""
        group = self.service.fp_group(2, [{0: 2}, {1: 3}])
        assert group.element_order({0: 1}) == 2
        assert group.element_order({1: 1}) == 3
        assert group.element_order({0: 1, 1: 1}) == 6

    def test_lift_round_trip(self):
        """Test that coordinates of a lifted normal generator are a unit vector."""
        group = self.service.fp_group(3, [{0: 4, 1: 2}, {2: 6}])
        for i in range(group.rank):
            coords = group.coordinates(group.lift(i))
            assert [bool(c) for c in coords] == [k == i for k in range(group.rank)]

    # ==================== Map Tests ====================

    def test_kernel_of_multiplication_by_two(self):
        """Test ker(Z/4 -> Z/4, x -> 2x) = Z/2."""
        z4 = self.service.fp_group(1, [{0: 4}])
        f = GroupHomomorphism(z4, z4, ({0: 2},))
        kernel = self.service.map_kernel(f)
        assert kernel.torsion == (2,)
        assert self.service.map_image(f).torsion == (2,)
        assert self.service.map_cokernel(f).torsion == (2,)

    def test_kernel_of_free_source(self):
        """Test ker(Z -> Z/4, 1 -> 2) = 2Z, infinite cyclic."""
        free = self.service.fp_group(1, [])
        z4 = self.service.fp_group(1, [{0: 4}])
        kernel = self.service.map_kernel(GroupHomomorphism(free, z4, ({0: 2},)))
        assert kernel == FPAbelianGroup(1)

    def test_surjectivity(self):
        """Test that Z -> Z/4 is onto for 1 -> 1 but not for 1 -> 2."""
        free = self.service.fp_group(1, [])
        z4 = self.service.fp_group(1, [{0: 4}])
        assert self.service.is_surjective(GroupHomomorphism(free, z4, ({0: 1},)))
        assert not self.service.is_surjective(GroupHomomorphism(free, z4, ({0: 2},)))

    def test_ill_defined_map(self):
        """Test that Z/2 -> Z, 1 -> 1 is rejected."""
        z2 = self.service.fp_group(1, [{0: 2}])
        free = self.service.fp_group(1, [])
        with pytest.raises(IllDefinedMap):
            self.service.map_kernel(GroupHomomorphism(z2, free, ({0: 1},)))


class TestComplexHomology:
    """Test suite for complex_homology."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = GroupService(ExactEliminationBackend())

    def test_multiplication_by_two(self):
        """Test H of Z --2--> Z: H_0 = Z/2 and H_1 = 0."""
        complex_ = GradedComplexSlice(INTEGERS, {0: 1, 1: 1}, {1: IntMatrix.from_dense([[2]])})
        assert self.service.complex_homology(complex_, 0).torsion == (2,)
        assert self.service.complex_homology(complex_, 1).is_trivial

    def test_mixed_free_and_torsion(self):
        """Test H_1 of Z^2 --[[2,0],[0,0]]--> ... has a free summand."""
        d1 = IntMatrix.from_dense([[0, 0]])
        d2 = IntMatrix.from_dense([[2], [0]])
        complex_ = GradedComplexSlice(INTEGERS, {0: 1, 1: 2, 2: 1}, {1: d1, 2: d2})
        h1 = self.service.complex_homology(complex_, 1)
        assert h1.free_rank == 1
        assert h1.torsion == (2,)

    def test_over_a_field(self):
        """Test that over Q only ranks matter."""
        q = Coefficients.rationals()
        complex_ = GradedComplexSlice(q, {0: 1, 1: 1}, {1: IntMatrix.from_dense([[2]], q)})
        assert self.service.complex_homology(complex_, 0).is_trivial

    def test_not_a_complex(self):
        """Test that d d != 0 raises NotAComplex."""
        d1 = IntMatrix.from_dense([[1]])
        d2 = IntMatrix.from_dense([[1]])
        complex_ = GradedComplexSlice(INTEGERS, {0: 1, 1: 1, 2: 1}, {1: d1, 2: d2})
        with pytest.raises(NotAComplex):
            self.service.complex_homology(complex_, 1)
