"""
Cyclic Service

Hochschild, cyclic and truncated negative cyclic homology of finite
algebras and of split nilpotent pairs, Keller's mixed complex, the SBI
sequence and the identities between the cyclic operators.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple, Union

from ...domain.exceptions import ValidationError
from ...domain.models.abelian_group import FPAbelianGroup
from ...domain.models.algebra import FinAlgebra
from ...domain.models.complexes import GradedComplexSlice, MixedComplex, OperatorKind, OperatorMatrix
from ...domain.models.int_matrix import IntMatrix
from ...domain.models.nilpotent_pair import SplitNilpotentPair
from ..interfaces.elimination_backend import IEliminationBackend, ISubQuotient
from .group_service import GroupService
from .operator_builder import OperatorBuilder

logger = logging.getLogger(__name__)

Target = Union[FinAlgebra, SplitNilpotentPair]

HC_ROUTES = ("cc", "tot_b")


@dataclass
class ExactnessJoint:
    """One joint A -> B -> C of a long sequence: im = ker at B."""
    name: str
    exact: bool
    image: FPAbelianGroup
    kernel: FPAbelianGroup

    def to_dict(self) -> dict:
        return {
            "joint": self.name,
            "exact": self.exact,
            "image": str(self.image),
            "kernel": str(self.kernel),
        }


@dataclass
class PeriodicityResult:
    """Groups and joints of the checked window of the SBI sequence."""
    hochschild: Dict[int, FPAbelianGroup] = field(default_factory=dict)
    cyclic: Dict[int, FPAbelianGroup] = field(default_factory=dict)
    joints: List[ExactnessJoint] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(joint.exact for joint in self.joints)


@dataclass
class NegativeCyclicResult:
    """Truncated HN_n with the depth it was computed at."""
    group: FPAbelianGroup
    stabilized: bool
    depth: int


class CyclicService:
    """
    Service for the cyclic homology theories of a finite algebra.

    Relative theories of a pair (R, I) use the kernel subcomplex of
    R^(n+1) -> S^(n+1), spanned by the tuples containing an ideal index.
    """

    def __init__(self, groups: GroupService, backend: IEliminationBackend):
        self.groups = groups
        self.backend = backend
        self._builders: Dict[FinAlgebra, OperatorBuilder] = {}
        self._relative_chains: Dict[Tuple[SplitNilpotentPair, int], List[int]] = {}

    # ==================== Operators ====================

    def builder(self, R: FinAlgebra) -> OperatorBuilder:
        builder = self._builders.get(R)
        if builder is None:
            builder = OperatorBuilder(R)
            self._builders[R] = builder
        return builder

    def operator(self, R: FinAlgebra, n: int, kind: Union[OperatorKind, str],
                 index: Optional[int] = None) -> OperatorMatrix:
        """
        Matrix of a cyclic or simplicial operator on R^(n+1).

        Raises:
            IndexOutOfRange: If the index is out of range for the kind
        """
        if isinstance(kind, str):
            kind = OperatorKind(kind)
        return self.builder(R).operator(n, kind, index)

    def connes_B(self, R: FinAlgebra, n: int) -> OperatorMatrix:
        return self.builder(R).connes_B(n)

    # ==================== Chains ====================

    @staticmethod
    def _algebra(target: Target) -> FinAlgebra:
        return target.ring if isinstance(target, SplitNilpotentPair) else target

    @staticmethod
    def _name(target: Target) -> str:
        if isinstance(target, SplitNilpotentPair):
            return f"({target.ring}, ({', '.join(target.ideal_names)}))"
        return str(target)

    def _chain_indices(self, target: Target, n: int) -> Optional[List[int]]:
        """Basis of the relative chains in degree n, None for the absolute theory."""
        if not isinstance(target, SplitNilpotentPair):
            return None
        key = (target, n)
        cached = self._relative_chains.get(key)
        if cached is None:
            ideal = set(target.ideal_indices)
            space = self.builder(target.ring).space(n)
            cached = [k for k, word in enumerate(space.words()) if any(letter in ideal for letter in word)]
            self._relative_chains[key] = cached
        return cached

    def chain_rank(self, target: Target, n: int) -> int:
        if n < 0:
            return 0
        indices = self._chain_indices(target, n)
        if indices is None:
            return self.builder(self._algebra(target)).space(n).dimension
        return len(indices)

    def _restrict(self, target: Target, matrix: IntMatrix, source: int, image: int) -> IntMatrix:
        """Restrict an operator C_source -> C_image to the (relative) chains."""
        if not isinstance(target, SplitNilpotentPair):
            return matrix
        return matrix.restrict(self._chain_indices(target, image), self._chain_indices(target, source))

    def _zero(self, target: Target, source: int, image: int) -> IntMatrix:
        R = self._algebra(target)
        return IntMatrix.zero(self.chain_rank(target, image), self.chain_rank(target, source), R.coefficients)

    def b_matrix(self, target: Target, n: int) -> IntMatrix:
        if n < 1:
            return self._zero(target, n, n - 1)
        return self._restrict(target, self.builder(self._algebra(target)).b(n).matrix, n, n - 1)

    def b_prime_matrix(self, target: Target, n: int) -> IntMatrix:
        if n < 1:
            return self._zero(target, n, n - 1)
        return self._restrict(target, self.builder(self._algebra(target)).b_prime(n).matrix, n, n - 1)

    def one_minus_t_matrix(self, target: Target, n: int) -> IntMatrix:
        return self._restrict(target, self.builder(self._algebra(target)).one_minus_t(n), n, n)

    def norm_matrix(self, target: Target, n: int) -> IntMatrix:
        return self._restrict(target, self.builder(self._algebra(target)).norm(n).matrix, n, n)

    def connes_matrix(self, target: Target, n: int) -> IntMatrix:
        return self._restrict(target, self.builder(self._algebra(target)).connes_B(n).matrix, n, n + 1)

    # ==================== Complexes ====================

    def hochschild_complex(self, target: Target, low: int, high: int) -> GradedComplexSlice:
        """(C, b) in degrees low..high."""
        R = self._algebra(target)
        low = max(low, 0)
        ranks = {n: self.chain_rank(target, n) for n in range(low, high + 1)}
        boundaries = {n: self.b_matrix(target, n) for n in range(max(low + 1, 1), high + 1)}
        return GradedComplexSlice(R.coefficients, ranks, boundaries, f"C({self._name(target)})")

    def cc_total_complex(self, target: Target, low: int, high: int) -> GradedComplexSlice:
        """
        Total complex of the cyclic bicomplex CC in degrees low..high.

        Column p carries C_q in total degree p + q, with b in even columns,
        -b' in odd columns, 1 - t from odd to even and N from even to odd
        columns. Components of Tot_n are ordered by column.
        """
        R = self._algebra(target)
        coefficients = R.coefficients
        low = max(low, 0)
        ranks: Dict[int, int] = {}
        boundaries: Dict[int, IntMatrix] = {}
        for n in range(low, high + 1):
            ranks[n] = sum(self.chain_rank(target, n - p) for p in range(n + 1))
        for n in range(max(low + 1, 1), high + 1):
            row_sizes = [self.chain_rank(target, n - 1 - p) for p in range(n)]
            col_sizes = [self.chain_rank(target, n - p) for p in range(n + 1)]
            blocks: List[List[Optional[IntMatrix]]] = [[None] * (n + 1) for _ in range(n)]
            for p in range(n + 1):
                q = n - p
                if p < n:
                    vertical = self.b_matrix(target, q) if p % 2 == 0 else -self.b_prime_matrix(target, q)
                    blocks[p][p] = vertical
                if p >= 1:
                    horizontal = self.one_minus_t_matrix(target, q) if p % 2 else self.norm_matrix(target, q)
                    blocks[p - 1][p] = horizontal
            boundaries[n] = IntMatrix.from_blocks(blocks, row_sizes, col_sizes, coefficients)
        return GradedComplexSlice(coefficients, ranks, boundaries, f"Tot CC({self._name(target)})")

    def tot_b_complex(self, target: Target, low: int, high: int) -> GradedComplexSlice:
        """
        Total complex of the B-bicomplex: Tot_n = C_n + C_(n-2) + ...

        (dx)_k = b x_k + B x_(k+1) for the component x_k in C_(n-2k).
        """
        R = self._algebra(target)
        coefficients = R.coefficients
        low = max(low, 0)

        def components(n: int) -> List[int]:
            return [n - 2 * k for k in range(n // 2 + 1)]

        ranks = {n: sum(self.chain_rank(target, q) for q in components(n)) for n in range(low, high + 1)}
        boundaries: Dict[int, IntMatrix] = {}
        for n in range(max(low + 1, 1), high + 1):
            source = components(n)
            image = components(n - 1)
            blocks: List[List[Optional[IntMatrix]]] = [[None] * len(source) for _ in image]
            for k, q in enumerate(source):
                if k < len(image) and q >= 1:
                    blocks[k][k] = self.b_matrix(target, q)
                if k >= 1:
                    blocks[k - 1][k] = self.connes_matrix(target, q)
            boundaries[n] = IntMatrix.from_blocks(
                blocks, [self.chain_rank(target, q) for q in image],
                [self.chain_rank(target, q) for q in source], coefficients,
            )
        return GradedComplexSlice(coefficients, ranks, boundaries, f"Tot B({self._name(target)})")

    def negative_truncated_complex(self, target: Target, low: int, high: int, depth: int) -> GradedComplexSlice:
        """
        Columns -depth..0 of the negative B-bicomplex: T_n = C_n + C_(n+2) + ... + C_(n+2*depth).

        (dx)_k = b x_k + B x_(k-1) for the component x_k in C_(n+2k).
        """
        R = self._algebra(target)
        coefficients = R.coefficients

        def components(n: int) -> List[int]:
            return [n + 2 * k for k in range(depth + 1)]

        ranks = {n: sum(self.chain_rank(target, q) for q in components(n)) for n in range(low, high + 1)}
        boundaries: Dict[int, IntMatrix] = {}
        for n in range(low + 1, high + 1):
            source = components(n)
            image = components(n - 1)
            blocks: List[List[Optional[IntMatrix]]] = [[None] * len(source) for _ in image]
            for k, q in enumerate(source):
                if q >= 1:
                    blocks[k][k] = self.b_matrix(target, q)
                if k + 1 < len(image):
                    blocks[k + 1][k] = self.connes_matrix(target, q)
            boundaries[n] = IntMatrix.from_blocks(
                blocks, [self.chain_rank(target, q) for q in image],
                [self.chain_rank(target, q) for q in source], coefficients,
            )
        return GradedComplexSlice(coefficients, ranks, boundaries, f"T^{depth}({self._name(target)})")

    # ==================== Homology ====================

    def hh(self, target: Target, n: int) -> FPAbelianGroup:
        """
        Hochschild homology HH_n (relative for a pair).

        Raises:
            CapacityExceeded: If R^(n+2) is too large
        """
        if n < 0:
            raise ValidationError("degree must be nonnegative")
        complex_ = self.hochschild_complex(target, n - 1, n + 1)
        group = self.groups.complex_homology(complex_, n)
        logger.info(f"HH_{n}{self._name(target)} = {group}")
        return group

    def hc(self, target: Target, n: int, route: str = "cc") -> FPAbelianGroup:
        """
        Cyclic homology HC_n through the cyclic bicomplex or the B-bicomplex.

        Args:
            target: Algebra or split nilpotent pair
            n: Degree
            route: "cc" or "tot_b"

        Raises:
            CapacityExceeded: If the window is too large
        """
        if n < 0:
            raise ValidationError("degree must be nonnegative")
        if route not in HC_ROUTES:
            raise ValidationError(f"unknown route {route!r}; expected one of {', '.join(HC_ROUTES)}")
        if route == "cc":
            complex_ = self.cc_total_complex(target, n - 1, n + 1)
        else:
            complex_ = self.tot_b_complex(target, n - 1, n + 1)
        group = self.groups.complex_homology(complex_, n)
        logger.info(f"HC_{n}{self._name(target)} via {route} = {group}")
        return group

    def _negative_image(self, target: Target, n: int, depth: int) -> FPAbelianGroup:
        """Image of H_n(T^(depth+1)) -> H_n(T^depth)."""
        outer = self.negative_truncated_complex(target, n - 1, n + 1, depth + 1)
        inner = self.negative_truncated_complex(target, n - 1, n + 1, depth)
        keep = inner.rank_at(n)
        cycles = self.groups.cycles(outer, n)
        projected = [{k: v for k, v in z.items() if k < keep} for z in cycles]
        boundaries = [column for column in inner.boundary(n + 1).columns() if column]
        self.groups.check_complex(inner, n)
        subquotient = self.backend.subquotient(keep, projected, boundaries, inner.coefficients,
                                               label=f"HN_{n} at depth {depth}")
        return subquotient.group()

    def hn_truncated(self, target: Target, n: int, depth: int) -> Tuple[FPAbelianGroup, bool]:
        """
        Negative cyclic homology from columns -depth..0 of the negative B-bicomplex.

        The reported group is the image of the depth+1 truncation in the depth
        truncation; stabilized is True when depths depth-1 and depth agree.

        Raises:
            ValidationError: If depth < 1
            CapacityExceeded: If the window is too large
        """
        if depth < 1:
            raise ValidationError("depth must be at least 1")
        current = self._negative_image(target, n, depth)
        previous = self._negative_image(target, n, depth - 1)
        stabilized = current == previous
        logger.info(f"HN_{n}{self._name(target)} at depth {depth} = {current} (stabilized={stabilized})")
        return current, stabilized

    def hn_result(self, target: Target, n: int, depth: int) -> NegativeCyclicResult:
        group, stabilized = self.hn_truncated(target, n, depth)
        return NegativeCyclicResult(group, stabilized, depth)

    # ==================== Keller's mixed complex ====================

    def keller_mixed_complex(self, R: Target, max_degree: int = 3) -> MixedComplex:
        """
        M_n = C_n + C_(n-1) with d(x, y) = (bx + (1-t)y, -b'y) and B(x, y) = (0, Nx).

        Raises:
            CapacityExceeded: If the window is too large
        """
        algebra = self._algebra(R)
        coefficients = algebra.coefficients
        ranks = {n: self.chain_rank(R, n) + self.chain_rank(R, n - 1) for n in range(max_degree + 2)}
        d: Dict[int, IntMatrix] = {}
        connes: Dict[int, IntMatrix] = {}
        for n in range(1, max_degree + 2):
            rows = [self.chain_rank(R, n - 1), self.chain_rank(R, n - 2)]
            cols = [self.chain_rank(R, n), self.chain_rank(R, n - 1)]
            blocks = [
                [self.b_matrix(R, n), self.one_minus_t_matrix(R, n - 1)],
                [None, -self.b_prime_matrix(R, n - 1) if n >= 2 else None],
            ]
            d[n] = IntMatrix.from_blocks(blocks, rows, cols, coefficients)
        for n in range(max_degree + 1):
            rows = [self.chain_rank(R, n + 1), self.chain_rank(R, n)]
            cols = [self.chain_rank(R, n), self.chain_rank(R, n - 1)]
            blocks = [[None, None], [self.norm_matrix(R, n), None]]
            connes[n] = IntMatrix.from_blocks(blocks, rows, cols, coefficients)
        return MixedComplex(coefficients, ranks, d, connes, f"M({self._name(R)})")

    # ==================== SBI sequence ====================

    def _shift_matrix(self, target: Target, n: int) -> IntMatrix:
        """S: Tot CC_n -> Tot CC_(n-2), dropping columns 0 and 1."""
        coefficients = self._algebra(target).coefficients
        col_sizes = [self.chain_rank(target, n - p) for p in range(n + 1)]
        row_sizes = [self.chain_rank(target, n - 2 - p) for p in range(max(n - 1, 0))]
        blocks: List[List[Optional[IntMatrix]]] = [[None] * len(col_sizes) for _ in row_sizes]
        for p in range(2, n + 1):
            blocks[p - 2][p] = IntMatrix.identity(col_sizes[p], coefficients)
        return IntMatrix.from_blocks(blocks, row_sizes, col_sizes, coefficients)

    def _inclusion_matrix(self, target: Target, n: int) -> IntMatrix:
        """I: M_n = C_n + C_(n-1) -> Tot CC_n (columns 0 and 1)."""
        coefficients = self._algebra(target).coefficients
        rows = [self.chain_rank(target, n - p) for p in range(n + 1)] if n >= 0 else []
        cols = [self.chain_rank(target, n), self.chain_rank(target, n - 1)]
        blocks: List[List[Optional[IntMatrix]]] = [[None, None] for _ in rows]
        if rows:
            blocks[0][0] = IntMatrix.identity(cols[0], coefficients)
        if len(rows) > 1:
            blocks[1][1] = IntMatrix.identity(cols[1], coefficients)
        return IntMatrix.from_blocks(blocks, rows, cols, coefficients)

    def _connecting_matrix(self, target: Target, n: int) -> IntMatrix:
        """Connecting map Tot CC_n -> M_(n+1), x -> (0, N x_0)."""
        coefficients = self._algebra(target).coefficients
        col_sizes = [self.chain_rank(target, n - p) for p in range(n + 1)] if n >= 0 else []
        rows = [self.chain_rank(target, n + 1), self.chain_rank(target, n)]
        blocks: List[List[Optional[IntMatrix]]] = [[None] * len(col_sizes) for _ in rows]
        if col_sizes:
            blocks[1][0] = self.norm_matrix(target, n)
        return IntMatrix.from_blocks(blocks, rows, col_sizes, coefficients)

    def _joint(self, name: str, incoming, outgoing) -> ExactnessJoint:
        image = incoming.image()
        kernel = outgoing.kernel()
        return ExactnessJoint(name, image.same_as(kernel), image.group(), kernel.group())

    def connes_periodicity_check(self, target: Target, n_max: int) -> PeriodicityResult:
        """
        Exactness of ... -> HH_n -I-> HC_n -S-> HC_(n-2) -B-> HH_(n-1) -> ... for n <= n_max.

        HH is computed from Keller's cone (the first two columns of CC).

        Raises:
            ValidationError: Over non-field coefficients
        """
        algebra = self._algebra(target)
        if not algebra.coefficients.is_field:
            raise ValidationError("periodicity is checked over fields")
        if n_max < 0:
            raise ValidationError("n_max must be nonnegative")
        cone = self.keller_mixed_complex(target, n_max + 1).as_chain_complex()
        total = self.cc_total_complex(target, 0, n_max + 1)
        h_cone: Dict[int, ISubQuotient] = {}
        h_total: Dict[int, ISubQuotient] = {}
        result = PeriodicityResult()

        def cone_homology(n: int) -> ISubQuotient:
            if n not in h_cone:
                h_cone[n] = self._homology_or_zero(cone, n)
            return h_cone[n]

        def total_homology(n: int) -> ISubQuotient:
            if n not in h_total:
                h_total[n] = self._homology_or_zero(total, n)
            return h_total[n]

        def inclusion(n: int):
            return self.backend.map_from_ambient(cone_homology(n), total_homology(n),
                                                 self._inclusion_matrix(target, n))

        def shift(n: int):
            return self.backend.map_from_ambient(total_homology(n), total_homology(n - 2),
                                                 self._shift_matrix(target, n))

        def connecting(n: int):
            return self.backend.map_from_ambient(total_homology(n), cone_homology(n + 1),
                                                 self._connecting_matrix(target, n))

        for n in range(n_max + 1):
            result.hochschild[n] = cone_homology(n).group()
            result.cyclic[n] = total_homology(n).group()
            result.joints.append(self._joint(f"HC_{n}", inclusion(n), shift(n)))
            if n >= 2:
                result.joints.append(self._joint(f"HC_{n - 2}", shift(n), connecting(n - 2)))
            if n >= 1:
                result.joints.append(self._joint(f"HH_{n - 1}", connecting(n - 2), inclusion(n - 1)))
        logger.info(f"SBI sequence of {self._name(target)} up to {n_max}: exact={result.exact}")
        return result

    def _homology_or_zero(self, complex_: GradedComplexSlice, n: int) -> ISubQuotient:
        if n < 0:
            return self.backend.subquotient(0, [], [], complex_.coefficients, f"H_{n}")
        return self.groups.homology_subquotient(complex_, n)

    def sbi_shift_check(self, pair: SplitNilpotentPair, n: int, depth: int) -> Tuple[bool, FPAbelianGroup, FPAbelianGroup, bool]:
        """
        Relative HN_n against HC_(n-1) for a nilpotent pair.

        Returns:
            (agree, HN_n at depth, HC_(n-1), stabilized)
        """
        if n < 1:
            raise ValidationError("the shift compares HN_n with HC_(n-1) for n >= 1")
        hn, stabilized = self.hn_truncated(pair, n, depth)
        hc = self.hc(pair, n - 1)
        return hn == hc, hn, hc, stabilized

    # ==================== Identities ====================

    def operator_identities(self, R: FinAlgebra, max_degree: int) -> Iterator[Tuple[str, IntMatrix]]:
        """
        Residual matrices of the simplicial, cyclic and mixed-complex identities.

        Each yielded matrix must vanish. Faces and degeneracies are checked on
        degrees up to max_degree; the cyclic operator is compared unsigned.
        """
        ops = self.builder(R)
        coefficients = R.coefficients

        def identity(n: int) -> IntMatrix:
            return IntMatrix.identity(ops.space(n).dimension, coefficients)

        def tau(n: int) -> IntMatrix:
            t = ops.cyclic(n).matrix
            return -t if n % 2 else t

        for n in range(2, max_degree + 1):
            for j in range(n + 1):
                for i in range(j):
                    yield (f"d^{i} d^{j} = d^{j - 1} d^{i} in degree {n}",
                           ops.face(n - 1, i).matrix @ ops.face(n, j).matrix
                           - ops.face(n - 1, j - 1).matrix @ ops.face(n, i).matrix)
        for n in range(max_degree - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    yield (f"s^{i} s^{j} = s^{j + 1} s^{i} in degree {n}",
                           ops.degeneracy(n + 1, i).matrix @ ops.degeneracy(n, j).matrix
                           - ops.degeneracy(n + 1, j + 1).matrix @ ops.degeneracy(n, i).matrix)
        for n in range(max_degree):
            for j in range(n + 1):
                for i in range(n + 2):
                    composite = ops.face(n + 1, i).matrix @ ops.degeneracy(n, j).matrix
                    if i < j:
                        expected = ops.degeneracy(n - 1, j - 1).matrix @ ops.face(n, i).matrix
                    elif i in (j, j + 1):
                        expected = identity(n)
                    else:
                        expected = ops.degeneracy(n - 1, j).matrix @ ops.face(n, i - 1).matrix
                    yield f"d^{i} s^{j} in degree {n}", composite - expected
        for n in range(max_degree + 1):
            power = identity(n)
            for _ in range(n + 1):
                power = tau(n) @ power
            yield f"t^{n + 1} = 1 in degree {n}", power - identity(n)
        for n in range(1, max_degree + 1):
            yield f"d^0 t = d^{n} in degree {n}", ops.face(n, 0).matrix @ tau(n) - ops.face(n, n).matrix
            for i in range(1, n + 1):
                yield (f"d^{i} t = t d^{i - 1} in degree {n}",
                       ops.face(n, i).matrix @ tau(n) - tau(n - 1) @ ops.face(n, i - 1).matrix)
        for n in range(1, max_degree + 1):
            b, bp = ops.b(n).matrix, ops.b_prime(n).matrix
            if n >= 2:
                yield f"b b in degree {n}", ops.b(n - 1).matrix @ b
                yield f"b' b' in degree {n}", ops.b_prime(n - 1).matrix @ bp
            yield (f"b (1 - t) = (1 - t) b' in degree {n}",
                   b @ ops.one_minus_t(n) - ops.one_minus_t(n - 1) @ bp)
            yield f"N b = b' N in degree {n}", ops.norm(n - 1).matrix @ b - bp @ ops.norm(n).matrix
        for n in range(max_degree + 1):
            yield f"(1 - t) N in degree {n}", ops.one_minus_t(n) @ ops.norm(n).matrix
            yield f"N (1 - t) in degree {n}", ops.norm(n).matrix @ ops.one_minus_t(n)
        for n in range(max_degree):
            yield f"B B in degree {n}", ops.connes_B(n + 1).matrix @ ops.connes_B(n).matrix
            anti = ops.b(n + 1).matrix @ ops.connes_B(n).matrix
            if n >= 1:
                anti = anti + ops.connes_B(n - 1).matrix @ ops.b(n).matrix
            yield f"b B + B b in degree {n}", anti

    def failed_identities(self, R: FinAlgebra, max_degree: int) -> List[str]:
        return [name for name, residual in self.operator_identities(R, max_degree) if not residual.is_zero()]
