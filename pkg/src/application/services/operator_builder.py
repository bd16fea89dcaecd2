"""
Operator Builder

Matrices of the simplicial and cyclic operators on tensor powers R^(n+1):
faces, degeneracies, the signed cyclic operator, norm, b, b', the extra
degeneracy and Connes' B.
"""

import logging
from typing import Callable, Dict, Iterable, Optional, Tuple

from ...domain.exceptions import IndexOutOfRange, ValidationError
from ...domain.models.algebra import FinAlgebra
from ...domain.models.complexes import OperatorKind, OperatorMatrix, TensorSpace
from ...domain.models.int_matrix import IntMatrix, Vector, add_scaled

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
WordImage = Iterable[Tuple[Word, object]]


class OperatorBuilder:
    """
    Builds and caches operator matrices for one algebra.

    Conventions on (r_0, ..., r_n):
        d^i   multiplies slots i and i+1 for i < n; d^n gives (r_n r_0, r_1, ..., r_(n-1))
        s^i   inserts 1 after slot i
        t     (-1)^n (r_n, r_0, ..., r_(n-1))
        N     1 + t + ... + t^n
        b     sum of (-1)^i d^i; b' omits the last face
        s     extra degeneracy (1, r_0, ..., r_n)
        B     (1 - t) s N from degree n to n + 1
    """

    def __init__(self, algebra: FinAlgebra):
        self.algebra = algebra
        self.coefficients = algebra.coefficients
        self._spaces: Dict[int, TensorSpace] = {}
        self._cache: Dict[Tuple[OperatorKind, Optional[int], int], OperatorMatrix] = {}

    def space(self, n: int) -> TensorSpace:
        space = self._spaces.get(n)
        if space is None:
            space = TensorSpace(self.algebra, n)
            self._spaces[n] = space
        return space

    # ==================== Word actions ====================

    def _face_word(self, word: Word, i: int) -> WordImage:
        n = len(word) - 1
        if i < n:
            for k, c in self.algebra.multiply_basis(word[i], word[i + 1]).items():
                yield word[:i] + (k,) + word[i + 2:], c
        else:
            for k, c in self.algebra.multiply_basis(word[n], word[0]).items():
                yield (k,) + word[1:n], c

    def _degeneracy_word(self, word: Word, i: int) -> WordImage:
        for k, c in self.algebra.unit_vector.items():
            yield word[:i + 1] + (k,) + word[i + 1:], c

    def _extra_degeneracy_word(self, word: Word) -> WordImage:
        for k, c in self.algebra.unit_vector.items():
            yield (k,) + word, c

    def _cyclic_word(self, word: Word) -> WordImage:
        n = len(word) - 1
        sign = -1 if n % 2 else 1
        yield (word[-1],) + word[:-1], self.coefficients.convert(sign)

    # ==================== Matrices ====================

    def _build(self, source: int, target: int, action: Callable[[Word], WordImage]) -> IntMatrix:
        source_space = self.space(source)
        target_space = self.space(target)
        columns = []
        for word in source_space.words():
            column: Vector = {}
            for image, c in action(word):
                add_scaled(column, {target_space.index(image): c}, 1)
            columns.append(column)
        return IntMatrix.from_columns(columns, target_space.dimension, self.coefficients)

    def _wrap(self, kind: OperatorKind, index: Optional[int], n: int, target: int,
              factory: Callable[[], IntMatrix]) -> OperatorMatrix:
        key = (kind, index, n)
        cached = self._cache.get(key)
        if cached is None:
            cached = OperatorMatrix(kind, index, self.space(n), self.space(target), factory())
            self._cache[key] = cached
            logger.debug(f"built {cached.label} on {self.algebra} ({cached.matrix.nnz} nonzeros)")
        return cached

    def face(self, n: int, i: int) -> OperatorMatrix:
        if n < 1 or not 0 <= i <= n:
            raise IndexOutOfRange(f"face d^{i} is not defined in degree {n}")
        return self._wrap(OperatorKind.FACE, i, n, n - 1,
                          lambda: self._build(n, n - 1, lambda w: self._face_word(w, i)))

    def degeneracy(self, n: int, i: int) -> OperatorMatrix:
        if n < 0 or not 0 <= i <= n:
            raise IndexOutOfRange(f"degeneracy s^{i} is not defined in degree {n}")
        return self._wrap(OperatorKind.DEGENERACY, i, n, n + 1,
                          lambda: self._build(n, n + 1, lambda w: self._degeneracy_word(w, i)))

    def extra_degeneracy(self, n: int) -> OperatorMatrix:
        return self._wrap(OperatorKind.EXTRA_DEGENERACY, None, n, n + 1,
                          lambda: self._build(n, n + 1, self._extra_degeneracy_word))

    def cyclic(self, n: int) -> OperatorMatrix:
        return self._wrap(OperatorKind.CYCLIC, None, n, n,
                          lambda: self._build(n, n, self._cyclic_word))

    def norm(self, n: int) -> OperatorMatrix:
        def factory() -> IntMatrix:
            t = self.cyclic(n).matrix
            total = IntMatrix.identity(t.rows, self.coefficients)
            power = total
            for _ in range(n):
                power = t @ power
                total = total + power
            return total
        return self._wrap(OperatorKind.NORM, None, n, n, factory)

    def _alternating_faces(self, n: int, last: int) -> IntMatrix:
        def action(word: Word) -> WordImage:
            for i in range(last + 1):
                sign = self.coefficients.convert(-1 if i % 2 else 1)
                for image, c in self._face_word(word, i):
                    yield image, sign * c
        return self._build(n, n - 1, action)

    def b(self, n: int) -> OperatorMatrix:
        if n < 1:
            raise IndexOutOfRange("b is defined from degree 1")
        return self._wrap(OperatorKind.B, None, n, n - 1, lambda: self._alternating_faces(n, n))

    def b_prime(self, n: int) -> OperatorMatrix:
        if n < 1:
            raise IndexOutOfRange("b' is defined from degree 1")
        return self._wrap(OperatorKind.B_PRIME, None, n, n - 1, lambda: self._alternating_faces(n, n - 1))

    def one_minus_t(self, n: int) -> IntMatrix:
        t = self.cyclic(n).matrix
        return IntMatrix.identity(t.rows, self.coefficients) - t

    def connes_B(self, n: int) -> OperatorMatrix:
        if n < 0:
            raise IndexOutOfRange("B is defined from degree 0")
        return self._wrap(
            OperatorKind.CONNES_B, None, n, n + 1,
            lambda: self.one_minus_t(n + 1) @ self.extra_degeneracy(n).matrix @ self.norm(n).matrix,
        )

    def operator(self, n: int, kind: OperatorKind, index: Optional[int] = None) -> OperatorMatrix:
        """
        Operator by kind.

        Raises:
            IndexOutOfRange: If the index or degree is out of range for the kind
        """
        if kind in (OperatorKind.FACE, OperatorKind.DEGENERACY):
            if index is None:
                raise ValidationError(f"{kind.value} needs an index")
            return self.face(n, index) if kind is OperatorKind.FACE else self.degeneracy(n, index)
        builders = {
            OperatorKind.CYCLIC: self.cyclic,
            OperatorKind.NORM: self.norm,
            OperatorKind.B: self.b,
            OperatorKind.B_PRIME: self.b_prime,
            OperatorKind.CONNES_B: self.connes_B,
            OperatorKind.EXTRA_DEGENERACY: self.extra_degeneracy,
        }
        if n < 0:
            raise IndexOutOfRange(f"degree {n} is negative")
        return builders[kind](n)
