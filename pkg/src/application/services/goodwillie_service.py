"""
Goodwillie Service

The maps φ: K^M_(n+1)(R, I) -> Ω^n_(R,I)/dΩ^(n-1)_(R,I) and ψ in the other
direction, and the brute-force check that φ is an isomorphism for a split
nilpotent pair.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from ...domain.exceptions import (
    MalformedGenerator,
    NoRelativeEntry,
    NonInvertibleDenominator,
    ValidationError,
)
from ...domain.models.abelian_group import FPAbelianGroup, GroupHomomorphism
from ...domain.models.algebra import RingElement
from ...domain.models.coefficients import INTEGERS
from ...domain.models.int_matrix import Vector, add_scaled
from ...domain.models.nilpotent_pair import SplitNilpotentPair
from .algebra_service import AlgebraService
from .group_service import GroupService
from .kahler_service import KahlerService
from .milnor_service import MilnorService

logger = logging.getLogger(__name__)

STABILITY_FOLD = 5


@dataclass(frozen=True, eq=False)
class GoodwillieResult:
    """
    Outcome of comparing K^M_(n+1)(R, I) with Ω^n_(R,I)/dΩ^(n-1)_(R,I).

    Attributes:
        pair: The split nilpotent pair
        n: Degree on the differential side
        hypotheses: Named hypothesis checks, in report order
        milnor_side: K^M_(n+1)(R, I)
        differential_side: Ω^n_(R,I)/dΩ^(n-1)_(R,I)
        relative_symbols: Number of symbols with an entry in (1+I)*
        relative_symbols_generate: Those symbols span K^M_(n+1)(R, I)
        phi_well_defined: φ kills every relation among relative symbols
        phi_surjective: φ of the relative symbols spans the differential side
        psi_round_trip: φ(ψ(g)) = g for the admissible generators, None if ψ
            is not defined over the coefficients
        notes: Free-form remarks for the report
    """
    pair: SplitNilpotentPair
    n: int
    hypotheses: Dict[str, bool]
    milnor_side: FPAbelianGroup
    differential_side: FPAbelianGroup
    relative_symbols: int
    relative_symbols_generate: bool
    phi_well_defined: bool
    phi_surjective: bool
    psi_round_trip: Optional[bool]
    notes: List[str] = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def isomorphic(self) -> bool:
        return self.milnor_side.is_isomorphic(self.differential_side)

    @property
    def holds(self) -> bool:
        return (self.isomorphic and self.relative_symbols_generate and self.phi_well_defined
                and self.phi_surjective and self.psi_round_trip is not False)

    @property
    def verdict(self) -> str:
        answer = "yes" if self.holds else "no"
        return answer if self.hypotheses_hold else f"hypotheses-violated-{answer}"

    def to_dict(self) -> dict:
        return {
            "pair": self.pair.to_dict(),
            "n": self.n,
            "hypotheses": dict(self.hypotheses),
            "milnor_side": self.milnor_side.to_dict(),
            "differential_side": self.differential_side.to_dict(),
            "relative_symbols": self.relative_symbols,
            "relative_symbols_generate": self.relative_symbols_generate,
            "phi_well_defined": self.phi_well_defined,
            "phi_surjective": self.phi_surjective,
            "psi_round_trip": self.psi_round_trip,
            "isomorphic": self.isomorphic,
            "notes": list(self.notes),
        }


class GoodwillieService:
    """
    Service for φ, ψ and the relative Milnor K versus differentials check.

    φ{r_0, ..., r_n} = log(r_0) dr_1/r_1 ∧ ... ∧ dr_n/r_n with r_0 in (1+I)*.
    ψ(r_0 dr_1 ∧ ... ∧ dr_n) with r_0, ..., r_m in I and the rest units is
    {e^(r_0 r_(m+1) ... r_n), e^(r_1), ..., e^(r_m), r_(m+1), ..., r_n}.
    """

    def __init__(self, algebras: AlgebraService, groups: GroupService,
                 kahler: KahlerService, milnor: MilnorService):
        self.algebras = algebras
        self.groups = groups
        self.kahler = kahler
        self.milnor = milnor

    # ==================== Hypotheses ====================

    @staticmethod
    def first_non_invertible(pair: SplitNilpotentPair) -> Optional[int]:
        """Smallest k <= N that is not invertible in the coefficients, if any."""
        coefficients = pair.ring.coefficients
        for k in range(1, pair.nilpotency_index + 1):
            if not coefficients.is_invertible_integer(k):
                return k
        return None

    def require_denominators(self, pair: SplitNilpotentPair) -> None:
        """
        Raises:
            NonInvertibleDenominator: If some integer k <= N is not invertible
        """
        k = self.first_non_invertible(pair)
        if k is not None:
            raise NonInvertibleDenominator(
                k, f"{k} is not invertible in {pair.ring.coefficients} (N = {pair.nilpotency_index})"
            )

    def hypotheses(self, pair: SplitNilpotentPair) -> Dict[str, bool]:
        return {
            f"{STABILITY_FOLD}_fold_stable": self.algebras.is_m_fold_stable(pair.quotient, STABILITY_FOLD),
            "denominators_invertible": self.first_non_invertible(pair) is None,
        }

    # ==================== φ ====================

    def phi_vector(self, pair: SplitNilpotentPair, symbol: Sequence[RingElement],
                   strict: bool = True) -> Vector:
        """
        φ of a symbol as a generator vector of Ω^n_R, n = len(symbol) - 1.

        The first entry in (1+I)* is moved to the front with the sign of the
        transposition sequence.

        Raises:
            NoRelativeEntry: If no entry lies in (1+I)*
            NonUnitEntry: If an entry is not a unit
            NonInvertibleDenominator: In strict mode, if some k <= N is not invertible
        """
        if len(symbol) < 2:
            raise ValidationError("φ needs a symbol of length at least 2")
        if strict:
            self.require_denominators(pair)
        R = pair.ring
        slot = next((j for j, x in enumerate(symbol) if pair.in_one_plus_ideal(x)), None)
        if slot is None:
            raise NoRelativeEntry(f"no entry of {{{', '.join(map(str, symbol))}}} lies in (1+I)*")
        rest = list(symbol[:slot]) + list(symbol[slot + 1:])
        coefficient = self.algebras.log_one_plus(symbol[slot] - R.one())
        for entry in rest:
            coefficient = coefficient * self.algebras.inverse(entry)
        module = self.kahler.omega(R, len(rest))
        vector = module.element(coefficient, *rest)
        if slot % 2:
            sign = R.coefficients.convert(-1)
            vector = {k: sign * v for k, v in vector.items()}
        return vector

    def phi(self, pair: SplitNilpotentPair, n: int, symbol: Sequence[RingElement],
            strict: bool = True) -> Tuple:
        """
        φ{r_0, ..., r_n} in Ω^n_(R,I)/dΩ^(n-1)_(R,I).

        Args:
            pair: Split nilpotent pair
            n: Degree, symbol length minus one
            symbol: Units, at least one of them in (1+I)*
            strict: Require every integer up to N to be invertible

        Returns:
            Normal coordinates in omega_mod_exact(pair, n)

        Examples:
            >>> service.phi(f7_dual, 1, [R.parse("1+e"), R.parse("3")])
            ()
        """
        if len(symbol) != n + 1:
            raise ValidationError(f"expected a symbol of length {n + 1}, got {len(symbol)}")
        quotient = self.kahler.omega_mod_exact(pair, n)
        return quotient.coordinates(self.phi_vector(pair, symbol, strict))

    # ==================== ψ ====================

    def psi_symbol(self, pair: SplitNilpotentPair, r0: RingElement,
                   differentials: Sequence[RingElement], strict: bool = True) -> List[RingElement]:
        """
        ψ(r_0 dr_1 ∧ ... ∧ dr_n) as symbol entries.

        Raises:
            MalformedGenerator: If r_0 is not in I, or entries after the
                leading run in I are not units
            NonInvertibleDenominator: If the exponential needs a non-invertible k!
        """
        if strict:
            self.require_denominators(pair)
        if not pair.in_ideal(r0):
            raise MalformedGenerator(f"{r0} is not in I")
        m = 0
        while m < len(differentials) and pair.in_ideal(differentials[m]):
            m += 1
        units = list(differentials[m:])
        for entry in units:
            if not self.algebras.is_unit(entry):
                raise MalformedGenerator(f"{entry} is neither in I nor a unit")
        head = r0
        for entry in units:
            head = head * entry
        exponentials = [self.algebras.exp_nilpotent(x) for x in differentials[:m]]
        return [self.algebras.exp_nilpotent(head)] + exponentials + units

    def psi(self, pair: SplitNilpotentPair, r0: RingElement,
            differentials: Sequence[RingElement], strict: bool = True) -> Tuple:
        """ψ as normal coordinates in K^M_(n+1)(R, I)."""
        entries = self.psi_symbol(pair, r0, differentials, strict)
        n = len(differentials) + 1
        presentation = self.milnor.milnor_k(pair.ring, n)
        relative = self.milnor.milnor_k_relative(pair, n)
        return relative.coordinates(presentation.symbol_vector(entries))

    def admissible_generators(self, pair: SplitNilpotentPair, n: int) -> List[Tuple[RingElement, ...]]:
        """Basis words (r_0, ..., r_n) of Ω^n_R on which ψ is defined."""
        R = pair.ring
        basis = [R.basis_element(i) for i in range(R.dim)]
        ideal = set(pair.ideal_indices)
        units = {i for i in range(R.dim) if i not in ideal and self.algebras.is_unit(basis[i])}
        words = []
        for word in product(range(R.dim), repeat=n + 1):
            if word[0] not in ideal:
                continue
            m = 1
            while m <= n and word[m] in ideal:
                m += 1
            if all(k in units for k in word[m:]):
                words.append(tuple(basis[k] for k in word))
        return words

    def psi_round_trip(self, pair: SplitNilpotentPair, n: int, strict: bool = True) -> bool:
        """φ(ψ(g)) equals g in Ω^n_(R,I)/dΩ^(n-1)_(R,I) for every admissible generator."""
        quotient = self.kahler.omega_mod_exact(pair, n)
        module = self.kahler.omega(pair.ring, n)
        for word in self.admissible_generators(pair, n):
            symbol = self.psi_symbol(pair, word[0], word[1:], strict)
            if not pair.in_one_plus_ideal(symbol[0]):
                raise MalformedGenerator(f"ψ{word} has no leading entry in (1+I)*")
            image = self.phi_vector(pair, symbol, strict)
            if not quotient.element_equal(image, module.element(*word)):
                logger.info(f"φψ differs from the identity on {' '.join(map(str, word))}")
                return False
        return True

    # ==================== Comparison ====================

    def relative_symbols(self, pair: SplitNilpotentPair, length: int) -> List[Tuple[RingElement, ...]]:
        """Symbols of units with at least one entry in (1+I)*, lexicographic."""
        units = self.algebras.enumerate_units(pair.ring)
        return [
            word for word in product(units, repeat=length)
            if any(pair.in_one_plus_ideal(x) for x in word)
        ]

    def goodwillie_milnor_check(self, pair: SplitNilpotentPair, n: int,
                                optimized: Optional[bool] = None) -> GoodwillieResult:
        """
        Compare K^M_(n+1)(R, I) with Ω^n_(R,I)/dΩ^(n-1)_(R,I) through φ.

        Hypotheses (5-fold stability of S, invertibility of 1..N) are
        evaluated and reported; the comparison runs either way.

        Args:
            pair: Split nilpotent pair over F_p
            n: Degree on the differential side, at least 1
            optimized: Symbol presentation of K^M_(n+1)(R)

        Returns:
            GoodwillieResult

        Raises:
            InfiniteCoefficients: Over Q
            CapacityExceeded: If a presentation is too large
        """
        if n < 1:
            raise ValidationError("the comparison needs n >= 1")
        hypotheses = self.hypotheses(pair)
        logger.info(f"hypotheses for {pair}: {hypotheses}")
        notes: List[str] = []

        presentation = self.milnor.milnor_k(pair.ring, n + 1, optimized=optimized)
        milnor_side = self.milnor.milnor_k_relative(pair, n + 1, optimized=optimized)
        differential_side = self.kahler.omega_mod_exact(pair, n)

        symbols = self.relative_symbols(pair, n + 1)
        free = self.groups.fp_group(len(symbols), [], INTEGERS, label="relative symbols")
        to_milnor = GroupHomomorphism(free, presentation.group,
                                      tuple(presentation.symbol_vector(s) for s in symbols))
        image = self.groups.map_image(to_milnor, label="span of relative symbols")
        generate = image.is_isomorphic(milnor_side)

        phi_images = tuple(self.phi_vector(pair, s, strict=False) for s in symbols)
        kernel = self.groups.map_kernel(to_milnor, label="relations among relative symbols")
        well_defined = True
        for column in kernel.inclusion.columns():
            value: Vector = {}
            for g, c in column.items():
                add_scaled(value, phi_images[g], c)
            if not differential_side.is_zero_element(value):
                well_defined = False
                break
        surjective = self.groups.is_surjective(
            GroupHomomorphism(free, differential_side, phi_images)
        )

        round_trip: Optional[bool]
        try:
            round_trip = self.psi_round_trip(pair, n, strict=False)
        except NonInvertibleDenominator as e:
            round_trip = None
            notes.append(f"ψ undefined: {e}")

        result = GoodwillieResult(
            pair=pair,
            n=n,
            hypotheses=hypotheses,
            milnor_side=milnor_side,
            differential_side=differential_side,
            relative_symbols=len(symbols),
            relative_symbols_generate=generate,
            phi_well_defined=well_defined,
            phi_surjective=surjective,
            psi_round_trip=round_trip,
            notes=notes,
        )
        logger.info(f"K^M_{n + 1}(R,I) = {milnor_side}, Ω^{n}_(R,I)/d = {differential_side}: {result.verdict}")
        return result
