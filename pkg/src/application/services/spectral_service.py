"""
Spectral Service

Exact couples of the column filtration of a finite bicomplex, derived
couples, pages and convergence against the homology of the total complex.

Every group is a subquotient of the total complex in one degree, with
F^p Tot^n spanned by the generators in columns >= p:

    Z_r^p  = {x in F^p : Dx in F^(p+r)}       (r = None: Dx = 0)
    E_r^p  = Z_r^p / (Z_(r-1)^(p+1) + D Z_(r-1)^(p-r+1))
    D_r^p  = Z_None^(p+r-1) / D Z_(r-1)^p      (the image of H(F^(p+r-1)) in H(F^p))

all taken modulo the torsion relations of the entries.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ...domain.exceptions import IllDefinedMap, NotAComplex, NotExact, NotStabilized, ValidationError
from ...domain.models.abelian_group import FPAbelianGroup
from ...domain.models.complexes import GradedComplexSlice
from ...domain.models.int_matrix import IntMatrix, Vector
from ...domain.models.nilpotent_pair import SplitNilpotentPair
from ...domain.models.spectral import Bicomplex, Position
from ..interfaces.elimination_backend import IEliminationBackend, ISubQuotient, ISubQuotientMap
from .cyclic_service import CyclicService, Target

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ExactCouple:
    """
    Exact couple of level r (r = 1 is the couple of the filtration).

    Maps, keyed by their source position:
        i: D^(p,q) -> D^(p-1,q+1)
        j: D^(p,q) -> E^(p+r-1,q-r+1)
        k: E^(p,q) -> D^(p+1,q)

    Attributes:
        bicomplex: The bicomplex the couple comes from
        level: r
        d_terms: Position -> D_r^(p,q)
        e_terms: Position -> E_r^(p,q)
    """
    bicomplex: Bicomplex
    level: int
    d_terms: Dict[Position, ISubQuotient] = field(repr=False)
    e_terms: Dict[Position, ISubQuotient] = field(repr=False)
    i_maps: Dict[Position, ISubQuotientMap] = field(repr=False)
    j_maps: Dict[Position, ISubQuotientMap] = field(repr=False)
    k_maps: Dict[Position, ISubQuotientMap] = field(repr=False)

    def e_group(self, p: int, q: int) -> FPAbelianGroup:
        term = self.e_terms.get((p, q))
        return term.group() if term is not None else FPAbelianGroup.trivial(self.bicomplex.coefficients)

    def d_group(self, p: int, q: int) -> FPAbelianGroup:
        term = self.d_terms.get((p, q))
        return term.group() if term is not None else FPAbelianGroup.trivial(self.bicomplex.coefficients)

    def nonzero_e_terms(self) -> Dict[Position, FPAbelianGroup]:
        groups = {position: term.group() for position, term in sorted(self.e_terms.items())}
        return {position: group for position, group in groups.items() if not group.is_trivial}


@dataclass(frozen=True, eq=False)
class Page:
    """
    E_r with its differentials d_r of bidegree (r, 1 - r).

    Attributes:
        r: Page number
        terms: Position -> E_r^(p,q) (trivial terms omitted)
        differentials: Position -> d_r out of E_r^(p,q)
    """
    r: int
    terms: Dict[Position, FPAbelianGroup]
    differentials: Dict[Position, ISubQuotientMap] = field(repr=False)

    def is_degenerate(self) -> bool:
        """True when every d_r vanishes."""
        return all(d.is_zero_map() for d in self.differentials.values())

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "terms": [
                {"p": p, "q": q, "group": str(group), **group.to_dict()}
                for (p, q), group in sorted(self.terms.items())
            ],
        }


@dataclass(frozen=True)
class ConvergenceResult:
    """
    E_∞ against the graded pieces of the column filtration on H^n(Tot).

    Attributes:
        stable_page: First r from which every differential vanishes
        e_infinity: Position -> E_∞^(p,q)
        graded_pieces: (p, n) -> F^p H^n / F^(p+1) H^n
        total_homology: n -> H^n(Tot)
        mismatches: Positions where E_∞ and the graded piece differ
        degree_mismatches: Degrees n where the E_∞ terms on the diagonal do
            not add up to H^n(Tot) (free rank and torsion order)
    """
    stable_page: int
    e_infinity: Dict[Position, FPAbelianGroup]
    graded_pieces: Dict[Tuple[int, int], FPAbelianGroup]
    total_homology: Dict[int, FPAbelianGroup]
    mismatches: List[Position]
    degree_mismatches: List[int] = field(default_factory=list)

    @property
    def converges(self) -> bool:
        return not self.mismatches and not self.degree_mismatches

    def to_dict(self) -> dict:
        return {
            "stable_page": self.stable_page,
            "e_infinity": [
                {"p": p, "q": q, "group": str(g)} for (p, q), g in sorted(self.e_infinity.items())
                if not g.is_trivial
            ],
            "total_homology": {str(n): str(g) for n, g in sorted(self.total_homology.items())},
            "mismatches": [list(position) for position in self.mismatches],
            "degree_mismatches": list(self.degree_mismatches),
        }


def _torsion_order(groups: List[FPAbelianGroup]) -> int:
    order = 1
    for group in groups:
        for d in group.torsion:
            order *= d
    return order


class SpectralService:
    """
    Service for the spectral sequence of the column filtration.

    Lattices are cached per bicomplex, so pages of one bicomplex share work.
    """

    def __init__(self, backend: IEliminationBackend, cyclic: Optional[CyclicService] = None):
        self.backend = backend
        self.cyclic = cyclic
        self._lattices: Dict[Tuple[Bicomplex, int, int, Optional[int]], List[Vector]] = {}
        self._layouts: Dict[Tuple[Bicomplex, int], List[Tuple[Position, int]]] = {}
        self._terms: Dict[Tuple[str, Bicomplex, int, int, int], ISubQuotient] = {}

    # ==================== Total complex ====================

    def _layout(self, bc: Bicomplex, n: int) -> List[Tuple[Position, int]]:
        """(position, offset) of each entry of Tot^n, columns ascending."""
        key = (bc, n)
        cached = self._layouts.get(key)
        if cached is None:
            cached = []
            offset = 0
            for position in bc.positions_in_degree(n):
                cached.append((position, offset))
                offset += bc.rank(*position)
            self._layouts[key] = cached
        return cached

    def total_rank(self, bc: Bicomplex, n: int) -> int:
        return sum(bc.rank(*position) for position, _ in self._layout(bc, n))

    def total_differential(self, bc: Bicomplex, n: int) -> IntMatrix:
        """D = d_h + d_v from Tot^n to Tot^(n+1)."""
        source = self._layout(bc, n)
        target = {position: offset for position, offset in self._layout(bc, n + 1)}
        entries: Dict[int, Vector] = {}
        for (p, q), offset in source:
            for block, destination in ((bc.d_h(p, q), (p + 1, q)), (bc.d_v(p, q), (p, q + 1))):
                if destination not in target:
                    continue
                row_offset = target[destination]
                for i, j, value in block.iter_entries():
                    row = entries.setdefault(row_offset + i, {})
                    updated = row.get(offset + j, 0) + value
                    if updated:
                        row[offset + j] = updated
                    else:
                        row.pop(offset + j, None)
        return IntMatrix(self.total_rank(bc, n + 1), self.total_rank(bc, n), entries, bc.coefficients)

    def total_relations(self, bc: Bicomplex, n: int) -> List[Vector]:
        relations = []
        for position, offset in self._layout(bc, n):
            for k, d in enumerate(bc.orders[position]):
                if d:
                    relations.append({offset + k: d})
        return relations

    def total_complex(self, bc: Bicomplex) -> GradedComplexSlice:
        """
        Tot as a homological slice: degree -n holds Tot^n.

        Raises:
            ValidationError: If some entry has torsion
        """
        if bc.has_torsion:
            raise ValidationError("the slice form of Tot needs free entries")
        low, high = bc.degree_range
        ranks = {-n: self.total_rank(bc, n) for n in range(low, high + 1)}
        boundaries = {-n: self.total_differential(bc, n) for n in range(low, high)}
        return GradedComplexSlice(bc.coefficients, ranks, boundaries, name=f"Tot({bc.name})")

    def check_bicomplex(self, bc: Bicomplex) -> None:
        """
        Raises:
            IllDefinedMap: If a map does not respect the torsion relations
            NotAComplex: If D D is not zero modulo the relations
        """
        for label, maps, step in (("horizontal", bc.horizontal, (1, 0)), ("vertical", bc.vertical, (0, 1))):
            for (p, q), matrix in maps.items():
                target = (p + step[0], q + step[1])
                for i, j, value in matrix.iter_entries():
                    source_order = bc.order_of((p, q), j)
                    target_order = bc.order_of(target, i)
                    if source_order and not self._vanishes(source_order * value, target_order):
                        raise IllDefinedMap(f"{label} map at {(p, q)} does not respect Z/{source_order}")
        low, high = bc.degree_range
        for n in range(low, high):
            square = self.total_differential(bc, n + 1) @ self.total_differential(bc, n)
            for position, offset in self._layout(bc, n + 2):
                for k, d in enumerate(bc.orders[position]):
                    row = square.row(offset + k)
                    if any(not self._vanishes(value, d) for value in row.values()):
                        raise NotAComplex(f"D D != 0 from degree {n} at {position}")

    @staticmethod
    def _vanishes(value, order: int) -> bool:
        if not value:
            return True
        return bool(order) and int(value) % order == 0

    # ==================== Lattices ====================

    def _filtration(self, bc: Bicomplex, n: int, p: int) -> List[Vector]:
        one = bc.coefficients.one
        vectors = []
        for (column, _), offset in self._layout(bc, n):
            if column >= p:
                position = (column, n - column)
                vectors.extend({offset + k: one} for k in range(bc.rank(*position)))
        return vectors

    def cycles_in(self, bc: Bicomplex, n: int, p: int, r: Optional[int]) -> List[Vector]:
        """
        Z_r^p in degree n, relations included.

        r = 0 gives F^p; r = None gives the cycles of F^p.
        """
        key = (bc, n, p, r)
        cached = self._lattices.get(key)
        if cached is not None:
            return cached
        coefficients = bc.coefficients
        relations = self.total_relations(bc, n)
        if r == 0:
            lattice = self._filtration(bc, n, p) + relations
        else:
            ambient = self.total_rank(bc, n)
            target_ambient = self.total_rank(bc, n + 1)
            source = self.backend.subquotient(ambient, self._filtration(bc, n, p), relations,
                                              coefficients, f"F^{p} Tot^{n}")
            allowed = self.total_relations(bc, n + 1)
            if r is not None:
                allowed = allowed + self._filtration(bc, n + 1, p + r)
            one = coefficients.one
            target = self.backend.subquotient(
                target_ambient, [{k: one} for k in range(target_ambient)], allowed,
                coefficients, f"Tot^{n + 1}",
            )
            mapping = self.backend.map_from_ambient(source, target, self.total_differential(bc, n), check=False)
            lattice = list(mapping.kernel().generators)
        self._lattices[key] = lattice
        return lattice

    def boundaries_of(self, bc: Bicomplex, n: int, p: int, r: Optional[int]) -> List[Vector]:
        """D Z_r^p taken from degree n - 1 into degree n."""
        d = self.total_differential(bc, n - 1)
        return [image for image in (d.apply(z) for z in self.cycles_in(bc, n - 1, p, r)) if image]

    # ==================== Terms ====================

    def e_term(self, bc: Bicomplex, r: int, p: int, q: int) -> ISubQuotient:
        """E_r^(p,q) for r >= 1."""
        if r < 1:
            raise ValidationError("pages start at r = 1")
        key = ("E", bc, r, p, q)
        if key in self._terms:
            return self._terms[key]
        n = p + q
        numerator = self.cycles_in(bc, n, p, r)
        denominator = (self.cycles_in(bc, n, p + 1, r - 1)
                       + self.boundaries_of(bc, n, p - r + 1, r - 1)
                       + self.total_relations(bc, n))
        term = self.backend.subquotient(self.total_rank(bc, n), numerator, denominator,
                                        bc.coefficients, f"E_{r}^({p},{q})")
        self._terms[key] = term
        return term

    def d_term(self, bc: Bicomplex, r: int, p: int, q: int) -> ISubQuotient:
        """D_r^(p,q): classes of H^(p+q)(F^p) coming from F^(p+r-1)."""
        n = p + q
        numerator = self.cycles_in(bc, n, p + r - 1, None)
        denominator = self.boundaries_of(bc, n, p, r - 1) + self.total_relations(bc, n)
        return self.backend.subquotient(self.total_rank(bc, n), numerator, denominator,
                                        bc.coefficients, f"D_{r}^({p},{q})")

    def _window(self, bc: Bicomplex, r: int) -> List[Position]:
        p_low, p_high = bc.column_range
        n_low, n_high = bc.degree_range
        return [(p, n - p) for n in range(n_low - 1, n_high + 2) for p in range(p_low - r, p_high + 2)]

    def _couple(self, bc: Bicomplex, r: int) -> ExactCouple:
        window = self._window(bc, r)
        d_terms = {(p, q): self.d_term(bc, r, p, q) for p, q in window}
        e_terms = {(p, q): self.e_term(bc, r, p, q) for p, q in window}
        i_maps: Dict[Position, ISubQuotientMap] = {}
        j_maps: Dict[Position, ISubQuotientMap] = {}
        k_maps: Dict[Position, ISubQuotientMap] = {}
        for (p, q), source in d_terms.items():
            n = p + q
            identity = IntMatrix.identity(self.total_rank(bc, n), bc.coefficients)
            if (p - 1, q + 1) in d_terms:
                i_maps[(p, q)] = self.backend.map_from_ambient(source, d_terms[(p - 1, q + 1)], identity)
            if (p + r - 1, q - r + 1) in e_terms:
                j_maps[(p, q)] = self.backend.map_from_ambient(source, e_terms[(p + r - 1, q - r + 1)], identity)
        for (p, q), source in e_terms.items():
            if (p + 1, q) in d_terms:
                k_maps[(p, q)] = self.backend.map_from_ambient(
                    source, d_terms[(p + 1, q)], self.total_differential(bc, p + q)
                )
        return ExactCouple(bc, r, d_terms, e_terms, i_maps, j_maps, k_maps)

    # ==================== Couples ====================

    def couple_from_bicomplex(self, bc: Bicomplex, verify: bool = True) -> ExactCouple:
        """
        Exact couple D_1^(p,q) = H^(p+q)(F^p), E_1^(p,q) = H^(p+q)(F^p/F^(p+1)).

        Raises:
            NotAComplex: If bc is not a bicomplex
            IllDefinedMap: If a map breaks the torsion relations
            NotExact: If the couple fails to be exact (internal inconsistency)

        Examples:
            >>> couple = service.couple_from_bicomplex(Bicomplex.single(INTEGERS, 0, 0, [0]))
            >>> str(couple.e_group(0, 0))
            'Z'
        """
        self.check_bicomplex(bc)
        couple = self._couple(bc, 1)
        if verify:
            self.require_exact(couple)
        logger.info(f"exact couple of {bc}: E_1 = {self._describe(couple.nonzero_e_terms())}")
        return couple

    def derive(self, couple: ExactCouple, verify: bool = False) -> ExactCouple:
        """
        Derived couple: D' = im i, E' = H(E, jk).

        Raises:
            NotExact: If verify is set and the derived couple is not exact
        """
        derived = self._couple(couple.bicomplex, couple.level + 1)
        if verify:
            self.require_exact(derived)
        return derived

    def exactness_failures(self, couple: ExactCouple) -> List[str]:
        """Nodes where image and kernel differ, as readable labels."""
        failures = []
        r = couple.level
        for (p, q), j_map in couple.j_maps.items():
            incoming = couple.i_maps.get((p + 1, q - 1))
            if incoming is not None and not incoming.image().same_as(j_map.kernel()):
                failures.append(f"D^({p},{q}): im i != ker j")
        for (p, q), k_map in couple.k_maps.items():
            incoming = couple.j_maps.get((p - r + 1, q + r - 1))
            if incoming is not None and not incoming.image().same_as(k_map.kernel()):
                failures.append(f"E^({p},{q}): im j != ker k")
            outgoing = couple.i_maps.get((p + 1, q))
            if outgoing is not None and not k_map.image().same_as(outgoing.kernel()):
                failures.append(f"D^({p + 1},{q}): im k != ker i")
        return failures

    def require_exact(self, couple: ExactCouple) -> None:
        failures = self.exactness_failures(couple)
        if failures:
            raise NotExact(f"couple of level {couple.level} is not exact at {', '.join(failures[:5])}")

    # ==================== Pages ====================

    def page(self, couple: ExactCouple, r: int, p: int, q: int) -> FPAbelianGroup:
        """E_r^(p,q) of the spectral sequence of the couple."""
        return self.e_term(couple.bicomplex, r, p, q).group()

    def page_differential(self, bc: Bicomplex, r: int, p: int, q: int) -> ISubQuotientMap:
        """d_r = j k: E_r^(p,q) -> E_r^(p+r,q-r+1)."""
        source = self.e_term(bc, r, p, q)
        target = self.e_term(bc, r, p + r, q - r + 1)
        return self.backend.map_from_ambient(source, target, self.total_differential(bc, p + q))

    def page_of(self, couple: ExactCouple, r: Optional[int] = None) -> Page:
        r = couple.level if r is None else r
        bc = couple.bicomplex
        terms: Dict[Position, FPAbelianGroup] = {}
        differentials: Dict[Position, ISubQuotientMap] = {}
        for p, q in self._support_window(bc):
            group = self.e_term(bc, r, p, q).group()
            if not group.is_trivial:
                terms[(p, q)] = group
                differentials[(p, q)] = self.page_differential(bc, r, p, q)
        return Page(r, terms, differentials)

    def _support_window(self, bc: Bicomplex) -> List[Position]:
        p_low, p_high = bc.column_range
        q_low, q_high = bc.row_range
        return [(p, q) for p in range(p_low, p_high + 1) for q in range(q_low, q_high + 1)]

    def page_homology(self, bc: Bicomplex, r: int, p: int, q: int) -> FPAbelianGroup:
        """ker d_r / im d_r at (p, q), computed on E_r directly."""
        outgoing = self.page_differential(bc, r, p, q)
        incoming = self.page_differential(bc, r, p - r, q + r - 1)
        kernel = outgoing.kernel()
        image = incoming.image()
        n = p + q
        homology = self.backend.subquotient(self.total_rank(bc, n), kernel.generators,
                                            image.generators, bc.coefficients, f"H(E_{r})^({p},{q})")
        return homology.group()

    def derived_matches_page_homology(self, couple: ExactCouple) -> List[Position]:
        """Positions where E_(r+1) from the derived couple differs from H(E_r, d_r)."""
        bc = couple.bicomplex
        derived = self.derive(couple)
        mismatches = []
        for p, q in self._support_window(bc):
            direct = self.page_homology(bc, couple.level, p, q)
            if not derived.e_group(p, q).is_isomorphic(direct):
                mismatches.append((p, q))
        return mismatches

    # ==================== Convergence ====================

    def total_homology(self, bc: Bicomplex, n: int) -> FPAbelianGroup:
        """H^n(Tot) modulo the torsion relations."""
        p_low, _ = bc.column_range
        cycles = self.cycles_in(bc, n, p_low, None)
        boundaries = self.boundaries_of(bc, n, p_low, 0) + self.total_relations(bc, n)
        return self.backend.subquotient(self.total_rank(bc, n), cycles, boundaries,
                                        bc.coefficients, f"H^{n}(Tot)").group()

    def filtration_graded_pieces(self, bc: Bicomplex, n: int) -> Dict[int, FPAbelianGroup]:
        """F^p H^n / F^(p+1) H^n for every column p."""
        p_low, p_high = bc.column_range
        boundaries = self.boundaries_of(bc, n, p_low, 0) + self.total_relations(bc, n)
        pieces = {}
        for p in range(p_low, p_high + 1):
            numerator = self.cycles_in(bc, n, p, None)
            denominator = self.cycles_in(bc, n, p + 1, None) + boundaries
            pieces[p] = self.backend.subquotient(self.total_rank(bc, n), numerator, denominator,
                                                 bc.coefficients, f"gr^{p} H^{n}").group()
        return pieces

    def stable_page(self, bc: Bicomplex) -> int:
        """First r from which every d_r vanishes; pages past the width are stable."""
        last = bc.width + 1
        stable = last
        for r in range(last - 1, 0, -1):
            if all(self.page_differential(bc, r, p, q).is_zero_map() for p, q in self._support_window(bc)):
                stable = r
            else:
                break
        return stable

    def converges_check(self, couple: ExactCouple, max_page: int = 6,
                        totals: Optional[Dict[Tuple[int, int], FPAbelianGroup]] = None) -> ConvergenceResult:
        """
        Compare E_∞ with the graded pieces of the filtration on H^n(Tot).

        Args:
            couple: Couple of the bicomplex
            max_page: Largest page allowed for stabilization
            totals: (p, n) -> graded piece; computed directly when omitted

        Raises:
            NotStabilized: If the pages still change after max_page
        """
        bc = couple.bicomplex
        stable = self.stable_page(bc)
        if stable > max_page:
            raise NotStabilized(f"{bc}: pages change up to E_{stable}, beyond E_{max_page}")
        e_infinity = {(p, q): self.e_term(bc, stable, p, q).group() for p, q in self._support_window(bc)}
        n_low, n_high = bc.degree_range
        homology = {n: self.total_homology(bc, n) for n in range(n_low, n_high + 1)}
        if totals is None:
            totals = {}
            for n in range(n_low, n_high + 1):
                for p, group in self.filtration_graded_pieces(bc, n).items():
                    totals[(p, n)] = group
        mismatches = []
        zero = FPAbelianGroup.trivial(bc.coefficients)
        for (p, q), group in e_infinity.items():
            if not group.is_isomorphic(totals.get((p, p + q), zero)):
                mismatches.append((p, q))
        degree_mismatches = []
        for n, group in homology.items():
            pieces = [g for (p, q), g in e_infinity.items() if p + q == n]
            if (sum(g.free_rank for g in pieces), _torsion_order(pieces)) != (group.free_rank, _torsion_order([group])):
                degree_mismatches.append(n)
        result = ConvergenceResult(stable, e_infinity, dict(totals), homology, mismatches, degree_mismatches)
        logger.info(f"{bc}: stable from E_{stable}, converges = {result.converges}")
        return result

    @staticmethod
    def _describe(terms: Dict[Position, FPAbelianGroup]) -> str:
        if not terms:
            return "0"
        return ", ".join(f"{position}: {group}" for position, group in terms.items())

    # ==================== Cyclic bicomplex ====================

    def cyclic_window(self, target: Target, columns: int = 2, rows: int = 2) -> Bicomplex:
        """
        Window of the cyclic bicomplex CC, regraded cohomologically.

        Column c and row m of CC (the chains R^(m+1)) sit at (p, q) = (-c, -m).
        Columns alternate b and -b' vertically; 1 - t leaves odd columns and
        N leaves even columns horizontally.

        Raises:
            ValidationError: If no cyclic service is wired
        """
        if self.cyclic is None:
            raise ValidationError("cyclic_window needs a CyclicService")
        cyclic = self.cyclic
        R = target.ring if isinstance(target, SplitNilpotentPair) else target
        orders = {(-c, -m): (0,) * cyclic.chain_rank(target, m) for c in range(columns) for m in range(rows)}
        horizontal: Dict[Position, IntMatrix] = {}
        vertical: Dict[Position, IntMatrix] = {}
        for c in range(columns):
            for m in range(rows):
                if c >= 1:
                    horizontal[(-c, -m)] = (cyclic.one_minus_t_matrix(target, m) if c % 2
                                            else cyclic.norm_matrix(target, m))
                if m >= 1:
                    vertical[(-c, -m)] = (-cyclic.b_prime_matrix(target, m) if c % 2
                                          else cyclic.b_matrix(target, m))
        return Bicomplex(R.coefficients, orders, horizontal, vertical,
                         name=f"CC({R}) {columns}x{rows}")
