"""
Presentation Reducer

Collapses a (possibly very large) sparse presentation of an abelian group
to invariant-factor form.

Integer presentations go through two stages:

1. Tietze elimination: every relation with a +-1 coefficient eliminates one
   generator, which is rewritten in terms of the surviving ones. Relations
   are streamed, so memory stays proportional to the surviving data.
2. The relations without unit coefficients are collected into an integer
   echelon basis over the surviving generators and that small block is put
   in Smith normal form.

Field presentations are reduced with a single field echelon.
"""

import logging
from typing import Any, Dict, Iterable, List, Mapping, Optional, Set, Tuple

from ...domain.limits import check_entries
from ...domain.models.coefficients import Coefficients
from ...domain.models.int_matrix import Vector, add_scaled
from .echelon import FieldEchelon, IntegerEchelon
from .smith_normal_form import smith_decomposition

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 50_000


class IntegerNormalForm:
    """Normal-form map of an integer presentation after reduction."""

    def __init__(self, n_generators: int, substitutions: Dict[int, Vector],
                 alive: List[int], diagonal: List[int], right: List[List[int]],
                 right_inverse: List[List[int]]):
        self.n_generators = n_generators
        self._subst = substitutions
        self._alive = alive
        self._local = {g: k for k, g in enumerate(alive)}
        self._right = right
        self._right_inverse = right_inverse
        rank = len(diagonal)
        # slots with d = 1 are trivial and dropped
        self._torsion_slots = [(k, d) for k, d in enumerate(diagonal) if d > 1]
        self._free_slots = list(range(rank, len(alive)))
        self.torsion = tuple(d for _, d in self._torsion_slots)
        self.free_rank = len(self._free_slots)

    def _alive_vector(self, vector: Mapping[int, Any]) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for g, value in vector.items():
            value = int(value)
            if not value:
                continue
            expression = self._subst.get(g)
            if expression is None:
                local = self._local[g]
                updated = out.get(local, 0) + value
                if updated:
                    out[local] = updated
                else:
                    out.pop(local, None)
            else:
                for h, w in expression.items():
                    local = self._local[h]
                    updated = out.get(local, 0) + value * w
                    if updated:
                        out[local] = updated
                    else:
                        out.pop(local, None)
        return out

    def _transformed(self, x: Dict[int, int], slot: int) -> int:
        right = self._right
        return sum(value * right[i][slot] for i, value in x.items())

    def coordinates(self, vector: Mapping[int, Any]) -> Tuple[int, ...]:
        x = self._alive_vector(vector)
        coords = [self._transformed(x, slot) % d for slot, d in self._torsion_slots]
        coords.extend(self._transformed(x, slot) for slot in self._free_slots)
        return tuple(coords)

    def lift(self, index: int) -> Vector:
        slots = [slot for slot, _ in self._torsion_slots] + self._free_slots
        row = self._right_inverse[slots[index]]
        return {self._alive[k]: v for k, v in enumerate(row) if v}


class FieldNormalForm:
    """Normal-form map of a presentation over a field: coordinates on non-pivot generators."""

    def __init__(self, n_generators: int, echelon: FieldEchelon):
        self.n_generators = n_generators
        self._echelon = echelon
        pivots = set(echelon.pivots())
        self._free = [g for g in range(n_generators) if g not in pivots]
        self._slot = {g: k for k, g in enumerate(self._free)}
        self.free_rank = len(self._free)
        self.torsion: Tuple[int, ...] = ()
        self._zero = echelon.domain.zero
        self._one = echelon.domain.one

    def coordinates(self, vector: Mapping[int, Any]) -> Tuple[Any, ...]:
        convert = self._echelon.domain.convert
        remainder = self._echelon.reduce({g: convert(v) for g, v in vector.items() if v})
        coords = [self._zero] * self.free_rank
        for g, value in remainder.items():
            coords[self._slot[g]] = value
        return tuple(coords)

    def lift(self, index: int) -> Vector:
        return {self._free[index]: self._one}


class PresentationReducer:
    """
    Reduces generator/relation presentations to normal forms.

    The reducer is stateless between calls; every call builds its own
    elimination state.
    """

    def reduce(self, n_generators: int, relations: Iterable[Mapping[int, Any]],
               coefficients: Coefficients, label: str = "presentation"):
        """
        Args:
            n_generators: Number of generators
            relations: Sparse relation rows (generator -> coefficient)
            coefficients: Integers or a field
            label: Name used in progress messages

        Returns:
            IntegerNormalForm or FieldNormalForm
        """
        if coefficients.is_field:
            return self._reduce_field(n_generators, relations, coefficients, label)
        return self._reduce_integers(n_generators, relations, label)

    # ==================== Fields ====================

    def _reduce_field(self, n_generators: int, relations: Iterable[Mapping[int, Any]],
                      coefficients: Coefficients, label: str) -> FieldNormalForm:
        echelon = FieldEchelon(n_generators, coefficients.domain)
        convert = coefficients.domain.convert
        entries = 0
        count = 0
        for relation in relations:
            row = {g: convert(v) for g, v in relation.items() if v}
            entries += len(row)
            count += 1
            check_entries(f"{label} relations", entries)
            if echelon.rank < n_generators:
                echelon.add(row)
            if count % PROGRESS_EVERY == 0:
                logger.info(f"{label}: {count:,} relations processed, rank {echelon.rank}")
        logger.debug(f"{label}: {n_generators} generators, {count} relations, rank {echelon.rank}")
        return FieldNormalForm(n_generators, echelon)

    # ==================== Integers ====================

    def _reduce_integers(self, n_generators: int, relations: Iterable[Mapping[int, Any]],
                         label: str) -> IntegerNormalForm:
        state = _TietzeState()
        pending: List[Dict[int, int]] = []
        entries = 0
        count = 0
        for relation in relations:
            row = {g: int(v) for g, v in relation.items() if v}
            entries += len(row)
            count += 1
            check_entries(f"{label} relations", entries)
            row = state.substitute(row)
            if not row:
                continue
            if not state.eliminate(row):
                pending.append(row)
            if count % PROGRESS_EVERY == 0:
                logger.info(f"{label}: {count:,} relations streamed, "
                            f"{len(state.substitutions):,} generators eliminated")

        while True:
            progressed = False
            remaining = []
            for row in pending:
                row = state.substitute(row)
                if not row:
                    continue
                if state.eliminate(row):
                    progressed = True
                else:
                    remaining.append(row)
            pending = remaining
            if not progressed:
                break

        alive = [g for g in range(n_generators) if g not in state.substitutions]
        local = {g: k for k, g in enumerate(alive)}
        lattice = IntegerEchelon(len(alive))
        for row in pending:
            lattice.add({local[g]: v for g, v in row.items()})
        basis = lattice.basis()
        dense = [[row.get(k, 0) for k in range(len(alive))] for row in basis]
        check_entries(f"{label} residual block", len(dense) * len(alive))
        decomposition = smith_decomposition(dense, cols=len(alive), track_left=False)
        logger.debug(
            f"{label}: {n_generators} generators, {count} relations, "
            f"{len(alive)} survive Tietze, residual rank {len(decomposition.diagonal)}"
        )
        return IntegerNormalForm(
            n_generators,
            state.substitutions,
            alive,
            decomposition.diagonal,
            decomposition.right,
            decomposition.right_inverse,
        )


class _TietzeState:
    """Eliminated generators with their expressions in surviving generators."""

    def __init__(self):
        self.substitutions: Dict[int, Dict[int, int]] = {}
        self._users: Dict[int, Set[int]] = {}

    def substitute(self, row: Mapping[int, int]) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for g, value in row.items():
            expression = self.substitutions.get(g)
            if expression is None:
                updated = out.get(g, 0) + value
                if updated:
                    out[g] = updated
                else:
                    out.pop(g, None)
            else:
                add_scaled(out, expression, value)
        return out

    def eliminate(self, row: Dict[int, int]) -> bool:
        """Eliminate a generator with a +-1 coefficient in row; False if none exists."""
        best: Optional[int] = None
        best_cost = 0
        for g, value in row.items():
            if value in (1, -1):
                cost = len(self._users.get(g, ()))
                if best is None or cost < best_cost or (cost == best_cost and g > best):
                    best, best_cost = g, cost
        if best is None:
            return False

        sign = row[best]
        expression = {g: -sign * v for g, v in row.items() if g != best}

        for user in self._users.pop(best, set()):
            target = self.substitutions[user]
            factor = target.pop(best)
            for g, v in expression.items():
                updated = target.get(g, 0) + factor * v
                if updated:
                    target[g] = updated
                    self._users.setdefault(g, set()).add(user)
                else:
                    target.pop(g, None)
                    users = self._users.get(g)
                    if users is not None:
                        users.discard(user)

        self.substitutions[best] = expression
        for g in expression:
            self._users.setdefault(g, set()).add(best)
        return True
