"""
Capacity Limits

Process-wide guards that turn runaway computations into CapacityExceeded.
"""

from contextlib import contextmanager
from dataclasses import dataclass, replace
from typing import Iterator

from .exceptions import CapacityExceeded


@dataclass(frozen=True)
class CapacityLimits:
    """
    Upper bounds for the expensive parts of a computation.

    Attributes:
        max_entries: Nonzero entries across a single presentation or matrix
        max_tensor_dimension: dim(R)^(n+1) for one tensor space
        max_units: Size of an enumerated unit group
        max_stability_pairs: Unimodular pairs scanned by the stability search
    """
    max_entries: int = 5_000_000
    max_tensor_dimension: int = 100_000
    max_units: int = 100_000
    max_stability_pairs: int = 2_000_000

    def __post_init__(self):
        for name in ("max_entries", "max_tensor_dimension", "max_units", "max_stability_pairs"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_capacity(cls, capacity: int) -> "CapacityLimits":
        """Scale every limit from a single entry budget (the CM_CAPACITY value)."""
        default = cls()
        ratio = capacity / default.max_entries
        return cls(
            max_entries=capacity,
            max_tensor_dimension=max(1, int(default.max_tensor_dimension * ratio)),
            max_units=max(1, int(default.max_units * ratio)),
            max_stability_pairs=max(1, int(default.max_stability_pairs * ratio)),
        )

    def with_entries(self, max_entries: int) -> "CapacityLimits":
        return replace(self, max_entries=max_entries)


_active = CapacityLimits()


def get_limits() -> CapacityLimits:
    return _active


def set_limits(limits: CapacityLimits) -> None:
    global _active
    _active = limits


@contextmanager
def capacity_scope(limits: CapacityLimits) -> Iterator[CapacityLimits]:
    """Temporarily replace the active limits."""
    previous = get_limits()
    set_limits(limits)
    try:
        yield limits
    finally:
        set_limits(previous)


def check_entries(what: str, size: int) -> None:
    limit = _active.max_entries
    if size > limit:
        raise CapacityExceeded(what, size, limit)


def check_tensor_dimension(what: str, size: int) -> None:
    limit = _active.max_tensor_dimension
    if size > limit:
        raise CapacityExceeded(what, size, limit)


def check_units(what: str, size: int) -> None:
    limit = _active.max_units
    if size > limit:
        raise CapacityExceeded(what, size, limit)


def check_stability_pairs(what: str, size: int) -> None:
    limit = _active.max_stability_pairs
    if size > limit:
        raise CapacityExceeded(what, size, limit)
