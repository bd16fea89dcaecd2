"""
Settings

Process settings read from the environment.
"""

import logging
import os
from dataclasses import dataclass
from typing import Mapping, Optional

from ...domain.exceptions import UsageError
from ...domain.limits import CapacityLimits

logger = logging.getLogger(__name__)

CAPACITY_VARIABLE = "CM_CAPACITY"


def parse_capacity(value: str, origin: str) -> int:
    """
    Raises:
        UsageError: If value is not a positive integer
    """
    try:
        capacity = int(value)
    except (TypeError, ValueError):
        raise UsageError(f"{origin} must be a positive integer, got {value!r}") from None
    if capacity <= 0:
        raise UsageError(f"{origin} must be a positive integer, got {value!r}")
    return capacity


@dataclass(frozen=True)
class Settings:
    """
    Attributes:
        capacity: Entry budget that scales every capacity limit, None for defaults
    """
    capacity: Optional[int] = None

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        environ = os.environ if environ is None else environ
        raw = environ.get(CAPACITY_VARIABLE)
        if raw is None or not raw.strip():
            return cls()
        capacity = parse_capacity(raw.strip(), CAPACITY_VARIABLE)
        logger.debug(f"{CAPACITY_VARIABLE}={capacity}")
        return cls(capacity)

    def with_capacity(self, capacity: Optional[int]) -> "Settings":
        """Command-line override; None keeps the current value."""
        return self if capacity is None else Settings(capacity)

    @property
    def limits(self) -> CapacityLimits:
        if self.capacity is None:
            return CapacityLimits()
        return CapacityLimits.from_capacity(self.capacity)
