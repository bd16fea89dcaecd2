"""
Report Model

The structured result every command emits, in a fixed field order.
"""

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional

from .abelian_group import FPAbelianGroup

SCHEMA_VERSION = "1.0"


class Verdict(str, Enum):
    """Outcome of a command or check."""
    YES = "yes"
    NO = "no"
    HYPOTHESES_VIOLATED_YES = "hypotheses-violated-yes"
    HYPOTHESES_VIOLATED_NO = "hypotheses-violated-no"
    ERROR = "error"

    @classmethod
    def from_checks(cls, holds: bool, hypotheses_hold: bool = True) -> "Verdict":
        if hypotheses_hold:
            return cls.YES if holds else cls.NO
        return cls.HYPOTHESES_VIOLATED_YES if holds else cls.HYPOTHESES_VIOLATED_NO

    @property
    def holds(self) -> bool:
        return self in (Verdict.YES, Verdict.HYPOTHESES_VIOLATED_YES)

    @property
    def exit_code(self) -> int:
        if self is Verdict.ERROR:
            return 1
        return 0 if self.holds else 2


@dataclass(frozen=True)
class GroupSummary:
    """One computed group as it appears in a report."""
    name: str
    free_rank: int
    torsion: List[int]
    coefficients: str = "Z"
    text: str = "0"

    @classmethod
    def from_group(cls, name: str, group: FPAbelianGroup) -> "GroupSummary":
        return cls(name, group.free_rank, list(group.torsion), str(group.coefficients), str(group))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "coefficients": self.coefficients,
            "text": self.text,
        }

    def __str__(self) -> str:
        return f"{self.name} = {self.text}"


@dataclass(frozen=True)
class Report:
    """
    Result of one command.

    Attributes:
        check: Command or verification suite name
        input: Description of the inputs (config paths, degrees, seeds)
        groups: Computed groups in display order
        hypotheses: Named hypothesis checks
        verdict: Overall outcome
        details: Command-specific payload
        runtime_ms: Wall time, only when timing was requested
    """
    check: str
    input: Dict[str, Any]
    groups: List[GroupSummary] = field(default_factory=list)
    hypotheses: Dict[str, bool] = field(default_factory=dict)
    verdict: Verdict = Verdict.YES
    details: Dict[str, Any] = field(default_factory=dict)
    runtime_ms: Optional[float] = None

    @property
    def exit_code(self) -> int:
        return self.verdict.exit_code

    @classmethod
    def failure(cls, check: str, input: Dict[str, Any], message: str) -> "Report":
        return cls(check, input, verdict=Verdict.ERROR, details={"error": message})

    def with_runtime(self, runtime_ms: Optional[float]) -> "Report":
        return replace(self, runtime_ms=runtime_ms)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "check": self.check,
            "input": self.input,
            "groups": [g.to_dict() for g in self.groups],
            "hypotheses": dict(self.hypotheses),
            "verdict": self.verdict.value,
            "details": self.details,
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False, default=str)
