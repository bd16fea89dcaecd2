"""
Console Formatter

Formats reports for terminal display.
"""

import json
from typing import Any, List

from ...domain.models.report import Report


class ConsoleFormatter:
    """
    Format a Report as readable text.

    Groups print as Z, Z^r, Z/d, F_p^d, Q^d or 0 with summands joined by
    " + ". Returns a string instead of printing.
    """

    def format(self, report: Report) -> str:
        """
        Args:
            report: Any command's report

        Returns:
            Formatted string ready for printing
        """
        lines = []
        lines.append("=" * 80)
        lines.append(report.check.upper())
        lines.append("=" * 80)
        for key, value in report.input.items():
            lines.append(f"{key}: {self._inline(value)}")

        if report.groups:
            lines.append("")
            width = max(len(g.name) for g in report.groups)
            for group in report.groups:
                lines.append(f"  {group.name:<{width}s} = {group.text}")

        if report.hypotheses:
            lines.extend(self._format_hypotheses(report))

        if report.details:
            lines.append("")
            lines.append("-" * 80)
            for key, value in report.details.items():
                lines.append(f"{key}: {self._inline(value)}")

        lines.append("")
        lines.append(f"verdict: {report.verdict.value}")
        if report.runtime_ms is not None:
            lines.append(f"runtime: {report.runtime_ms:.1f} ms")
        return "\n".join(lines)

    def format_groups(self, report: Report) -> str:
        """Only the group texts, one per line (used for terse output)."""
        return "\n".join(group.text for group in report.groups)

    @staticmethod
    def _format_hypotheses(report: Report) -> List[str]:
        lines = ["", "hypotheses:"]
        for name, holds in report.hypotheses.items():
            lines.append(f"  [{'x' if holds else ' '}] {name}")
        return lines

    @staticmethod
    def _inline(value: Any) -> str:
        if isinstance(value, (dict, list)):
            return json.dumps(value, ensure_ascii=False, default=str)
        return str(value)
